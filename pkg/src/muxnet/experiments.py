"""Experiment configuration, runners, and report serialization.

A single JSON config fixes the field, block layout, network source,
eavesdropper model, bound constants, seed and trial counts.  Unknown keys
are rejected so configs stay reproducible.  All randomness is drawn from
per-component streams derived from the root seed, which makes reports
byte-identical across runs and across sweep parallelization.
"""

from __future__ import annotations

import concurrent.futures
import csv
import io
import json
import math
from dataclasses import dataclass

from .bounds import (
    BoundParams,
    guarantee_experiment,
    leakage_floor,
    rate_leakage_floor,
    capacity_membership,
    ub8_bound,
)
from .errors import ConfigError, MuxnetError
from .fields import GF, FieldSpec
from .leakage import leakage_profile
from .matrix import sample_gl
from .multiplex import (
    MessageTuple,
    MultiplexLayout,
    all_nonempty_subsets,
    decode,
    encode,
)
from .network import (
    EavesdropperModel,
    LocalCoding,
    Network,
    butterfly_coding,
    butterfly_network,
    check_decodability,
    coding_from_json,
    enumerate_eavesdropper_sets,
    realize_eavesdropper,
)
from .rng import derive_rng
from .verification import VerifyOptions, run_verification

SWEEPABLE_PARAMS = ("m", "mu", "q", "C1", "C2", "rho")

REPORT_COLUMNS = (
    "experiment_id",
    "param",
    "value",
    "q",
    "m",
    "n",
    "T",
    "mu",
    "subset",
    "k_I",
    "rank_B",
    "kernel_dim",
    "leakage_nats",
    "leakage_bits",
    "ub8_nats",
    "floor_nats",
    "zero_leakage_fraction",
    "guarantee_fraction",
)

VERIFY_COLUMNS = ("check", "instance", "lhs", "rhs", "holds")

DEFAULT_CONFIG: dict = {
    "id": "default",
    "layout": {"q": 2, "m": 2, "n": 2, "T": 1, "k": [2, 2]},
    "network": "butterfly",
    "eavesdropper": {"kind": "traditional", "mu": 1},
    "bounds": {"rho": 1.0},
    "seed": 20210907,
    "trials": {"L": 40, "B": 40},
}


def _require_keys(doc: dict, allowed: set[str], where: str) -> None:
    unknown = set(doc) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {sorted(unknown)}")


@dataclass
class ExperimentPlan:
    experiment_id: str
    field: FieldSpec
    layout: MultiplexLayout
    network: Network | None
    coding: LocalCoding | None
    model: EavesdropperModel
    params: BoundParams
    seed: int
    trials_l: int
    trials_b: int
    config: dict


def build_plan(config: dict, require_experiment: bool = True) -> ExperimentPlan | None:
    """Validate a config document and materialize every component."""
    if not isinstance(config, dict):
        raise ConfigError("config must be a JSON object")
    _require_keys(
        config,
        {"id", "field", "layout", "network", "eavesdropper", "bounds", "seed", "trials", "sweep", "verify"},
        "config",
    )
    seed = config.get("seed", DEFAULT_CONFIG["seed"])
    if not isinstance(seed, int):
        raise ConfigError(f"seed must be an integer, got {seed!r}")

    if "layout" not in config:
        if require_experiment:
            raise ConfigError("config is missing the layout section")
        return None

    try:
        field_doc = config.get("field", {})
        _require_keys(field_doc, {"q", "modulus"}, "field")
        layout_doc = dict(config["layout"])
        _require_keys(layout_doc, {"q", "m", "n", "T", "k"}, "layout")
        q = layout_doc.get("q", field_doc.get("q"))
        if q is None:
            raise ConfigError("layout.q (or field.q) is required")
        if "q" in field_doc and field_doc["q"] != q:
            raise ConfigError(f"field.q = {field_doc['q']} but layout.q = {q}")
        modulus = tuple(field_doc["modulus"]) if "modulus" in field_doc else None
        field = GF(q, modulus)
        k = tuple(layout_doc["k"])
        T = layout_doc.get("T", len(k) - 1)
        layout = MultiplexLayout(field, layout_doc["m"], layout_doc["n"], T, k)
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"bad layout section: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    eav_doc = config.get("eavesdropper")
    if eav_doc is None:
        raise ConfigError("config is missing the eavesdropper section")
    _require_keys(eav_doc, {"kind", "mu", "links", "distribution"}, "eavesdropper")
    try:
        model = EavesdropperModel(
            kind=eav_doc.get("kind", "traditional"),
            mu=eav_doc.get("mu", 1),
            links=tuple(eav_doc["links"]) if "links" in eav_doc else None,
            distribution=(
                tuple((tuple(entry["links"]), float(entry["p"])) for entry in eav_doc["distribution"])
                if "distribution" in eav_doc and eav_doc["distribution"] is not None
                else None
            ),
        )
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"bad eavesdropper section: {exc}") from exc
    if model.mu > layout.n:
        raise ConfigError(f"mu = {model.mu} exceeds n = {layout.n}")

    network = None
    coding = None
    net_doc = config.get("network")
    if model.kind != "direct":
        if net_doc is None:
            raise ConfigError(f"{model.kind} eavesdropper requires a network")
    if net_doc is not None:
        coding_rng = derive_rng(seed, "coding")
        try:
            if net_doc == "butterfly":
                network = butterfly_network()
                if layout.n != 2:
                    raise ConfigError("the butterfly preset has n = 2")
                coding = butterfly_coding(field, layout.m)
            elif isinstance(net_doc, dict) and set(net_doc) <= {"path", "inline"}:
                if "path" in net_doc:
                    with open(net_doc["path"], "r", encoding="utf-8") as fh:
                        doc = json.load(fh)
                else:
                    doc = net_doc["inline"]
                _require_keys(doc, {"nodes", "source", "sinks", "links", "coding"}, "network document")
                network = Network.from_json(doc)
                coding = coding_from_json(
                    network, doc.get("coding", "random"), field, layout.n, layout.m, coding_rng
                )
            else:
                raise ConfigError(f"unrecognized network source {net_doc!r}")
        except ConfigError:
            raise
        except (OSError, ValueError, KeyError, MuxnetError) as exc:
            raise ConfigError(f"bad network section: {exc}") from exc
        if len(network.out_links(network.source)) < layout.n:
            raise ConfigError("network source cannot emit n symbols per slot")

    bounds_doc = config.get("bounds", {})
    _require_keys(bounds_doc, {"rho", "C1", "C2"}, "bounds")
    defaults = BoundParams.defaults(layout.T)
    try:
        params = BoundParams(
            C1=float(bounds_doc.get("C1", defaults.C1)),
            C2=float(bounds_doc.get("C2", defaults.C2)),
            rho=float(bounds_doc.get("rho", defaults.rho)),
        ).validate_for(layout.T)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    trials_doc = config.get("trials", {})
    _require_keys(trials_doc, {"L", "B"}, "trials")
    trials_l = int(trials_doc.get("L", 40))
    trials_b = int(trials_doc.get("B", 40))
    if trials_l < 1 or trials_b < 1:
        raise ConfigError("trial counts must be at least 1")

    return ExperimentPlan(
        experiment_id=str(config.get("id", f"exp-{seed}")),
        field=field,
        layout=layout,
        network=network,
        coding=coding,
        model=model,
        params=params,
        seed=seed,
        trials_l=trials_l,
        trials_b=trials_b,
        config=config,
    )


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def run_simulate(config: dict, param: str = "", value="") -> tuple[dict, list[dict]]:
    """One end-to-end experiment; returns (metadata, report rows)."""
    plan = build_plan(config)
    layout, model = plan.layout, plan.model
    seed = plan.seed

    decodable = None
    if plan.network is not None and plan.coding is not None:
        decodable = all(
            check_decodability(plan.network, plan.coding, sink, t)
            for sink in plan.network.sinks
            for t in range(layout.m)
        )

    L = sample_gl(layout.mn, plan.field, derive_rng(seed, "L"))
    msgs = MessageTuple.random(layout, derive_rng(seed, "messages"))
    word = encode(layout, L, msgs)
    decode_ok = decode(layout, L, word) == msgs

    eve_rng = derive_rng(seed, "eavesdropper")
    draws = [
        realize_eavesdropper(model, plan.network, plan.coding, layout, eve_rng)
        for _ in range(plan.trials_b)
    ]
    observation = draws[0].matrix.mul_vector(word)
    subsets = all_nonempty_subsets(layout.T)
    profiles = [leakage_profile(layout, L, em.matrix, subsets) for em in draws]

    guarantee = None
    if plan.network is not None and plan.coding is not None:
        guarantee = guarantee_experiment(
            layout,
            plan.network,
            plan.coding,
            model.mu,
            plan.params,
            derive_rng(seed, "guarantee"),
            plan.trials_l,
        )

    rows = []
    for sub in subsets:
        first = profiles[0][sub.label]
        zero_fraction = sum(
            1 for prof in profiles if prof[sub.label].nats == 0.0
        ) / len(profiles)
        floor = leakage_floor(layout, sub, first.rank_b)
        row = {
            "experiment_id": plan.experiment_id,
            "param": param,
            "value": value,
            "q": layout.q,
            "m": layout.m,
            "n": layout.n,
            "T": layout.T,
            "mu": model.mu,
            "subset": sub.label,
            "k_I": first.k_sub,
            "rank_B": first.rank_b,
            "kernel_dim": first.kernel_dim,
            "leakage_nats": first.nats,
            "leakage_bits": first.bits,
            "ub8_nats": ub8_bound(layout, sub, model.mu, plan.params),
            "floor_nats": floor,
            "zero_leakage_fraction": zero_fraction,
            "guarantee_fraction": (
                guarantee["per_subset"][sub.label]["fraction"] if guarantee else None
            ),
        }
        if not (floor - 1e-12 <= first.nats <= first.k_sub * math.log(layout.q) + 1e-12):
            raise MuxnetError(
                f"leakage {first.nats} violates floor/ceiling for subset {sub.label}"
            )
        rows.append(row)

    meta = {
        "experiment_id": plan.experiment_id,
        "seed": seed,
        "q": layout.q,
        "m": layout.m,
        "n": layout.n,
        "T": layout.T,
        "mu": model.mu,
        "k": list(layout.k),
        "eavesdropper": model.kind,
        "eve_symbols": len(observation),
        "decodable": decodable,
        "decode_ok": decode_ok,
        "C_E": (
            len(enumerate_eavesdropper_sets(plan.network, model.mu))
            if plan.network is not None
            else None
        ),
        "guarantee_fraction": guarantee["fraction_good"] if guarantee else None,
        "guarantee_threshold": guarantee["threshold"] if guarantee else None,
    }
    return meta, rows


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def apply_sweep_value(config: dict, param: str, value) -> dict:
    """New config with one swept parameter applied."""
    if param not in SWEEPABLE_PARAMS:
        raise ConfigError(f"cannot sweep {param!r}; choose one of {SWEEPABLE_PARAMS}")
    out = json.loads(json.dumps(config))
    if param == "m":
        base = out["layout"]
        if base["m"] != 1:
            raise ConfigError("m sweeps need a base layout with m = 1 (per-slot sizes)")
        if value < 1 or value != int(value):
            raise ConfigError(f"swept m must be a positive integer, got {value}")
        m = int(value)
        base["m"] = m
        base["k"] = [ki * m for ki in base["k"]]
    elif param == "mu":
        out.setdefault("eavesdropper", {})["mu"] = int(value)
    elif param == "q":
        out["layout"]["q"] = int(value)
        if "field" in out:
            out["field"].pop("q", None)
            out["field"].pop("modulus", None)
    else:  # C1, C2, rho
        out.setdefault("bounds", {})[param if param != "rho" else "rho"] = value
    return out


def _sweep_point(args: tuple[str, str, object]) -> list[dict]:
    config_json, param, value = args
    config = json.loads(config_json)
    _, rows = run_simulate(apply_sweep_value(config, param, value), param=param, value=value)
    return rows


def run_sweep(config: dict, param: str, values, parallel: int = 1) -> list[dict]:
    """One simulate per value, rows assembled in ascending value order."""
    values = sorted(values)
    jobs = [(json.dumps(config, sort_keys=True), param, v) for v in values]
    if parallel > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(_sweep_point, jobs))
    else:
        results = [_sweep_point(job) for job in jobs]
    rows: list[dict] = []
    for chunk in results:
        rows.extend(chunk)
    return rows


# ---------------------------------------------------------------------------
# capacity
# ---------------------------------------------------------------------------

def run_capacity(rates, n: int, mu: int) -> dict:
    """Membership verdict plus the per-subset asymptotic leakage-rate floors."""
    rates = [float(r) for r in rates]
    if len(rates) > 16:
        raise ConfigError("at most 16 rates supported (2^T - 1 subsets are listed)")
    if mu > n:
        raise ConfigError(f"mu = {mu} exceeds n = {n}")
    member = capacity_membership(rates, n)
    floors = []
    for sub in all_nonempty_subsets(len(rates)):
        floors.append(
            {
                "subset": sub.label,
                "rate_sum": sum(rates[i - 1] for i in sub.members),
                "floor_symbols_per_slot": rate_leakage_floor(rates, sub.members, n, mu),
            }
        )
    return {
        "member": member,
        "rates": rates,
        "rate_total": sum(rates),
        "n": n,
        "mu": mu,
        "floors": floors,
    }


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def run_verify(config: dict | None) -> tuple[list[dict], bool]:
    if config:
        build_plan(config, require_experiment=False)
        opts = VerifyOptions.from_config(config.get("verify"))
        if "seed" in config:
            opts.seed = config["seed"]
    else:
        opts = VerifyOptions()
    rows = [r.to_json() for r in run_verification(opts)]
    all_hold = all(r["holds"] for r in rows)
    return rows, all_hold


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def report_to_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
