"""End-to-end CLI behavior: determinism, formats, exit codes."""

import json
import math

import pytest

from muxnet.cli import main
from muxnet.errors import ConfigError
from muxnet.experiments import (
    DEFAULT_CONFIG,
    REPORT_COLUMNS,
    apply_sweep_value,
    build_plan,
    run_capacity,
    run_simulate,
    run_sweep,
)

BUTTERFLY_CONFIG = {
    "id": "bf",
    "layout": {"q": 2, "m": 1, "n": 2, "T": 1, "k": [1, 1]},
    "network": "butterfly",
    "eavesdropper": {"kind": "traditional", "mu": 1},
    "bounds": {"rho": 1.0},
    "seed": 7,
    "trials": {"L": 10, "B": 8},
}


def write_config(tmp_path, config, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(config))
    return str(path)


# ---------------------------------------------------------
# config validation
# ---------------------------------------------------------

def test_unknown_keys_rejected():
    bad = dict(DEFAULT_CONFIG)
    bad["surprise"] = 1
    with pytest.raises(ConfigError, match="surprise"):
        build_plan(bad)


def test_mu_exceeding_n_rejected():
    bad = json.loads(json.dumps(DEFAULT_CONFIG))
    bad["eavesdropper"]["mu"] = 3
    with pytest.raises(ConfigError, match="mu"):
        build_plan(bad)


def test_inconsistent_layout_rejected():
    bad = json.loads(json.dumps(DEFAULT_CONFIG))
    bad["layout"]["k"] = [1, 1]
    with pytest.raises(ConfigError):
        build_plan(bad)


def test_cli_exit_code_on_config_error(tmp_path, capsys):
    bad = json.loads(json.dumps(DEFAULT_CONFIG))
    bad["eavesdropper"]["mu"] = 9
    path = write_config(tmp_path, bad)
    assert main(["simulate", "--config", path]) == 2
    assert "config error" in capsys.readouterr().err


def test_cli_exit_code_on_missing_config(capsys):
    assert main(["simulate", "--config", "/nonexistent/cfg.json"]) == 2


# ---------------------------------------------------------
# simulate
# ---------------------------------------------------------

def test_simulate_butterfly_single_subset_row():
    meta, rows = run_simulate(BUTTERFLY_CONFIG)
    assert len(rows) == 1
    row = rows[0]
    assert row["subset"] == "1"
    assert row["leakage_nats"] in (pytest.approx(0.0), pytest.approx(math.log(2)))
    assert meta["decodable"] and meta["decode_ok"]
    assert meta["C_E"] == 9


def test_simulate_row_count_is_subset_count():
    config = json.loads(json.dumps(BUTTERFLY_CONFIG))
    config["layout"] = {"q": 2, "m": 1, "n": 2, "T": 2, "k": [1, 1, 0]}
    _, rows = run_simulate(config)
    assert [r["subset"] for r in rows] == ["1", "2", "1+2"]


def test_simulate_rows_respect_floor_and_ceiling():
    config = json.loads(json.dumps(BUTTERFLY_CONFIG))
    config["layout"] = {"q": 2, "m": 2, "n": 2, "T": 2, "k": [1, 2, 1]}
    _, rows = run_simulate(config)
    for row in rows:
        ceiling = row["k_I"] * math.log(row["q"])
        assert row["floor_nats"] - 1e-12 <= row["leakage_nats"] <= ceiling + 1e-12


def test_simulate_statistical_model():
    config = json.loads(json.dumps(BUTTERFLY_CONFIG))
    config["eavesdropper"] = {
        "kind": "statistical",
        "mu": 1,
        "distribution": [{"links": ["e7"], "p": 0.5}, {"links": ["e1"], "p": 0.5}],
    }
    meta, rows = run_simulate(config)
    assert meta["eavesdropper"] == "statistical"
    assert 0.0 <= rows[0]["zero_leakage_fraction"] <= 1.0


def test_network_from_file(tmp_path):
    net_doc = {
        "nodes": ["s", "t"],
        "source": "s",
        "sinks": ["t"],
        "links": [
            {"id": "e1", "tail": "s", "head": "t"},
            {"id": "e2", "tail": "s", "head": "t"},
        ],
        "coding": {"e1": {"0": 1}, "e2": {"1": 1}},
    }
    net_path = tmp_path / "net.json"
    net_path.write_text(json.dumps(net_doc))
    config = {
        "id": "filecfg",
        "layout": {"q": 2, "m": 1, "n": 2, "T": 1, "k": [1, 1]},
        "network": {"path": str(net_path)},
        "eavesdropper": {"kind": "traditional", "mu": 1, "links": ["e1"]},
        "seed": 5,
        "trials": {"L": 5, "B": 4},
    }
    meta, rows = run_simulate(config)
    assert meta["decodable"] and meta["C_E"] == 2
    # tapping e1 observes the first source input directly
    assert rows[0]["rank_B"] == 1


def test_random_coding_network_inline():
    config = {
        "id": "rand",
        "layout": {"q": 5, "m": 1, "n": 2, "T": 1, "k": [1, 1]},
        "network": {
            "inline": {
                "nodes": ["s", "t"],
                "source": "s",
                "sinks": ["t"],
                "links": [
                    {"id": "e1", "tail": "s", "head": "t"},
                    {"id": "e2", "tail": "s", "head": "t"},
                ],
                "coding": "random",
            }
        },
        "eavesdropper": {"kind": "traditional", "mu": 1},
        "seed": 6,
        "trials": {"L": 5, "B": 4},
    }
    meta1, rows1 = run_simulate(config)
    meta2, rows2 = run_simulate(config)
    assert (meta1, rows1) == (meta2, rows2)


def test_simulate_direct_mode_needs_no_network():
    config = {
        "id": "direct",
        "layout": {"q": 3, "m": 1, "n": 3, "T": 1, "k": [1, 2]},
        "eavesdropper": {"kind": "direct", "mu": 1},
        "seed": 3,
        "trials": {"L": 5, "B": 6},
    }
    meta, rows = run_simulate(config)
    assert meta["decodable"] is None
    assert rows[0]["guarantee_fraction"] is None
    assert rows[0]["rank_B"] == 1


def test_simulate_deterministic_csv_bytes(tmp_path):
    p1 = tmp_path / "a.csv"
    p2 = tmp_path / "b.csv"
    cfg = write_config(tmp_path, BUTTERFLY_CONFIG)
    assert main(["simulate", "--config", cfg, "--out", str(p1)]) == 0
    assert main(["simulate", "--config", cfg, "--out", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()
    header = p1.read_text().splitlines()[0]
    assert header == ",".join(REPORT_COLUMNS)


def test_cli_seed_override_changes_output(tmp_path):
    cfg = write_config(tmp_path, BUTTERFLY_CONFIG)
    p1 = tmp_path / "s1.json"
    p2 = tmp_path / "s2.json"
    assert main(["simulate", "--config", cfg, "--format", "json", "--out", str(p1)]) == 0
    assert main(
        ["simulate", "--config", cfg, "--seed", "8", "--format", "json", "--out", str(p2)]
    ) == 0
    assert json.loads(p1.read_text())["experiment"]["seed"] == 7
    assert json.loads(p2.read_text())["experiment"]["seed"] == 8


# ---------------------------------------------------------
# sweep
# ---------------------------------------------------------

def test_sweep_singleton_matches_simulate():
    config = json.loads(json.dumps(BUTTERFLY_CONFIG))
    rows = run_sweep(config, "C1", [5])
    _, direct = run_simulate(apply_sweep_value(config, "C1", 5))
    stripped = [dict(r, param="", value="") for r in rows]
    assert stripped == direct


def test_sweep_c1_keeps_measurements_fixed():
    config = json.loads(json.dumps(BUTTERFLY_CONFIG))
    rows = run_sweep(config, "C1", [5, 9, 13])
    leaks = {r["leakage_nats"] for r in rows}
    bounds = [r["ub8_nats"] for r in rows]
    assert len(leaks) == 1
    assert bounds == sorted(bounds) and len(set(bounds)) == 3


def test_sweep_m_scales_layout():
    config = json.loads(json.dumps(BUTTERFLY_CONFIG))
    rows = run_sweep(config, "m", [1, 2, 3])
    assert [r["m"] for r in rows] == [1, 2, 3]
    assert [r["k_I"] for r in rows] == [1, 2, 3]


def test_sweep_m_requires_base_m1():
    config = json.loads(json.dumps(BUTTERFLY_CONFIG))
    config["layout"]["m"] = 2
    config["layout"]["k"] = [2, 2]
    with pytest.raises(ConfigError):
        apply_sweep_value(config, "m", 3)


def test_sweep_sorted_by_value(tmp_path):
    cfg = write_config(tmp_path, BUTTERFLY_CONFIG)
    out = tmp_path / "sweep.csv"
    assert main(
        ["sweep", "--config", cfg, "--param", "m", "--values", "3,1,2", "--out", str(out)]
    ) == 0
    values = [line.split(",")[2] for line in out.read_text().splitlines()[1:]]
    assert values == ["1", "2", "3"]


def test_sweep_parallel_identical_to_serial():
    config = json.loads(json.dumps(BUTTERFLY_CONFIG))
    serial = run_sweep(config, "m", [1, 2], parallel=1)
    parallel = run_sweep(config, "m", [1, 2], parallel=2)
    assert serial == parallel


def test_sweep_bad_param_rejected():
    with pytest.raises(ConfigError):
        apply_sweep_value(BUTTERFLY_CONFIG, "n", 3)


# ---------------------------------------------------------
# capacity
# ---------------------------------------------------------

def test_capacity_member_with_floor():
    report = run_capacity([1.0, 1.0], 2, 1)
    assert report["member"]
    floors = {f["subset"]: f["floor_symbols_per_slot"] for f in report["floors"]}
    assert floors == {"1": 0.0, "2": 0.0, "1+2": 1.0}


def test_capacity_non_member():
    assert not run_capacity([3.0], 2, 1)["member"]
    assert run_capacity([0.5, 0.4], 2, 1)["member"]


def test_capacity_cli_formats(tmp_path, capsys):
    assert main(["capacity", "--rates", "1,1", "--n", "2", "--mu", "1"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("member,true")
    assert "1+2,2.0,1.0" in text
    out = tmp_path / "cap.json"
    assert main(
        ["capacity", "--rates", "3", "--n", "2", "--format", "json", "--out", str(out)]
    ) == 0
    doc = json.loads(out.read_text())
    assert doc["member"] is False


# ---------------------------------------------------------
# verify via CLI
# ---------------------------------------------------------

def test_verify_default_config_exits_zero(tmp_path):
    # The shipped defaults must pass the full battery.
    out = tmp_path / "default.csv"
    assert main(["verify", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "check,instance,lhs,rhs,holds"
    assert all(line.endswith("true") for line in lines[1:])


def test_verify_fast_config_exits_zero(tmp_path, capsys):
    config = {
        "seed": 11,
        "verify": {
            "joint_trials": 6,
            "gl_chi2_samples": 600,
            "oracle_b_per_shape": 2,
            "oracle_l_samples": 4,
            "guarantee_l_trials": 10,
        },
    }
    cfg = write_config(tmp_path, config)
    out = tmp_path / "verify.json"
    assert main(["verify", "--config", cfg, "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["all_hold"]
    assert {"check", "instance", "lhs", "rhs", "holds"} <= set(doc["checks"][0])


def test_verify_tampered_tolerance_fails_and_names_check(tmp_path, capsys):
    config = {
        "seed": 11,
        "verify": {
            "joint_trials": 6,
            "gl_chi2_samples": 600,
            "oracle_b_per_shape": 2,
            "oracle_l_samples": 4,
            "guarantee_l_trials": 10,
            "tolerance": -1.0,
        },
    }
    cfg = write_config(tmp_path, config)
    out = tmp_path / "verify.csv"
    assert main(["verify", "--config", cfg, "--out", str(out)]) == 1
    err = capsys.readouterr().err
    assert "FAILED checks:" in err
    assert "hash_bounds_random" in err or "hash_bound_pinned" in err


def test_verify_unknown_option_rejected(tmp_path):
    cfg = write_config(tmp_path, {"verify": {"bogus": 1}})
    assert main(["verify", "--config", cfg]) == 2
