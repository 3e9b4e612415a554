"""Exact information leakage of message subsets to an eavesdropper.

For an observation matrix B and encoding map L, the posterior of the
concatenated messages given the observation is uniform on a coset of
ker(B L^-1).  The leakage about a subset of blocks is therefore

    (k_I - dim proj_I(ker(B L^-1))) * ln q   nats,

always an integer multiple of ln q.  `brute_force_leakage` recomputes the
same quantity from the full joint distribution and serves as the
independent oracle for `exact_leakage`.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from .errors import EnumerationTooLarge, ShapeError
from .matrix import FieldMatrix
from .multiplex import (
    DEFAULT_ENUMERATION_CAP,
    MultiplexLayout,
    SubsetIndex,
    iter_message_vectors,
)
from .network import (
    EavesdropperModel,
    LocalCoding,
    Network,
    eavesdrop_matrix,
    enumerate_eavesdropper_sets,
    realize_eavesdropper,
)


@dataclass(frozen=True)
class LeakageResult:
    """Leakage of one subset under one (L, B) pair, in nats."""

    subset: SubsetIndex
    k_sub: int
    rank_b: int
    kernel_dim: int
    nats: float
    conditional_entropy_nats: float

    @property
    def bits(self) -> float:
        return self.nats / math.log(2)


def _posterior_kernel(layout: MultiplexLayout, L: FieldMatrix, B: FieldMatrix) -> FieldMatrix:
    """Basis of ker(B L^-1); columns span the eavesdropper's ambiguity space."""
    if L.nrows != layout.mn or L.ncols != layout.mn:
        raise ShapeError(f"L must be {layout.mn}x{layout.mn}")
    if B.ncols != layout.mn:
        raise ShapeError(f"B has {B.ncols} columns, expected m*n = {layout.mn}")
    if B.field != layout.field or L.field != layout.field:
        raise ShapeError("operands disagree on the field")
    return (B @ L.inverse()).kernel()


def leakage_profile(
    layout: MultiplexLayout,
    L: FieldMatrix,
    B: FieldMatrix,
    subsets,
) -> dict[str, LeakageResult]:
    """exact_leakage for several subsets, computing the kernel once."""
    kernel = _posterior_kernel(layout, L, B)
    rank_b = layout.mn - kernel.ncols
    lnq = math.log(layout.q)
    out: dict[str, LeakageResult] = {}
    for subset in subsets:
        coords = layout.subset_coordinates(subset)
        kernel_dim = kernel.take_rows(coords).rank()
        k_sub = layout.subset_length(subset)
        out[subset.label] = LeakageResult(
            subset=subset,
            k_sub=k_sub,
            rank_b=rank_b,
            kernel_dim=kernel_dim,
            nats=(k_sub - kernel_dim) * lnq,
            conditional_entropy_nats=kernel_dim * lnq,
        )
    return out


def exact_leakage(
    layout: MultiplexLayout, L: FieldMatrix, B: FieldMatrix, subset: SubsetIndex
) -> LeakageResult:
    """Closed-form leakage from the projected kernel dimension."""
    return leakage_profile(layout, L, B, [subset])[subset.label]


def brute_force_leakage(
    layout: MultiplexLayout,
    L: FieldMatrix,
    B: FieldMatrix,
    subset: SubsetIndex,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> float:
    """Mutual information from the explicit joint distribution, in nats.

    Enumerates all q^(m*n) equiprobable message vectors s, tabulates the
    joint distribution of (subset blocks of s, B L^-1 s), and sums
    p * ln(p / (p_a p_z)).  Independent of the kernel-based path.
    """
    total = layout.q ** layout.mn
    if total > cap:
        raise EnumerationTooLarge(f"q^mn = {total} exceeds cap {cap}")
    if L.nrows != layout.mn or L.ncols != layout.mn:
        raise ShapeError(f"L must be {layout.mn}x{layout.mn}")
    if B.ncols != layout.mn:
        raise ShapeError(f"B has {B.ncols} columns, expected m*n = {layout.mn}")
    coords = layout.subset_coordinates(subset)
    C = B @ L.inverse()
    joint: dict[tuple, int] = {}
    marg_a: dict[tuple, int] = {}
    marg_z: dict[tuple, int] = {}
    for s in iter_message_vectors(layout, cap=cap):
        a = tuple(s[c] for c in coords)
        z = tuple(C.mul_vector(s))
        key = (a, z)
        joint[key] = joint.get(key, 0) + 1
        marg_a[a] = marg_a.get(a, 0) + 1
        marg_z[z] = marg_z.get(z, 0) + 1
    log = math.log
    mi = 0.0
    for (a, z), c in joint.items():
        mi += c * (log(c * total) - log(marg_a[a] * marg_z[z]))
    return max(mi / total, 0.0)


def average_leakage(
    layout: MultiplexLayout,
    L: FieldMatrix,
    model: EavesdropperModel,
    net: Network | None,
    coding: LocalCoding | None,
    subset: SubsetIndex,
    rng: random.Random,
    trials: int,
    rho: float = 1.0,
    enum_cap: int = DEFAULT_ENUMERATION_CAP,
) -> dict:
    """Mean leakage and mean exp(rho * leakage) over the eavesdropper draw.

    Exhaustive (exact expectation) whenever the model's support can be
    enumerated within `enum_cap`; Monte Carlo over `trials` draws otherwise.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    samples: list[float] = []
    weights: list[float] = []
    exhaustive = False

    def leak_for(B: FieldMatrix) -> float:
        return exact_leakage(layout, L, B, subset).nats

    if model.kind == "traditional" and net is not None and coding is not None:
        exhaustive = True
        if model.links is not None:
            sets = [tuple(model.links)]
        else:
            sets = enumerate_eavesdropper_sets(net, model.mu, cap=enum_cap)
        for s in sets:
            B = eavesdrop_matrix(net, coding, [s] * layout.m, layout).matrix
            samples.append(leak_for(B))
            weights.append(1.0 / len(sets))
    elif (
        model.kind == "statistical"
        and net is not None
        and coding is not None
        and _statistical_support_size(model, net, layout) <= enum_cap
    ):
        exhaustive = True
        per_slot = _statistical_slot_support(model, net)
        for combo in itertools.product(per_slot, repeat=layout.m):
            sets = [c[0] for c in combo]
            w = 1.0
            for c in combo:
                w *= c[1]
            B = eavesdrop_matrix(net, coding, sets, layout).matrix
            samples.append(leak_for(B))
            weights.append(w)
    else:
        for _ in range(trials):
            B = realize_eavesdropper(model, net, coding, layout, rng).matrix
            samples.append(leak_for(B))
            weights.append(1.0 / trials)

    mean = sum(w * x for w, x in zip(weights, samples))
    mean_exp = sum(w * math.exp(rho * x) for w, x in zip(weights, samples))
    return {
        "mean_nats": mean,
        "mean_exp_rho": mean_exp,
        "samples": samples,
        "weights": weights,
        "exhaustive": exhaustive,
    }


def _statistical_slot_support(model: EavesdropperModel, net: Network):
    if model.distribution is not None:
        total = sum(w for _, w in model.distribution)
        return [(tuple(s), w / total) for s, w in model.distribution]
    sets = enumerate_eavesdropper_sets(net, model.mu)
    return [(s, 1.0 / len(sets)) for s in sets]


def _statistical_support_size(
    model: EavesdropperModel, net: Network, layout: MultiplexLayout
) -> int:
    if model.distribution is not None:
        base = len(model.distribution)
    else:
        base = math.comb(len(net.links), model.mu)
    return base ** layout.m


def worst_case_leakage(
    layout: MultiplexLayout,
    L: FieldMatrix,
    net: Network,
    coding: LocalCoding,
    mu: int,
    subset: SubsetIndex,
    enum_cap: int = DEFAULT_ENUMERATION_CAP,
) -> dict:
    """Maximum leakage over every constant tap set of size mu."""
    sets = enumerate_eavesdropper_sets(net, mu, cap=enum_cap)
    per_set = []
    for s in sets:
        B = eavesdrop_matrix(net, coding, [s] * layout.m, layout).matrix
        per_set.append((s, exact_leakage(layout, L, B, subset).nats))
    best = max(per_set, key=lambda t: t[1])
    return {"max_nats": best[1], "argmax": best[0], "per_set": per_set}
