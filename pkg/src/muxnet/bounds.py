"""Closed-form leakage bounds and their numerical verification.

Covers the hashing inequalities

    E_f exp(rho * I(f(X); Z))   <= 1 + |S|^rho * E[P(X|Z)^rho]
    E_f exp(-rho * H(f(X) | Z)) <= |S|^-rho + E[P(X|Z)^rho]

checked by exhaustive enumeration over a hash family and a joint
distribution, the decay bound family parameterized by (C1, C2, rho), the
probability guarantees they buy, the exact-zero certification they imply,
and the capacity-region membership predicate sum(R_i) <= n.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .matrix import FieldMatrix, enumerate_gl, sample_gl
from .multiplex import MultiplexLayout, SubsetIndex, all_nonempty_subsets
from .network import LocalCoding, Network, eavesdrop_matrix, enumerate_eavesdropper_sets
from .leakage import leakage_profile

DEFAULT_FAMILY_CAP = 100_000
REAL_TOLERANCE = 1e-12


# ---------------------------------------------------------------------------
# Joint distributions and hash families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JointDistribution:
    """Probability table p(x, z) over {0..nx-1} x {0..nz-1}."""

    probs: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(float(v) for v in row) for row in self.probs)
        object.__setattr__(self, "probs", rows)
        if not rows or not rows[0]:
            raise ValueError("joint table must be nonempty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("joint table must be rectangular")
        if any(v < 0 for r in rows for v in r):
            raise ValueError("probabilities must be nonnegative")
        total = sum(v for r in rows for v in r)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"joint table sums to {total}, expected 1")

    @property
    def nx(self) -> int:
        return len(self.probs)

    @property
    def nz(self) -> int:
        return len(self.probs[0])

    def marginal_z(self) -> list[float]:
        return [sum(self.probs[x][z] for x in range(self.nx)) for z in range(self.nz)]

    def conditional_power_mean(self, rho: float) -> float:
        """E over (X, Z) of P(X|Z)^rho."""
        pz = self.marginal_z()
        acc = 0.0
        for x in range(self.nx):
            for z in range(self.nz):
                p = self.probs[x][z]
                if p > 0:
                    acc += p * (p / pz[z]) ** rho
        return acc

    @classmethod
    def dirichlet(cls, nx: int, nz: int, rng: random.Random) -> "JointDistribution":
        """Symmetric Dirichlet(1): uniform over the joint simplex."""
        gammas = [[rng.expovariate(1.0) for _ in range(nz)] for _ in range(nx)]
        total = sum(v for row in gammas for v in row)
        return cls(tuple(tuple(v / total for v in row) for row in gammas))

    @classmethod
    def from_deterministic_z(cls, nx: int, z_of_x, nz: int) -> "JointDistribution":
        """X uniform on nx points, Z = z_of_x(X)."""
        rows = [[0.0] * nz for _ in range(nx)]
        for x in range(nx):
            rows[x][z_of_x(x)] = 1.0 / nx
        return cls(tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class HashFamilySpec:
    """A finite family of functions {0..nx-1} -> {0..output_size-1}.

    `maps[f][x]` is the image of x under the f-th function.
    """

    maps: tuple[tuple[int, ...], ...]
    output_size: int

    def __post_init__(self):
        if not self.maps:
            raise ValueError("family must be nonempty")
        nx = len(self.maps[0])
        for fmap in self.maps:
            if len(fmap) != nx:
                raise ValueError("family maps must share a domain")
            if any(not 0 <= s < self.output_size for s in fmap):
                raise ValueError("map value outside the output range")

    @property
    def domain_size(self) -> int:
        return len(self.maps[0])

    @classmethod
    def projection_family(
        cls,
        layout: MultiplexLayout,
        subset: SubsetIndex,
        cap: int = DEFAULT_FAMILY_CAP,
    ) -> "HashFamilySpec":
        """The family {project_subset . L} over all invertible L.

        Domain indices encode vectors digit-wise with coordinate 0 least
        significant, matching the message enumeration order.
        """
        q = layout.q
        mn = layout.mn
        coords = layout.subset_coordinates(subset)
        mats = enumerate_gl(mn, layout.field, cap=cap)
        vectors = []
        for idx in range(q**mn):
            vectors.append([(idx // q**i) % q for i in range(mn)])
        maps = []
        for L in mats:
            fmap = []
            for vec in vectors:
                img = L.mul_vector(vec)
                s_idx = 0
                for pos, c in enumerate(coords):
                    s_idx += img[c] * q**pos
                fmap.append(s_idx)
            maps.append(tuple(fmap))
        return cls(tuple(maps), q ** len(coords))

    def is_two_universal(self) -> tuple[bool, Fraction]:
        """Exact worst-pair collision probability against 1/|S|."""
        nf = len(self.maps)
        worst = Fraction(0)
        nx = self.domain_size
        for x1 in range(nx):
            for x2 in range(x1 + 1, nx):
                hits = sum(1 for fmap in self.maps if fmap[x1] == fmap[x2])
                p = Fraction(hits, nf)
                if p > worst:
                    worst = p
        return worst <= Fraction(1, self.output_size), worst


def family_mutual_informations(joint: JointDistribution, family: HashFamilySpec) -> list[float]:
    """I(f(X); Z) in nats for every member of the family."""
    if family.domain_size != joint.nx:
        raise ValueError(
            f"family domain {family.domain_size} != joint |X| = {joint.nx}"
        )
    pz = joint.marginal_z()
    log = math.log
    out = []
    for fmap in family.maps:
        table = [[0.0] * joint.nz for _ in range(family.output_size)]
        for x in range(joint.nx):
            row = joint.probs[x]
            s = fmap[x]
            trow = table[s]
            for z in range(joint.nz):
                trow[z] += row[z]
        ps = [sum(trow) for trow in table]
        mi = 0.0
        for s in range(family.output_size):
            if ps[s] <= 0:
                continue
            for z in range(joint.nz):
                p = table[s][z]
                if p > 0:
                    mi += p * log(p / (ps[s] * pz[z]))
        out.append(max(mi, 0.0))
    return out


def family_conditional_entropies(
    joint: JointDistribution, family: HashFamilySpec
) -> list[float]:
    """H(f(X) | Z) in nats for every member of the family."""
    if family.domain_size != joint.nx:
        raise ValueError(
            f"family domain {family.domain_size} != joint |X| = {joint.nx}"
        )
    pz = joint.marginal_z()
    log = math.log
    out = []
    for fmap in family.maps:
        table = [[0.0] * joint.nz for _ in range(family.output_size)]
        for x in range(joint.nx):
            row = joint.probs[x]
            s = fmap[x]
            trow = table[s]
            for z in range(joint.nz):
                trow[z] += row[z]
        h = 0.0
        for s in range(family.output_size):
            for z in range(joint.nz):
                p = table[s][z]
                if p > 0:
                    h -= p * log(p / pz[z])
        out.append(max(h, 0.0))
    return out


def verify_hashed_mi_bound(
    joint: JointDistribution,
    family: HashFamilySpec,
    rho: float,
    tol: float = REAL_TOLERANCE,
) -> dict:
    """Check E_f exp(rho I(f(X);Z)) <= 1 + |S|^rho E[P(X|Z)^rho]."""
    if not 0 <= rho <= 1:
        raise DomainError(f"rho = {rho} outside [0, 1]")
    mis = family_mutual_informations(joint, family)
    lhs = sum(math.exp(rho * mi) for mi in mis) / len(mis)
    rhs = 1.0 + family.output_size**rho * joint.conditional_power_mean(rho)
    return {"lhs": lhs, "rhs": rhs, "holds": lhs <= rhs + tol}


def verify_hashed_entropy_bound(
    joint: JointDistribution,
    family: HashFamilySpec,
    rho: float,
    tol: float = REAL_TOLERANCE,
) -> dict:
    """Check E_f exp(-rho H(f(X)|Z)) <= |S|^-rho + E[P(X|Z)^rho]."""
    if not 0 <= rho <= 1:
        raise DomainError(f"rho = {rho} outside [0, 1]")
    ents = family_conditional_entropies(joint, family)
    lhs = sum(math.exp(-rho * h) for h in ents) / len(ents)
    rhs = family.output_size ** (-rho) + joint.conditional_power_mean(rho)
    return {"lhs": lhs, "rhs": rhs, "holds": lhs <= rhs + tol}


# ---------------------------------------------------------------------------
# Bound formulas
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundParams:
    """Slack constants of the guarantee bounds; both must exceed 2(2^T - 1)."""

    C1: float
    C2: float
    rho: float = 1.0

    def validate_for(self, T: int) -> "BoundParams":
        floor = 2 * (2**T - 1)
        if not 0 < self.rho <= 1:
            raise ValueError(f"rho = {self.rho} outside (0, 1]")
        if self.C1 <= floor:
            raise ValueError(f"C1 = {self.C1} must exceed 2(2^T - 1) = {floor}")
        if self.C2 <= floor:
            raise ValueError(f"C2 = {self.C2} must exceed 2(2^T - 1) = {floor}")
        return self

    @classmethod
    def defaults(cls, T: int) -> "BoundParams":
        """Smallest round constants that keep both guarantees above 1/2."""
        c = 4 * (2**T - 1) + 1
        return cls(C1=c, C2=c, rho=1.0)

    @classmethod
    def for_universal(cls, T: int, n_tap_sets: int, C1: float | None = None) -> "BoundParams":
        """C2 large enough that the per-realization guarantee exceeds 1 - 1/C_E."""
        c1 = C1 if C1 is not None else 4 * (2**T - 1) + 1
        return cls(C1=c1, C2=2 * (2**T - 1) * n_tap_sets + 1, rho=1.0)


def _decay_factor(layout: MultiplexLayout, k_sub: int, mu: int, rho: float) -> float:
    """q^(-m rho (n - mu - k_sub/m)) via the integer exponent k_sub - m(n - mu)."""
    units = k_sub - layout.m * (layout.n - mu)
    return float(layout.q) ** (rho * units)


def ub2_bound(layout: MultiplexLayout, subset: SubsetIndex, mu: int, rho: float) -> float:
    """Bound on E_l exp(rho * leakage) for one observation realization."""
    if not 0 < rho <= 1:
        raise DomainError(f"rho = {rho} outside (0, 1]")
    return 1.0 + _decay_factor(layout, layout.subset_length(subset), mu, rho)


def ub5_bound(layout: MultiplexLayout, subset: SubsetIndex, mu: int, params: BoundParams) -> float:
    """Bound on E_b leakage for a good map, in nats."""
    k_sub = layout.subset_length(subset)
    return params.C1 * _decay_factor(layout, k_sub, mu, params.rho) / params.rho


def ub6_bound(layout: MultiplexLayout, subset: SubsetIndex, mu: int, params: BoundParams) -> float:
    """Bound on E_b exp(rho * leakage) for a good map."""
    k_sub = layout.subset_length(subset)
    return params.C1 * (1.0 + _decay_factor(layout, k_sub, mu, params.rho))


def _per_slot_overflow(layout: MultiplexLayout, subset: SubsetIndex, mu: int) -> float:
    k_sub = layout.subset_length(subset)
    overflow = k_sub / layout.m - (layout.n - mu)
    if overflow < 0:
        raise DomainError(
            f"per-slot rate {k_sub}/{layout.m} below n - mu = {layout.n - mu}; "
            "the per-slot bounds only apply above it"
        )
    return overflow


def ub7_bound(layout: MultiplexLayout, subset: SubsetIndex, mu: int, params: BoundParams) -> float:
    """Per-slot bound on E_b leakage/m in the high-rate regime."""
    overflow = _per_slot_overflow(layout, subset, mu)
    return (1.0 + math.log(params.C1)) / (layout.m * params.rho) + overflow * math.log(layout.q)


def ub8_bound(layout: MultiplexLayout, subset: SubsetIndex, mu: int, params: BoundParams) -> float:
    """Bound on the leakage of a single good (map, observation) pair, in nats."""
    k_sub = layout.subset_length(subset)
    return params.C1 * params.C2 * _decay_factor(layout, k_sub, mu, params.rho) / params.rho


def ub9_bound(layout: MultiplexLayout, subset: SubsetIndex, mu: int, params: BoundParams) -> float:
    """Per-slot bound on the leakage of a single good pair."""
    overflow = _per_slot_overflow(layout, subset, mu)
    return (1.0 + math.log(params.C2) + math.log(params.C1)) / (
        layout.m * params.rho
    ) + overflow * math.log(layout.q)


def guarantee_probability_l(T: int, C1: float) -> float:
    """Lower bound on the probability that a random map is good."""
    return 1.0 - 2.0 * (2**T - 1) / C1


def guarantee_probability_b(T: int, C2: float) -> float:
    """Lower bound on the per-observation probability, for a good map."""
    return 1.0 - 2.0 * (2**T - 1) / C2


def ub_bounds(
    layout: MultiplexLayout, subset: SubsetIndex, mu: int, params: BoundParams
) -> dict:
    """All bound values for one subset; per-slot entries are None below rate."""
    params.validate_for(layout.T)
    out = {
        "ub5": ub5_bound(layout, subset, mu, params),
        "ub6": ub6_bound(layout, subset, mu, params),
        "ub8": ub8_bound(layout, subset, mu, params),
        "prob_l": guarantee_probability_l(layout.T, params.C1),
        "prob_lb": guarantee_probability_b(layout.T, params.C2),
    }
    try:
        out["ub7"] = ub7_bound(layout, subset, mu, params)
        out["ub9"] = ub9_bound(layout, subset, mu, params)
    except DomainError:
        out["ub7"] = None
        out["ub9"] = None
    return out


# ---------------------------------------------------------------------------
# Experiments on sampled maps
# ---------------------------------------------------------------------------

def guarantee_experiment(
    layout: MultiplexLayout,
    net: Network,
    coding: LocalCoding,
    mu: int,
    params: BoundParams,
    rng: random.Random,
    L_trials: int,
    enum_cap: int = 1 << 16,
    tol: float = REAL_TOLERANCE,
) -> dict:
    """Fraction of sampled maps whose averaged leakage meets ub5 and ub6.

    The observation average is exhaustive over all constant tap sets with
    uniform weight.  A map is good when every nonempty subset satisfies
    both bounds; the returned fraction is guaranteed to exceed
    1 - 2(2^T - 1)/C1 in expectation.
    """
    params.validate_for(layout.T)
    sets = enumerate_eavesdropper_sets(net, mu, cap=enum_cap)
    mats = [eavesdrop_matrix(net, coding, [s] * layout.m, layout).matrix for s in sets]
    subsets = all_nonempty_subsets(layout.T)
    per_subset = {
        sub.label: {
            "ub5": ub5_bound(layout, sub, mu, params),
            "ub6": ub6_bound(layout, sub, mu, params),
            "good": 0,
        }
        for sub in subsets
    }
    good_total = 0
    rho = params.rho
    for _ in range(L_trials):
        L = sample_gl(layout.mn, layout.field, rng)
        profiles = [leakage_profile(layout, L, B, subsets) for B in mats]
        all_ok = True
        for sub in subsets:
            leaks = [prof[sub.label].nats for prof in profiles]
            mean = sum(leaks) / len(leaks)
            mean_exp = sum(math.exp(rho * x) for x in leaks) / len(leaks)
            stats = per_subset[sub.label]
            ok = mean <= stats["ub5"] + tol and mean_exp <= stats["ub6"] + tol
            if ok:
                stats["good"] += 1
            else:
                all_ok = False
        if all_ok:
            good_total += 1
    for stats in per_subset.values():
        stats["fraction"] = stats.pop("good") / L_trials
    return {
        "fraction_good": good_total / L_trials,
        "threshold": guarantee_probability_l(layout.T, params.C1),
        "trials": L_trials,
        "per_subset": per_subset,
    }


def certify_universal_zero(
    layout: MultiplexLayout,
    net: Network,
    coding: LocalCoding,
    mu: int,
    params: BoundParams,
    L: FieldMatrix,
    enum_cap: int = 1 << 16,
) -> dict:
    """Certify exact-zero leakage wherever the single-pair bound forces it.

    A subset is gated when its ub8 value falls below ln q: leakage is an
    integer multiple of ln q, so any leakage under the bound must vanish.
    Certification checks that every gated subset leaks exactly zero for
    every constant tap set; the first violation is returned as a witness.
    """
    params.validate_for(layout.T)
    sets = enumerate_eavesdropper_sets(net, mu, cap=enum_cap)
    mats = [
        (s, eavesdrop_matrix(net, coding, [s] * layout.m, layout).matrix) for s in sets
    ]
    subsets = all_nonempty_subsets(layout.T)
    lnq = math.log(layout.q)
    gated = [sub for sub in subsets if ub8_bound(layout, sub, mu, params) < lnq]
    worst = {sub.label: -1.0 for sub in subsets}
    argmax: dict[str, tuple[str, ...]] = {}
    for s, B in mats:
        profile = leakage_profile(layout, L, B, subsets)
        for sub in subsets:
            nats = profile[sub.label].nats
            if nats > worst[sub.label]:
                worst[sub.label] = nats
                argmax[sub.label] = s
    certified = True
    witness = None
    for sub in gated:
        if worst[sub.label] > 0.0:
            certified = False
            witness = (sub.label, argmax[sub.label])
            break
    return {
        "certified": certified,
        "witness": witness,
        "gated_subsets": [sub.label for sub in gated],
        "worst_case_nats": worst,
    }


# ---------------------------------------------------------------------------
# Capacity region and converse floor
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RateTuple:
    """Per-message rates in field symbols per slot, with optional slack.

    `delta` is the positive margin used when sweeping block lengths
    (k_sub = m * (n - mu - delta)); it does not affect membership.
    """

    rates: tuple[float, ...]
    delta: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "rates", tuple(float(r) for r in self.rates))
        if self.delta is not None and self.delta <= 0:
            raise ValueError("slack delta must be positive when given")

    def __iter__(self):
        return iter(self.rates)

    def __len__(self):
        return len(self.rates)


def capacity_membership(rates, n: int) -> bool:
    """True iff all rates are nonnegative and their sum is at most n."""
    rates = list(rates)
    return all(r >= 0 for r in rates) and sum(rates) <= n


def rate_leakage_floor(rates, members, n: int, mu: int) -> float:
    """Asymptotic per-slot leakage floor of one subset, in symbols."""
    total = sum(rates[i - 1] for i in members)
    return max(0.0, total - (n - mu))


def leakage_floor(layout: MultiplexLayout, subset: SubsetIndex, rank_b: int) -> float:
    """Exact lower bound (nats) on leakage given the observation rank.

    The posterior kernel has dimension m*n - rank_b, so the hidden part of
    the subset is at most that large: leakage is at least
    (k_sub - (m*n - rank_b)) * ln q when positive.
    """
    if rank_b < 0 or rank_b > layout.mn:
        raise ValueError(f"rank {rank_b} impossible for {layout.mn} columns")
    k_sub = layout.subset_length(subset)
    return max(0, k_sub - layout.mn + rank_b) * math.log(layout.q)


def rho_grid_argmin(values_by_rho: list[tuple[float, float]]) -> float:
    """Grid point with the smallest value; ties resolved toward larger rho."""
    best_rho, best_val = values_by_rho[0]
    for rho, val in values_by_rho[1:]:
        if val <= best_val:
            best_rho, best_val = rho, val
    return best_rho
