"""Group structure of the subgroup at infinity (and the full-curve report).

Main case (psi_p(p) a unit): the subgroup is a product over 1 <= m <= k-1
coprime to p of (Z_{p^{l_m}})^e with l_m = floor(log_p((k-1)/m)) + 1.
Exceptional case (eps | psi_p(p)): under conditions C1-C3 the product runs
over the greedy set of minimal degrees not covered by an earlier
trajectory.  Everything degree-related is computed from actual point
arithmetic; the closed forms are used as assertions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from ..curve import WeierstrassCurve, count_points_fq
from ..errors import TableTooLarge, TooLarge, UnsupportedExceptional
from ..localring import INFINITY
from .points import InfinityPoint, inf_scalar, trajectory
from .psi import psi_values_at

CHECK_CONDITIONS_MAX_P = 13
BRUTE_FORCE_BOUND = 4096


@dataclass(frozen=True)
class GroupStructure:
    """Multiset of prime-power cyclic orders with multiplicities."""

    factors: tuple[tuple[int, int], ...]  # (order p^l, multiplicity), order desc
    provenance: str  # main-case | exceptional-case | small-k | brute-force
    residue_order: int | None = None
    split: bool | None = None

    def infinity_order(self) -> int:
        out = 1
        for order, mult in self.factors:
            out *= order**mult
        return out

    def factors_text(self) -> str:
        if not self.factors:
            return "trivial"
        return " x ".join(
            f"Z_{order}" + (f"^{mult}" if mult > 1 else "")
            for order, mult in self.factors
        )

    def text(self) -> str:
        lines = [f"E_infinity = {self.factors_text()} ({self.provenance})"]
        if self.residue_order is not None:
            if self.split:
                lines.append(
                    f"E = E(F_q) x E_infinity with #E(F_q) = {self.residue_order}"
                )
            else:
                lines.append(
                    f"#E(F_q) = {self.residue_order}; gcd with p is not 1, "
                    "the extension may not split (subgroup-at-infinity part only)"
                )
        return "\n".join(lines)


@dataclass(frozen=True)
class ExceptionalReport:
    d: object  # nu(psi_p(p)) > 0, possibly INFINITY when psi_p(p) = 0
    c1: bool
    c2: bool
    c3: bool
    a_set: tuple[int, ...]
    l_m: dict[int, int]

    def all_hold(self) -> bool:
        return self.c1 and self.c2 and self.c3

    def failing(self) -> list[str]:
        return [name for name, ok in (("C1", self.c1), ("C2", self.c2), ("C3", self.c3)) if not ok]


def _require_elliptic(curve: WeierstrassCurve) -> None:
    if not curve.is_elliptic():
        raise ValueError("curve is singular (discriminant is not a unit)")


def classify_case(curve: WeierstrassCurve):
    """("main", None) when psi_p(p) is a unit, else ("exceptional", d)."""
    _require_elliptic(curve)
    p = curve.ring.p
    vals = psi_values_at(curve, p, p)
    w = vals[p]
    if w.is_unit():
        return ("main", None)
    return ("exceptional", w.nu() if not w.is_zero() else INFINITY)


def check_conditions(curve: WeierstrassCurve, with_generators: bool = True) -> ExceptionalReport:
    """Evaluate conditions C1-C3 of the exceptional structure theorem.

    C1: psi_{p^2}(p) is a unit; C2: psi_i(p) = 0 for i < p^2 coprime to p;
    C3: psi_i(p) in <psi_p(p)> for p | i < p^2 (ideal membership by eps-adic
    division in the chain ring R_k).
    """
    _require_elliptic(curve)
    p = curve.ring.p
    if p > CHECK_CONDITIONS_MAX_P:
        raise TableTooLarge(
            f"p = {p} exceeds the condition-check budget {CHECK_CONDITIONS_MAX_P}"
        )
    kind, d = classify_case(curve)
    if kind != "exceptional":
        raise ValueError("check_conditions applies to exceptional curves only")
    vals = psi_values_at(curve, p, p * p)
    wp = vals[p]
    c1 = vals[p * p].is_unit()
    c2 = all(vals[i].is_zero() for i in range(1, p * p) if i % p != 0)
    c3 = all(
        vals[i].divide_exact(wp) is not None
        for i in range(p, p * p, p)
    )
    a_set: tuple[int, ...] = ()
    l_m: dict[int, int] = {}
    if with_generators and c1 and c2 and c3:
        a_set, l_m = _greedy_trajectories(curve)
    return ExceptionalReport(d, c1, c2, c3, a_set, l_m)


def _greedy_trajectories(curve: WeierstrassCurve):
    """A-set and trajectory lengths from g_m = (eps^m : 1 : f(eps^m)): keep
    each m not contained in the trajectory of an earlier generator."""
    ring = curve.ring
    covered: set[int] = set()
    a_set: list[int] = []
    l_m: dict[int, int] = {}
    for m in range(1, ring.k):
        if m in covered:
            continue
        trj = trajectory(InfinityPoint.from_x(curve, ring.eps(m)))
        a_set.append(m)
        l_m[m] = len(trj)
        covered.update(trj)
    return tuple(a_set), l_m


def _collect_factors(contributions, e: int):
    """contributions: iterable of orders p^l (one per generator residue-line);
    each contributes multiplicity e."""
    counts: dict[int, int] = {}
    for order in contributions:
        if order > 1:
            counts[order] = counts.get(order, 0) + e
    return tuple(sorted(counts.items(), reverse=True))


def group_structure(curve: WeierstrassCurve) -> GroupStructure:
    _require_elliptic(curve)
    ring = curve.ring
    p, e, k = ring.p, ring.field.e, ring.k
    if k == 1:
        return GroupStructure((), "small-k")
    kind, d = classify_case(curve)
    if kind == "main":
        orders = []
        for m in range(1, k):
            if m % p == 0:
                continue
            l = 1
            while m * p**l <= k - 1:
                l += 1
            orders.append(p**l)
        provenance = "small-k" if k <= p else "main-case"
        structure = GroupStructure(_collect_factors(orders, e), provenance)
    else:
        report = check_conditions(curve)
        if not report.all_hold():
            raise UnsupportedExceptional(
                f"exceptional curve with d = {report.d} fails {report.failing()}; "
                "no classified structure",
                d=report.d,
                failing=report.failing(),
            )
        if sum(report.l_m.values()) != k - 1:
            raise UnsupportedExceptional(
                "trajectory lengths do not partition 1..k-1",
                d=report.d,
                failing=["partition"],
            )
        orders = [p ** report.l_m[m] for m in report.a_set]
        provenance = "small-k" if k <= p + 1 else "exceptional-case"
        structure = GroupStructure(_collect_factors(orders, e), provenance)
    expected = ring.q ** (k - 1)
    assert structure.infinity_order() == expected, "fiber size mismatch"
    return structure


def full_group_report(curve: WeierstrassCurve) -> GroupStructure:
    """Structure with the residue part: splits whenever gcd(#E(F_q), p) = 1."""
    _require_elliptic(curve)
    n_res = count_points_fq(curve.residue_curve())
    if curve.ring.k == 1:
        return GroupStructure((), "small-k", residue_order=n_res, split=True)
    base = group_structure(curve)
    split = math.gcd(n_res, curve.ring.p) == 1
    return replace(base, residue_order=n_res, split=split)


def brute_force_structure(curve: WeierstrassCurve) -> GroupStructure:
    """Oracle: enumerate the identity fiber, compute every element order by
    repeated addition, and reconstruct the abelian p-group from the order
    statistics.  Independent of every closed-form result."""
    _require_elliptic(curve)
    ring = curve.ring
    size = ring.q ** (ring.k - 1)
    if size > BRUTE_FORCE_BOUND:
        raise TooLarge(f"fiber size {size} exceeds {BRUTE_FORCE_BOUND}")
    p = ring.p
    tally: dict[int, int] = {}
    for x in ring.enumerate_maximal_ideal():
        P = InfinityPoint.from_x(curve, x)
        j = 0
        while not P.is_zero():
            P = inf_scalar(p, P)
            j += 1
        tally[j] = tally.get(j, 0) + 1
    max_j = max(tally)
    cumulative = []
    run = 0
    for j in range(max_j + 1):
        run += tally.get(j, 0)
        cumulative.append(run)
    assert cumulative[-1] == size
    logs = []
    for c in cumulative:
        lg = round(math.log(c, p))
        assert p**lg == c, "subgroup counts must be p powers"
        logs.append(lg)
    parts_ge = [logs[j] - logs[j - 1] for j in range(1, max_j + 1)]
    factors: dict[int, int] = {}
    for j in range(1, max_j + 1):
        exact = parts_ge[j - 1] - (parts_ge[j] if j < max_j else 0)
        if exact:
            factors[p**j] = exact
    return GroupStructure(
        tuple(sorted(factors.items(), reverse=True)), "brute-force"
    )
