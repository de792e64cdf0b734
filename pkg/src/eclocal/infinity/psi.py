"""Multiplication polynomials psi_i: the coefficient of X^i in (nP)_x.

For a symbolic point P = (X : 1 : f(X)) on the subgroup at infinity, the
x coordinate of nP is sum_i psi_i(n) X^i where psi_i is a degree-i rational
polynomial in n (over the curve-coefficient variables) with no constant
term.  Tables are built exactly as the defining computation suggests:
accumulate nP symbolically modulo X^(i_max+1), fit each coefficient by
exact Lagrange interpolation in n, then validate the fitted table against
the addition recurrence.

Degree certificate used by the validation: every X^j coefficient of either
side of (n-1)P + P = nP is a polynomial in n of degree at most j (products
of psi_{j'} values with X-weights summing to j), so agreement at i_max + 2
integer nodes proves the identity in Q[a...][n].
"""

from __future__ import annotations

import os
import pathlib
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from ..curve import WeierstrassCurve, addition_law_triple, curve_equation, symbolic_coefficients
from ..errors import DenominatorNotClearing, TableTooLarge, ValidationFailed
from ..localring import RkElement
from ..sympoly import (
    MultiPoly,
    key_exponents,
    parse_poly,
    poly_denominator_profile,
    poly_interpolate_n,
)
from .fpoly import compute_f
from .series import Series, series_f, series_point_scalar

SHORT_VARS = ("A", "B")
EXTENDED_VARS = ("a1", "a2", "a3", "a4", "a6")


def _sym_generator(K: int, form: str):
    f = compute_f(K, form)
    x = MultiPoly.var("X", (K, ("X",)))
    return (x, f.poly.truncate(K)), f


def _sym_add(a, P, Q, K: int):
    one = MultiPoly.const(1, (K, ("X",)))
    X3, Y3, Z3 = addition_law_triple(a, (P[0], one, P[1]), (Q[0], one, Q[1]))
    yinv = Y3.invert_unit()
    return (X3 * yinv, Z3 * yinv)


@dataclass
class MultPolyTable:
    """psi_1..psi_i_max as polynomials in n over the coefficient variables."""

    i_max: int
    form: str  # "extended" | "short"
    psis: dict[int, MultiPoly]

    def psi(self, i: int) -> MultiPoly:
        if not 1 <= i <= self.i_max:
            raise TableTooLarge(f"psi_{i} outside table bound {self.i_max}")
        return self.psis[i]

    def check_invariants(self) -> None:
        pin = 1
        for i in range(1, self.i_max + 1):
            pin *= factorial(i)
            psi = self.psis[i]
            dn = psi.degree("n")
            if self.form == "extended" and dn != i:
                raise ValidationFailed(f"deg_n(psi_{i}) = {dn}, expected {i}")
            if dn > i:
                raise ValidationFailed(f"deg_n(psi_{i}) = {dn} exceeds {i}")
            if psi.substitute({"n": Fraction(0)}) != MultiPoly.zero():
                raise ValidationFailed(f"psi_{i}(0) != 0")
            if i >= 2 and psi.substitute({"n": Fraction(1)}) != MultiPoly.zero():
                raise ValidationFailed(f"psi_{i}(1) != 0")
            for c in psi.terms.values():
                if (pin * c).denominator != 1:
                    raise ValidationFailed(
                        f"Pi({i}) * psi_{i} is not integral (coefficient {c})"
                    )
            _, primes = poly_denominator_profile(psi)
            if any(pr > i for pr in primes):
                raise ValidationFailed(
                    f"denominator prime above {i} in psi_{i}: {primes}"
                )

    # -- serialization ------------------------------------------------------
    def to_text(self) -> str:
        lines = [f"# psi-table form={self.form} i_max={self.i_max}"]
        for i in range(1, self.i_max + 1):
            psi = self.psis[i]
            groups: dict[int, dict[int, Fraction]] = {}
            nvar = "n"
            for key, c in psi.terms.items():
                exps = key_exponents(key)
                ne = exps.pop(nvar, 0)
                mon_key = _mon_key_from_exps(exps)
                groups.setdefault(mon_key, {})[_n_key(ne)] = c
            if not groups:
                lines.append(f"{i}\t1\t0")
                continue
            for mon_key in sorted(groups):
                mon = MultiPoly({mon_key: Fraction(1)})
                npoly = MultiPoly(groups[mon_key])
                mon_text = mon.text() if mon_key else "1"
                lines.append(f"{i}\t{mon_text}\t{npoly.text()}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "MultPolyTable":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = dict(
            part.split("=") for part in lines[0].split() if "=" in part
        )
        form = head["form"]
        i_max = int(head["i_max"])
        psis = {i: MultiPoly.zero() for i in range(1, i_max + 1)}
        for ln in lines[1:]:
            i_s, mon_s, npoly_s = ln.split("\t")
            i = int(i_s)
            mon = MultiPoly.const(1) if mon_s == "1" else parse_poly(mon_s)
            psis[i] = psis[i] + mon * parse_poly(npoly_s)
        table = MultPolyTable(i_max, form, psis)
        table.check_invariants()
        return table


def _mon_key_from_exps(exps: dict[str, int]) -> int:
    from ..sympoly import monomial_key

    return monomial_key(exps)


def _n_key(e: int) -> int:
    from ..sympoly import monomial_key

    return monomial_key({"n": e}) if e else 0


def build_psi_table(i_max: int, form: str = "extended") -> MultPolyTable:
    """Accumulate, fit, and validate the table; exact throughout."""
    if form not in ("extended", "short"):
        raise ValueError(f"unknown form {form!r}")
    K = i_max + 1
    a = symbolic_coefficients(short=(form == "short"))
    P, _f = _sym_generator(K, form)
    n_max = i_max + 3
    one = MultiPoly.const(1, (K, ("X",)))
    mults = {1: P}
    acc = P
    for n in range(2, n_max + 1):
        acc = _sym_add(a, acc, P, K)
        if not curve_equation(a, acc[0], one, acc[1]).is_zero():
            raise ValidationFailed(f"accumulated {n}P is off the curve")
        mults[n] = acc
    psis: dict[int, MultiPoly] = {}
    for i in range(1, i_max + 1):
        samples = [
            (n, mults[n][0].coefficient_of("X", i)) for n in range(1, n_max + 1)
        ]
        fit = poly_interpolate_n(samples, degree=i)
        if fit.substitute({"n": Fraction(0)}) != MultiPoly.zero():
            raise ValidationFailed(f"fitted psi_{i} has no root at n = 0")
        psis[i] = fit
    table = MultPolyTable(i_max, form, psis)
    table.check_invariants()
    validate_table(table)
    return table


def table_point(table: MultPolyTable, m: int, K: int, form: str):
    """The point (sum_i psi_i(m) X^i : 1 : f(...)) built from the table."""
    x = MultiPoly.zero((K, ("X",)))
    Xv = MultiPoly.var("X", (K, ("X",)))
    for i in range(1, min(table.i_max, K - 1) + 1):
        ci = table.psis[i].substitute({"n": Fraction(m)})
        x = x + ci * Xv**i
    f = compute_f(K, form)
    z = f.poly.substitute({"X": x}).truncate(K)
    return (x, z)


def validate_table(table: MultPolyTable) -> None:
    """Check (n-1)P + P = nP with both sides expressed through the table.

    Agreement at i_max + 2 integer nodes certifies the identity (each X^j
    coefficient of the difference has degree <= j <= i_max in n).
    """
    K = table.i_max + 1
    a = symbolic_coefficients(short=(table.form == "short"))
    P, _ = _sym_generator(K, table.form)
    for n0 in range(2, table.i_max + 4):
        Q = table_point(table, n0 - 1, K, table.form)
        S = _sym_add(a, Q, P, K)
        expected = table_point(table, n0, K, table.form)
        if S[0] != expected[0]:
            raise ValidationFailed(
                f"(n-1)P + P != nP at n = {n0}: fitted table inconsistent"
            )


# -- caching -------------------------------------------------------------


_MEMORY_TABLES: dict[tuple[str, int], MultPolyTable] = {}


def cache_dir() -> pathlib.Path:
    override = os.environ.get("ECLOCAL_CACHE")
    if override:
        return pathlib.Path(override)
    return pathlib.Path.home() / ".cache" / "eclocal"


def psi_table(i_max: int, form: str = "extended", use_disk: bool = True) -> MultPolyTable:
    """Cached table access: memory first, then disk, else build and persist."""
    for (f, im), t in _MEMORY_TABLES.items():
        if f == form and im >= i_max:
            return t
    if use_disk:
        d = cache_dir()
        if d.is_dir():
            best = None
            for path in d.glob(f"psi_{form}_*.txt"):
                try:
                    im = int(path.stem.rsplit("_", 1)[1])
                except ValueError:
                    continue
                if im >= i_max and (best is None or im < best[0]):
                    best = (im, path)
            if best is not None:
                table = MultPolyTable.from_text(best[1].read_text())
                _MEMORY_TABLES[(form, table.i_max)] = table
                return table
    table = build_psi_table(i_max, form)
    _MEMORY_TABLES[(form, i_max)] = table
    if use_disk:
        d = cache_dir()
        d.mkdir(parents=True, exist_ok=True)
        (d / f"psi_{form}_{i_max}.txt").write_text(table.to_text())
    return table


# -- specialization ---------------------------------------------------------


def psi_eval(table: MultPolyTable, i: int, n: int, curve: WeierstrassCurve) -> RkElement:
    """psi_i(n) for a concrete curve; the integer specialization must clear
    all denominators (it always does; a failure indicates an engine bug)."""
    pn = table.psi(i).substitute({"n": Fraction(n)})
    ring = curve.ring
    if table.form == "short":
        if not (curve.a1.is_zero() and curve.a2.is_zero() and curve.a3.is_zero()):
            raise ValueError("short-form table requires a1 = a2 = a3 = 0")
        mapping = {"A": curve.a4, "B": curve.a6}
    else:
        mapping = dict(zip(EXTENDED_VARS, curve.a))
    acc = ring.zero()
    powers: dict[tuple[str, int], RkElement] = {}
    for key, c in pn.terms.items():
        if c.denominator != 1:
            raise DenominatorNotClearing(
                f"psi_{i}({n}) kept denominator {c.denominator}"
            )
        term = ring.embed_int(c.numerator)
        for var, e in key_exponents(key).items():
            pw = powers.get((var, e))
            if pw is None:
                pw = mapping[var] ** e
                powers[(var, e)] = pw
            term = term * pw
        acc = acc + term
    return acc


def psi_values_at(curve: WeierstrassCurve, n: int, i_max: int) -> list[RkElement]:
    """[psi_0(n)=0, psi_1(n), ..., psi_i_max(n)] for one concrete curve.

    Specialized-coefficient fast path: nP is computed for a generic X with
    coefficients in R_k, modulo X^(i_max+1); no symbolic table is needed.
    """
    ring = curve.ring
    bound = i_max + 1
    if n == 0:
        return [ring.zero()] * bound
    f = series_f(curve.a, ring, bound)
    P = (Series.x(ring, bound), f)
    S = series_point_scalar(curve.a, n, P, ring, bound)
    return list(S[0].cs)
