"""The polynomial f with z = f(x) on the subgroup at infinity.

Every point over the identity residue is (x : 1 : f(x)) where f solves the
fixed-point equation z = x^3 - a1 x z + a2 x^2 z - a3 z^2 + a4 x z^2 + a6 z^3
obtained from the curve equation at y = 1.  Iterated substitution converges
x-adically; x^3 divides f and deg f < k.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..curve import WeierstrassCurve, symbolic_coefficients
from ..errors import ValidationFailed
from ..localring import RkElement
from ..sympoly import MultiPoly
from .series import Series, series_f


def _fixed_point_rhs(a, x, z):
    a1, a2, a3, a4, a6 = a
    return (
        x * x * x
        - a1 * (x * z)
        + a2 * (x * x * z)
        - a3 * (z * z)
        + a4 * (x * (z * z))
        + a6 * (z * z * z)
    )


@dataclass(frozen=True)
class FPolynomial:
    """f as a truncated polynomial in X, symbolic (MultiPoly) coefficients."""

    k: int
    form: str  # "extended" | "short"
    poly: MultiPoly  # in X and curve-coefficient variables, modulo X^k

    def coefficient(self, i: int) -> MultiPoly:
        return self.poly.coefficient_of("X", i)

    def text(self) -> str:
        return self.poly.text()


def compute_f(k: int, form: str = "extended") -> FPolynomial:
    """Symbolic f modulo x^k by progressively truncated fixed-point iteration."""
    a = symbolic_coefficients(short=(form == "short"))
    prec = min(4, k)
    z = MultiPoly.zero((prec, ("X",)))
    while True:
        x = MultiPoly.var("X", (prec, ("X",)))
        zt = z.truncate(prec)
        nz = _fixed_point_rhs(a, x, zt)
        if prec == k and nz == zt:
            break
        z = nz
        prec = min(k, prec + 1)
    f = FPolynomial(k, form, nz)
    _validate_f(f, a)
    return f


def _validate_f(f: FPolynomial, a) -> None:
    for i in range(min(3, f.k)):
        if not f.coefficient(i).is_zero():
            raise ValidationFailed(f"x^3 does not divide f: coefficient {i} nonzero")
    x = MultiPoly.var("X", (f.k, ("X",)))
    again = _fixed_point_rhs(a, x, f.poly.truncate(f.k))
    if again != f.poly:
        raise ValidationFailed("f does not satisfy its fixed-point equation")


def curve_f_series(curve: WeierstrassCurve) -> tuple[RkElement, ...]:
    """Coefficients of f specialized to a concrete curve, modulo x^k."""
    ring = curve.ring
    return tuple(series_f(curve.a, ring, ring.k).cs)


def f_value_at(curve: WeierstrassCurve, x: RkElement) -> RkElement:
    """z = f(x) for a concrete x in the maximal ideal, by direct iteration."""
    a = curve.a
    ring = curve.ring
    z = ring.zero()
    for _ in range(ring.k):
        nz = _fixed_point_rhs(a, x, z)
        if nz == z:
            break
        z = nz
    return z
