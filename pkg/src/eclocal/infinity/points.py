"""Points of the subgroup at infinity, stored by their x coordinate.

A point is (x : 1 : f(x)) with nu(x) >= 1; the y-unit addition law is always
valid here, so arithmetic never leaves this chart.
"""

from __future__ import annotations

from ..curve import ProjectivePoint, WeierstrassCurve, addition_law_triple, curve_equation
from ..errors import InternalInvariantViolation, NotInMaximalIdeal
from ..localring import INFINITY, RkElement
from .fpoly import f_value_at


class InfinityPoint:
    __slots__ = ("curve", "x", "z")

    def __init__(self, curve: WeierstrassCurve, x: RkElement, z: RkElement):
        self.curve = curve
        self.x = x
        self.z = z

    @staticmethod
    def from_x(curve: WeierstrassCurve, x) -> "InfinityPoint":
        if isinstance(x, int):
            x = curve.ring.embed_int(x)
        if x.nu() < 1:
            raise NotInMaximalIdeal("x coordinate must lie in the maximal ideal")
        z = f_value_at(curve, x)
        P = InfinityPoint(curve, x, z)
        P.validate()
        return P

    @staticmethod
    def zero(curve: WeierstrassCurve) -> "InfinityPoint":
        ring = curve.ring
        return InfinityPoint(curve, ring.zero(), ring.zero())

    def validate(self) -> None:
        one = self.curve.ring.one()
        if not curve_equation(self.curve.a, self.x, one, self.z).is_zero():
            raise InternalInvariantViolation("infinity point off the curve")

    def is_zero(self) -> bool:
        return self.x.is_zero()

    def nu(self):
        """Minimal degree of the point: nu(x); INFINITY for the identity."""
        return self.x.nu()

    def to_projective(self) -> ProjectivePoint:
        ring = self.curve.ring
        return ProjectivePoint(self.curve, self.x, ring.one(), self.z, _checked=True)

    def __neg__(self) -> "InfinityPoint":
        c = self.curve
        one = c.ring.one()
        y = -one - c.a1 * self.x - c.a3 * self.z
        u = y.inverse()
        return InfinityPoint(c, self.x * u, self.z * u)

    def __add__(self, other: "InfinityPoint") -> "InfinityPoint":
        return inf_add(self, other)

    def __sub__(self, other: "InfinityPoint") -> "InfinityPoint":
        return inf_add(self, -other)

    def __rmul__(self, n: int) -> "InfinityPoint":
        return inf_scalar(n, self)

    def __eq__(self, other):
        return (
            isinstance(other, InfinityPoint)
            and self.curve == other.curve
            and self.x == other.x
        )

    def __hash__(self):
        return hash(self.x)

    def __repr__(self):
        return f"({self.x!r} : 1 : {self.z!r})"


def inf_add(P: InfinityPoint, Q: InfinityPoint) -> InfinityPoint:
    """Addition on the subgroup at infinity (the y-unit law, never exceptional)."""
    curve = P.curve
    one = curve.ring.one()
    X3, Y3, Z3 = addition_law_triple(
        curve.a, (P.x, one, P.z), (Q.x, one, Q.z)
    )
    if not Y3.is_unit():
        raise InternalInvariantViolation("y-unit law exceptional over the identity fiber")
    u = Y3.inverse()
    return InfinityPoint(curve, X3 * u, Z3 * u)


def inf_scalar(n: int, P: InfinityPoint) -> InfinityPoint:
    if n < 0:
        return inf_scalar(-n, -P)
    result = InfinityPoint.zero(P.curve)
    addend = P
    while n:
        if n & 1:
            result = inf_add(result, addend)
        n >>= 1
        if n:
            addend = inf_add(addend, addend)
    return result


def trajectory(P: InfinityPoint) -> list[int]:
    """The finite minimal degrees of the multiples of P: nu(p^j P) until the
    identity.  Only p-power multiples matter since prime-to-p multiples keep
    the minimal degree; computed by actual point arithmetic."""
    if P.is_zero():
        raise ValueError("trajectory of the identity is empty")
    p = P.curve.ring.p
    out = []
    Q = P
    while not Q.is_zero():
        out.append(Q.nu())
        Q = inf_scalar(p, Q)
    assert all(a < b for a, b in zip(out, out[1:])), "minimal degrees must increase"
    return out


def point_order(P: InfinityPoint) -> int:
    """ord(P) = p^(trajectory length); 1 for the identity."""
    if P.is_zero():
        return 1
    return P.curve.ring.p ** len(trajectory(P))


def x_of_multiple(P: InfinityPoint, n: int, table=None) -> RkElement:
    """(nP)_x by direct scalar multiplication; with a table supplied the
    expansion sum psi_i(n) x^i is computed as well and must agree."""
    direct = inf_scalar(n, P).x
    if table is not None:
        from .psi import psi_eval

        ring = P.curve.ring
        acc = ring.zero()
        xpow = ring.one()
        for i in range(1, ring.k):
            xpow = xpow * P.x
            if xpow.is_zero():
                break
            if i > table.i_max:
                raise ValueError(f"table bound {table.i_max} too small for k={ring.k}")
            acc = acc + psi_eval(table, i, n, P.curve) * xpow
        if acc != direct:
            raise InternalInvariantViolation(
                f"table expansion of ({n}P)_x disagrees with direct multiplication"
            )
    return direct
