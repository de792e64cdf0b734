"""Weierstrass curves over R_k (and its residue field) with a complete addition.

The curve is y^2 z + a1 x y z + a3 y z^2 = x^3 + a2 x^2 z + a4 x z^2 + a6 z^3.
Two addition routes are combined into a total group operation:

* ``add_inf`` -- the compact bihomogeneous law built from the bilinear forms
  H1..H4 and g1, g2.  Validity is tested operationally: the output triple
  must be primitive.  On pairs whose difference lies over the identity (in
  particular on the whole subgroup at infinity) it always is.
* a fallback used when that law is exceptional: a projective chord
  construction when the two residues differ (third root of the restricted
  cubic form), and a unified-slope affine formula when the residues
  coincide.  One of the routes always applies over a local ring.

The formula helpers are duck typed: coordinates and curve coefficients may be
RkElement values or MultiPoly symbols, so the same code performs concrete and
symbolic additions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    ContextMismatch,
    ExceptionalPair,
    InternalInvariantViolation,
    TooLarge,
)
from .fields import FqContext
from .localring import RkContext, RkElement
from .sympoly import MultiPoly

COUNT_POINTS_BOUND = 4096


def addition_law_parts(a, P1, P2):
    """The bilinear forms (g1, g2, H1, H2, H3, H4) of the y-unit addition law."""
    a1, a2, a3, a4, a6 = a
    X1, Y1, Z1 = P1
    X2, Y2, Z2 = P2
    w = a1 * X1 + a3 * Z1 + Y1
    g1 = X2 * w + X1 * Y2
    g2 = Z2 * w + Z1 * Y2
    x1z2 = X1 * Z2
    x2z1 = X2 * Z1
    z1z2 = Z1 * Z2
    x1x2 = X1 * X2
    x2y1 = X2 * Y1
    y1y2 = Y1 * Y2
    y1z2 = Y1 * Z2
    H1 = (
        -(a1 * a3) * x1z2
        - (a3 * a3) * z1z2
        + a1 * x2y1
        - a2 * x1x2
        - a4 * x2z1
        - a4 * x1z2
        - 3 * a6 * z1z2
        + y1y2
    )
    H2 = (
        -(a2 * a3 * a3) * z1z2
        + (a1 * a3 * a4) * z1z2
        - (a1 * a1 * a6) * z1z2
        - (a3 * a3) * x1z2
        + (a4 * a4) * z1z2
        - 4 * (a2 * a6) * z1z2
        + a3 * x2y1
        - a4 * x1x2
        - 3 * a6 * x2z1
        - 3 * a6 * x1z2
    )
    H3 = (
        (a1 * a1) * x1z2
        + (a1 * a3) * z1z2
        + a1 * y1z2
        + a2 * x2z1
        + a2 * x1z2
        + a4 * z1z2
        + 3 * x1x2
    )
    H4 = (
        (a1 * a3) * x1z2
        + (a3 * a3) * z1z2
        + a2 * x1x2
        + a3 * y1z2
        + a4 * x2z1
        + a4 * x1z2
        + 3 * a6 * z1z2
        + y1y2
    )
    return g1, g2, H1, H2, H3, H4


def addition_law_triple(a, P1, P2):
    """(X3, Y3, Z3) of P1 + P2 under the y-unit law (unnormalized)."""
    g1, g2, H1, H2, H3, H4 = addition_law_parts(a, P1, P2)
    X3 = g1 * H1 + g2 * H2
    Z3 = g1 * H3 + g2 * H4
    Y3 = H1 * H4 - H2 * H3
    return X3, Y3, Z3


def curve_equation(a, X, Y, Z):
    """y^2 z + a1 xyz + a3 yz^2 - x^3 - a2 x^2 z - a4 xz^2 - a6 z^3."""
    a1, a2, a3, a4, a6 = a
    return (
        Y * Y * Z
        + a1 * (X * Y * Z)
        + a3 * (Y * Z * Z)
        - X * X * X
        - a2 * (X * X * Z)
        - a4 * (X * Z * Z)
        - a6 * (Z * Z * Z)
    )


def symbolic_coefficients(short: bool = False):
    """Curve coefficients as symbols: extended (a1..a6) or short (0,0,0,A,B)."""
    if short:
        zero = MultiPoly.zero()
        return (zero, zero, zero, MultiPoly.var("A"), MultiPoly.var("B"))
    return tuple(MultiPoly.var(v) for v in ("a1", "a2", "a3", "a4", "a6"))


def symbolic_law_triple():
    """The y-unit law on fully symbolic points, as MultiPoly triples."""
    a = symbolic_coefficients()
    P1 = tuple(MultiPoly.var(v) for v in ("X1", "Y1", "Z1"))
    P2 = tuple(MultiPoly.var(v) for v in ("X2", "Y2", "Z2"))
    return addition_law_triple(a, P1, P2)


@dataclass(frozen=True)
class WeierstrassCurve:
    """Immutable curve over an RkContext (k = 1 gives the residue field case)."""

    ring: RkContext
    a1: RkElement
    a2: RkElement
    a3: RkElement
    a4: RkElement
    a6: RkElement

    @staticmethod
    def make(ring: RkContext, a1, a2, a3, a4, a6) -> "WeierstrassCurve":
        coeffs = [
            c if isinstance(c, RkElement) else ring.embed_int(int(c))
            for c in (a1, a2, a3, a4, a6)
        ]
        for c in coeffs:
            if c.ctx != ring:
                raise ContextMismatch("coefficient from a different ring")
        return WeierstrassCurve(ring, *coeffs)

    @property
    def a(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.a
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * (a2 * a6) - a1 * a3 * a4 + a2 * (a3 * a3) - a4 * a4
        return b2, b4, b6, b8

    def discriminant(self) -> RkElement:
        b2, b4, b6, b8 = self.b_invariants()
        return (
            -(b2 * b2 * b8) - 8 * (b4 * b4 * b4) - 27 * (b6 * b6) + 9 * (b2 * b4 * b6)
        )

    def is_elliptic(self) -> bool:
        return self.discriminant().is_unit()

    def residue_curve(self) -> "WeierstrassCurve":
        if self.ring.k == 1:
            return self
        r1 = RkContext(self.ring.field, 1)
        return WeierstrassCurve(
            r1, *(r1.element([c.project()]) for c in self.a)
        )

    def zero_point(self) -> "ProjectivePoint":
        ring = self.ring
        return ProjectivePoint(self, ring.zero(), ring.one(), ring.zero(), _checked=True)

    def point(self, X, Y, Z) -> "ProjectivePoint":
        conv = [
            c if isinstance(c, RkElement) else self.ring.embed_int(int(c))
            for c in (X, Y, Z)
        ]
        return ProjectivePoint(self, *conv)

    def affine_point(self, x, y) -> "ProjectivePoint":
        return self.point(x, y, self.ring.one())

    def __repr__(self):
        return (
            f"WeierstrassCurve(k={self.ring.k}, q={self.ring.q}, "
            f"a=({self.a1!r}, {self.a2!r}, {self.a3!r}, {self.a4!r}, {self.a6!r}))"
        )


class ProjectivePoint:
    """Point in standard form: affine (Z = 1) or at infinity (Y = 1, X, Z nilpotent)."""

    __slots__ = ("curve", "X", "Y", "Z")

    def __init__(self, curve, X, Y, Z, _checked=False):
        if not _checked:
            X, Y, Z = _normalize_triple(X, Y, Z)
            if curve_equation(curve.a, X, Y, Z) != curve.ring.zero():
                raise ValueError(f"point ({X!r} : {Y!r} : {Z!r}) is not on the curve")
        self.curve = curve
        self.X = X
        self.Y = Y
        self.Z = Z

    def is_zero(self) -> bool:
        return self.X.is_zero() and self.Z.is_zero()

    def is_affine(self) -> bool:
        return self.Z.is_unit()

    def at_infinity(self) -> bool:
        return not self.Z.is_unit()

    def residue(self):
        """The projected point's normalized coordinate triple over F_q."""
        return (self.X.project(), self.Y.project(), self.Z.project())

    def __neg__(self):
        c = self.curve
        X, Y, Z = _normalize_triple(
            self.X, -self.Y - c.a1 * self.X - c.a3 * self.Z, self.Z
        )
        return ProjectivePoint(c, X, Y, Z, _checked=True)

    def __eq__(self, other):
        return (
            isinstance(other, ProjectivePoint)
            and self.curve == other.curve
            and self.X == other.X
            and self.Y == other.Y
            and self.Z == other.Z
        )

    def __hash__(self):
        return hash((self.X, self.Y, self.Z))

    def __add__(self, other):
        return add_complete(self.curve, self, other)

    def __sub__(self, other):
        return add_complete(self.curve, self, -other)

    def __rmul__(self, n: int):
        return scalar_mul(self.curve, n, self)

    def coords(self):
        return (self.X, self.Y, self.Z)

    def __repr__(self):
        return f"({self.X!r} : {self.Y!r} : {self.Z!r})"


def _normalize_triple(X, Y, Z):
    """Scale a primitive triple to standard form (affine first, else y = 1)."""
    if Z.is_unit():
        zi = Z.inverse()
        return (X * zi, Y * zi, Z.ctx.one())
    if Y.is_unit():
        yi = Y.inverse()
        return (X * yi, Y.ctx.one(), Z * yi)
    raise ExceptionalPair("triple has no unit coordinate")


def add_inf(curve: WeierstrassCurve, P1: ProjectivePoint, P2: ProjectivePoint):
    """The y-unit law; raises ExceptionalPair when its output is not primitive."""
    X3, Y3, Z3 = addition_law_triple(curve.a, P1.coords(), P2.coords())
    if not (Z3.is_unit() or Y3.is_unit()):
        if X3.is_unit():
            raise InternalInvariantViolation(
                "law output primitive with non-unit y and z"
            )
        raise ExceptionalPair("y coordinate of the sum is a zero divisor")
    X, Y, Z = _normalize_triple(X3, Y3, Z3)
    if not curve_equation(curve.a, X, Y, Z).is_zero():
        raise InternalInvariantViolation("law output is off the curve")
    return ProjectivePoint(curve, X, Y, Z, _checked=True)


def _lin_mul(u, v):
    """(u0 s + u1 t)(v0 s + v1 t) -> [s^2, st, t^2] coefficients."""
    return (u[0] * v[0], u[0] * v[1] + u[1] * v[0], u[1] * v[1])


def _quad_lin_mul(q, v):
    """[s^2, st, t^2] x (v0 s + v1 t) -> [s^3, s^2 t, s t^2, t^3]."""
    return (
        q[0] * v[0],
        q[0] * v[1] + q[1] * v[0],
        q[1] * v[1] + q[2] * v[0],
        q[2] * v[1],
    )


def _chord_add(curve, P1, P2):
    """Sum via the third root of the curve cubic restricted to the chord.

    Valid whenever the residues of P1 and P2 differ: the restricted cubic
    form c21 s^2 t + c12 s t^2 then has a well-separated third root
    (s : t) = (-c12 : c21), and P1 + P2 = -(-c12 P1 + c21 P2).
    """
    a1, a2, a3, a4, a6 = curve.a
    x = (P1.X, P2.X)
    y = (P1.Y, P2.Y)
    z = (P1.Z, P2.Z)
    yy = _lin_mul(y, y)
    xy = _lin_mul(x, y)
    yz = _lin_mul(y, z)
    xx = _lin_mul(x, x)
    xz = _lin_mul(x, z)
    zz = _lin_mul(z, z)
    cubic = [curve.ring.zero()] * 4

    def acc(coeff, quad, lin):
        vals = _quad_lin_mul(quad, lin)
        for i in range(4):
            cubic[i] = cubic[i] + coeff * vals[i]

    one = curve.ring.one()
    acc(one, yy, z)
    acc(a1, xy, z)
    acc(a3, yz, z)
    acc(-one, xx, x)
    acc(-a2, xx, z)
    acc(-a4, xz, z)
    acc(-a6, zz, z)
    # cubic = C(s P1 + t P2); roots (1:0) and (0:1) force s^3 and t^3 out
    if not cubic[0].is_zero() or not cubic[3].is_zero():
        raise InternalInvariantViolation("points not on curve in chord addition")
    c21, c12 = cubic[1], cubic[2]
    if not (c21.is_unit() or c12.is_unit()):
        raise InternalInvariantViolation(
            "degenerate chord: residues of the two points coincide"
        )
    s, t = -c12, c21
    R = ProjectivePoint(
        curve,
        s * P1.X + t * P2.X,
        s * P1.Y + t * P2.Y,
        s * P1.Z + t * P2.Z,
    )
    return -R


def _same_residue_affine_add(curve, P1, P2):
    """Unified-slope affine addition for equal residues with affine double.

    Requires the denominator y1 + y2 + a1 x1 + a3 to be a unit, which holds
    exactly when twice the common residue is not the identity.
    """
    a1, a2, a3, a4, a6 = curve.a
    x1, y1 = P1.X, P1.Y
    x2, y2 = P2.X, P2.Y
    den = y1 + y2 + a1 * x1 + a3
    lam = (x1 * x1 + x1 * x2 + x2 * x2 + a2 * (x1 + x2) + a4 - a1 * y2) * den.inverse()
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = lam * (x1 - x3) - y1 - a1 * x3 - a3
    return ProjectivePoint(curve, x3, y3, curve.ring.one())


def add_complete(curve: WeierstrassCurve, P1: ProjectivePoint, P2: ProjectivePoint):
    """Total group addition: y-unit law first, z-unit route on exception."""
    if P1.curve != curve or P2.curve != curve:
        raise ContextMismatch("points from a different curve")
    try:
        return add_inf(curve, P1, P2)
    except ExceptionalPair:
        pass
    if P1.residue() != P2.residue():
        return _chord_add(curve, P1, P2)
    # equal residues put P1 - P2 over the identity, where the y-unit law is
    # valid; reaching this branch would contradict the exception above
    if not P1.Z.is_unit():
        raise InternalInvariantViolation(
            "y-unit law exceptional although both points lie over the identity"
        )
    return _same_residue_affine_add(curve, P1, P2)


def scalar_mul(curve: WeierstrassCurve, n: int, P: ProjectivePoint) -> ProjectivePoint:
    if n < 0:
        return scalar_mul(curve, -n, -P)
    result = curve.zero_point()
    addend = P
    while n:
        if n & 1:
            result = add_complete(curve, result, addend)
        n >>= 1
        if n:
            addend = add_complete(curve, addend, addend)
    return result


def project_point(curve: WeierstrassCurve, P: ProjectivePoint) -> ProjectivePoint:
    """Componentwise residue projection onto the curve over F_q."""
    res = curve.residue_curve()
    r1 = res.ring
    return ProjectivePoint(
        res,
        r1.element([P.X.project()]),
        r1.element([P.Y.project()]),
        r1.element([P.Z.project()]),
    )


def count_points_fq(curve: WeierstrassCurve) -> int:
    """#E(F_q) by full affine enumeration plus the point at infinity."""
    field = curve.ring.field
    if field.q > COUNT_POINTS_BOUND:
        raise TooLarge(f"q = {field.q} exceeds the counting bound {COUNT_POINTS_BOUND}")
    a1, a2, a3, a4, a6 = (c.project() for c in curve.a)
    count = 1
    elements = list(field.enumerate())
    for x in elements:
        rhs = ((x + a2) * x + a4) * x + a6
        for y in elements:
            if y * y + a1 * x * y + a3 * y == rhs:
                count += 1
    assert abs(count - field.q - 1) <= 2 * math.isqrt(4 * field.q), "Hasse bound"
    return count


def enumerate_points(curve: WeierstrassCurve):
    """All points of E(R_k) by enumerating standard forms (desk scale only)."""
    ring = curve.ring
    if ring.size() > COUNT_POINTS_BOUND:
        raise TooLarge("ring too large for full point enumeration")
    points = [curve.zero_point()]
    one = ring.one()
    for x in ring.enumerate():
        for y in ring.enumerate():
            if curve_equation(curve.a, x, y, one).is_zero():
                points.append(ProjectivePoint(curve, x, y, one, _checked=True))
    # points at infinity other than O: (x : 1 : z) with the unique z solving
    # the curve equation, found by the contractive fixed-point iteration
    a1, a2, a3, a4, a6 = curve.a
    for x in ring.enumerate_maximal_ideal():
        if x.is_zero():
            continue
        x3 = x * x * x
        z = ring.zero()
        for _ in range(ring.k):
            z = x3 - a1 * (x * z) + a2 * (x * x * z) - a3 * (z * z) \
                + a4 * (x * z * z) + a6 * (z * z * z)
        points.append(ProjectivePoint(curve, x, one, z))
    return points
