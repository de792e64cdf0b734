"""Truncated univariate series with coefficients in a pluggable ring.

Used for the specialized fast paths: coefficients are RkElement values (to
read multiplication-polynomial values for one concrete curve) or small
polynomials over F_p (for the exceptional-rate scan).  The coefficient ring
object must provide zero(), one() and embed_int(); coefficients must support
+, -, * and (for the lead coefficient of a unit) inverse().
"""

from __future__ import annotations


class Series:
    __slots__ = ("ring", "bound", "cs")

    def __init__(self, ring, bound: int, cs=None):
        self.ring = ring
        self.bound = bound
        if cs is None:
            cs = [ring.zero()] * bound
        self.cs = list(cs) + [ring.zero()] * (bound - len(cs))

    @staticmethod
    def x(ring, bound: int) -> "Series":
        s = Series(ring, bound)
        if bound > 1:
            s.cs[1] = ring.one()
        return s

    @staticmethod
    def const(ring, bound: int, c) -> "Series":
        s = Series(ring, bound)
        s.cs[0] = c
        return s

    def copy(self) -> "Series":
        return Series(self.ring, self.bound, list(self.cs))

    def is_zero(self) -> bool:
        return all(_zeroish(c) for c in self.cs)

    def __add__(self, other):
        o = self._coerce(other)
        return Series(self.ring, self.bound, [a + b for a, b in zip(self.cs, o.cs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Series(self.ring, self.bound, [a - b for a, b in zip(self.cs, o.cs)])

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Series(self.ring, self.bound, [-a for a in self.cs])

    def _coerce(self, other):
        if isinstance(other, Series):
            if other.bound != self.bound:
                raise ValueError("series bounds differ")
            return other
        if isinstance(other, int):
            return Series.const(self.ring, self.bound, self.ring.embed_int(other))
        return Series.const(self.ring, self.bound, other)

    def __mul__(self, other):
        if isinstance(other, int):
            c = self.ring.embed_int(other)
            return Series(self.ring, self.bound, [a * c for a in self.cs])
        if not isinstance(other, Series):
            return Series(self.ring, self.bound, [a * other for a in self.cs])
        o = self._coerce(other)
        n = self.bound
        out = [self.ring.zero()] * n
        for i, a in enumerate(self.cs):
            if _zeroish(a):
                continue
            for j in range(n - i):
                b = o.cs[j]
                if _zeroish(b):
                    continue
                out[i + j] = out[i + j] + a * b
        return Series(self.ring, n, out)

    __rmul__ = __mul__

    def truncate(self, bound: int) -> "Series":
        return Series(self.ring, bound, self.cs[:bound])

    def invert_unit(self) -> "Series":
        """Newton iteration; the constant coefficient must be invertible."""
        c0 = self.cs[0]
        v = Series.const(self.ring, self.bound, c0.inverse())
        prec = 1
        while prec < self.bound:
            prec = min(2 * prec, self.bound)
            u = self.truncate(prec)
            w = v.truncate(prec)
            v = w * (Series.const(self.ring, prec, self.ring.embed_int(2)) - u * w)
        return v.truncate(self.bound)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.bound == other.bound and all(
            a == b for a, b in zip(self.cs, other.cs)
        )

    def __repr__(self):
        return f"Series({self.cs!r})"


def _zeroish(c) -> bool:
    z = getattr(c, "is_zero", None)
    return z() if z is not None else not c


def series_f(a_coeffs, ring, bound: int) -> Series:
    """The at-infinity parameterization z = f(x) as a series, by fixed-point
    iteration of z <- x^3 - a1 x z + a2 x^2 z - a3 z^2 + a4 x z^2 + a6 z^3.

    The t-th iterate is correct modulo x^(3+t), so the working precision
    grows progressively; the loop runs at most bound - 3 useful steps.
    """
    a1, a2, a3, a4, a6 = a_coeffs
    z = Series(ring, min(4, bound))
    prec = min(4, bound)
    while True:
        x = Series.x(ring, prec)
        x2 = x * x
        x3 = x2 * x
        zt = z.truncate(prec) if z.bound >= prec else Series(ring, prec, z.cs)
        z2 = zt * zt
        nz = (
            x3
            - a1 * (x * zt)
            + a2 * (x2 * zt)
            - a3 * z2
            + a4 * (x * z2)
            + a6 * (z2 * zt)
        )
        if prec == bound and nz == zt:
            return nz
        z = nz
        prec = min(bound, prec + 1)


def series_point_add(a_coeffs, P1, P2, ring, bound: int):
    """Add two at-infinity points given as (x, z) series pairs; y is 1.

    Curve coefficients stay plain ring elements (scalar multiplications).
    Returns the normalized (x, z) of the sum.
    """
    from ..curve import addition_law_triple

    one = Series.const(ring, bound, ring.one())
    X3, Y3, Z3 = addition_law_triple(
        a_coeffs, (P1[0], one, P1[1]), (P2[0], one, P2[1])
    )
    yinv = Y3.invert_unit()
    return (X3 * yinv, Z3 * yinv)


def series_point_scalar(a_coeffs, n: int, P, ring, bound: int):
    """n-th multiple of an (x, z) series point (n >= 1)."""
    bits = bin(n)[2:]
    acc = P
    for b in bits[1:]:
        acc = series_point_add(a_coeffs, acc, acc, ring, bound)
        if b == "1":
            acc = series_point_add(a_coeffs, acc, P, ring, bound)
    return acc
