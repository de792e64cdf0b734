"""Rate of exceptional short-form curves: zeros of psi_p(p) over F_p.

psi_p(p) reduces modulo p to a polynomial in the short coefficients (A, B);
a curve is exceptional exactly when that value vanishes in the residue
field.  The polynomial is obtained once per prime by running the generic
point multiplication with coefficients in F_p[A, B], then evaluated on all
non-singular pairs.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import NotPrime
from ..fields import is_prime
from .series import Series, series_f, series_point_scalar

SCAN_MIN_P = 5
SCAN_MAX_P = 79


class ModPoly:
    """Sparse polynomial in (A, B) over F_p."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: dict[tuple[int, int], int] | None = None):
        self.p = p
        self.terms = terms or {}

    @staticmethod
    def const(p: int, c: int) -> "ModPoly":
        c %= p
        return ModPoly(p, {(0, 0): c} if c else {})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for k, c in o.terms.items():
            s = (terms.get(k, 0) + c) % self.p
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return ModPoly(self.p, terms)

    __radd__ = __add__

    def __neg__(self):
        return ModPoly(self.p, {k: self.p - c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        terms: dict[tuple[int, int], int] = {}
        p = self.p
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in o.terms.items():
                k = (i1 + i2, j1 + j2)
                s = (terms.get(k, 0) + c1 * c2) % p
                if s:
                    terms[k] = s
                else:
                    terms.pop(k, None)
        return ModPoly(p, terms)

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, ModPoly):
            return other
        if isinstance(other, int):
            return ModPoly.const(self.p, other)
        return NotImplemented

    def inverse(self) -> "ModPoly":
        if set(self.terms) != {(0, 0)}:
            raise ValueError("only constant units are invertible here")
        return ModPoly.const(self.p, pow(self.terms[(0, 0)], -1, self.p))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.p == o.p and self.terms == o.terms

    def evaluate(self, a_val: int, b_val: int) -> int:
        p = self.p
        total = 0
        for (i, j), c in self.terms.items():
            total += c * pow(a_val, i, p) * pow(b_val, j, p)
        return total % p

    def __repr__(self):
        return f"ModPoly(p={self.p}, {self.terms})"


class ModPolyRing:
    """Coefficient-ring adapter for Series."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        self.p = p

    def zero(self) -> ModPoly:
        return ModPoly(self.p)

    def one(self) -> ModPoly:
        return ModPoly.const(self.p, 1)

    def embed_int(self, n: int) -> ModPoly:
        return ModPoly.const(self.p, n)


def psi_p_of_p_short(p: int) -> ModPoly:
    """psi_p(p) mod p for the short form, as a polynomial in (A, B) over F_p."""
    ring = ModPolyRing(p)
    zero = ring.zero()
    A = ModPoly(p, {(1, 0): 1})
    B = ModPoly(p, {(0, 1): 1})
    a = (zero, zero, zero, A, B)
    bound = p + 1
    f = series_f(a, ring, bound)
    P = (Series.x(ring, bound), f)
    S = series_point_scalar(a, p, P, ring, bound)
    return S[0].cs[p]


def scan_exceptional_rate(p: int) -> Fraction:
    """Fraction of non-singular (A, B) in F_p^2 with psi_p(p) = 0 in F_p."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not SCAN_MIN_P <= p <= SCAN_MAX_P:
        raise ValueError(f"scan supports primes in [{SCAN_MIN_P}, {SCAN_MAX_P}]")
    psi = psi_p_of_p_short(p)
    total = 0
    zeros = 0
    for a_val in range(p):
        disc_a = 4 * pow(a_val, 3, p)
        for b_val in range(p):
            if (disc_a + 27 * b_val * b_val) % p == 0:
                continue  # singular: -16(4A^3 + 27B^2) = 0
            total += 1
            if psi.evaluate(a_val, b_val) == 0:
                zeros += 1
    return Fraction(zeros, total)
