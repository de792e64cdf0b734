"""Exact arithmetic in prime fields F_p and extensions F_q = F_{p^e}.

Elements are coefficient vectors over F_p with respect to the power basis of
a monic irreducible modulus; for e = 1 the modulus is the identity
placeholder ``(0, 1)`` (the polynomial t) and elements are residues mod p.
The canonical integer encoding of an element is its digit vector read as a
little-endian base-p integer, so 0 -> 0, 1 -> 1 and for F_4 the sequence
0, 1, t, t+1 maps to 0, 1, 2, 3.
"""

from __future__ import annotations

import functools
from typing import Iterator

from .errors import (
    ContextMismatch,
    DivisionByZero,
    NoDefaultModulus,
    NotPrime,
    ReducibleModulus,
)

DEFAULT_MODULUS_MAX_P = 13
DEFAULT_MODULUS_MAX_E = 4


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of num by monic den over F_p (coefficient lists, little-endian)."""
    num = list(num)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] % p
        if c:
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    r = [c % p for c in num[:dd]]
    return r


def _poly_is_zero(poly: list[int]) -> bool:
    return all(c == 0 for c in poly)


def _irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Exhaustive check: no monic factor of degree <= deg/2 divides modulus."""
    e = len(modulus) - 1
    if e == 1:
        return True
    den = list(modulus)
    for d in range(1, e // 2 + 1):
        # iterate all monic degree-d polynomials over F_p
        for idx in range(p**d):
            cand = []
            m = idx
            for _ in range(d):
                m, r = divmod(m, p)
                cand.append(r)
            cand.append(1)
            if _poly_is_zero(_poly_mod(den, cand, p)):
                return False
    return True


@functools.lru_cache(maxsize=None)
def _default_modulus(p: int, e: int) -> tuple[int, ...]:
    """First monic irreducible of degree e over F_p in lexicographic order."""
    if p > DEFAULT_MODULUS_MAX_P or e > DEFAULT_MODULUS_MAX_E:
        raise NoDefaultModulus(
            f"no bundled modulus for p={p}, e={e} (bounds: p<={DEFAULT_MODULUS_MAX_P},"
            f" e<={DEFAULT_MODULUS_MAX_E}); supply one explicitly"
        )
    if e == 1:
        return (0, 1)
    for idx in range(1, p**e):
        tail = []
        m = idx
        for _ in range(e):
            m, r = divmod(m, p)
            tail.append(r)
        cand = tuple(tail) + (1,)
        if _irreducible(cand, p):
            return cand
    raise NoDefaultModulus(f"no irreducible of degree {e} over F_{p}")  # unreachable


class FqContext:
    """The field F_q = F_p[t]/(modulus), q = p^e.

    Immutable after construction; elements carry a reference to their context
    and all operations are pure.
    """

    __slots__ = ("p", "e", "q", "modulus", "_red", "_zero", "_one")

    def __init__(self, p: int, e: int, modulus=None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None or modulus == "default":
            modulus = _default_modulus(p, e)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ReducibleModulus(f"modulus must be monic of degree {e}")
        if not _irreducible(modulus, p):
            raise ReducibleModulus(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        # reduction row: t^e = -(low part of modulus)
        self._red = tuple((-c) % p for c in modulus[:e])
        self._zero = FqElement(self, (0,) * e)
        self._one = FqElement(self, (1,) + (0,) * (e - 1))

    # -- raw digit-tuple arithmetic ---------------------------------------
    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def _mul(self, a, b):
        p, e = self.p, self.e
        if e == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        red = self._red
        for i in range(2 * e - 2, e - 1, -1):
            c = prod[i] % p
            if c:
                base = i - e
                for j in range(e):
                    prod[base + j] += c * red[j]
        return tuple(c % p for c in prod[:e])

    def _inv(self, a):
        if all(x == 0 for x in a):
            raise DivisionByZero("inverse of zero")
        if self.e == 1:
            return (pow(a[0], self.p - 2, self.p),)
        # x^(q-2) by square and multiply; q is desk scale
        result = self._one.digits
        base = a
        n = self.q - 2
        while n:
            if n & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            n >>= 1
        return result

    # -- public API --------------------------------------------------------
    def zero(self) -> "FqElement":
        return self._zero

    def one(self) -> "FqElement":
        return self._one

    def element(self, digits) -> "FqElement":
        digits = tuple(int(c) % self.p for c in digits)
        if len(digits) > self.e:
            raise ValueError("too many digits")
        digits = digits + (0,) * (self.e - len(digits))
        return FqElement(self, digits)

    def from_int(self, m: int) -> "FqElement":
        """Decode the base-p little-endian integer encoding (m in [0, q))."""
        m = m % self.q
        digits = []
        p = self.p
        for _ in range(self.e):
            m, r = divmod(m, p)
            digits.append(r)
        return FqElement(self, tuple(digits))

    def embed_int(self, n: int) -> "FqElement":
        """The image of the rational integer n in F_q (reduction mod p)."""
        return FqElement(self, (n % self.p,) + (0,) * (self.e - 1))

    def enumerate(self) -> Iterator["FqElement"]:
        """All q elements, starting 0, 1, then the remaining base-p order."""
        for m in range(self.q):
            yield self.from_int(m)

    def arith(self, op: str, *operands: "FqElement") -> "FqElement":
        """Named-operation front end; operands must belong to this context."""
        for x in operands:
            if not isinstance(x, FqElement) or x.ctx is not self:
                raise ContextMismatch("operand from a different field context")
        a = operands[0]
        if op == "add":
            return a + operands[1]
        if op == "sub":
            return a - operands[1]
        if op == "mul":
            return a * operands[1]
        if op == "neg":
            return -a
        if op == "inv":
            return a.inverse()
        if op == "pow":
            return a ** operands[1] if isinstance(operands[1], int) else NotImplemented
        raise ValueError(f"unknown op {op!r}")

    def __eq__(self, other):
        return (
            isinstance(other, FqContext)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"FqContext(p={self.p})"
        return f"FqContext(p={self.p}, e={self.e}, modulus={self.modulus})"


class FqElement:
    """Element of F_q as a reduced digit vector over F_p."""

    __slots__ = ("ctx", "digits")

    def __init__(self, ctx: FqContext, digits: tuple[int, ...]):
        self.ctx = ctx
        self.digits = digits

    def _coerce(self, other):
        if isinstance(other, FqElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatch("elements from different field contexts")
            return other
        if isinstance(other, int):
            return self.ctx.embed_int(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FqElement(self.ctx, self.ctx._add(self.digits, o.digits))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FqElement(self.ctx, self.ctx._sub(self.digits, o.digits))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FqElement(self.ctx, self.ctx._sub(o.digits, self.digits))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FqElement(self.ctx, self.ctx._mul(self.digits, o.digits))

    __rmul__ = __mul__

    def __neg__(self):
        return FqElement(self.ctx, self.ctx._neg(self.digits))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx._one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FqElement":
        return FqElement(self.ctx, self.ctx._inv(self.digits))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.digits)

    def to_int(self) -> int:
        """Base-p little-endian integer encoding."""
        m = 0
        for c in reversed(self.digits):
            m = m * self.ctx.p + c
        return m

    def __eq__(self, other):
        if isinstance(other, FqElement):
            return self.ctx == other.ctx and self.digits == other.digits
        if isinstance(other, int):
            return self == self.ctx.embed_int(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.digits)

    def __repr__(self):
        if self.ctx.e == 1:
            return str(self.digits[0])
        terms = []
        for i, c in enumerate(self.digits):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                terms.append(f"{head}t" if i == 1 else f"{head}t^{i}")
        return " + ".join(terms) if terms else "0"


def field_make(p: int, e: int = 1, modulus=None) -> FqContext:
    """Build a validated field context (modulus='default' uses the bundled table)."""
    return FqContext(p, e, modulus)
