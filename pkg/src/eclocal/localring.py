"""The finite local ring R_k = F_q[eps]/(eps^k).

Elements are length-k coefficient vectors over F_q (coefficient of eps^i at
index i).  An element is a unit exactly when its constant coefficient is
nonzero; every non-unit is nilpotent.  The minimal degree nu(r) is the index
of the first nonzero coefficient, with nu(0) = INFINITY.
"""

from __future__ import annotations

import math
from typing import Iterator

from .errors import ContextMismatch, NotAUnit
from .fields import FqContext, FqElement

#: Sentinel for nu(0); compares greater than every integer.
INFINITY = math.inf


class RkContext:
    """R_k over a field context; k = 1 recovers F_q itself."""

    __slots__ = ("field", "k", "_zero", "_one")

    def __init__(self, field: FqContext, k: int):
        if k < 1:
            raise ValueError("nilpotence degree k must be >= 1")
        self.field = field
        self.k = k
        fz, fo = field.zero(), field.one()
        self._zero = RkElement(self, (fz,) * k)
        self._one = RkElement(self, (fo,) + (fz,) * (k - 1))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def q(self) -> int:
        return self.field.q

    def size(self) -> int:
        return self.field.q**self.k

    def zero(self) -> "RkElement":
        return self._zero

    def one(self) -> "RkElement":
        return self._one

    def element(self, coeffs) -> "RkElement":
        """Build from FqElements and/or ints; short lists are zero padded."""
        out = []
        for c in coeffs:
            if isinstance(c, FqElement):
                if c.ctx != self.field:
                    raise ContextMismatch("coefficient from a different field")
                out.append(c)
            else:
                out.append(self.field.embed_int(int(c)))
        if len(out) > self.k:
            raise ValueError(f"more than k={self.k} coefficients")
        out.extend([self.field.zero()] * (self.k - len(out)))
        return RkElement(self, tuple(out))

    def from_int_list(self, encoding) -> "RkElement":
        """Decode the CLI encoding: list of base-p integer digits, low degree first."""
        return RkElement(
            self,
            tuple(self.field.from_int(int(m)) for m in encoding)
            + (self.field.zero(),) * (self.k - len(encoding)),
        )

    def embed_int(self, n: int) -> "RkElement":
        return self.element([n])

    def eps(self, power: int = 1) -> "RkElement":
        """The element eps^power (zero when power >= k)."""
        if power >= self.k:
            return self._zero
        fz = self.field.zero()
        coeffs = [fz] * self.k
        coeffs[power] = self.field.one()
        return RkElement(self, tuple(coeffs))

    def enumerate(self) -> Iterator["RkElement"]:
        """All q^k elements in lexicographic coefficient order."""
        q, k = self.field.q, self.k
        for m in range(q**k):
            coeffs = []
            for _ in range(k):
                m, r = divmod(m, q)
                coeffs.append(self.field.from_int(r))
            yield RkElement(self, tuple(coeffs))

    def enumerate_maximal_ideal(self) -> Iterator["RkElement"]:
        """All q^(k-1) elements with nu >= 1."""
        q, k = self.field.q, self.k
        fz = self.field.zero()
        for m in range(q ** (k - 1)):
            coeffs = [fz]
            for _ in range(k - 1):
                m, r = divmod(m, q)
                coeffs.append(self.field.from_int(r))
            yield RkElement(self, tuple(coeffs))

    def arith(self, op: str, *operands: "RkElement") -> "RkElement":
        for x in operands:
            if not isinstance(x, RkElement) or x.ctx != self:
                raise ContextMismatch("operand from a different ring context")
        a = operands[0]
        if op == "add":
            return a + operands[1]
        if op == "sub":
            return a - operands[1]
        if op == "mul":
            return a * operands[1]
        if op == "neg":
            return -a
        raise ValueError(f"unknown op {op!r}")

    def __eq__(self, other):
        return (
            isinstance(other, RkContext)
            and self.k == other.k
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.field, self.k))

    def __repr__(self):
        return f"RkContext({self.field!r}, k={self.k})"


class RkElement:
    """Truncated power series sum_{i<k} c_i eps^i with c_i in F_q."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: RkContext, coeffs: tuple[FqElement, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, RkElement):
            if other.ctx != self.ctx:
                raise ContextMismatch("elements from different ring contexts")
            return other
        if isinstance(other, int):
            return self.ctx.embed_int(other)
        if isinstance(other, FqElement):
            return self.ctx.element([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RkElement(
            self.ctx, tuple(a + b for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RkElement(
            self.ctx, tuple(a - b for a, b in zip(self.coeffs, o.coeffs))
        )

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return RkElement(self.ctx, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k = self.ctx.k
        field = self.ctx.field
        fadd, fmul = field._add, field._mul
        a = [c.digits for c in self.coeffs]
        b = [c.digits for c in o.coeffs]
        zero = field.zero().digits
        out = [zero] * k
        for i, ai in enumerate(a):
            if ai == zero:
                continue
            for j in range(k - i):
                bj = b[j]
                if bj == zero:
                    continue
                out[i + j] = fadd(out[i + j], fmul(ai, bj))
        return RkElement(self.ctx, tuple(FqElement(field, d) for d in out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = self.ctx._one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def is_unit(self) -> bool:
        return not self.coeffs[0].is_zero()

    def nu(self):
        """Minimal degree: index of the first nonzero coefficient; INFINITY for 0."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return INFINITY

    def inverse(self) -> "RkElement":
        """Inverse of a unit via the finite geometric series (m nilpotent)."""
        if not self.is_unit():
            raise NotAUnit("constant coefficient is zero")
        ctx = self.ctx
        c0inv = self.coeffs[0].inverse()
        c0inv_r = ctx.element([c0inv])
        # r = c0 (1 + m'), m' = c0^-1 (r - c0);  r^-1 = c0^-1 sum (-m')^i
        m = ctx.element([ctx.field.zero()] + [c * c0inv for c in self.coeffs[1:]])
        acc = ctx.one()
        for _ in range(ctx.k - 1):
            acc = ctx.one() - m * acc
        return acc * c0inv_r

    def project(self) -> FqElement:
        """Canonical projection to the residue field (constant coefficient)."""
        return self.coeffs[0]

    def leading(self) -> FqElement:
        """Coefficient at eps^nu(r); zero for r = 0."""
        for c in self.coeffs:
            if not c.is_zero():
                return c
        return self.ctx.field.zero()

    def shift(self, j: int) -> "RkElement":
        """Multiply by eps^j (truncating)."""
        if j >= self.ctx.k:
            return self.ctx.zero()
        fz = self.ctx.field.zero()
        return RkElement(
            self.ctx, (fz,) * j + self.coeffs[: self.ctx.k - j]
        )

    def divide_exact(self, other: "RkElement"):
        """Return q with self = q * other, or None if self is not in <other>.

        R_k is a chain ring: <other> = <eps^nu(other)> up to units, so the
        quotient exists exactly when nu(self) >= nu(other).
        """
        o = self._coerce(other)
        if o.is_zero():
            return self.ctx.zero() if self.is_zero() else None
        no = o.nu()
        if self.is_zero():
            return self.ctx.zero()
        if self.nu() < no:
            return None
        # strip eps^no from both; the stripped divisor is a unit
        k = self.ctx.k
        fz = self.ctx.field.zero()
        unit = RkElement(self.ctx, o.coeffs[no:] + (fz,) * no)
        shifted = RkElement(self.ctx, self.coeffs[no:] + (fz,) * no)
        quotient = shifted * unit.inverse()
        if quotient * o == self:
            return quotient
        # self has support above k - no that cannot be matched
        return None

    def encoding(self) -> list[int]:
        """CLI encoding: base-p integer per coefficient, low degree first."""
        return [c.to_int() for c in self.coeffs]

    def __eq__(self, other):
        if isinstance(other, RkElement):
            return self.ctx == other.ctx and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == self.ctx.embed_int(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = repr(c)
            if self.ctx.field.e > 1:
                cs = f"({cs})"
            if i == 0:
                terms.append(cs)
            else:
                head = "" if cs == "1" else f"{cs}*"
                terms.append(f"{head}eps" if i == 1 else f"{head}eps^{i}")
        return " + ".join(terms) if terms else "0"


def nu(ctx: RkContext, r: RkElement):
    return r.nu()


def ring_inv(ctx: RkContext, r: RkElement) -> RkElement:
    return r.inverse()


def ring_project(ctx: RkContext, r: RkElement) -> FqElement:
    return r.project()
