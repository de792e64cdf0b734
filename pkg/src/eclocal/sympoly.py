"""Sparse multivariate polynomials over exact rationals.

The variable universe is fixed and ordered; exponent vectors are packed into
a single integer (16 bits per variable) so monomial products are single
integer additions.  A polynomial may carry a truncation mark ``(K, vars)``
meaning it is computed modulo total degree K in the listed variables
(typically just X); multiplication applies the truncation eagerly.

Coefficients are ``fractions.Fraction`` values, always normalized; no
floating point appears anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InconsistentSamples, InsufficientSamples

#: Fixed, ordered variable universe.
VAR_NAMES = (
    "a1", "a2", "a3", "a4", "a6",
    "A", "B",
    "X", "Z", "n",
    "X1", "Y1", "Z1", "X2", "Y2", "Z2",
    "b1", "b2", "b3", "b4", "b5", "b6",
    "b7", "b8", "b9", "b10", "b11", "b12",
)
VAR_INDEX = {name: i for i, name in enumerate(VAR_NAMES)}
_BITS = 16
_MASK = (1 << _BITS) - 1

#: Graded weight of the beta variables: deg_beta(b_j) = j.
BETA_WEIGHTS = {f"b{j}": j for j in range(1, 13)}


def monomial_key(exponents: dict[str, int]) -> int:
    key = 0
    for name, e in exponents.items():
        if e < 0 or e > _MASK:
            raise ValueError(f"exponent out of range for {name}: {e}")
        key |= e << (_BITS * VAR_INDEX[name])
    return key


def exponent_of(key: int, var: str) -> int:
    return (key >> (_BITS * VAR_INDEX[var])) & _MASK


def key_exponents(key: int) -> dict[str, int]:
    out = {}
    i = 0
    while key:
        e = key & _MASK
        if e:
            out[VAR_NAMES[i]] = e
        key >>= _BITS
        i += 1
    return out


def key_total_degree(key: int) -> int:
    d = 0
    while key:
        d += key & _MASK
        key >>= _BITS
    return d


def monomial_divides(div: int, key: int) -> bool:
    while div or key:
        if (div & _MASK) > (key & _MASK):
            return False
        div >>= _BITS
        key >>= _BITS
    return True


def _grlex_sort_key(key: int):
    exps = [exponent_of(key, v) for v in VAR_NAMES]
    return (-sum(exps), [-e for e in exps])


class MultiPoly:
    """Sparse exact-rational polynomial over the fixed variable universe."""

    __slots__ = ("terms", "trunc")

    def __init__(self, terms: dict[int, Fraction] | None = None, trunc=None):
        self.terms = terms or {}
        self.trunc = trunc  # None or (K, tuple-of-var-names)

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero(trunc=None) -> "MultiPoly":
        return MultiPoly({}, trunc)

    @staticmethod
    def const(c, trunc=None) -> "MultiPoly":
        c = Fraction(c)
        return MultiPoly({0: c} if c else {}, trunc)

    @staticmethod
    def var(name: str, trunc=None) -> "MultiPoly":
        key = monomial_key({name: 1})
        p = MultiPoly({key: Fraction(1)}, trunc)
        return p._truncated()

    # -- truncation --------------------------------------------------------
    def _trunc_degree(self, key: int) -> int:
        _, tvars = self.trunc
        return sum(exponent_of(key, v) for v in tvars)

    def _truncated(self) -> "MultiPoly":
        if self.trunc is None:
            return self
        bound, _ = self.trunc
        terms = {
            k: c for k, c in self.terms.items() if self._trunc_degree(k) < bound
        }
        return MultiPoly(terms, self.trunc)

    def truncate(self, bound: int, tvars=("X",)) -> "MultiPoly":
        p = MultiPoly(dict(self.terms), (bound, tuple(tvars)))
        return p._truncated()

    def without_trunc(self) -> "MultiPoly":
        return MultiPoly(dict(self.terms), None)

    @staticmethod
    def _merge_trunc(a, b):
        if a is None:
            return b
        if b is None:
            return a
        if a[1] != b[1]:
            raise ValueError(f"incompatible truncation variable sets {a} vs {b}")
        return (min(a[0], b[0]), a[1])

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        trunc = self._merge_trunc(self.trunc, o.trunc)
        terms = dict(self.terms)
        for k, c in o.terms.items():
            s = terms.get(k, 0) + c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return MultiPoly(terms, trunc)._truncated()

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({k: -c for k, c in self.terms.items()}, self.trunc)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        trunc = self._merge_trunc(self.trunc, o.trunc)
        terms: dict[int, Fraction] = {}
        if trunc is None:
            for k1, c1 in self.terms.items():
                for k2, c2 in o.terms.items():
                    k = k1 + k2
                    s = terms.get(k, 0) + c1 * c2
                    if s:
                        terms[k] = s
                    else:
                        terms.pop(k, None)
            return MultiPoly(terms, None)
        bound, tvars = trunc
        shifts = tuple(_BITS * VAR_INDEX[v] for v in tvars)

        def tdeg(key):
            return sum((key >> s) & _MASK for s in shifts)

        a = [(k, c, tdeg(k)) for k, c in self.terms.items()]
        b = [(k, c, tdeg(k)) for k, c in o.terms.items()]
        b.sort(key=lambda t: t[2])
        bdegs = [t[2] for t in b]
        import bisect

        for k1, c1, d1 in a:
            cut = bisect.bisect_left(bdegs, bound - d1)
            for k2, c2, _ in b[:cut]:
                k = k1 + k2
                s = terms.get(k, 0) + c1 * c2
                if s:
                    terms[k] = s
                else:
                    terms.pop(k, None)
        return MultiPoly(terms, trunc)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = MultiPoly.const(1, self.trunc)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    # -- queries -------------------------------------------------------------
    def degree(self, var: str) -> int:
        sh = _BITS * VAR_INDEX[var]
        return max(((k >> sh) & _MASK for k in self.terms), default=0)

    def total_degree(self) -> int:
        return max((key_total_degree(k) for k in self.terms), default=0)

    def deg_beta(self) -> int:
        """Max weighted degree with deg_beta(b_j) = j."""
        best = 0
        for k in self.terms:
            w = sum(exponent_of(k, v) * j for v, j in BETA_WEIGHTS.items())
            best = max(best, w)
        return best

    def coefficient_of(self, var: str, e: int) -> "MultiPoly":
        """Coefficient of var^e (a polynomial in the remaining variables)."""
        sh = _BITS * VAR_INDEX[var]
        terms = {
            k - (e << sh): c
            for k, c in self.terms.items()
            if ((k >> sh) & _MASK) == e
        }
        return MultiPoly(terms, None)

    def constant_term(self) -> Fraction:
        return self.terms.get(0, Fraction(0))

    def variables(self) -> set[str]:
        out: set[str] = set()
        for k in self.terms:
            out.update(key_exponents(k).keys())
        return out

    # -- substitution ----------------------------------------------------------
    def substitute(self, bindings: dict) -> "MultiPoly":
        """Simultaneous substitution var -> MultiPoly or rational constant."""
        bound = {}
        for name, v in bindings.items():
            vp = v if isinstance(v, MultiPoly) else MultiPoly.const(v)
            bound[VAR_INDEX[name]] = vp
        powers: dict[tuple[int, int], MultiPoly] = {}

        def pw(idx, e):
            got = powers.get((idx, e))
            if got is None:
                got = bound[idx] ** e
                if self.trunc is not None:
                    got = got.truncate(*self.trunc)
                powers[(idx, e)] = got
            return got

        out = MultiPoly.zero(self.trunc)
        for k, c in self.terms.items():
            residual = 0
            factor = MultiPoly.const(c, self.trunc)
            key = k
            idx = 0
            while key:
                e = key & _MASK
                if e:
                    if idx in bound:
                        factor = factor * pw(idx, e)
                    else:
                        residual |= e << (_BITS * idx)
                key >>= _BITS
                idx += 1
            out = out + factor * MultiPoly({residual: Fraction(1)}, self.trunc)
        return out._truncated()

    def evaluate(self, values: dict[str, Fraction]) -> Fraction:
        """Evaluate with every variable bound to a rational number."""
        total = Fraction(0)
        for k, c in self.terms.items():
            acc = c
            for name, e in key_exponents(k).items():
                acc *= Fraction(values[name]) ** e
            total += acc
        return total

    def invert_unit(self) -> "MultiPoly":
        """Inverse of c + m with c a nonzero rational and m truncation-nilpotent."""
        if self.trunc is None:
            raise ValueError("inversion requires a truncation bound")
        c = self.constant_term()
        nonconst = MultiPoly(
            {k: v for k, v in self.terms.items() if k != 0}, self.trunc
        )
        if not c or any(
            self._trunc_degree(k) == 0 for k in nonconst.terms
        ):
            raise ValueError("not invertible: constant part is not a nonzero rational")
        cinv = Fraction(1) / c
        m = nonconst * cinv
        bound = self.trunc[0]
        acc = MultiPoly.const(1, self.trunc)
        for _ in range(bound - 1):
            acc = MultiPoly.const(1, self.trunc) - m * acc
        return acc * cinv

    # -- printing / parsing -----------------------------------------------------
    def text(self) -> str:
        """Canonical text form, graded-lex term order."""
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=_grlex_sort_key)
        parts = []
        for i, k in enumerate(keys):
            c = self.terms[k]
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            factors = []
            if mag != 1 or k == 0:
                factors.append(
                    str(mag.numerator)
                    if mag.denominator == 1
                    else f"{mag.numerator}/{mag.denominator}"
                )
            key = k
            idx = 0
            while key:
                e = key & _MASK
                if e:
                    name = VAR_NAMES[idx]
                    factors.append(name if e == 1 else f"{name}^{e}")
                key >>= _BITS
                idx += 1
            term = "*".join(factors)
            if i == 0:
                parts.append(term if sign == "+" else f"-{term}")
            else:
                parts.append(f" {sign} {term}")
        return "".join(parts)

    __repr__ = text


def parse_poly(text: str) -> MultiPoly:
    """Parse the canonical text form (linear combination of monomials)."""
    s = text.strip()
    if s == "0":
        return MultiPoly.zero()
    out = MultiPoly.zero()
    s = s.replace(" - ", " + -").replace("- ", "-")
    if s.startswith("-"):
        chunks = [f"-{c}" if i == 0 else c for i, c in enumerate(s[1:].split(" + "))]
    else:
        chunks = s.split(" + ")
    for chunk in chunks:
        chunk = chunk.strip()
        neg = chunk.startswith("-")
        if neg:
            chunk = chunk[1:]
        coeff = Fraction(1)
        exps: dict[str, int] = {}
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                continue
            if factor[0].isdigit():
                coeff *= Fraction(factor)
            else:
                if "^" in factor:
                    name, e = factor.split("^")
                    exps[name] = exps.get(name, 0) + int(e)
                else:
                    exps[factor] = exps.get(factor, 0) + 1
        if neg:
            coeff = -coeff
        out = out + MultiPoly({monomial_key(exps): coeff})
    return out


def poly_arith(op: str, operands, truncation=None) -> MultiPoly:
    """Named-operation front end with an explicit truncation bound."""
    ops = [
        p.truncate(*truncation) if truncation is not None else p for p in operands
    ]
    a = ops[0]
    if op == "add":
        return a + ops[1]
    if op == "sub":
        return a - ops[1]
    if op == "mul":
        return a * ops[1]
    if op == "pow":
        return a ** operands[1]
    raise ValueError(f"unknown op {op!r}")


def poly_substitute(p: MultiPoly, bindings: dict) -> MultiPoly:
    return p.substitute(bindings)


def poly_interpolate_n(
    samples, degree: int, force_zero_at_0: bool = False
) -> MultiPoly:
    """Fit, per monomial in the non-n variables, a degree-``degree`` polynomial in n.

    ``samples`` is a list of (integer node, MultiPoly value) pairs; values must
    not involve n.  With ``force_zero_at_0`` the node (0, 0) joins the fit.
    Exactly degree+1 nodes are used for the fit; any extra samples must be
    reproduced bit-exactly or InconsistentSamples is raised.
    """
    pts = [(int(m), v if isinstance(v, MultiPoly) else MultiPoly.const(v))
           for m, v in samples]
    if force_zero_at_0 and all(m != 0 for m, _ in pts):
        pts.insert(0, (0, MultiPoly.zero()))
    if len({m for m, _ in pts}) != len(pts):
        raise ValueError("duplicate sample nodes")
    if len(pts) < degree + 1:
        raise InsufficientSamples(
            f"need {degree + 1} nodes for degree {degree}, got {len(pts)}"
        )
    fit_pts, check_pts = pts[: degree + 1], pts[degree + 1:]

    # Lagrange basis over the fit nodes, as coefficient vectors in n.
    nodes = [m for m, _ in fit_pts]
    basis = []
    for i, mi in enumerate(nodes):
        coeffs = [Fraction(1)]
        denom = Fraction(1)
        for j, mj in enumerate(nodes):
            if j == i:
                continue
            # multiply by (n - mj)
            coeffs = [Fraction(0)] + coeffs
            for t in range(len(coeffs) - 1):
                coeffs[t] -= mj * coeffs[t + 1]
            denom *= mi - mj
        basis.append([c / denom for c in coeffs])

    monomials = set()
    for _, v in fit_pts:
        monomials.update(v.terms.keys())
    n_shift = _BITS * VAR_INDEX["n"]
    terms: dict[int, Fraction] = {}
    for mon in monomials:
        vals = [v.terms.get(mon, Fraction(0)) for _, v in fit_pts]
        ncoeffs = [Fraction(0)] * (degree + 1)
        for val, b in zip(vals, basis):
            if val:
                for t, bc in enumerate(b):
                    ncoeffs[t] += val * bc
        for t, c in enumerate(ncoeffs):
            if c:
                terms[mon + (t << n_shift)] = c
    result = MultiPoly(terms, None)
    for m, v in check_pts:
        got = result.substitute({"n": Fraction(m)})
        if got != v:
            raise InconsistentSamples(f"fit does not reproduce sample at n={m}")
    return result


def poly_denominator_profile(p: MultiPoly):
    """(lcm of coefficient denominators, set of primes dividing it)."""
    from math import lcm

    d = 1
    for c in p.terms.values():
        d = lcm(d, c.denominator)
    primes = set()
    m = d
    f = 2
    while f * f <= m:
        if m % f == 0:
            primes.add(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        primes.add(m)
    return d, primes


def reduce_by_rules(p: MultiPoly, rules) -> MultiPoly:
    """Normal form of p modulo rewrite rules (lead_key, lead_coeff, rest_poly).

    Each rule represents lead_coeff * monomial(lead_key) = rest_poly; rules
    must have pairwise coprime lead monomials (then the rewriting computes
    ideal-membership normal forms).  All divisible terms are rewritten per
    pass; passes strictly reduce the rewrite-variable degrees, so this
    terminates.
    """
    work = MultiPoly(dict(p.terms), None)
    changed = True
    while changed:
        changed = False
        for lead_key, lead_coeff, rest in rules:
            hits = {
                k - lead_key: c / lead_coeff
                for k, c in work.terms.items()
                if monomial_divides(lead_key, k)
            }
            if not hits:
                continue
            quot = MultiPoly(hits, None)
            work = work - quot * MultiPoly({lead_key: lead_coeff}, None) + quot * rest
            changed = True
    return work
