"""Discrete logarithm on the subgroup at infinity, digit by digit.

With n = b_0 + b_1 p + ... in base p, each digit is read off exact leading
coefficients: at step i the residual R = Q - (partial sum) and T = p^i P
satisfy R_x = b_i T_x + higher order terms at eps^(nu(T)), so b_i is the
quotient of the two leading F_q coefficients and must land in the prime
subfield.  Doublings are shared between the b_i T and p T multiplications,
which keeps the addition count within 2 log_p(ord P) log2(p).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..curve import WeierstrassCurve
from ..errors import DegreeMismatch, NoSolution
from .points import InfinityPoint, inf_add, inf_scalar


@dataclass(frozen=True)
class DlpTranscript:
    """Per-digit record: (i, m_i, leading of residual, leading of p^i P, b_i)."""

    steps: tuple[tuple[int, int, int, int, int], ...]

    def text(self) -> str:
        lines = ["i\tm_i\tc_R\tc_T\tb_i"]
        for i, mi, cr, ct, b in self.steps:
            lines.append(f"{i}\t{mi}\t{cr}\t{ct}\t{b}")
        return "\n".join(lines)


@dataclass(frozen=True)
class DlpResult:
    n: int
    digits: tuple[int, ...]
    transcript: DlpTranscript
    additions: int


def dlp_solve(curve: WeierstrassCurve, P: InfinityPoint, Q: InfinityPoint) -> DlpResult:
    """Solve Q = nP on the subgroup at infinity; raises NoSolution otherwise."""
    if P.is_zero():
        raise ValueError("base point must not be the identity")
    ring = curve.ring
    p = ring.p
    counter = [0]

    def add(a, b):
        counter[0] += 1
        return inf_add(a, b)

    digits: list[int] = []
    steps: list[tuple[int, int, int, int, int]] = []
    R = Q
    T = P
    i = 0
    while True:
        mi = T.nu()
        if R.nu() < mi:
            raise DegreeMismatch(
                f"residual minimal degree below nu(p^{i} P); Q is outside <P>",
                digit_index=i,
            )
        c_t = T.x.coeffs[mi]
        c_r = R.x.coeffs[mi] if not R.is_zero() else ring.field.zero()
        quot = c_r * c_t.inverse()
        if any(d != 0 for d in quot.digits[1:]):
            raise NoSolution(
                f"digit quotient {quot!r} lies outside the prime subfield; "
                "Q is outside <P>",
                digit_index=i,
            )
        b = quot.digits[0]
        steps.append((i, mi, c_r.to_int(), c_t.to_int(), b))
        digits.append(b)
        i += 1
        chain = [T]

        def chain_get(j):
            while len(chain) <= j:
                chain.append(add(chain[-1], chain[-1]))
            return chain[j]

        if b:
            bT = None
            for j in range(b.bit_length()):
                if (b >> j) & 1:
                    bT = chain_get(j) if bT is None else add(bT, chain_get(j))
            R = add(R, -bT)
        if R.is_zero():
            break
        pT = None
        for j in range(p.bit_length()):
            if (p >> j) & 1:
                pT = chain_get(j) if pT is None else add(pT, chain_get(j))
        T = pT
        if T.is_zero():
            raise NoSolution(
                "residual nonzero after the last base-p digit; Q is outside <P>",
                digit_index=i,
            )
    n = 0
    for b in reversed(digits):
        n = n * p + b
    if inf_scalar(n, P) != Q:
        raise NoSolution(f"final check failed: {n}P != Q", digit_index=len(digits))
    return DlpResult(n, tuple(digits), DlpTranscript(tuple(steps)), counter[0])
