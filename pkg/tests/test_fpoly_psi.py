import random
from fractions import Fraction

import pytest

from eclocal.curve import WeierstrassCurve
from eclocal.errors import TableTooLarge, ValidationFailed
from eclocal.fields import field_make
from eclocal.infinity.fpoly import compute_f, curve_f_series, f_value_at
from eclocal.infinity.points import InfinityPoint, inf_scalar, x_of_multiple
from eclocal.infinity.psi import (
    MultPolyTable,
    psi_eval,
    psi_table,
    psi_values_at,
    table_point,
)
from eclocal.localring import RkContext
from eclocal.sympoly import MultiPoly

from conftest import random_elliptic_curve, random_infinity_x


def test_f_small_k_zero():
    for k in (1, 2, 3):
        assert compute_f(k, "extended").poly.is_zero()


def test_f_short_display():
    f = compute_f(10, "short")
    A, B, X = MultiPoly.var("A"), MultiPoly.var("B"), MultiPoly.var("X")
    assert f.poly.without_trunc() == X**3 + A * X**7 + B * X**9


def test_f_x_cubed_divides():
    f = compute_f(12, "extended")
    for i in range(3):
        assert f.coefficient(i).is_zero()


def test_f_specialized_matches_symbolic():
    rng = random.Random(2)
    ring = RkContext(field_make(3), 6)
    curve = random_elliptic_curve(ring, rng)
    sym = compute_f(ring.k, "extended")
    mapping = dict(zip(("a1", "a2", "a3", "a4", "a6"), curve.a))
    series = curve_f_series(curve)
    for i in range(ring.k):
        coeff = sym.coefficient(i)
        acc = ring.zero()
        for key, c in coeff.terms.items():
            from eclocal.sympoly import key_exponents

            term = ring.embed_int(int(c))
            for var, e in key_exponents(key).items():
                term = term * mapping[var] ** e
            acc = acc + term
        assert acc == series[i]


def test_f_value_matches_series():
    rng = random.Random(3)
    ring = RkContext(field_make(5), 5)
    curve = random_elliptic_curve(ring, rng)
    series = curve_f_series(curve)
    for _ in range(10):
        x = random_infinity_x(ring, rng)
        horner = ring.zero()
        for c in reversed(series):
            horner = horner * x + c
        assert f_value_at(curve, x) == horner


def test_table_closed_forms(extended_table_10, short_table_9):
    n = MultiPoly.var("n")
    a1 = MultiPoly.var("a1")
    assert extended_table_10.psis[1] == n
    assert extended_table_10.psis[2] == Fraction(1, 2) * a1 * (n**2 - n)
    A = MultiPoly.var("A")
    assert short_table_9.psis[5] == Fraction(-2, 5) * A * n * (n**4 - 1)
    for i in (2, 3, 4, 6, 8):
        assert short_table_9.psis[i].is_zero()


def test_table_serialization_round_trip(short_table_9):
    text = short_table_9.to_text()
    back = MultPolyTable.from_text(text)
    assert back.form == "short" and back.i_max == 9
    assert back.psis == short_table_9.psis


def test_table_bound_error(short_table_9):
    with pytest.raises(TableTooLarge):
        short_table_9.psi(10)


def test_psi_eval_strange_ex1(extended_table_10):
    ring = RkContext(field_make(3), 20)
    curve = WeierstrassCurve.make(
        ring, ring.eps(4), ring.eps(8), ring.zero(), ring.one(), ring.zero()
    )
    assert psi_eval(extended_table_10, 3, 3, curve) == 2 * ring.eps(8)
    assert psi_eval(extended_table_10, 9, 3, curve) == ring.embed_int(2) + ring.eps(16)
    assert psi_eval(extended_table_10, 1, 5, curve) == ring.embed_int(5)


def test_psi_fast_path_agrees_with_table(extended_table_10):
    rng = random.Random(4)
    for p, k in ((2, 6), (3, 8), (5, 5)):
        ring = RkContext(field_make(p), k)
        curve = random_elliptic_curve(ring, rng)
        for n in (2, 3, 5, 7):
            vals = psi_values_at(curve, n, 8)
            for i in range(1, 9):
                assert vals[i] == psi_eval(extended_table_10, i, n, curve), (p, k, n, i)


def test_psi_short_eval_requires_short_curve(short_table_9):
    ring = RkContext(field_make(5), 3)
    curve = WeierstrassCurve.make(ring, 1, 0, 0, 1, 1)
    with pytest.raises(ValueError):
        psi_eval(short_table_9, 5, 2, curve)


def test_x_of_multiple_both_routes(extended_table_10):
    rng = random.Random(6)
    ring = RkContext(field_make(3), 9)
    curve = random_elliptic_curve(ring, rng)
    P = InfinityPoint.from_x(curve, random_infinity_x(ring, rng, min_nu=1))
    assert x_of_multiple(P, 1) == P.x
    for n in (2, 3, 5, 11):
        direct = x_of_multiple(P, n, extended_table_10)
        assert direct == inf_scalar(n, P).x


def test_pmul_jump(extended_table_10):
    # (pP)_x = psi_p(p) X^p + higher: for concrete P the difference
    # (pP)_x - psi_p(p) P_x^p has minimal degree above (p+1) nu(P)
    rng = random.Random(8)
    for p, k in ((2, 8), (3, 10), (5, 8)):
        ring = RkContext(field_make(p), k)
        for _ in range(5):
            curve = random_elliptic_curve(ring, rng)
            wp = psi_values_at(curve, p, p)[p]
            for _ in range(5):
                P = InfinityPoint.from_x(curve, random_infinity_x(ring, rng))
                lhs = inf_scalar(p, P).x
                diff = lhs - wp * P.x**p
                assert diff.nu() >= min((p + 1) * P.nu(), k)


def test_table_point_round_trip(extended_table_10):
    # the table reproduces accumulated multiples at fresh nodes
    pt = table_point(extended_table_10, 12, 6, "extended")
    from eclocal.curve import curve_equation, symbolic_coefficients

    a = symbolic_coefficients()
    one = MultiPoly.const(1, (6, ("X",)))
    assert curve_equation(a, pt[0], one, pt[1]).is_zero()


def test_invariant_checker_rejects_corruption(short_table_9):
    import copy

    bad = MultPolyTable(9, "short", dict(short_table_9.psis))
    bad.psis[5] = bad.psis[5] + 1  # breaks psi_5(0) = 0
    with pytest.raises(ValidationFailed):
        bad.check_invariants()
