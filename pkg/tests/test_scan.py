from fractions import Fraction

import pytest

from eclocal.errors import NotPrime
from eclocal.infinity.scan import psi_p_of_p_short, scan_exceptional_rate


def test_rates_small_primes():
    assert scan_exceptional_rate(5) == Fraction(1, 5)
    assert scan_exceptional_rate(7) == Fraction(1, 7)
    assert scan_exceptional_rate(11) == Fraction(2, 11)
    assert scan_exceptional_rate(13) == Fraction(1, 13)


def test_rate_p5_matches_hand_count():
    # non-singular pairs: 25 - 5 = 20; psi_5(5) = 2A mod 5 vanishes on the
    # 4 pairs (0, B) with B != 0
    assert scan_exceptional_rate(5) == Fraction(4, 20)


def test_psi_p_short_against_rational_table():
    # dual route: the F_p specialization of the rational short table
    from eclocal.infinity.psi import psi_table
    from eclocal.sympoly import key_exponents

    table = psi_table(9, "short")
    for p in (5, 7):
        poly = table.psis[p].substitute({"n": Fraction(p)})
        expected = {}
        for key, c in poly.terms.items():
            assert c.denominator == 1
            exps = key_exponents(key)
            mono = (exps.get("A", 0), exps.get("B", 0))
            r = c.numerator % p
            if r:
                expected[mono] = r
        assert psi_p_of_p_short(p).terms == expected


def test_scan_input_validation():
    with pytest.raises(NotPrime):
        scan_exceptional_rate(9)
    with pytest.raises(ValueError):
        scan_exceptional_rate(3)
    with pytest.raises(ValueError):
        scan_exceptional_rate(83)
