import math
import random

import pytest

from eclocal.cli import load_curve, parse_element
from eclocal.errors import NoSolution
from eclocal.fields import field_make
from eclocal.infinity.dlp import dlp_solve
from eclocal.infinity.points import InfinityPoint, inf_scalar, point_order, trajectory
from eclocal.localring import RkContext

from conftest import DATA_DIR, random_elliptic_curve, random_infinity_x


def load_dlp_example(name, px, qx):
    ring, curve = load_curve(str(DATA_DIR / name))
    P = InfinityPoint.from_x(curve, parse_element(ring, px))
    Q = InfinityPoint.from_x(curve, parse_element(ring, qx))
    return curve, P, Q


def test_example_p2_k10():
    curve, P, Q = load_dlp_example(
        "dlp_example_p2_k10.curve",
        "0,1,0,1,0,0,1,1,0,1",
        "0,1,0,1,1,1,1,0,0,0",
    )
    res = dlp_solve(curve, P, Q)
    assert res.n == 13
    assert res.digits == (1, 0, 1, 1)
    assert [step[1] for step in res.transcript.steps] == [1, 2, 4, 8]


def test_example_p3_k29():
    curve, P, Q = load_dlp_example(
        "dlp_example_p3_k29.curve",
        "0,2,2,0,0,0,0,1,1,0,0,0,1,2,1,2,2,1,2,0,1,1,2,2,2,0,0,0,2",
        "0,1,0,2,0,2,2,0,2,2,1,2,1,0,0,1,0,0,2,1,2,0,2,2,1,2,0,1,0",
    )
    res = dlp_solve(curve, P, Q)
    assert res.n == 38
    assert res.digits == (2, 0, 1, 1)
    assert res.transcript.steps[0][1] == 1  # m_0 = nu(P) = 1
    assert res.transcript.steps[1][1] == 3  # m_1 = 3


def test_trivial_instances():
    ring = RkContext(field_make(3), 6)
    rng = random.Random(1)
    curve = random_elliptic_curve(ring, rng)
    P = InfinityPoint.from_x(curve, random_infinity_x(ring, rng))
    assert dlp_solve(curve, P, P).n == 1
    assert dlp_solve(curve, P, InfinityPoint.zero(curve)).n == 0


def test_round_trip_random():
    rng = random.Random(7)
    checked = 0
    while checked < 60:
        p = rng.choice((2, 3, 5))
        k = rng.randrange(2, 13)
        ring = RkContext(field_make(p), k)
        curve = random_elliptic_curve(ring, rng)
        P = InfinityPoint.from_x(curve, random_infinity_x(ring, rng))
        if P.is_zero():
            continue
        o = point_order(P)
        n = rng.randrange(0, 3 * o)
        Q = inf_scalar(n, P)
        res = dlp_solve(curve, P, Q)
        assert res.n == n % o
        l = len(trajectory(P))
        assert res.additions <= 2 * l * math.ceil(math.log2(p))
        checked += 1


def test_not_in_subgroup_degree_mismatch():
    ring = RkContext(field_make(2), 8)
    rng = random.Random(5)
    curve = random_elliptic_curve(ring, rng)
    P = InfinityPoint.from_x(curve, random_infinity_x(ring, rng, min_nu=2))
    Q = InfinityPoint.from_x(curve, random_infinity_x(ring, rng, min_nu=1))
    if Q.nu() < P.nu():
        with pytest.raises(NoSolution):
            dlp_solve(curve, P, Q)


def test_quotient_outside_prime_subfield():
    # over F_4 the leading-coefficient quotient can leave F_2
    ring = RkContext(field_make(2, 2), 5)
    rng = random.Random(9)
    curve = random_elliptic_curve(ring, rng)
    t = ring.field.from_int(2)
    P = InfinityPoint.from_x(curve, ring.eps(1))
    Q = InfinityPoint.from_x(curve, ring.element([0, t]))
    with pytest.raises(NoSolution):
        dlp_solve(curve, P, Q)


def test_base_point_not_identity():
    ring = RkContext(field_make(3), 4)
    rng = random.Random(11)
    curve = random_elliptic_curve(ring, rng)
    with pytest.raises(ValueError):
        dlp_solve(curve, InfinityPoint.zero(curve), InfinityPoint.zero(curve))
