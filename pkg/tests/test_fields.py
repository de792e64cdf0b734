import pytest
from hypothesis import given, settings, strategies as st

from eclocal.errors import (
    ContextMismatch,
    DivisionByZero,
    NoDefaultModulus,
    NotPrime,
    ReducibleModulus,
)
from eclocal.fields import FqContext, field_make

CONTEXTS = [
    field_make(2),
    field_make(3),
    field_make(5),
    field_make(13),
    field_make(2, 2, [1, 1, 1]),
    field_make(2, 3),
    field_make(3, 2),
    field_make(5, 2),
    field_make(7, 4),
]


def test_default_moduli_bounds():
    for p in (2, 3, 5, 7, 11, 13):
        for e in (1, 2, 3, 4):
            ctx = field_make(p, e)
            assert ctx.q == p**e
    with pytest.raises(NoDefaultModulus):
        field_make(17, 2)
    # supplying a modulus works beyond the bundled table: t^2 - 3 over F_17
    ctx = field_make(17, 2, [14, 0, 1])
    assert ctx.q == 289


def test_construction_errors():
    with pytest.raises(NotPrime):
        field_make(6)
    with pytest.raises(ReducibleModulus):
        field_make(2, 2, [1, 0, 1])  # t^2+1 = (t+1)^2 over F_2
    with pytest.raises(ReducibleModulus):
        field_make(3, 2, [0, 0, 1])  # t^2


def test_f4_table():
    ctx = field_make(2, 2, [1, 1, 1])
    t = ctx.from_int(2)
    assert t * t == ctx.from_int(3)  # t^2 = t + 1
    assert [x.to_int() for x in ctx.enumerate()] == [0, 1, 2, 3]


def test_f5_inverse():
    ctx = field_make(5)
    assert ctx.from_int(2).inverse() == ctx.from_int(3)
    with pytest.raises(DivisionByZero):
        ctx.zero().inverse()


def test_enumerate_small():
    assert [x.to_int() for x in field_make(2).enumerate()] == [0, 1]
    assert [x.to_int() for x in field_make(3).enumerate()] == [0, 1, 2]
    f8 = field_make(2, 3)
    xs = list(f8.enumerate())
    assert len(set(xs)) == 8
    assert xs[0].is_zero() and xs[1] == f8.one()


def test_arith_front_end():
    ctx = field_make(5)
    two = ctx.from_int(2)
    assert ctx.arith("inv", two) == ctx.from_int(3)
    assert ctx.arith("add", two, ctx.zero()) == two
    other = field_make(7)
    with pytest.raises(ContextMismatch):
        ctx.arith("add", two, other.from_int(1))


def test_context_mismatch_binary_ops():
    a = field_make(5).from_int(2)
    b = field_make(7).from_int(2)
    with pytest.raises(ContextMismatch):
        a + b


@pytest.mark.parametrize("ctx", CONTEXTS, ids=lambda c: f"q{c.q}")
def test_frobenius_and_characteristic(ctx):
    elements = list(ctx.enumerate()) if ctx.q <= 64 else None
    if elements is None:
        import random

        rng = random.Random(7)
        elements = [ctx.from_int(rng.randrange(ctx.q)) for _ in range(64)]
    for x in elements:
        assert x**ctx.q == x
        total = ctx.zero()
        for _ in range(ctx.p):
            total = total + x
        assert total.is_zero()


@st.composite
def ctx_and_elements(draw, count):
    ctx = draw(st.sampled_from(CONTEXTS))
    xs = [ctx.from_int(draw(st.integers(0, ctx.q - 1))) for _ in range(count)]
    return ctx, xs


@settings(deadline=None, max_examples=80)
@given(ctx_and_elements(3))
def test_field_axioms(data):
    ctx, (x, y, z) = data
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x + y == y + x
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == ctx.zero()


@settings(deadline=None, max_examples=60)
@given(ctx_and_elements(1))
def test_inverse_round_trip(data):
    ctx, (x,) = data
    if x.is_zero():
        return
    assert x.inverse() * x == ctx.one()
    assert x.inverse().inverse() == x


def test_int_encoding_round_trip():
    ctx = field_make(3, 2)
    for m in range(ctx.q):
        assert ctx.from_int(m).to_int() == m
