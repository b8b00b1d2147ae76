from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from schottky.errors import NotASquare, OddValuation, UnsupportedPrime
from schottky.padic import (
    NEG_INF,
    POS_INF,
    PadicApprox,
    PadicScalar,
    PrimeContext,
    abs_exponent,
    approx_from_rational,
    hensel_sqrt,
    unit_residue,
    valuation,
)

rationals = st.fractions(
    min_value=-(10**6), max_value=10**6, max_denominator=10**6
)


def test_valuation_examples():
    assert valuation(25, 5) == 2
    assert valuation(Fraction(1, 25), 5) == -2
    assert valuation(0, 5) == POS_INF


def test_abs_exponent_examples():
    assert abs_exponent(Fraction(1, 5), 5) == 1
    assert abs_exponent(6, 5) == 0
    assert abs_exponent(0, 5) == NEG_INF


def test_prime_context_validation():
    with pytest.raises(ValueError):
        PrimeContext(6)
    with pytest.raises(ValueError):
        PrimeContext(5, 0)
    PrimeContext(2)  # p = 2 is fine outside hensel_sqrt


def test_padic_scalar_reduced():
    x = PadicScalar(Fraction(4, 6), PrimeContext(3))
    assert x.value == Fraction(2, 3)
    assert x.valuation() == -1
    assert str(x) == "2/3"


@given(x=rationals, y=rationals)
def test_valuation_is_additive(x, y):
    p = 5
    if x == 0 or y == 0:
        assert valuation(x * y, p) == POS_INF
        return
    assert valuation(x * y, p) == valuation(x, p) + valuation(y, p)


@given(x=rationals, y=rationals)
def test_valuation_ultrametric(x, y):
    p = 5
    vx, vy = valuation(x, p), valuation(y, p)
    vs = valuation(x + y, p)
    assert vs >= min(vx, vy)
    if vx != vy:
        assert vs == min(vx, vy)


def test_hensel_sqrt_of_6_matches_exhaustive_search():
    ctx = PrimeContext(5, 2)
    root = hensel_sqrt(6, ctx)
    # oracle: all square roots of 6 modulo 25 by exhaustion
    oracle = sorted(x for x in range(25) if (x * x - 6) % 25 == 0)
    assert root.unit in oracle
    assert root.unit == 16  # the root with leading digit in {1, 2}
    assert root.valuation == 0


def test_hensel_sqrt_rational_square():
    root = hensel_sqrt(4, PrimeContext(5, 8))
    assert root.valuation == 0
    assert root.unit == 2


def test_hensel_sqrt_errors():
    with pytest.raises(OddValuation):
        hensel_sqrt(5, PrimeContext(5, 4))
    with pytest.raises(NotASquare):
        hensel_sqrt(2, PrimeContext(5, 4))  # 2 is a non-residue mod 5
    with pytest.raises(UnsupportedPrime):
        hensel_sqrt(9, PrimeContext(2, 4))
    with pytest.raises(ValueError):
        hensel_sqrt(0, PrimeContext(5, 4))


@pytest.mark.parametrize("a", [Fraction(6), Fraction(11), Fraction(150), Fraction(6, 49)])
def test_hensel_sqrt_squares_back(a):
    ctx = PrimeContext(5, 10)
    root = hensel_sqrt(a, ctx)
    v = valuation(a, 5)
    modulus = 5 ** (v + ctx.precision)
    # (unit * 5^(v/2))^2 == a modulo p^(v + N)
    lhs = root.unit**2 * 5 ** (2 * root.valuation)
    rhs_unit = unit_residue(a, 5, ctx.precision)
    assert (lhs - rhs_unit * 5**v) % modulus == 0


@pytest.mark.parametrize("a", [6, 11, 31, Fraction(14, 9)])
def test_hensel_sqrt_refinement(a):
    # the N-digit root is the truncation of the (N+1)-digit root
    for n in (2, 5, 9):
        lo = hensel_sqrt(a, PrimeContext(5, n))
        hi = hensel_sqrt(a, PrimeContext(5, n + 1))
        assert hi.unit % 5**n == lo.unit


def test_approx_add_rational_tracks_cancellation():
    ctx = PrimeContext(5, 6)
    x = approx_from_rational(Fraction(7), ctx)
    y = x.add_rational(-7 + 125)
    assert y.valuation == 3
    assert y.residue(4) == 125


def test_approx_mul_rational():
    ctx = PrimeContext(5, 6)
    x = approx_from_rational(2, ctx).mul_rational(Fraction(3, 7))
    want = approx_from_rational(Fraction(6, 7), ctx)
    assert (x.valuation, x.unit) == (want.valuation, want.unit)


def test_approx_rejects_bad_units():
    ctx = PrimeContext(5, 3)
    with pytest.raises(ValueError):
        PadicApprox(0, 10, ctx)  # divisible by 5
    with pytest.raises(ValueError):
        PadicApprox(0, 125, ctx)  # out of range
