"""k[t]/(t^N) 的環運算"""

import pytest
from hypothesis import given, strategies as st

from core.errors import InvalidInputError, PrecisionExhaustedError
from services.scalar_service import INFINITE_VALUATION, ScalarRing

RING = ScalarRing(prime=7, precision=5)

scalars = st.lists(st.integers(0, 6), min_size=5, max_size=5).map(RING.from_coeffs)
units = scalars.filter(lambda s: s.is_unit())


@given(scalars, scalars, scalars)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == RING.zero()


@given(units)
def test_unit_inverse(u):
    assert u * u.inverse() == RING.one()


@given(scalars, st.integers(0, 6))
def test_shift_matches_t_power(a, k):
    assert a.shift(k) == a * RING.t_power(k)


def test_valuation():
    assert RING.t_power(3).valuation == 3
    assert RING.zero().valuation == INFINITE_VALUATION
    assert RING.t_power(5).is_zero()


def test_t_is_not_a_unit():
    with pytest.raises(InvalidInputError):
        RING.t_power(1).inverse()


def test_divide_t_power():
    value = RING.from_coeffs([0, 0, 3, 1])
    assert value.divide_t_power(2) == RING.from_coeffs([3, 1])
    with pytest.raises(InvalidInputError):
        value.divide_t_power(3)


def test_mul_twisted_strict_reports_lost_product():
    a = RING.t_power(2)
    assert a.mul_twisted(a, 1) == RING.zero()
    with pytest.raises(PrecisionExhaustedError):
        a.mul_twisted(a, 1, strict=True)


def test_coefficients_beyond_precision_rejected():
    with pytest.raises(PrecisionExhaustedError):
        RING.from_coeffs([0, 0, 0, 0, 0, 1])


def test_to_list_strips_trailing_zeros():
    assert RING.from_coeffs([1, 2, 0, 0]).to_list() == [1, 2]
    assert RING.zero().to_list() == []


@pytest.mark.parametrize("prime, precision", [(1, 4), (7, 0)])
def test_invalid_ring(prime, precision):
    with pytest.raises(InvalidInputError):
        ScalarRing(prime=prime, precision=precision)
