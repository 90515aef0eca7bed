import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacobi_inverse.arith import OpCounter, ScalarMode, _round_scalar, as_mode, round_sig

finite = st.floats(min_value=-1e200, max_value=1e200, allow_nan=False).filter(
    lambda x: x == 0 or abs(x) > 1e-200
)
digits = st.integers(min_value=4, max_value=15)


def test_known_values():
    assert round_sig(123456.0, 4) == 123500.0
    assert round_sig(0.000123456, 4) == 0.0001235
    assert round_sig(-9.99995, 5) == -10.0
    assert round_sig(0.0, 6) == 0.0
    assert math.isinf(round_sig(math.inf, 6))
    assert math.isnan(round_sig(math.nan, 6))


def test_ties_to_even():
    assert round_sig(12345.0, 4) == 12340.0
    assert round_sig(12355.0, 4) == 12360.0


@given(finite, digits)
def test_relative_error_bound(x, d):
    r = round_sig(x, d)
    # half a unit in the last decimal place, plus a little binary slack
    assert abs(r - x) <= 0.5 * 10.0 ** (1 - d) * abs(x) * (1 + 1e-12) + 4 * np.spacing(abs(x))


@given(finite, digits)
def test_idempotent(x, d):
    r = round_sig(x, d)
    assert round_sig(r, d) == pytest.approx(r, rel=1e-15, abs=0)


@settings(max_examples=200)
@given(finite, finite, digits)
def test_monotone(x, y, d):
    lo, hi = min(x, y), max(x, y)
    assert round_sig(lo, d) <= round_sig(hi, d)


@given(finite, digits)
def test_scalar_twin_agrees(x, d):
    assert _round_scalar(x, d) == round_sig(x, d)


def test_array_rounding_is_elementwise():
    x = np.array([1.23456789, -98765.4321, 0.0, 3e-7])
    assert np.array_equal(round_sig(x, 5), [round_sig(v, 5) for v in x])


def test_digits_validation():
    with pytest.raises(ValueError):
        ScalarMode(3)
    assert ScalarMode(0).native and not ScalarMode(8).native
    assert as_mode(None).native and as_mode(7).digits == 7


def test_counter_counts_elementwise():
    c = OpCounter()
    m = ScalarMode(counter=c)
    m.mul(np.ones(5), 2.0)
    m.div(1.0, 3.0)
    m.add(1.0, 2.0)
    m.sqrt(np.ones(3))
    assert c.products_and_quotients == 6 and c.square_roots == 3


def test_sum_rounds_each_partial():
    m = ScalarMode(4)
    # 1000 + 0.4 rounds back to 1000 at every step
    assert m.sum(np.array([1000.0, 0.4, 0.4, 0.4])) == 1000.0
    assert ScalarMode().sum(np.array([1000.0, 0.4, 0.4, 0.4])) == pytest.approx(1001.2)
