import math

import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate as sp_integrate

from gqw.errors import NumericalError
from gqw.quadrature import integrate


def test_polynomial_exact():
    r = integrate(lambda x: x**5 - 3 * x**2, -1.0, 2.0)
    assert r.value == pytest.approx((2**6 - 1) / 6 - (8 + 1), abs=1e-13)


def test_gaussian_half_line():
    r = integrate(lambda x: math.exp(-x * x), 0.0, math.inf)
    assert r.value == pytest.approx(math.sqrt(math.pi) / 2, abs=1e-12)


def test_reversed_and_empty():
    assert integrate(math.sin, 1.0, 1.0).value == 0.0
    fwd = integrate(math.sin, 0.0, 2.0).value
    assert integrate(math.sin, 2.0, 0.0).value == pytest.approx(-fwd, abs=1e-15)


def test_peaked_integrand_refines():
    f = lambda x: 1.0 / (1e-4 + (x - 0.3) ** 2)
    r = integrate(f, 0.0, 1.0)
    exact = 100.0 * (math.atan(0.7 / 1e-2) + math.atan(0.3 / 1e-2))
    assert r.value == pytest.approx(exact, rel=1e-10)
    assert r.intervals > 1


def test_non_convergence_reports():
    with pytest.raises(NumericalError, match="error estimate"):
        integrate(lambda x: math.sin(1.0 / x) / x, 1e-8, 1.0, limit=20)


@settings(max_examples=50, deadline=None)
@given(
    st.floats(min_value=-3, max_value=3),
    st.floats(min_value=0.1, max_value=5),
    st.floats(min_value=0.1, max_value=3),
)
def test_matches_quadpack(a, width, k):
    f = lambda x: math.cos(k * x) * math.exp(-0.3 * x * x)
    ours = integrate(f, a, a + width).value
    ref = sp_integrate.quad(f, a, a + width, epsabs=1e-13, epsrel=1e-12)[0]
    assert ours == pytest.approx(ref, abs=1e-11)
