"""Checks for the scalar special-function layer.

Reference values were computed once with mpmath at 40 digits and frozen
here, so the suite does not depend on mpmath at runtime.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dmlaw import specfun

# (s, z, Gamma(s, z)) with s negative non-integer
UPPER_GAMMA_ORACLE = [
    (-0.5, 1.0, 0.1781477117815607),
    (-0.3, 2.5, 0.017589936183999892),
    (-0.7, 0.3, 1.2913710181382427),
    (-0.9, 7.0, 1.8153152397571342e-05),
    (-0.25, 0.04, 4.160848466463599),
]

HYP2F1_ORACLE = [
    (1.0, 1.5, 2.0, -0.3, 0.8196132046198052),
    (0.5, 1.25, 2.0, -4.0, 0.5630334278963297),
    (1.0, 1.25, 2.5, 0.85, 2.1421006410135717),
    (1.0, 0.75, 1.75, -30.0, 0.16060182817577143),
]

LEGENDRE_ORACLE = [
    (2.5, 0.3, -0.4636610134572232),
    (0.5, -0.6, 0.06351843337856956),
    (7.0, 0.2, -0.2935168),
]


def test_gamma_matches_math():
    for y in (0.25, 1.0, 4.5, -0.5, -1.5):
        assert specfun.gamma(y) == pytest.approx(math.gamma(y), rel=1e-15)


def test_gamma_rejects_poles():
    for y in (0.0, -1.0, -7.0, math.inf, math.nan):
        with pytest.raises(ValueError):
            specfun.gamma(y)


@pytest.mark.parametrize("s, z, expected", UPPER_GAMMA_ORACLE)
def test_upper_gamma_negative_parameter(s, z, expected):
    assert specfun.upper_gamma(s, z) == pytest.approx(expected, rel=1e-12)


def test_upper_gamma_positive_parameter():
    # Gamma(1, z) = e**-z and Gamma(2, z) = (1+z) e**-z exactly
    for z in (0.1, 1.0, 9.0):
        assert specfun.upper_gamma(1.0, z) == pytest.approx(math.exp(-z), rel=1e-14)
        assert specfun.upper_gamma(2.0, z) == pytest.approx(
            (1.0 + z) * math.exp(-z), rel=1e-14
        )


def test_upper_gamma_domain():
    with pytest.raises(ValueError):
        specfun.upper_gamma(-1.0, 2.0)  # integer parameter hits the pole
    with pytest.raises(ValueError):
        specfun.upper_gamma(0.5, 0.0)
    with pytest.raises(ValueError):
        specfun.upper_gamma(0.5, -3.0)


@given(
    s=st.floats(min_value=-0.95, max_value=-0.05),
    z=st.floats(min_value=0.05, max_value=25.0),
)
@settings(max_examples=60, deadline=None)
def test_upper_gamma_recurrence(s, z):
    # Gamma(s+1, z) = s * Gamma(s, z) + z**s * e**-z for every real s
    lhs = specfun.upper_gamma(s + 1.0, z)
    rhs = s * specfun.upper_gamma(s, z) + z**s * math.exp(-z)
    assert lhs == pytest.approx(rhs, rel=2e-12, abs=1e-300)


def test_lower_gamma_complements():
    s, z = -0.5, 1.0
    assert specfun.lower_gamma(s, z) == pytest.approx(
        math.gamma(s) - UPPER_GAMMA_ORACLE[0][2], rel=1e-12
    )


@pytest.mark.parametrize("a, b, c, z, expected", HYP2F1_ORACLE)
def test_gauss_2f1_oracle(a, b, c, z, expected):
    assert specfun.gauss_2f1(a, b, c, z) == pytest.approx(expected, rel=1e-12)


def test_gauss_2f1_trivial_cases():
    # b = c collapses to (1-z)**-a; a = 0 collapses to 1
    assert specfun.gauss_2f1(0.7, 1.3, 1.3, 0.4) == pytest.approx(
        0.6 ** (-0.7), rel=1e-13
    )
    assert specfun.gauss_2f1(0.0, 2.0, 3.0, -0.8) == 1.0


@given(
    a=st.floats(min_value=0.1, max_value=2.0),
    b=st.floats(min_value=0.1, max_value=2.0),
    c=st.floats(min_value=2.2, max_value=4.0),
    z=st.floats(min_value=-0.45, max_value=0.45),
)
@settings(max_examples=60, deadline=None)
def test_gauss_2f1_pfaff_identity(a, b, c, z):
    # the z/(z-1) transformation must agree with the direct series
    direct = specfun.gauss_2f1(a, b, c, z)
    pfaff = (1.0 - z) ** (-a) * specfun.gauss_2f1(a, c - b, c, z / (z - 1.0))
    assert direct == pytest.approx(pfaff, rel=5e-13)


def test_gauss_2f1_domain():
    with pytest.raises(ValueError):
        specfun.gauss_2f1(1.0, 1.0, -2.0, 0.3)
    with pytest.raises(ValueError):
        specfun.gauss_2f1(1.0, 1.0, 2.0, 1.0)


@pytest.mark.parametrize("nu, x, expected", LEGENDRE_ORACLE)
def test_legendre_oracle(nu, x, expected):
    assert specfun.legendre_p(nu, x) == pytest.approx(expected, rel=1e-10)


def test_legendre_integer_degrees():
    # P_0 = 1, P_1 = x, P_2 = (3x^2-1)/2
    for x in (-0.9, 0.0, 0.35, 1.0):
        assert specfun.legendre_p(0.0, x) == pytest.approx(1.0, abs=1e-14)
        if x < 1.0:
            assert specfun.legendre_p(1.0, x) == pytest.approx(x, abs=1e-13)
            assert specfun.legendre_p(2.0, x) == pytest.approx(
                0.5 * (3.0 * x * x - 1.0), abs=1e-13
            )


def test_legendre_domain():
    with pytest.raises(ValueError):
        specfun.legendre_p(-0.5, 0.3)
    with pytest.raises(ValueError):
        specfun.legendre_p(1.5, -1.0)
