"""
Cross-checks that pin down values independently of any quoted golden:
uniqueness of singular directions, and W_0 eigenvalues read off from the
mode action itself.
"""

import os
from fractions import Fraction

import mpmath
import pytest

from wsingular.heisenberg import FockVector, central_charge, w3_mode_unnormalized, w3_weight_unnormalized
from wsingular.partition import rectangle
from wsingular.scalar import SYMBOLIC, PointField, specialize
from wsingular.screening import ScreeningSpec, singular_vector
from wsingular.symfunc import jack, p_to_m
from wsingular.verify import brute_force_kernel, check_singular

t, a = SYMBOLIC.t, SYMBOLIC.alpha


def test_grade_three_vector_matches_unsimplified_form():
    # sum of the two nu-terms before collecting: c_[1,1](2) rho(J_[1,1] p_1) + c_[2,1](2) rho(J_[2,1])
    spec = ScreeningSpec(3, (2, 1), (-1, -1))
    v = singular_vector(spec)
    first = 1 / (t * (t + 1))
    second = 2 / (t * (t + 1) * (2 * t + 1))
    expected = FockVector(
        v.weight,
        {
            ((1, 1), (1,)): first / a**3,
            ((2,), (1,)): -first / a**2,
            ((1, 1, 1), ()): second / a**3,
            ((2, 1), ()): second * (t - 1) / a**2,
            ((3,), ()): -second * t / a,
        },
    )
    assert v == expected


def test_grade_three_singular_direction_is_unique():
    spec = ScreeningSpec(3, (2, 1), (-1, -1))
    v = singular_vector(spec)
    kernel = brute_force_kernel(v.weight, 3)
    assert len(kernel) == 1
    # halving the a[1,-3] coefficient leaves the kernel
    altered = v - FockVector(v.weight, {((3,), ()): v.coefficient(((3,), ())) / 2})
    assert not check_singular(altered, spec).passed


def test_w0_eigenvalues_from_mode_action():
    spec = ScreeningSpec(3, (1, 1), (-1, -1), "+", Fraction(4, 5))
    f = spec.field
    v = singular_vector(spec)
    top = FockVector.highest(v.weight)
    w_theta = w3_mode_unnormalized(0, top).coefficient(((), ())) / 54
    mono = ((1,), (1,))
    w_eta = w3_mode_unnormalized(0, v).coefficient(mono) / v.coefficient(mono) / 54
    assert w_theta == w3_weight_unnormalized(spec.target_weight())
    assert w_eta == w3_weight_unnormalized(spec.source_weight())
    # both eigenvalues are negative multiples of alpha: the ratio is +187/7
    assert w_theta == f.alpha * Fraction(-7, 270)
    assert w_eta == f.alpha * Fraction(-187, 270)
    assert w_eta / w_theta == f.make(Fraction(187, 7))


def test_conventional_w_magnitudes():
    # w = sqrt(3 beta) X with beta = 16 / (22 + 5c); at c = 4/5 the magnitudes are 187 and 7 over 9 sqrt(390)
    f = PointField(Fraction(4, 5))
    c = specialize(central_charge(3), Fraction(4, 5))
    beta = Fraction(16) / (22 + 5 * c)
    spec = ScreeningSpec(3, (1, 1), (-1, -1), "+", Fraction(4, 5))
    with mpmath.workdps(40):
        scale = mpmath.sqrt(3 * mpmath.mpf(beta.numerator) / beta.denominator)
        denom = 9 * mpmath.sqrt(390)
        x_eta = specialize(w3_weight_unnormalized(spec.source_weight(SYMBOLIC)), Fraction(4, 5), precision=140)
        x_theta = specialize(w3_weight_unnormalized(spec.target_weight(SYMBOLIC)), Fraction(4, 5), precision=140)
        assert abs(scale * x_eta + 187 / denom) < mpmath.mpf(10) ** -35
        assert abs(scale * x_theta + 7 / denom) < mpmath.mpf(10) ** -35
    assert f.alpha * f.alpha == f.make(Fraction(5, 4))


@pytest.mark.parametrize("m, n", [(m, n) for m in range(1, 5) for n in range(1, 5) if m * n <= 13])
def test_rectangular_jack_single_monomial(m, n):
    rect = rectangle(m, n)
    assert p_to_m(jack(rect), n) == {rect: 1}


@pytest.mark.skipif(not os.environ.get("WSINGULAR_SLOW"), reason="degree 16 takes several minutes; set WSINGULAR_SLOW=1")
def test_rectangular_jack_four_by_four():
    rect = rectangle(4, 4)
    assert p_to_m(jack(rect), 4) == {rect: 1}
