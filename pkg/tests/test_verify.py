import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wsingular.heisenberg import FockVector, Weight, create, lambda_mode
from wsingular.scalar import SYMBOLIC, PointField
from wsingular.screening import ScreeningSpec, singular_vector
from wsingular.verify import (
    brute_force_kernel,
    check_mode_algebra,
    check_singular,
    default_test_weight,
    gauss_jordan_kernel,
    kernel_certificate,
)


def _rank(rows, ncols):
    """Row rank by plain elimination on dense Fraction rows (reference for the tests)."""
    m = [[Fraction(r.get(j, 0)) for j in range(ncols)] for r in rows]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c] / m[rank][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


matrices = st.integers(1, 5).flatmap(
    lambda ncols: st.lists(
        st.dictionaries(st.integers(0, ncols - 1), st.integers(-3, 3), max_size=ncols),
        max_size=5,
    ).map(lambda rows: (rows, ncols))
)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_gauss_jordan_kernel(data):
    rows, ncols = data
    rows = [{j: Fraction(x) for j, x in r.items()} for r in rows]
    kernel = gauss_jordan_kernel([dict(r) for r in rows], ncols, Fraction(0))
    assert len(kernel) == ncols - _rank(rows, ncols)
    for vec in kernel:
        for r in rows:
            assert sum(c * vec[j] for j, c in r.items()) == 0
    assert _rank([{j: x for j, x in enumerate(v)} for v in kernel], ncols) == len(kernel)


def test_example_one_report():
    spec = ScreeningSpec(3, (1, 1), (-1, -1), "+", Fraction(4, 5))
    report = check_singular(singular_vector(spec), spec)
    assert report.passed
    labels = [c.label for c in report.checks]
    assert labels == ["target weight", "L_1", "L_2", "W_1", "W_2", "L_0 = h", "W_0 = 54 X"]
    data = json.loads(report.dumps())
    assert data["passed"] is True and data["grade"] == 2


def test_non_singular_vector_fails():
    spec = ScreeningSpec(3, (1, 1), (-1, -1))
    v = singular_vector(spec)
    bad = v + create(1, 2, FockVector.highest(v.weight))
    report = check_singular(bad, spec)
    assert not report.passed
    assert not next(c for c in report.checks if c.label == "L_2").passed
    assert "NOT verified" in report.summary()


def test_zero_input_flagged():
    spec = ScreeningSpec(3, (1, 1), (-1, -1))
    report = check_singular(FockVector.zero(spec.target_weight()), spec)
    assert report.error == "zero input"
    assert not report.passed


def test_grade_mismatch():
    spec = ScreeningSpec(3, (1, 1), (-1, -1))
    v = create(1, 1, FockVector.highest(spec.target_weight()))
    with pytest.raises(ValueError, match="grade mismatch"):
        check_singular(v, spec)


def test_explicit_source_weight():
    spec = ScreeningSpec(3, (2, 1), (-1, -1))
    v = singular_vector(spec)
    report = check_singular(v, source_weight=spec.source_weight(), grade=3)
    assert report.passed
    with pytest.raises(ValueError):
        check_singular(v)


def test_generic_weight_has_no_singular_vectors():
    w = default_test_weight()
    assert brute_force_kernel(w, 1) == []
    assert brute_force_kernel(w, 2) == []


def test_kernel_contains_example_one():
    spec = ScreeningSpec(3, (1, 1), (-1, -1), "+", Fraction(4, 5))
    v = singular_vector(spec)
    kernel = brute_force_kernel(v.weight, 2)
    assert len(kernel) == 1
    cert = kernel_certificate(v, kernel)
    assert cert is not None
    assert v == kernel[0] * cert[0]


def test_certificate_rejects_outside_vector():
    spec = ScreeningSpec(3, (1, 1), (-1, -1), "+", Fraction(4, 5))
    v = singular_vector(spec)
    kernel = brute_force_kernel(v.weight, 2)
    other = create(2, 2, FockVector.highest(v.weight))
    assert kernel_certificate(other, kernel) is None


def test_kernel_rejects_grade_zero():
    with pytest.raises(ValueError):
        brute_force_kernel(Weight.zero(3), 0)


def test_mode_algebra_low_grade():
    results = check_mode_algebra(max_grade=1, ww_grade=1)
    assert results and all(ok for _, ok in results)
    labels = {label for label, _ in results}
    assert "[L_2, L_-2]" in labels and "[L_1, W_-1]" in labels and "[W_2, W_-2]" in labels


def test_mode_algebra_at_a_point():
    f = PointField(Fraction(4, 5))
    w = default_test_weight().specialize(f)
    assert all(ok for _, ok in check_mode_algebra(max_grade=2, weight=w, ww_grade=1))


def test_mode_algebra_detects_wrong_lambda():
    def skewed(n, v):
        return lambda_mode(n, v) + v * (Fraction(1, 10) if n == 0 else 0)

    results = dict(check_mode_algebra(max_grade=1, ww_grade=1, lam=skewed))
    assert not all(results.values())
