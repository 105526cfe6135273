import math

import numpy as np
import pytest
from hypothesis import given, assume, strategies as st

from transurf.errors import ZeroRoot, SameSign, ComplexRoots, ZeroC1
from transurf.moduli import (Moduli, coefficients_from_roots, roots_from_coefficients, discriminant,
                             is_double_root, cubic_residual, eigen_matrix)

negative = st.floats(min_value=-10.0, max_value=-0.1)
positive = st.floats(min_value=0.1, max_value=10.0)


def test_example_two_coefficients(example2):
    assert (example2.c1, example2.c2, example2.c3) == (4.0, -4.0, -1.0)
    assert example2.roots == (-4.0, -1.0, 1.0)
    assert not example2.mirrored


def test_example_three_coefficients(example3):
    assert (example3.c1, example3.c2, example3.c3) == (2.0, -2.0, -1.0)


def test_example_one_is_double_root(example1, example2):
    assert is_double_root(example1)
    assert not is_double_root(example2)


def test_roots_recovered_from_coefficients():
    m = roots_from_coefficients(4, -4, -1)
    assert m.roots == pytest.approx((-4, -1, 1), abs=1e-12)
    assert cubic_residual(m) < 1e-12


def test_unsorted_roots_are_sorted():
    assert coefficients_from_roots(1, -1, -4).roots == (-4.0, -1.0, 1.0)


def test_two_positive_roots_are_mirrored():
    m = coefficients_from_roots(4, 1, -1)
    assert m.mirrored
    assert m.orientation == -1.0
    assert m.roots == (-4.0, -1.0, 1.0)
    assert m.signed_coefficients == (-4.0, 4.0, -1.0)
    assert m.signed_roots == (-1.0, 1.0, 4.0)


def test_negative_c1_is_mirrored():
    m = roots_from_coefficients(-4, 4, -1)
    assert m.mirrored
    assert m.signed_roots == pytest.approx((-1, 1, 4), abs=1e-12)


def test_discriminant_is_product_of_squared_gaps():
    assert discriminant(4, -4, -1) == pytest.approx(900.0)


@pytest.mark.parametrize('roots, error', [
    ((0, -1, 1), ZeroRoot),
    ((-1, -2, -3), SameSign),
    ((1, 2, 3), SameSign),
])
def test_invalid_roots(roots, error):
    with pytest.raises(error):
        coefficients_from_roots(*roots)


def test_zero_c1():
    with pytest.raises(ZeroC1):
        roots_from_coefficients(0, 1, 1)


def test_complex_roots():
    # λ³ + λ − 1 has a single real root
    with pytest.raises(ComplexRoots):
        roots_from_coefficients(1, 0, 1)


def test_dict_round_trip():
    m = coefficients_from_roots(4, 1, -1)
    d = m.to_dict()
    assert d['c1'] == -4.0 and d['mirrored']
    assert Moduli.from_dict(d) == m


def test_dict_with_inconsistent_coefficient():
    d = coefficients_from_roots(-4, -1, 1).to_dict()
    d['c2'] = 3.0
    with pytest.raises(ValueError):
        Moduli.from_dict(d)


def test_eigen_matrix_orientation_and_swap(example2):
    assert np.array_equal(eigen_matrix(example2), np.diag([-4.0, -1.0, 1.0]))
    assert np.array_equal(eigen_matrix(example2, swap_axes=True), np.diag([-1.0, -4.0, 1.0]))
    assert np.array_equal(eigen_matrix(coefficients_from_roots(4, 1, -1)), np.diag([4.0, 1.0, -1.0]))


@given(negative, negative, positive)
def test_roots_coefficients_round_trip(a, b, c):
    assume(abs(a - b) > 0.05)
    m = coefficients_from_roots(a, b, c)
    back = roots_from_coefficients(m.c1, m.c2, m.c3)
    scale = max(abs(a), abs(b), c)
    assert back.roots == pytest.approx(sorted((a, b, c)), abs=1e-9 * scale)
    assert not back.mirrored


@given(negative, negative, positive)
def test_mirrored_round_trip(a, b, c):
    assume(abs(a - b) > 0.05)
    m = coefficients_from_roots(-a, -b, -c)
    back = roots_from_coefficients(*m.signed_coefficients)
    assert back.mirrored
    scale = max(abs(a), abs(b), c)
    assert back.signed_roots == pytest.approx(sorted((-a, -b, -c)), abs=1e-9 * scale)


@given(negative, negative, positive)
def test_discriminant_nonnegative_for_real_roots(a, b, c):
    m = coefficients_from_roots(a, b, c)
    gaps = (a - b) ** 2 * (a - c) ** 2 * (b - c) ** 2
    scale = max(abs(a), abs(b), c) ** 6
    assert discriminant(m.c1, m.c2, m.c3) == pytest.approx(gaps, abs=1e-9 * scale)
    assert math.isfinite(cubic_residual(m))
