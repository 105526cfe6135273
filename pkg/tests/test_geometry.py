import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from transurf.errors import ZeroTorsion, NonpositiveKappa, DegenerateNode, GridTooCoarse
from transurf.curvature_ode import CurvatureProfile, solve_curvature, constant_profile
from transurf.curve import SampledCurve, circular_helix, straight_line
from transurf.geometry import (SURFACE_COLUMNS, surface_from_curves, minimality_residual,
                               minimality_residual_general, symmetric_eigenvalues, operator_matrices, operator_L,
                               operator_spectrum, operator_world, tangent_cone_residual, extract_invariants)
from transurf.moduli import eigen_matrix

entries = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)


@pytest.fixture(scope='module')
def short_profile(example2):
    return solve_curvature(example2, 1.3, (0.0, 4.0), 1e-3)


def _scherk_samples(k, n=801):
    u = np.linspace(-1.0, 1.0, n)
    zeros = np.zeros_like(u)
    alpha = SampledCurve(u, np.column_stack([u, zeros, -k * np.log(np.cos(u))]))
    beta = SampledCurve(u, np.column_stack([zeros, u, k * np.log(np.cos(u))]))
    return alpha, beta


@given(st.lists(entries, min_size=6, max_size=6))
@settings(max_examples=200)
def test_symmetric_eigenvalues_match_lapack(values):
    a, b, c, d, e, f = values
    matrix = np.array([[a, d, e], [d, b, f], [e, f, c]])
    assert symmetric_eigenvalues(matrix) == pytest.approx(np.linalg.eigvalsh(matrix), abs=1e-6)


def test_symmetric_eigenvalues_of_scalar_matrix():
    assert np.array_equal(symmetric_eigenvalues(2.5 * np.eye(3)), [2.5, 2.5, 2.5])


def test_spectrum_is_constant_along_profile(short_profile):
    spectrum = operator_spectrum(short_profile)
    assert np.max(np.abs(spectrum - np.array([-4.0, -1.0, 1.0]))) <= 1e-6


def test_single_sample_operator(short_profile):
    p = short_profile
    sample = operator_L(p.kappa[0], p.kappa_prime[0], p.kappa_second[0], p.tau[0], p.tau_prime[0], s=0.0)
    assert sample.eigenvalues == pytest.approx((-4.0, -1.0, 1.0), abs=1e-9)
    assert sample.matrix.shape == (3, 3)


def test_helix_operator_has_double_eigenvalue():
    sample = operator_L(1.0, 0.0, 0.0, 1.0, 0.0)
    assert np.allclose(sample.matrix, [[0.0, 0.0, 1.0], [0.0, -1.0, 0.0], [1.0, 0.0, 0.0]])
    assert sample.eigenvalues == pytest.approx((-1.0, -1.0, 1.0), abs=1e-12)
    low, mid, _ = symmetric_eigenvalues(sample.matrix)
    assert abs(mid - low) <= 1e-14


def test_invariants_from_analytic_derivatives(short_profile):
    estimate = extract_invariants(short_profile)
    assert estimate.coefficients == pytest.approx((4.0, -4.0, -1.0), abs=1e-7)
    assert max(estimate.deviation((4.0, -4.0, -1.0))) <= 1e-6


def test_invariants_from_stencils(short_profile):
    measured = CurvatureProfile(short_profile.s_grid, short_profile.kappa, short_profile.kappa_prime,
                                short_profile.tau)
    estimate = extract_invariants(measured)
    assert max(estimate.deviation((4.0, -4.0, -1.0))) <= 1e-6
    assert len(estimate.samples) == len(measured) - 4


def test_operator_needs_torsion_and_curvature():
    with pytest.raises(ZeroTorsion):
        operator_matrices([1.0], [0.0], [0.0], [0.0], [0.0])
    with pytest.raises(NonpositiveKappa):
        operator_matrices([0.0], [0.0], [0.0], [1.0], [0.0])


def test_world_operator_is_diagonal(example2_result):
    world = operator_world(example2_result.profile, example2_result.curve)
    assert np.max(np.abs(world - eigen_matrix(example2_result.moduli))) <= 1e-6
    assert np.max(np.abs(world - np.diag([-4.0, -1.0, 1.0]))) <= 1e-6


def test_world_operator_of_helix_is_constant(example1_result):
    world = operator_world(example1_result.profile, example1_result.curve)
    assert np.max(np.ptp(world, axis=0)) <= 1e-9
    assert np.sort(np.linalg.eigvalsh(world[0])) == pytest.approx([-1.0, -1.0, 1.0], abs=1e-9)


def test_tangents_lie_on_null_cone(example2_result, example1_result):
    assert tangent_cone_residual(example2_result.curve, (-4.0, -1.0, 1.0)) <= 1e-9
    helix = example1_result.curve
    world = operator_world(example1_result.profile, helix)
    assert np.max(np.abs(np.einsum('ni,nij,nj->n', helix.tangent, world, helix.tangent))) <= 1e-9


def test_constructed_surface_is_minimal(example2_result):
    surface = example2_result.surface
    assert surface.shape == (101, 101)
    assert surface.max_abs('H') <= 1e-5
    assert np.nanmax(surface.K) <= 1e-8
    regular = ~surface.degenerate
    assert np.max(np.abs(surface.H - surface.H_forms)[regular]) <= 1e-10
    assert minimality_residual(example2_result.surface_curve, example2_result.surface_curve) <= 1e-6


def test_surface_frame(example2_result):
    df = example2_result.surface.to_frame()
    assert list(df.columns) == SURFACE_COLUMNS
    assert len(df) == 101 * 101


def test_different_helices_are_not_minimal():
    first = circular_helix(0.5, 0.5, s_span=(0.0, 10.0), h=0.05)
    second = circular_helix(0.5, 0.6, s_span=(0.0, 10.0), h=0.05)
    assert minimality_residual(first, first) <= 1e-12
    assert minimality_residual(first, second) > 1e-3


def test_general_minimality_of_scaled_scherk():
    assert minimality_residual_general(*_scherk_samples(1.0)) <= 1e-6
    assert minimality_residual_general(*_scherk_samples(2.0)) > 1e-3


def test_general_minimality_subsamples_nodes():
    alpha, beta = _scherk_samples(1.0)
    assert minimality_residual_general(alpha, beta, max_nodes=51) <= 1e-6


def test_general_minimality_needs_five_samples():
    alpha, beta = _scherk_samples(1.0, n=4)
    with pytest.raises(GridTooCoarse):
        minimality_residual_general(alpha, beta)


def test_strict_surface_rejects_degenerate_nodes():
    helix = circular_helix(0.5, 0.5, s_span=(0.0, 2.0), h=0.1)
    surface = surface_from_curves(helix, helix)
    assert surface.degenerate_count == len(helix)
    assert np.all(np.isnan(surface.H[surface.degenerate]))
    with pytest.raises(DegenerateNode):
        surface_from_curves(helix, helix, strict=True)


def test_threaded_evaluation_is_deterministic(example2_result):
    curve = example2_result.surface_curve
    serial = surface_from_curves(curve, curve)
    threaded = surface_from_curves(curve, curve, num_workers=3, block=7)
    assert np.array_equal(serial.position, threaded.position)
    assert np.array_equal(serial.degenerate, threaded.degenerate)
    np.testing.assert_allclose(threaded.H, serial.H, rtol=0, atol=1e-9, equal_nan=True)
    np.testing.assert_allclose(threaded.K, serial.K, rtol=0, atol=1e-9, equal_nan=True)


def test_angle_between_generators(example2_result):
    surface = example2_result.surface
    assert np.all((surface.phi >= 0) & (surface.phi <= math.pi))
    assert np.allclose(surface.F, np.cos(surface.phi))


def test_swapping_generators_flips_mean_curvature(example2_result):
    alpha = example2_result.surface_curve
    beta = circular_helix(1.0, 0.5, s_grid=alpha.s_grid)
    forward = surface_from_curves(alpha, beta)
    backward = surface_from_curves(beta, alpha)
    np.testing.assert_allclose(backward.H, -forward.H.T, rtol=1e-12, atol=1e-12, equal_nan=True)
    np.testing.assert_allclose(backward.K, forward.K.T, rtol=1e-12, atol=1e-12, equal_nan=True)


def test_lines_span_a_flat_plane():
    s = np.linspace(-1.0, 1.0, 11)
    surface = surface_from_curves(straight_line((1.0, 0.0, 0.0), s), straight_line((0.0, 1.0, 0.0), s))
    assert surface.max_abs('H') == 0.0 and surface.max_abs('K') == 0.0
    assert np.all(surface.m == 0)
    line = SampledCurve(s, np.column_stack([s, 2 * s, 0 * s]))
    assert minimality_residual_general(line, line) <= 1e-9


def test_invariants_of_helix_profile(example1):
    estimate = extract_invariants(constant_profile(example1, np.linspace(0.0, 1.0, 11)))
    assert estimate.coefficients == pytest.approx((1.0, -1.0, -1.0), abs=1e-12)


def test_invariants_detect_a_scaled_profile(short_profile):
    scaled = CurvatureProfile(short_profile.s_grid, 1.01 * short_profile.kappa, 1.01 * short_profile.kappa_prime,
                              short_profile.tau)
    assert max(extract_invariants(scaled).std) > 1e-3
