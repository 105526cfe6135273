"""End-to-end checks on the three worked parameter sets and the reference surfaces."""

import math

import numpy as np
import pytest

from transurf.curvature_ode import equilibria, step_convergence_ratio
from transurf.curve import SampledCurve, circular_helix, amplitude_constants
from transurf.fixtures import helicoid_coordinates
from transurf.geometry import minimality_residual, minimality_residual_general, operator_spectrum
from transurf.register import make, make_generator
from transurf.report import verify_construction, planar_curvature_residual


def test_example_two_pipeline(example2_result, example2_report):
    result, report = example2_result, example2_report
    assert equilibria(result.moduli) == (1.0, 2.0)
    assert result.curve.amplitudes.A == pytest.approx(0.4472, abs=5e-4)
    assert result.curve.amplitudes.B == pytest.approx(0.7071, abs=5e-4)
    assert np.max(np.abs(result.profile.first_integral_residual)) <= 1e-7
    assert np.max(np.abs(np.linalg.norm(result.curve.tangent, axis=1) - 1)) <= 1e-9
    assert np.max(np.abs(result.curve.kappa ** 2 * result.curve.tau - 4)) <= 4e-8

    spectrum = operator_spectrum(result.profile)
    assert np.max(np.abs(spectrum - [-4.0, -1.0, 1.0])) <= 1e-6
    assert np.max(np.ptp(spectrum, axis=0)) <= 1e-6

    assert result.surface.max_abs('H') <= 1e-5
    assert np.nanmax(result.surface.K) <= 1e-8
    assert report.passed, report.failures()


def test_example_one_is_a_helicoid(example1_result, config):
    result = example1_result
    assert result.helix_path
    assert np.allclose(result.profile.kappa, 1.0) and np.allclose(result.profile.tau, 1.0)
    assert np.allclose(result.curve.kappa, 1.0) and np.allclose(result.curve.tau, 1.0)
    surface = result.surface
    assert surface.max_abs('H') <= 1e-10

    # the helix of radius and pitch 1/2 turns by s/√(1/2)
    sigma = surface.alpha.s_grid / math.sqrt(0.5)
    rng = np.random.default_rng(2024)
    for i, j in rng.integers(0, len(sigma), size=(20, 2)):
        expected = helicoid_coordinates((sigma[i] + sigma[j]) / 2, (sigma[i] - sigma[j]) / 2)
        assert np.allclose(surface.position[i, j], expected, atol=1e-9)

    report = verify_construction(result, config)
    assert report.passed, report.failures()
    assert 'slope_ratio' in report.skipped


def test_example_three_pipeline(example3_result, config):
    result = example3_result
    m = result.moduli
    assert (m.c1, m.c2, m.c3) == (2.0, -2.0, -1.0)
    amplitudes = amplitude_constants(m)
    assert amplitudes.A == pytest.approx(0.5774, abs=5e-4)
    assert amplitudes.B == pytest.approx(0.7071, abs=5e-4)
    y_low, y_high = equilibria(m)
    assert y_low == 1.0 and y_high == pytest.approx(1.41421, abs=1e-5)
    assert result.surface.max_abs('H') <= 1e-5
    report = verify_construction(result, config)
    assert report.passed, report.failures()


def test_scherk_reference_surfaces():
    classical = make('scherk', [1.0, math.pi / 2], n=41)
    assert classical.max_abs('H') <= 1e-6

    curve, closed_form = make_generator('scherk', [1.0])
    assert np.max(np.abs(curve.kappa - closed_form(curve.s_grid))) <= 1e-6
    assert planar_curvature_residual(curve.s_grid, curve.kappa) <= 1e-6

    flat = make('scherk', [1.0, 0.0], n=41)
    assert flat.max_abs('H') <= 1e-10 and flat.max_abs('K') <= 1e-10


def test_mean_curvature_formulas_agree(example2_result, example2_report):
    entry = example2_report['H_two_ways']
    assert entry.tolerance == 1e-10
    surface = example2_result.surface
    regular = ~surface.degenerate
    assert entry.value == float(np.max(np.abs(surface.H - surface.H_forms)[regular]))
    assert entry.passed


def test_frenet_reconstruction_agrees(example2_report):
    entry = example2_report['path_equivalence']
    assert entry.value <= 1e-5
    assert entry.note.endswith('[0, 10]')


@pytest.mark.parametrize('result_name, expected', [('example2_result', math.sqrt(10)),
                                                   ('example3_result', math.sqrt(6))])
def test_slope_ratio_identity(request, result_name, expected):
    curve = request.getfixturevalue(result_name).curve
    assert np.max(np.abs(curve.slope_ratio - expected)) <= 1e-8


def test_negative_controls():
    helix = circular_helix(0.5, 0.5, s_span=(0.0, 10.0), h=0.05)
    perturbed = circular_helix(0.5, 0.55, s_span=(0.0, 10.0), h=0.05)
    assert minimality_residual(helix, perturbed) > 1e-3

    u = np.linspace(-1.0, 1.0, 801)
    zeros = np.zeros_like(u)
    alpha = SampledCurve(u, np.column_stack([u, zeros, -np.log(np.cos(u))]))
    scaled = SampledCurve(u, np.column_stack([zeros, u, 2 * np.log(np.cos(u))]))
    assert minimality_residual_general(alpha, scaled) > 1e-3


def test_step_halving_converges(example2):
    assert step_convergence_ratio(example2, 1.3, (0.0, 20.0), 1e-2) >= 12
