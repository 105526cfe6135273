import math

import numpy as np
import pytest

from transurf.errors import (DoubleRoot, PhaseMismatch, NonpositiveKappa, BadRadius, GridTooCoarse,
                             DegenerateSecondDerivative, SpanHitsSingularity)
from transurf.moduli import coefficients_from_roots
from transurf.curvature_ode import solve_curvature, constant_profile
from transurf.curve import (SpaceCurve, SampledCurve, CURVE_COLUMNS, amplitude_constants, phase_origin,
                            construct_generating_curve, frenet_reconstruct, rigid_alignment_distance,
                            circular_helix, straight_line, scherk_curve, curvature_torsion_from_samples,
                            profile_interpolants)


@pytest.fixture(scope='module')
def short_profile(example2):
    return solve_curvature(example2, 1.3, (0.0, 4.0), 1e-3)


@pytest.fixture(scope='module')
def short_curve(short_profile):
    return construct_generating_curve(short_profile)


def test_amplitudes_of_example_two(example2):
    amplitudes = amplitude_constants(example2)
    assert amplitudes.A == pytest.approx(1 / math.sqrt(5), abs=1e-15)
    assert amplitudes.B == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    assert amplitudes.w0 == 0.0


def test_generating_curve_has_unit_tangent(example2_result):
    curve = example2_result.curve
    assert np.max(np.abs(np.linalg.norm(curve.tangent, axis=1) - 1)) <= 1e-12


def test_frame_is_orthonormal(short_curve):
    frames = short_curve.frames
    gram = np.einsum('nji,njk->nik', frames, frames)
    assert np.max(np.abs(gram - np.eye(3))) <= 1e-10


def test_slope_ratio_is_constant(example2_result):
    ratio = example2_result.curve.slope_ratio
    assert np.max(np.abs(ratio - math.sqrt(10))) <= 1e-8


def test_curve_curvature_matches_profile(example2_result):
    curve = example2_result.curve
    assert np.max(np.abs(curve.kappa - curve.profile.kappa)) <= 1e-8
    assert np.max(np.abs(curve.kappa ** 2 * curve.tau - 4.0)) <= 1e-7


def test_explicit_phase_origin(short_profile):
    derived = phase_origin(short_profile)
    curve = construct_generating_curve(short_profile, w0=derived + math.pi)
    assert curve.amplitudes.w0 == pytest.approx(derived + math.pi)
    with pytest.raises(PhaseMismatch):
        construct_generating_curve(short_profile, w0=derived + 0.5)


def test_double_root_profile_is_rejected(example1):
    with pytest.raises(DoubleRoot):
        construct_generating_curve(constant_profile(example1, np.linspace(0, 1, 11)))


def test_mirrored_moduli_give_reflected_curve(short_curve):
    m = coefficients_from_roots(4, 1, -1)
    mirrored = construct_generating_curve(solve_curvature(m, 1.3, (0.0, 4.0), 1e-3))
    assert np.allclose(mirrored.position, short_curve.position * np.array([1.0, 1.0, -1.0]), atol=1e-12)
    assert np.all(mirrored.tau < 0)
    assert np.allclose(mirrored.tau, -short_curve.tau, atol=1e-12)


def test_swapped_axes_give_congruent_curve(short_profile, short_curve):
    swapped = construct_generating_curve(short_profile, swap_axes=True)
    assert np.max(np.abs(swapped.kappa - short_profile.kappa)) <= 1e-8
    assert np.allclose(swapped.tau, short_curve.tau, atol=1e-8)
    assert rigid_alignment_distance(short_curve, swapped) <= 1e-6


def test_frenet_reconstruction_of_generating_curve(short_profile, short_curve):
    kappa, tau = profile_interpolants(short_curve.profile)
    rebuilt = frenet_reconstruct(kappa, tau, (0.0, 4.0), 1e-3,
                                 frame0=short_curve.frames[0], origin=short_curve.position[0])
    assert rigid_alignment_distance(short_curve, rebuilt) <= 1e-5


def test_frenet_reconstruction_of_helix():
    helix = circular_helix(0.5, 0.5, s_span=(0.0, 10.0), h=2e-3)
    assert np.allclose(helix.kappa, 1.0) and np.allclose(helix.tau, 1.0)
    rebuilt = frenet_reconstruct(lambda s: 1.0, lambda s: 1.0, (0.0, 10.0), 2e-3,
                                 frame0=helix.frames[0], origin=helix.position[0])
    assert np.max(np.linalg.norm(rebuilt.position - helix.position, axis=1)) <= 1e-7


def test_frenet_reconstruction_closes_circle():
    circle = frenet_reconstruct(lambda s: 1.0, lambda s: 0.0, (0.0, 2 * math.pi), 1e-2)
    assert np.linalg.norm(circle.position[-1] - circle.position[0]) <= 1e-6
    assert np.allclose(np.linalg.norm(circle.position - [0.0, 1.0, 0.0], axis=1), 1.0, atol=1e-8)


def test_frenet_needs_positive_curvature():
    with pytest.raises(NonpositiveKappa):
        frenet_reconstruct(lambda s: 0.0, lambda s: 1.0, (0.0, 1.0), 1e-2)


@pytest.mark.parametrize('a, b', [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0)])
def test_helix_rejects_bad_radius(a, b):
    with pytest.raises(BadRadius):
        circular_helix(a, b)


def test_curvature_from_samples_of_helix():
    u = np.linspace(0.0, 10.0, 1001)
    samples = SampledCurve(u, np.column_stack([2 * np.cos(u), 2 * np.sin(u), u]))
    measured = curvature_torsion_from_samples(samples)
    inner = measured.interior
    assert np.max(np.abs(measured.kappa[inner] - 0.4)) <= 1e-6
    assert np.max(np.abs(measured.tau[inner] - 0.2)) <= 1e-6
    assert np.max(np.abs(measured.speed[inner] - math.sqrt(5))) <= 1e-6


def test_curvature_from_samples_of_unit_helix():
    helix = circular_helix(0.5, 0.5)
    measured = curvature_torsion_from_samples(SampledCurve.from_curve(helix))
    inner = measured.interior
    assert np.max(np.abs(measured.kappa[inner] - 1.0)) <= 1e-6
    assert np.max(np.abs(measured.tau[inner] - 1.0)) <= 1e-5


def test_curvature_from_samples_needs_seven_samples():
    u = np.linspace(0.0, 1.0, 6)
    with pytest.raises(GridTooCoarse):
        curvature_torsion_from_samples(SampledCurve(u, np.column_stack([np.cos(u), np.sin(u), u])))


def test_curvature_from_samples_of_a_line():
    line = straight_line((0.0, 0.0, 1.0), np.linspace(0.0, 1.0, 21))
    with pytest.raises(DegenerateSecondDerivative):
        curvature_torsion_from_samples(line)


def test_reflection_flips_torsion():
    helix = circular_helix(1.0, 0.5)
    reflected = helix.transformed(np.diag([1.0, 1.0, -1.0]))
    assert np.allclose(reflected.tau, -helix.tau)
    assert np.allclose(np.cross(reflected.tangent, reflected.normal), reflected.binormal)
    rotated = helix.transformed(np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]), offset=[1, 2, 3])
    assert np.allclose(rotated.tau, helix.tau)
    assert rigid_alignment_distance(helix, rotated) <= 1e-12


def test_scherk_generator():
    curve = scherk_curve(1.0, n=401)
    assert curve.s_grid[0] < 0 < curve.s_grid[-1]
    assert np.allclose(np.diff(curve.s_grid), curve.step)
    assert np.max(np.abs(np.linalg.norm(curve.tangent, axis=1) - 1)) <= 1e-12
    assert np.allclose(curve.kappa, np.cos(curve.parameter))
    assert np.all(curve.tau == 0)
    measured = curvature_torsion_from_samples(curve)
    assert np.max(np.abs(measured.speed[measured.interior] - 1)) <= 1e-5
    assert np.max(np.abs(measured.tau[measured.interior])) <= 1e-8


def test_scherk_span_must_avoid_singularity():
    with pytest.raises(SpanHitsSingularity):
        scherk_curve(1.0, (-2.0, 0.0))
    with pytest.raises(ValueError):
        scherk_curve(0.0)


def test_frame_schema_round_trip(short_curve):
    df = short_curve.to_frame()
    assert list(df.columns) == CURVE_COLUMNS
    back = SpaceCurve.from_frame(df)
    assert np.array_equal(back.position, short_curve.position)
    assert np.array_equal(back.tau, short_curve.tau)
