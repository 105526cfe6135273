import math

import numpy as np
import pytest

from transurf.errors import GridHitsSingularity, ParallelDirections, UnknownFixture
from transurf.fixtures import (ScherkParams, scherk_curvature, scherk_generators, scherk_surface,
                               helicoid_coordinates, helicoid_surface, plane_surface)
from transurf.geometry import minimality_residual
from transurf.register import make, make_generator, fixture_list
from transurf.report import planar_curvature_residual


@pytest.fixture(scope='module')
def scherk():
    return scherk_surface(ScherkParams(), n=41, span=(-1.4, 1.4))


@pytest.fixture(scope='module')
def helicoid():
    return helicoid_surface()


def test_classical_scherk_is_minimal(scherk):
    assert scherk.shape == (41, 41)
    assert scherk.degenerate_count == 0
    assert scherk.max_abs('H') <= 1e-6
    assert minimality_residual(scherk.alpha, scherk.beta) <= 1e-6


def test_classical_scherk_is_a_graph(scherk):
    x, y, z = scherk.position[..., 0], scherk.position[..., 1], scherk.position[..., 2]
    assert np.allclose(z, np.log(np.cos(y)) - np.log(np.cos(x)), atol=1e-12)


def test_scherk_family_member():
    surface = scherk_surface(ScherkParams(2.0, math.pi / 3), n=31)
    assert surface.max_abs('H') <= 1e-6
    assert np.nanmax(surface.K) <= 1e-8


def test_scherk_angle_zero_is_a_plane():
    surface = scherk_surface(ScherkParams(1.0, 0.0), n=21)
    assert surface.degenerate_count > 0
    assert surface.max_abs('H') <= 1e-10
    assert surface.max_abs('K') <= 1e-10
    assert np.allclose(surface.position[..., 1], 0.0)


def test_scherk_generators_are_congruent():
    alpha, beta = scherk_generators(ScherkParams(1.0, math.pi / 2), n=21)
    assert np.allclose(beta.kappa, alpha.kappa)
    assert np.allclose(beta.position[:, 0], 0.0, atol=1e-15)
    assert np.allclose(beta.position[:, 2], -alpha.position[:, 2])


def test_generator_curvature_has_closed_form():
    curve, closed_form = make_generator('scherk', [1.0], n=2001)
    assert np.max(np.abs(curve.kappa - closed_form(curve.s_grid))) <= 1e-6
    assert planar_curvature_residual(curve.s_grid, curve.kappa) <= 1e-6


def test_scherk_curvature_formula():
    s = np.linspace(-3.0, 3.0, 13)
    expected = 2 * 1.5 * np.exp(1.5 * s) / (1 + np.exp(3.0 * s))
    assert np.allclose(scherk_curvature(1.5, s), expected, rtol=1e-12)


@pytest.mark.parametrize('c, theta', [(0.0, 1.0), (-1.0, 1.0), (1.0, math.pi), (1.0, -0.1)])
def test_scherk_parameters_are_validated(c, theta):
    with pytest.raises(ValueError):
        ScherkParams(c, theta)


def test_scherk_span_hits_singularity():
    with pytest.raises(GridHitsSingularity):
        scherk_surface(ScherkParams(), span=(-2.0, 2.0))


def test_helicoid_has_no_degenerate_nodes(helicoid):
    assert helicoid.shape == (41, 41)
    assert helicoid.degenerate_count == 0
    assert helicoid.max_abs('H') <= 1e-10
    assert minimality_residual(helicoid.alpha, helicoid.beta) <= 1e-10


def test_helicoid_matches_its_parameterization(helicoid):
    rng = np.random.default_rng(7)
    s, t = helicoid.alpha.parameter, helicoid.beta.parameter
    for i, j in rng.integers(0, 41, size=(20, 2)):
        expected = helicoid_coordinates((s[i] + t[j]) / 2, (s[i] - t[j]) / 2)
        assert np.allclose(helicoid.position[i, j], expected, atol=1e-9)


def test_unstaggered_helicoid_hits_the_singular_set():
    surface = helicoid_surface(n=11, stagger=False)
    # diagonal plus the two corners where s - t = ±2π
    assert surface.degenerate_count == 13
    assert surface.degenerate[0, 10] and surface.degenerate[10, 0]


def test_plane_fixture():
    surface = plane_surface(u_dir=(1.0, 0.0, 0.0), v_dir=(0.0, 0.6, 0.8), n=11)
    assert surface.max_abs('H') == 0.0 and surface.max_abs('K') == 0.0
    normal = surface.normal[3, 4]
    assert np.allclose(np.abs(normal), [0.0, 0.8, 0.6])


def test_parallel_plane_directions():
    with pytest.raises(ParallelDirections):
        plane_surface(u_dir=(1.0, 0.0, 0.0), v_dir=(-1.0, 0.0, 0.0))


def test_registered_fixtures():
    assert fixture_list == ['plane', 'scherk', 'helicoid']
    surface = make('scherk', [2.0, math.pi / 3], n=21)
    assert surface.shape == (21, 21)
    assert make('plane', n=5).shape == (5, 5)


def test_unknown_fixture():
    with pytest.raises(UnknownFixture):
        make('torus')
    with pytest.raises(UnknownFixture):
        make('helicoid', [1.0])
    with pytest.raises(UnknownFixture):
        make('scherk', [1.0, 0.5, 2.0])


def test_fixture_generators():
    curve, closed_form = make_generator('helicoid', n=101)
    assert len(curve) == 101 and closed_form is None
    assert np.allclose(curve.kappa, 1.0) and np.allclose(curve.tau, 1.0)
    line, closed_form = make_generator('plane', n=11)
    assert np.all(line.kappa == 0) and closed_form is None
