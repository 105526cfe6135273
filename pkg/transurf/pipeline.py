"""
End-to-end construction: roots or coefficients → moduli → equilibria and initial value →
curvature ODE with phase → generating curve → translation surface Ψ(s,t) = α(s) + α(t).
"""

import math
import logging

import numpy as np

from transurf.moduli import is_double_root
from transurf.curvature_ode import equilibria, solve_curvature, constant_profile
from transurf.curve import construct_generating_curve, circular_helix
from transurf.geometry import surface_from_curves, SIN_PHI_MIN
from transurf.errors import GridTooCoarse


class ConstructionResult(object):
    """
    Everything produced by one construction: the profile on the integration grid, the generating
    curve on that grid, its subsample on the surface grid, and the surface.
    """

    def __init__(self, moduli, y0, profile, curve, surface_curve, surface, helix_path, swap_axes=False):
        self.moduli = moduli
        self.y0 = y0
        self.profile = profile
        self.curve = curve
        self.surface_curve = surface_curve
        self.surface = surface
        self.helix_path = helix_path
        self.swap_axes = swap_axes

    @property
    def equilibria(self):
        return equilibria(self.moduli)

    def inputs(self):
        """Inputs of the run as a JSON-ready dict."""
        s = self.profile.s_grid
        return {'moduli': self.moduli.to_dict(), 'y0': self.y0,
                'span': [float(s[0]), float(s[-1])], 'step': self.profile.step,
                'grid': len(self.surface_curve), 'helix_path': self.helix_path,
                'swap_axes': self.swap_axes}


def surface_indices(n_samples, grid):
    """
    Indices of `grid` samples spread evenly over `n_samples` integration samples, exact when
    grid − 1 divides n_samples − 1.
    """
    if grid < 2:
        raise GridTooCoarse('surface grid must have at least 2 samples, got {}'.format(grid))
    if grid > n_samples:
        raise GridTooCoarse('surface grid {} exceeds the {} integration samples; lower the step'
                            .format(grid, n_samples))
    if (n_samples - 1) % (grid - 1):
        logging.warning('Surface grid %d does not divide the %d integration steps; nearest samples are used',
                        grid, n_samples - 1)
    return np.unique(np.round(np.linspace(0, n_samples - 1, grid)).astype(int))


def helix_curve(m, s_grid):
    """
    Helix of a double-root parameter set: curvature √(−λ1λ3) and torsion c1/κ², i.e.
    radius κ/(κ²+τ²) and pitch τ/(κ²+τ²).
    :rtype: (CurvatureProfile, SpaceCurve)
    """
    profile = constant_profile(m, s_grid)
    kappa, tau = float(profile.kappa[0]), float(profile.tau[0])
    norm = kappa ** 2 + tau ** 2
    curve = circular_helix(kappa / norm, tau / norm, s_grid=profile.s_grid)
    return profile, curve


def construct(moduli, y0, s_span=(0.0, 20.0), h=1e-3, grid=101, w0=None, swap_axes=False,
              sin_phi_min=SIN_PHI_MIN, num_workers=1):
    """
    Runs the whole construction for one parameter set.
    :param Moduli moduli: the moduli.
    :param float y0: initial curvature; for a double root it must equal the equilibrium.
    :param tuple s_span: arc-length interval.
    :param float h: RK4 step.
    :param int grid: surface samples per direction.
    :param float w0: explicit phase origin, validated against the initial values.
    :param bool swap_axes: exchange the roles of λ1 and λ2.
    :param float sin_phi_min: regularity threshold on the surface.
    :param int num_workers: threads evaluating the surface.
    :rtype: ConstructionResult
    """
    y_low, y_high = equilibria(moduli)
    logging.info('Moduli c=(%.12g, %.12g, %.12g), roots %s, equilibria (%.12g, %.12g)',
                 *moduli.signed_coefficients, moduli.signed_roots, y_low, y_high)

    helix_path = is_double_root(moduli)
    if helix_path:
        logging.info('Double root %s: routing to the helix path, the curvature is the constant %.12g',
                     moduli.roots, y_high)
        if not math.isclose(y0, y_high, rel_tol=1e-9):
            logging.warning('y0=%g ignored: the double-root ODE only admits y = %.12g', y0, y_high)
        n_steps = max(1, int(round((s_span[1] - s_span[0]) / h)))
        s_grid = np.linspace(s_span[0], s_span[1], n_steps + 1)
        profile, curve = helix_curve(moduli, s_grid)
        y0 = y_high
    else:
        profile = solve_curvature(moduli, y0, s_span, h)
        curve = construct_generating_curve(profile, w0=w0, swap_axes=swap_axes)
        profile = curve.profile

    surface_curve = curve.subsample(surface_indices(len(curve), grid))
    logging.info('Evaluating the %dx%d surface grid', len(surface_curve), len(surface_curve))
    surface = surface_from_curves(surface_curve, surface_curve, sin_phi_min=sin_phi_min, num_workers=num_workers)
    return ConstructionResult(moduli, float(y0), profile, curve, surface_curve, surface, helix_path,
                              swap_axes=swap_axes)
