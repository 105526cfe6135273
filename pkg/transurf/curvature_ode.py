"""
Curvature ODE of the generating curve.

A generating curve with moduli (c1, c2, c3) has curvature y = κ(s) satisfying the first
integral

    y'² + y⁴ + c₃y² + c₁²/y² + c₁c₂ = 0,

integrated here through its second-order form y'' = −2y³ − c₃y + c₁²/y³. Torsion follows
from κ²τ = c₁.
"""

import math
import logging

import numpy as np
import pandas as pd
from scipy.integrate import quad

from transurf.errors import DoubleRoot, InitialValueOutOfBand, StepTooLarge, NonpositiveY
from transurf.moduli import is_double_root
from transurf.utils.numerics import grid_steps, rk4_integrate

# first-integral residual beyond which the step is considered too large
RESIDUAL_ABORT = 1e-5


class CurvatureProfile(object):
    """
    Curvature and torsion of a generating curve sampled on a uniform arc-length grid.
    `kappa_second` and `tau_prime` are filled when the samples come from the ODE and are
    left as `None` for profiles built from measured data.
    """

    def __init__(self, s_grid, kappa, kappa_prime, tau, moduli=None, first_integral_residual=None,
                 kappa_second=None, tau_prime=None, y0=None):
        self.s_grid = _frozen(s_grid)
        self.kappa = _frozen(kappa)
        self.kappa_prime = _frozen(kappa_prime)
        self.tau = _frozen(tau)
        self.moduli = moduli
        self.first_integral_residual = _frozen(first_integral_residual)
        self.kappa_second = _frozen(kappa_second)
        self.tau_prime = _frozen(tau_prime)
        self.y0 = y0
        assert self.kappa.shape == self.s_grid.shape == self.kappa_prime.shape == self.tau.shape,\
            "ERROR: profile arrays must share the grid shape"

    @property
    def step(self):
        return float(self.s_grid[1] - self.s_grid[0])

    def __len__(self):
        return len(self.s_grid)

    def to_frame(self):
        """Profile as a dataframe with the `s,kappa,kappa_prime,tau,residual` columns."""
        residual = self.first_integral_residual
        if residual is None:
            residual = np.full_like(self.s_grid, np.nan)
        return pd.DataFrame({'s': self.s_grid, 'kappa': self.kappa, 'kappa_prime': self.kappa_prime,
                             'tau': self.tau, 'residual': residual})


def _frozen(values):
    if values is None:
        return None
    values = np.array(values, dtype=float)
    values.setflags(write=False)
    return values


def equilibria(m):
    """
    Positive stationary curvatures of the ODE.
    :param Moduli m: canonical moduli.
    :rtype: (float, float)
    :return: (√(−λ2λ3), √(−λ1λ3)), ascending.
    """
    l1, l2, l3 = m.roots
    return math.sqrt(-l2 * l3), math.sqrt(-l1 * l3)


def potential(m, y):
    """F(y) = y⁴ + c₃y² + c₁²/y² + c₁c₂, so that y'² = −F(y) along solutions."""
    return y ** 4 + m.c3 * y ** 2 + m.c1 ** 2 / y ** 2 + m.c1 * m.c2


def rhs_second_order(m, y):
    """y'' = −2y³ − c₃y + c₁²/y³, which is −½ F'(y)."""
    return -2 * y ** 3 - m.c3 * y + m.c1 ** 2 / y ** 3


def first_integral(m, y, yp):
    """
    Residual of the first integral, zero on exact solutions.
    :param Moduli m: moduli.
    :param float y: curvature, strictly positive.
    :param float yp: derivative of the curvature.
    :rtype: float
    """
    if np.any(np.asarray(y) <= 0):
        raise NonpositiveY('first integral needs y > 0, got {}'.format(y))
    return yp ** 2 + potential(m, y)


def initial_slope(m, y0):
    """+√(−F(y0)), the slope convention of every solve."""
    y_low, y_high = equilibria(m)
    f0 = potential(m, y0)
    if not (y_low < y0 < y_high) or f0 >= 0:
        raise InitialValueOutOfBand('y0={} is not strictly inside the band ({}, {})'.format(y0, y_low, y_high))
    return math.sqrt(-f0)


def curvature_guard(m):
    """Step guard aborting when the curvature leaves [y_low/2, 2·y_high]."""
    y_low, y_high = equilibria(m)
    lower, upper = y_low / 2, 2 * y_high

    def guard(s, state):
        y = state[0]
        if not (y > 0 and lower <= y <= upper):
            raise StepTooLarge('curvature {} left the admissible range [{}, {}] at s={}; shrink the step'
                               .format(y, lower, upper, s))
    return guard


def solve_curvature(m, y0, s_span=(0.0, 20.0), h=1e-3):
    """
    Integrates the curvature ODE with fixed-step RK4 from y(s0) = y0, y'(s0) = +√(−F(y0)).
    :param Moduli m: moduli without a double root.
    :param float y0: initial curvature, strictly between the equilibria.
    :param tuple s_span: arc-length interval.
    :param float h: requested step; the effective step divides the span exactly.
    :rtype: CurvatureProfile
    """
    if is_double_root(m):
        raise DoubleRoot('moduli {} have a double root: only the constant solution exists'.format(m.roots))
    yp0 = initial_slope(m, y0)
    n_steps, h = grid_steps(s_span, h)
    c1_sq, c3 = m.c1 ** 2, m.c3

    def rhs(s, state):
        y, yp = state
        return np.array([yp, -2 * y ** 3 - c3 * y + c1_sq / y ** 3])

    states = rk4_integrate(rhs, np.array([y0, yp0]), s_span[0], h, n_steps,
                           guard=curvature_guard(m), desc='curvature')
    s_grid = s_span[0] + h * np.arange(n_steps + 1)
    return profile_from_states(m, s_grid, states[:, 0], states[:, 1], y0=y0)


def profile_from_states(m, s_grid, kappa, kappa_prime, y0=None):
    """Completes (κ, κ') samples of an ODE solution into a profile and checks the residual monitor."""
    residual = first_integral(m, kappa, kappa_prime)
    worst = float(np.max(np.abs(residual)))
    if worst > RESIDUAL_ABORT:
        raise StepTooLarge('first-integral residual {:.3g} exceeds {:.0e}; shrink the step'
                           .format(worst, RESIDUAL_ABORT))
    c1 = m.orientation * m.c1
    tau = c1 / kappa ** 2
    logging.debug('Curvature profile: %d samples, max residual %.3g', len(s_grid), worst)
    return CurvatureProfile(s_grid, kappa, kappa_prime, tau, moduli=m,
                            first_integral_residual=residual,
                            kappa_second=rhs_second_order(m, kappa),
                            tau_prime=-2 * tau * kappa_prime / kappa,
                            y0=y0)


def constant_profile(m, s_grid):
    """
    Equilibrium profile of a double-root parameter set, κ ≡ √(−λ1λ3).
    :param Moduli m: moduli with a double root.
    :param np.ndarray s_grid: arc-length samples.
    :rtype: CurvatureProfile
    """
    l1, _, l3 = m.roots
    s_grid = np.asarray(s_grid, dtype=float)
    kappa = np.full_like(s_grid, math.sqrt(-l1 * l3))
    zeros = np.zeros_like(s_grid)
    tau = m.orientation * m.c1 / kappa ** 2
    return CurvatureProfile(s_grid, kappa, zeros, tau, moduli=m,
                            first_integral_residual=first_integral(m, kappa, zeros),
                            kappa_second=zeros, tau_prime=zeros, y0=float(kappa[0]))


def oscillation_periods(profile):
    """
    Spacing of successive curvature maxima, located where κ' changes sign from + to −
    and refined by linear interpolation of κ'.
    :param CurvatureProfile profile: the profile.
    :rtype: np.ndarray
    """
    kp = profile.kappa_prime
    s = profile.s_grid
    idx = np.nonzero((kp[:-1] > 0) & (kp[1:] <= 0))[0]
    crossings = s[idx] + kp[idx] / (kp[idx] - kp[idx + 1]) * (s[idx + 1] - s[idx])
    return np.diff(crossings)


def theoretical_period(m):
    """
    Period of the curvature oscillation from the phase parameterization
    κ² = y_high²cos²w + y_low²sin²w, over which w advances by π.
    :param Moduli m: moduli without a double root.
    :rtype: float
    """
    y_low, y_high = equilibria(m)
    l1, l2, _ = m.roots

    def ds_dw(w):
        return 1.0 / math.sqrt(y_high ** 2 * math.cos(w) ** 2 + y_low ** 2 * math.sin(w) ** 2 + l1 * l2)

    value, _ = quad(ds_dw, 0.0, math.pi, epsabs=1e-13, epsrel=1e-12)
    return value


def step_convergence_ratio(m, y0, s_span, h):
    """Ratio of the worst first-integral residual at step h to that at h/2."""
    coarse = solve_curvature(m, y0, s_span, h)
    fine = solve_curvature(m, y0, s_span, h / 2)
    return (np.max(np.abs(coarse.first_integral_residual))
            / np.max(np.abs(fine.first_integral_residual)))
