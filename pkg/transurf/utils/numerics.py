#################################################################################
#
#             Project Title:  Numerical building blocks for transurf
#             Date:           2026-10-19
#
#################################################################################

"""Fixed-step integration, finite-difference stencils, frame projection
and arc-length reparameterization shared by the curve and geometry modules."""

#################################################################################
#   Module Imports
#################################################################################

import math

import numpy as np
from tqdm import tqdm
from scipy.integrate import cumulative_simpson
from scipy.interpolate import CubicHermiteSpline

from transurf.errors import GridTooCoarse
from transurf.utils.general import show_progress

#################################################################################
#   Function-Class Declaration
#################################################################################


def grid_steps(s_span, h):
    """Number of steps covering `s_span` with a step as close to `h` as possible
    while landing exactly on both ends.

    :param tuple s_span: (start, end) with end > start.
    :param float h: requested step.
    :rtype: (int, float)
    :return: the number of steps and the effective step.
    """
    s0, s1 = float(s_span[0]), float(s_span[1])
    assert s1 > s0, "ERROR: span end {} must exceed its start {}".format(s1, s0)
    assert h > 0, "ERROR: step must be positive, got {}".format(h)
    n_steps = max(1, int(round((s1 - s0) / h)))
    return n_steps, (s1 - s0) / n_steps


def rk4_step(rhs, s, state, h):
    """One classical Runge-Kutta step of `state' = rhs(s, state)`."""
    k1 = rhs(s, state)
    k2 = rhs(s + h / 2, state + 0.5 * h * k1)
    k3 = rhs(s + h / 2, state + 0.5 * h * k2)
    k4 = rhs(s + h, state + h * k3)
    return state + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def rk4_integrate(rhs, state0, s0, h, n_steps, guard=None, project=None, desc=None):
    """
    Integrates `state' = rhs(s, state)` with fixed-step RK4.
    :param callable rhs: the right-hand side, returning an array shaped like the state.
    :param np.ndarray state0: the initial state.
    :param float s0: the initial abscissa.
    :param float h: the step.
    :param int n_steps: the number of steps.
    :param callable guard: called as `guard(s, state)` after every step; raises to abort.
    :param callable project: maps every new state onto its constraint manifold.
    :param str desc: progress bar label.
    :rtype: np.ndarray
    :return: array of shape (n_steps + 1, len(state0)) with the state at every grid point.
    """
    states = np.empty((n_steps + 1, len(state0)))
    states[0] = state = np.asarray(state0, dtype=float)
    for i in tqdm(range(n_steps), desc=desc, disable=not show_progress() or desc is None, leave=False):
        s = s0 + i * h
        state = rk4_step(rhs, s, state, h)
        if project is not None:
            state = project(state)
        if guard is not None:
            guard(s + h, state)
        states[i + 1] = state
    return states


def fd_weights(offsets, order):
    """
    Finite-difference weights for the derivative of the given order on the given
    integer offsets (unit spacing), from the moment conditions of the stencil.
    :param list offsets: the stencil offsets, e.g. [-2, -1, 0, 1, 2].
    :param int order: the derivative order.
    :rtype: np.ndarray
    :return: the weights, one per offset.
    """
    offsets = np.asarray(offsets, dtype=float)
    m = len(offsets)
    assert order < m, "ERROR: a {}-point stencil cannot resolve derivative order {}".format(m, order)
    vander = np.vander(offsets, m, increasing=True).T
    rhs = np.zeros(m)
    rhs[order] = math.factorial(order)
    return np.linalg.solve(vander, rhs)


def stencil_derivative(values, h, order=1, points=5):
    """
    Derivative of uniformly sampled values by central stencils in the interior and
    one-sided stencils of the same width at both ends.
    :param np.ndarray values: samples, shape (n,) or (n, d).
    :param float h: the grid spacing.
    :param int order: the derivative order.
    :param int points: the stencil width (odd).
    :rtype: np.ndarray
    :return: the derivative samples, same shape as `values`.
    """
    values = np.asarray(values, dtype=float)
    n = values.shape[0]
    if n < points:
        raise GridTooCoarse('{} samples cannot support a {}-point stencil'.format(n, points))
    half = points // 2
    out = np.empty_like(values)

    central = np.arange(-half, half + 1)
    weights = fd_weights(central, order)
    interior = np.zeros_like(values[half:n - half])
    for w, o in zip(weights, central):
        interior = interior + w * values[half + o:n - half + o]
    out[half:n - half] = interior

    for i in list(range(half)) + list(range(n - half, n)):
        start = min(max(i - half, 0), n - points)
        offs = np.arange(start, start + points) - i
        w = fd_weights(offs, order)
        out[i] = np.tensordot(w, values[start:start + points], axes=(0, 0))

    return out / h ** order


def interior_mask(n, points=5):
    """Samples reached by the central stencil of the given width."""
    mask = np.zeros(n, dtype=bool)
    half = points // 2
    mask[half:n - half] = True
    return mask


def nearest_rotation(frame):
    """Polar projection of a near-orthogonal 3x3 matrix onto SO(3)."""
    u, _, vt = np.linalg.svd(frame)
    rot = u @ vt
    if np.linalg.det(rot) < 0:
        u[:, -1] = -u[:, -1]
        rot = u @ vt
    return rot


def hermite(s_grid, values, derivatives):
    """Cubic Hermite interpolant through samples and their derivatives."""
    return CubicHermiteSpline(s_grid, values, derivatives)


def arc_length_reparameterize(speed, u_span, n, u_origin=None, oversample=32, newton_steps=8):
    """
    Samples a regular curve uniformly in arc length. The arc length is the cumulative
    Simpson quadrature of the speed on a dense parameter grid; its inverse is seeded by
    monotone linear interpolation and polished by Newton steps on the Hermite interpolant
    of the arc length.
    :param callable speed: vectorized |dα/du|.
    :param tuple u_span: (u_min, u_max) parameter interval.
    :param int n: the number of arc-length samples.
    :param float u_origin: parameter where the arc length is zero; defaults to `u_min`.
    :param int oversample: dense samples per output interval.
    :param int newton_steps: number of Newton polishing iterations.
    :rtype: (np.ndarray, np.ndarray)
    :return: the uniform arc-length grid and the parameter value at each sample.
    """
    u_min, u_max = float(u_span[0]), float(u_span[1])
    assert u_max > u_min, "ERROR: empty parameter span {}".format(u_span)
    if n < 2:
        raise GridTooCoarse('at least 2 samples needed, got {}'.format(n))
    u_dense = np.linspace(u_min, u_max, (n - 1) * oversample + 1)
    v_dense = speed(u_dense)
    assert np.all(v_dense > 0), "ERROR: curve is not regular on {}".format(u_span)
    arc = cumulative_simpson(v_dense, x=u_dense, initial=0.0)
    arc_of_u = CubicHermiteSpline(u_dense, arc, v_dense)

    offset = 0.0 if u_origin is None else float(arc_of_u(u_origin))
    s_grid = np.linspace(arc[0], arc[-1], n) - offset
    target = s_grid + offset
    u = np.interp(target, arc, u_dense)
    for _ in range(newton_steps):
        u = np.clip(u - (arc_of_u(u) - target) / speed(u), u_min, u_max)
    return s_grid, u


def rigid_align(frame_ref, origin_ref, frame_other, origin_other, positions_other):
    """Maps positions so that the other curve's frame and origin coincide with the reference ones."""
    rot = frame_ref @ frame_other.T
    return origin_ref + (positions_other - origin_other) @ rot.T

#######################################################################
# Main
#######################################################################
