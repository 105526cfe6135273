"""
Generating space curves.

The closed-form construction follows the tangent field

    α'(s) = (A cos w, B sin w, √((1−A²)cos²w + (1−B²)sin²w)),   w' = √(κ² + λ1λ2),

whose frame, curvature and torsion are obtained by differentiating the tangent formula in w.
A Frenet-system integrator rebuilds curves from (κ, τ) alone and serves as an independent
oracle, and a few closed-form curves (helix, line, Scherk generator) feed the fixtures.
"""

import math
import logging

import numpy as np
import pandas as pd

from transurf.errors import (DoubleRoot, NonmonotonePhase, PhaseMismatch, NonpositiveKappa, BadRadius,
                             SpanHitsSingularity, GridTooCoarse, DegenerateSecondDerivative)
from transurf.curvature_ode import equilibria, curvature_guard, profile_from_states
from transurf.moduli import is_double_root
from transurf.utils.numerics import (rk4_integrate, stencil_derivative, interior_mask, nearest_rotation,
                                     hermite, arc_length_reparameterize, grid_steps, rigid_align)

CURVE_COLUMNS = ['s', 'x', 'y', 'z', 'tx', 'ty', 'tz', 'nx', 'ny', 'nz', 'bx', 'by', 'bz', 'kappa', 'tau']
SAMPLED_COLUMNS = ['u', 'x', 'y', 'z']

# phase mismatch accepted for an explicit w0, modulo π
PHASE_TOL = 1e-8
# |α'×α''| below which curvature is undefined
DEGENERATE_CROSS = 1e-12


class SpaceCurve(object):
    """
    Unit-speed curve sampled on an arc-length grid, with its Frenet frame.
    Arrays are read-only once built.
    """

    def __init__(self, s_grid, position, tangent, normal, binormal, kappa, tau, parameter=None):
        """
        :param np.ndarray s_grid: arc-length samples, shape (n,).
        :param np.ndarray position: positions, shape (n, 3).
        :param np.ndarray tangent: unit tangents, shape (n, 3).
        :param np.ndarray normal: unit principal normals, shape (n, 3).
        :param np.ndarray binormal: unit binormals, shape (n, 3).
        :param np.ndarray kappa: curvature, shape (n,).
        :param np.ndarray tau: torsion, shape (n,).
        :param np.ndarray parameter: original curve parameter at every sample, if any.
        """
        self.s_grid = _frozen(s_grid)
        self.position = _frozen(position)
        self.tangent = _frozen(tangent)
        self.normal = _frozen(normal)
        self.binormal = _frozen(binormal)
        self.kappa = _frozen(kappa)
        self.tau = _frozen(tau)
        self.parameter = _frozen(parameter) if parameter is not None else None
        n = len(self.s_grid)
        for name in ('position', 'tangent', 'normal', 'binormal'):
            assert getattr(self, name).shape == (n, 3), "ERROR: {} must have shape ({}, 3)".format(name, n)
        assert self.kappa.shape == self.tau.shape == (n,), "ERROR: kappa/tau must have shape ({},)".format(n)

    def __len__(self):
        return len(self.s_grid)

    @property
    def step(self):
        return float(self.s_grid[1] - self.s_grid[0])

    @property
    def frames(self):
        """Frenet frames as rotation matrices with columns (t, n, b), shape (n, 3, 3)."""
        return np.stack([self.tangent, self.normal, self.binormal], axis=-1)

    def transformed(self, matrix, offset=None):
        """
        Image of the curve under x -> matrix·x + offset. An orientation-reversing matrix
        flips the binormal and the sign of the torsion.
        :param np.ndarray matrix: orthogonal 3x3 matrix.
        :param np.ndarray offset: translation.
        :rtype: SpaceCurve
        """
        matrix = np.asarray(matrix, dtype=float)
        assert np.allclose(matrix @ matrix.T, np.eye(3), atol=1e-12), "ERROR: matrix must be orthogonal"
        det = np.sign(np.linalg.det(matrix))
        offset = np.zeros(3) if offset is None else np.asarray(offset, dtype=float)
        return self.replace(position=self.position @ matrix.T + offset,
                          tangent=self.tangent @ matrix.T,
                          normal=self.normal @ matrix.T,
                          binormal=det * (self.binormal @ matrix.T),
                          tau=det * self.tau)

    def subsample(self, indices):
        """Curve restricted to the given sample indices."""
        indices = np.asarray(indices)
        return SpaceCurve(self.s_grid[indices], self.position[indices], self.tangent[indices],
                          self.normal[indices], self.binormal[indices], self.kappa[indices],
                          self.tau[indices],
                          parameter=None if self.parameter is None else self.parameter[indices])

    def replace(self, **changes):
        fields = dict(s_grid=self.s_grid, position=self.position, tangent=self.tangent,
                      normal=self.normal, binormal=self.binormal, kappa=self.kappa, tau=self.tau,
                      parameter=self.parameter)
        fields.update(changes)
        return SpaceCurve(**fields)

    def to_frame(self):
        """Curve as a dataframe in the `s,x,y,z,tx,...,bz,kappa,tau` schema."""
        data = np.column_stack([self.s_grid, self.position, self.tangent, self.normal, self.binormal,
                                self.kappa, self.tau])
        return pd.DataFrame(data, columns=CURVE_COLUMNS)

    @classmethod
    def from_frame(cls, df):
        """Inverse of `to_frame`."""
        values = df[CURVE_COLUMNS].to_numpy(dtype=float)
        return cls(values[:, 0], values[:, 1:4], values[:, 4:7], values[:, 7:10], values[:, 10:13],
                   values[:, 13], values[:, 14])


class GeneratingCurve(SpaceCurve):
    """
    Curve of the closed-form construction. Besides the frame it keeps the phase w,
    its rate w', the third tangent component α₃', the amplitudes, and the profile it was built from.
    """

    def __init__(self, s_grid, position, tangent, normal, binormal, kappa, tau,
                 phase, phase_rate, alpha3_prime, amplitudes, profile, swap_axes=False):
        super().__init__(s_grid, position, tangent, normal, binormal, kappa, tau)
        self.phase = _frozen(phase)
        self.phase_rate = _frozen(phase_rate)
        self.alpha3_prime = _frozen(alpha3_prime)
        self.amplitudes = amplitudes
        self.profile = profile
        self.moduli = profile.moduli
        self.swap_axes = swap_axes

    @property
    def slope_ratio(self):
        """w'/α₃' per sample; constant √((λ3−λ1)(λ3−λ2)) on exact solutions."""
        return self.phase_rate / self.alpha3_prime


class AmplitudePair(object):
    """Tangent amplitudes A = √(λ3/(λ3−λ1)), B = √(λ3/(λ3−λ2)) and the phase origin."""

    def __init__(self, A, B, w0=0.0):
        self.A = float(A)
        self.B = float(B)
        self.w0 = float(w0)

    def swapped(self):
        return AmplitudePair(self.B, self.A, self.w0)

    def __repr__(self):
        return 'AmplitudePair(A={!r}, B={!r}, w0={!r})'.format(self.A, self.B, self.w0)


class SampledCurve(object):
    """Curve samples on a uniform, not necessarily arc-length, parameter grid."""

    def __init__(self, param, position):
        self.param = _frozen(param)
        self.position = _frozen(position)
        assert self.position.shape == (len(self.param), 3), "ERROR: positions must have shape (n, 3)"

    def __len__(self):
        return len(self.param)

    @property
    def step(self):
        return float(self.param[1] - self.param[0])

    def to_frame(self):
        return pd.DataFrame(np.column_stack([self.param, self.position]), columns=SAMPLED_COLUMNS)

    @classmethod
    def from_curve(cls, curve):
        return cls(curve.s_grid, curve.position)


class SampledCurvature(object):
    """Curvature and torsion measured from positions by finite differences."""

    def __init__(self, param, speed, kappa, tau, interior):
        self.param = param
        self.speed = speed
        self.kappa = kappa
        self.tau = tau
        self.interior = interior


def _frozen(values):
    values = np.array(values, dtype=float)
    values.setflags(write=False)
    return values


def amplitude_constants(m):
    """
    :param Moduli m: canonical moduli.
    :rtype: AmplitudePair
    :return: (A, B) with w0 = 0.
    """
    l1, l2, l3 = m.roots
    return AmplitudePair(math.sqrt(l3 / (l3 - l1)), math.sqrt(l3 / (l3 - l2)), 0.0)


def _phase_axes(m, swap_axes):
    """Curvatures reached at w = 0 and w = π/2 respectively."""
    y_low, y_high = equilibria(m)
    return (y_low, y_high) if swap_axes else (y_high, y_low)


def phase_origin(profile, swap_axes=False):
    """
    Phase w(0) consistent with the profile's initial values. Along a solution
    κ² = ya²cos²w + yb²sin²w and κκ' = (yb² − ya²) sin w cos w w'; the returned
    branch has cos w(0) ≥ 0.
    :param CurvatureProfile profile: ODE profile.
    :param bool swap_axes: whether the roles of λ1 and λ2 are exchanged.
    :rtype: float
    """
    m = profile.moduli
    ya, yb = _phase_axes(m, swap_axes)
    y0, yp0 = float(profile.kappa[0]), float(profile.kappa_prime[0])
    cos_sq = (y0 ** 2 - yb ** 2) / (ya ** 2 - yb ** 2)
    cos_sq = min(1.0, max(0.0, cos_sq))
    sign = np.sign(yp0 / (yb ** 2 - ya ** 2)) or 1.0
    return math.atan2(sign * math.sqrt(1.0 - cos_sq), math.sqrt(cos_sq))


def tangent_field(w, amplitudes):
    """
    Tangent and its first two w-derivatives for phase samples.
    :param np.ndarray w: phases.
    :param AmplitudePair amplitudes: amplitudes.
    :rtype: (np.ndarray, np.ndarray, np.ndarray, np.ndarray)
    :return: t, dt/dw, d²t/dw² (each (n, 3)) and the third tangent component α₃'.
    """
    A, B = amplitudes.A, amplitudes.B
    cw, sw = np.cos(w), np.sin(w)
    radicand = (1 - A ** 2) * cw ** 2 + (1 - B ** 2) * sw ** 2
    assert np.all(radicand > 0), "ERROR: third tangent component radicand must be positive"
    a3 = np.sqrt(radicand)
    a3_w = (A ** 2 - B ** 2) * sw * cw / a3
    a3_ww = (A ** 2 - B ** 2) * (np.cos(2 * w) * radicand - (A ** 2 - B ** 2) * sw ** 2 * cw ** 2) / a3 ** 3
    t = np.column_stack([A * cw, B * sw, a3])
    t_w = np.column_stack([-A * sw, B * cw, a3_w])
    t_ww = np.column_stack([-A * cw, -B * sw, a3_ww])
    return t, t_w, t_ww, a3


def construct_generating_curve(profile, w0=None, swap_axes=False):
    """
    Closed-form generating curve of an ODE profile. The phase and the position are appended to
    the (κ, κ') state and integrated in one RK4 pass on the profile grid; frames, curvature and
    torsion come from analytic derivatives of the tangent formula.
    :param CurvatureProfile profile: ODE profile of non-double-root moduli.
    :param float w0: phase at the start of the grid; `None` derives it from the profile. An explicit
        value must agree with the derived one modulo π.
    :param bool swap_axes: exchange the roles of λ1 and λ2 (a congruent curve).
    :rtype: GeneratingCurve
    """
    m = profile.moduli
    assert m is not None, "ERROR: profile carries no moduli"
    if is_double_root(m):
        raise DoubleRoot('moduli {} have a double root: use the helix constructor'.format(m.roots))

    derived = phase_origin(profile, swap_axes)
    if w0 is None:
        w0 = derived
    else:
        gap = (float(w0) - derived) % math.pi
        if min(gap, math.pi - gap) > PHASE_TOL:
            raise PhaseMismatch('w0={} is inconsistent with the initial curvature; expected {} + kπ'
                                .format(w0, derived))
    amplitudes = amplitude_constants(m)
    if swap_axes:
        amplitudes = amplitudes.swapped()
    amplitudes.w0 = float(w0)
    A, B = amplitudes.A, amplitudes.B
    l1, l2, _ = m.roots
    l12 = l1 * l2
    c1_sq, c3 = m.c1 ** 2, m.c3

    def rhs(s, state):
        y, yp, w = state[0], state[1], state[2]
        cw, sw = math.cos(w), math.sin(w)
        return np.array([yp,
                         -2 * y ** 3 - c3 * y + c1_sq / y ** 3,
                         math.sqrt(y * y + l12),
                         A * cw,
                         B * sw,
                         math.sqrt((1 - A * A) * cw * cw + (1 - B * B) * sw * sw)])

    s_grid = profile.s_grid
    h = profile.step
    state0 = np.array([profile.kappa[0], profile.kappa_prime[0], w0, 0.0, 0.0, 0.0])
    states = rk4_integrate(rhs, state0, s_grid[0], h, len(s_grid) - 1,
                           guard=curvature_guard(m), desc='generating curve')
    kappa, kappa_prime, w, position = states[:, 0], states[:, 1], states[:, 2], states[:, 3:6]
    drift = float(np.max(np.abs(kappa - profile.kappa)))
    logging.debug('Joint integration curvature drift against the profile: %.3g', drift)
    profile = profile_from_states(m, s_grid, kappa, kappa_prime, y0=profile.y0)

    phase_rate_sq = kappa ** 2 + l12
    if np.any(phase_rate_sq <= 0):
        raise NonmonotonePhase('w\' vanishes or is imaginary on the grid; the profile is corrupted')
    w_prime = np.sqrt(phase_rate_sq)

    t, t_w, t_ww, a3 = tangent_field(w, amplitudes)
    speed_w = np.linalg.norm(t_w, axis=1)
    kappa_c = w_prime * speed_w
    normal = t_w / speed_w[:, None]
    cross = np.cross(t, t_w)
    binormal = cross / speed_w[:, None]
    tau_c = w_prime * np.einsum('ij,ij->i', cross, t_ww) / speed_w ** 2

    curve = GeneratingCurve(s_grid, position, t, normal, binormal, kappa_c, tau_c,
                            phase=w, phase_rate=w_prime, alpha3_prime=a3,
                            amplitudes=amplitudes, profile=profile, swap_axes=swap_axes)
    if m.mirrored:
        curve = _mirror(curve)
    return curve


def _mirror(curve):
    """Reflection z -> −z of a generating curve, keeping its construction data."""
    reflected = curve.transformed(np.diag([1.0, 1.0, -1.0]))
    return GeneratingCurve(reflected.s_grid, reflected.position, reflected.tangent, reflected.normal,
                           reflected.binormal, reflected.kappa, reflected.tau,
                           phase=curve.phase, phase_rate=curve.phase_rate,
                           alpha3_prime=curve.alpha3_prime, amplitudes=curve.amplitudes,
                           profile=curve.profile, swap_axes=curve.swap_axes)


def frenet_reconstruct(kappa, tau, s_span, h, frame0=None, origin=None):
    """
    Integrates t' = κn, n' = −κt + τb, b' = −τn and α' = t with RK4, projecting the frame
    onto the nearest rotation after every step.
    :param callable kappa: curvature as a function of s.
    :param callable tau: torsion as a function of s.
    :param tuple s_span: arc-length interval.
    :param float h: requested step.
    :param np.ndarray frame0: initial frame with columns (t, n, b); identity by default.
    :param np.ndarray origin: initial position; the origin by default.
    :rtype: SpaceCurve
    """
    n_steps, h = grid_steps(s_span, h)
    s_grid = s_span[0] + h * np.arange(n_steps + 1)
    kappa_samples = np.array([kappa(s) for s in s_grid])
    if np.any(kappa_samples <= 0):
        raise NonpositiveKappa('curvature must be positive on the whole span')
    tau_samples = np.array([tau(s) for s in s_grid])

    frame0 = np.eye(3) if frame0 is None else np.asarray(frame0, dtype=float)
    origin = np.zeros(3) if origin is None else np.asarray(origin, dtype=float)
    state0 = np.concatenate([origin, frame0[:, 0], frame0[:, 1], frame0[:, 2]])

    def rhs(s, state):
        k, w = kappa(s), tau(s)
        t, n, b = state[3:6], state[6:9], state[9:12]
        return np.concatenate([t, k * n, -k * t + w * b, -w * n])

    def project(state):
        rot = nearest_rotation(state[3:12].reshape(3, 3).T)
        return np.concatenate([state[:3], rot.T.ravel()])

    states = rk4_integrate(rhs, state0, s_span[0], h, n_steps, project=project, desc='frenet')
    return SpaceCurve(s_grid, states[:, 0:3], states[:, 3:6], states[:, 6:9], states[:, 9:12],
                      kappa_samples, tau_samples)


def profile_interpolants(profile):
    """
    Cubic Hermite interpolants of curvature and torsion, using the profile derivatives
    (stencil derivatives where the profile carries none).
    :param CurvatureProfile profile: the profile.
    :rtype: (callable, callable)
    """
    tau_prime = profile.tau_prime
    if tau_prime is None:
        tau_prime = stencil_derivative(profile.tau, profile.step, order=1)
    k_spline = hermite(profile.s_grid, profile.kappa, profile.kappa_prime)
    t_spline = hermite(profile.s_grid, profile.tau, tau_prime)
    return (lambda s: float(k_spline(s))), (lambda s: float(t_spline(s)))


def rigid_alignment_distance(reference, other, s_max=None):
    """
    Largest distance between two curves sampled on the same grid after moving `other`
    so its frame and position at the first sample match those of `reference`.
    :param SpaceCurve reference: the reference curve.
    :param SpaceCurve other: the curve to align.
    :param float s_max: last arc length compared; the whole grid by default.
    :rtype: float
    """
    n = min(len(reference), len(other))
    if s_max is not None:
        n = int(np.searchsorted(reference.s_grid[:n], s_max + 1e-12, side='right'))
    assert np.allclose(reference.s_grid[:n], other.s_grid[:n], atol=1e-9),\
        "ERROR: curves must share their arc-length grid"
    aligned = rigid_align(reference.frames[0], reference.position[0],
                          other.frames[0], other.position[0], other.position[:n])
    return float(np.max(np.linalg.norm(aligned - reference.position[:n], axis=1)))


def circular_helix(a, b, s_grid=None, s_span=(0.0, 10.0), h=1e-2):
    """
    Unit-speed helix (a cos φ, a sin φ, bφ) with φ = s/√(a²+b²), κ = a/(a²+b²), τ = b/(a²+b²).
    :param float a: radius, positive.
    :param float b: pitch parameter, non-zero.
    :param np.ndarray s_grid: arc-length samples; built from `s_span` and `h` when omitted.
    :rtype: SpaceCurve
    """
    if not a > 0:
        raise BadRadius('helix radius must be positive, got {}'.format(a))
    if b == 0:
        raise BadRadius('helix pitch must be non-zero (b=0 is a circle)')
    if s_grid is None:
        n_steps, h = grid_steps(s_span, h)
        s_grid = s_span[0] + h * np.arange(n_steps + 1)
    s_grid = np.asarray(s_grid, dtype=float)
    c = math.sqrt(a * a + b * b)
    phi = s_grid / c
    cp, sp = np.cos(phi), np.sin(phi)
    ones = np.ones_like(phi)
    position = np.column_stack([a * cp, a * sp, b * phi])
    tangent = np.column_stack([-a * sp, a * cp, b * ones]) / c
    normal = np.column_stack([-cp, -sp, 0 * ones])
    binormal = np.column_stack([b * sp, -b * cp, a * ones]) / c
    return SpaceCurve(s_grid, position, tangent, normal, binormal,
                      ones * a / c ** 2, ones * b / c ** 2)


def straight_line(direction, s_grid, origin=None):
    """
    Line origin + s·direction; curvature and torsion vanish and the normal is any unit
    vector orthogonal to the direction.
    :rtype: SpaceCurve
    """
    d = np.asarray(direction, dtype=float)
    assert abs(np.linalg.norm(d) - 1) < 1e-9, "ERROR: line direction must be a unit vector"
    s_grid = np.asarray(s_grid, dtype=float)
    origin = np.zeros(3) if origin is None else np.asarray(origin, dtype=float)
    helper = np.eye(3)[int(np.argmin(np.abs(d)))]
    n = np.cross(d, helper)
    n /= np.linalg.norm(n)
    b = np.cross(d, n)
    count = len(s_grid)
    zeros = np.zeros(count)
    return SpaceCurve(s_grid, origin + np.outer(s_grid, d), np.tile(d, (count, 1)),
                      np.tile(n, (count, 1)), np.tile(b, (count, 1)), zeros, zeros)


def scherk_span(c, pad=0.05):
    """Default parameter span of the Scherk generator, 5% inside the singular interval."""
    half = math.pi / (2 * c)
    return -(1 - pad) * half, (1 - pad) * half


def scherk_curve(c, u_span=None, n=401):
    """
    Generator (u, 0, −(1/c) log cos(cu)) of the Scherk family, resampled uniformly in arc length
    with s = 0 at u = 0 when the span contains it.
    :param float c: scale, positive.
    :param tuple u_span: parameter span strictly inside (−π/2c, π/2c).
    :param int n: number of arc-length samples.
    :rtype: SpaceCurve
    """
    if not c > 0:
        raise ValueError('Scherk scale must be positive, got {}'.format(c))
    if u_span is None:
        u_span = scherk_span(c)
    half = math.pi / (2 * c)
    if not (-half < u_span[0] < u_span[1] < half):
        raise SpanHitsSingularity('span {} must lie strictly inside ({}, {})'.format(u_span, -half, half))

    origin = 0.0 if u_span[0] < 0 < u_span[1] else None
    s_grid, u = arc_length_reparameterize(lambda v: 1.0 / np.cos(c * v), u_span, n, u_origin=origin)
    cu, su = np.cos(c * u), np.sin(c * u)
    zeros, ones = np.zeros_like(u), np.ones_like(u)
    position = np.column_stack([u, zeros, -np.log(cu) / c])
    tangent = np.column_stack([cu, zeros, su])
    normal = np.column_stack([-su, zeros, cu])
    binormal = np.column_stack([zeros, -ones, zeros])
    return SpaceCurve(s_grid, position, tangent, normal, binormal, c * cu, zeros, parameter=u)


def curvature_torsion_from_samples(curve):
    """
    Curvature κ = |α'×α''|/|α'|³ and torsion τ = (α',α'',α''')/|α'×α''|² from positions alone.
    First and second derivatives use 5-point stencils, the third a 7-point one; the three
    samples at each end use one-sided stencils and are excluded from `interior`.
    :param curve: `SpaceCurve` or `SampledCurve` on a uniform grid.
    :rtype: SampledCurvature
    """
    param = curve.s_grid if isinstance(curve, SpaceCurve) else curve.param
    position = curve.position
    if len(param) < 7:
        raise GridTooCoarse('need at least 7 samples, got {}'.format(len(param)))
    steps = np.diff(param)
    h = float(steps.mean())
    if np.max(np.abs(steps - h)) > 1e-9 * max(1.0, abs(h)):
        raise GridTooCoarse('samples are not on a uniform grid')

    d1 = stencil_derivative(position, h, order=1, points=5)
    d2 = stencil_derivative(position, h, order=2, points=5)
    d3 = stencil_derivative(position, h, order=3, points=7)
    cross = np.cross(d1, d2)
    cross_norm = np.linalg.norm(cross, axis=1)
    if np.any(cross_norm < DEGENERATE_CROSS):
        raise DegenerateSecondDerivative('α\'×α\'\' vanishes at {} samples'
                                         .format(int(np.sum(cross_norm < DEGENERATE_CROSS))))
    speed = np.linalg.norm(d1, axis=1)
    kappa = cross_norm / speed ** 3
    tau = np.einsum('ij,ij->i', cross, d3) / cross_norm ** 2
    return SampledCurvature(param, speed, kappa, tau, interior_mask(len(param), points=7))
