"""
Translation surfaces Ψ(s,t) = α(s) + β(t) and the curve operator.

Surface quantities follow the unit-speed formulas

    E = G = 1, F = cos φ, N = t_α×t_β / sin φ,
    l = −(κ_α/sin φ)⟨b_α,t_β⟩,  m = 0,  n = (κ_β/sin φ)⟨t_α,b_β⟩,

and the operator of a non-planar curve is, in its Frenet basis,

    [[0, 0, κ], [0, −τ, −R], [κ, −R, Σ/τ]],  R = κ'/κ + τ'/τ,  Σ = (κ'/κ)' + κ² − τ².
"""

import math
import logging
from multiprocessing.pool import ThreadPool

import numpy as np
import pandas as pd
from tqdm import tqdm

from transurf.errors import DegenerateNode, ZeroTorsion, NonpositiveKappa, GridTooCoarse
from transurf.curve import SpaceCurve, SampledCurve
from transurf.utils.general import show_progress
from transurf.utils.numerics import stencil_derivative, interior_mask

SURFACE_COLUMNS = ['s', 't', 'x', 'y', 'z', 'K', 'H', 'phi']

SIN_PHI_MIN = 1e-3
ZERO_TORSION = 1e-12
ROW_BLOCK = 64
# distance from ±1 within which the eigenvalue cosine counts as a repeated root
R_SNAP = 4 * np.finfo(float).eps


class TranslationSurface(object):
    """
    Translation surface sampled on the product of the two curve grids, row index on α
    and column index on β. Quantities at degenerate nodes (sin φ < `sin_phi_min`) are NaN
    except for positions and φ.
    """

    def __init__(self, alpha, beta, position, phi, E, F, G, l, m, n, K, H, normal, H_forms, sin_phi_min):
        self.alpha = alpha
        self.beta = beta
        self.s_grid = alpha.s_grid
        self.t_grid = beta.s_grid
        self.position = position
        self.phi = phi
        self.E = E
        self.F = F
        self.G = G
        self.l = l
        self.m = m
        self.n = n
        self.K = K
        self.H = H
        self.normal = normal
        self.H_forms = H_forms
        self.sin_phi_min = sin_phi_min
        self.degenerate = np.sin(phi) < sin_phi_min

    @property
    def shape(self):
        return self.position.shape[:2]

    @property
    def degenerate_count(self):
        return int(np.count_nonzero(self.degenerate))

    def max_abs(self, field):
        """Largest |value| of a node field over regular nodes (0 if none)."""
        values = np.abs(getattr(self, field)[~self.degenerate])
        return float(values.max()) if values.size else 0.0

    def to_frame(self):
        """Surface as a dataframe in the `s,t,x,y,z,K,H,phi` schema, s-major."""
        ns, nt = self.shape
        s, t = np.meshgrid(self.s_grid, self.t_grid, indexing='ij')
        data = np.column_stack([s.ravel(), t.ravel(), self.position.reshape(ns * nt, 3),
                                self.K.ravel(), self.H.ravel(), self.phi.ravel()])
        return pd.DataFrame(data, columns=SURFACE_COLUMNS)


class OperatorSample(object):
    """Operator matrix at one curve sample with its sorted eigenvalues."""

    def __init__(self, s, matrix, eigenvalues, R, Sigma):
        self.s = s
        self.matrix = matrix
        self.eigenvalues = eigenvalues
        self.R = R
        self.Sigma = Sigma

    def __repr__(self):
        return 'OperatorSample(s={!r}, eigenvalues={!r})'.format(self.s, self.eigenvalues)


class InvariantEstimate(object):
    """Per-sample estimates of (c1, c2, c3) with their means and standard deviations."""

    def __init__(self, samples):
        """
        :param np.ndarray samples: shape (n, 3), columns c1, c2, c3.
        """
        self.samples = samples
        self.coefficients = tuple(float(v) for v in samples.mean(axis=0))
        self.std = tuple(float(v) for v in samples.std(axis=0))

    def __iter__(self):
        return iter(self.coefficients)

    def deviation(self, target):
        """Largest |sample − target| per coefficient."""
        return tuple(float(v) for v in np.max(np.abs(self.samples - np.asarray(target)), axis=0))


def _evaluate_rows(alpha, beta, rows, sin_phi_min):
    ta, tb = alpha.tangent[rows], beta.tangent
    cross = np.cross(ta[:, None, :], tb[None, :, :])
    sin_phi = np.linalg.norm(cross, axis=2)
    cos_phi = ta @ tb.T
    phi = np.arctan2(sin_phi, cos_phi)
    regular = sin_phi >= sin_phi_min
    safe = np.where(regular, sin_phi, np.nan)

    E = np.broadcast_to(np.einsum('ij,ij->i', ta, ta)[:, None], sin_phi.shape)
    G = np.broadcast_to(np.einsum('ij,ij->i', tb, tb)[None, :], sin_phi.shape)
    F = cos_phi
    ba_tb = alpha.binormal[rows] @ tb.T
    ta_bb = ta @ beta.binormal.T
    ka = alpha.kappa[rows][:, None]
    kb = beta.kappa[None, :]

    l = -ka * ba_tb / safe
    n = kb * ta_bb / safe
    m = np.zeros_like(l)
    K = -ka * kb * ba_tb * ta_bb / safe ** 4
    H = (-ka * ba_tb + kb * ta_bb) / (2 * safe ** 3)
    H_forms = (l * G - 2 * m * F + n * E) / (2 * np.where(regular, E * G - F ** 2, np.nan))
    normal = cross / safe[:, :, None]
    position = alpha.position[rows][:, None, :] + beta.position[None, :, :]
    return position, phi, E, F, G, l, m, n, K, H, normal, H_forms


def _row_blocks(n_rows, block):
    return [slice(i, min(i + block, n_rows)) for i in range(0, n_rows, block)]


def surface_from_curves(alpha, beta, sin_phi_min=SIN_PHI_MIN, strict=False, num_workers=1, block=ROW_BLOCK):
    """
    Evaluates Ψ(s,t) = α(s) + β(t) with its fundamental forms and curvatures.
    :param SpaceCurve alpha: unit-speed curve along the rows.
    :param SpaceCurve beta: unit-speed curve along the columns.
    :param float sin_phi_min: regularity threshold on sin φ.
    :param bool strict: raise DegenerateNode instead of flagging degenerate nodes.
    :param int num_workers: threads evaluating row blocks; results are assembled in row order.
    :param int block: rows per block.
    :rtype: TranslationSurface
    """
    blocks = _row_blocks(len(alpha), block)

    def job(rows):
        return _evaluate_rows(alpha, beta, rows, sin_phi_min)

    progress = dict(total=len(blocks), desc='surface', disable=not show_progress(), leave=False)
    if num_workers > 1:
        with ThreadPool(num_workers) as pool:
            parts = list(tqdm(pool.imap(job, blocks), **progress))
    else:
        parts = list(tqdm(map(job, blocks), **progress))
    fields = [np.concatenate([p[k] for p in parts], axis=0) for k in range(len(parts[0]))]
    surface = TranslationSurface(alpha, beta, *fields, sin_phi_min=sin_phi_min)

    if surface.degenerate_count:
        if strict:
            raise DegenerateNode('{} nodes have sin φ < {}'.format(surface.degenerate_count, sin_phi_min))
        logging.warning('%d of %d surface nodes are degenerate (sin phi < %g) and excluded from residuals',
                        surface.degenerate_count, surface.degenerate.size, sin_phi_min)
    return surface


def minimality_residual(alpha, beta, block=256):
    """
    Largest |κ_α⟨b_α,t_β⟩ − κ_β⟨t_α,b_β⟩| over all pairs of samples; zero exactly when the
    translation surface is minimal.
    :param SpaceCurve alpha: unit-speed curve with frame.
    :param SpaceCurve beta: unit-speed curve with frame.
    :rtype: float
    """
    worst = 0.0
    for rows in _row_blocks(len(alpha), block):
        term_a = alpha.kappa[rows][:, None] * (alpha.binormal[rows] @ beta.tangent.T)
        term_b = beta.kappa[None, :] * (alpha.tangent[rows] @ beta.binormal.T)
        worst = max(worst, float(np.max(np.abs(term_a - term_b))))
    return worst


def _as_sampled(curve):
    return SampledCurve.from_curve(curve) if isinstance(curve, SpaceCurve) else curve


def _even_indices(n, max_nodes):
    if max_nodes is None or n <= max_nodes:
        return np.arange(n)
    return np.unique(np.round(np.linspace(0, n - 1, max_nodes)).astype(int))


def minimality_residual_general(alpha, beta, max_nodes=None, block=256):
    """
    Minimality test for curves that are not parameterized by arc length:
    max | |β'|²⟨α'×α'', β'⟩ − |α'|²⟨α', β'×β''⟩ |
    with derivatives from 5-point stencils, evaluated on the samples reached by the central stencil.
    :param SampledCurve alpha: samples of the first curve.
    :param SampledCurve beta: samples of the second curve.
    :param int max_nodes: evaluate pairs on at most this many evenly spaced samples per curve.
    :rtype: float
    """
    alpha, beta = _as_sampled(alpha), _as_sampled(beta)
    for curve in (alpha, beta):
        if len(curve) < 5:
            raise GridTooCoarse('need at least 5 samples per curve, got {}'.format(len(curve)))

    def derivatives(curve):
        d1 = stencil_derivative(curve.position, curve.step, order=1)
        d2 = stencil_derivative(curve.position, curve.step, order=2)
        inner = np.nonzero(interior_mask(len(curve)))[0]
        keep = inner[_even_indices(len(inner), max_nodes)]
        return d1[keep], np.cross(d1, d2)[keep]

    a1, a12 = derivatives(alpha)
    b1, b12 = derivatives(beta)
    a_sq = np.einsum('ij,ij->i', a1, a1)
    b_sq = np.einsum('ij,ij->i', b1, b1)
    worst = 0.0
    for rows in _row_blocks(len(a1), block):
        lhs = (a12[rows] @ b1.T) * b_sq[None, :]
        rhs = a_sq[rows][:, None] * (a1[rows] @ b12.T)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def symmetric_eigenvalues(matrices):
    """
    Ascending eigenvalues of symmetric 3x3 matrices by the trigonometric method.
    :param np.ndarray matrices: shape (..., 3, 3).
    :rtype: np.ndarray
    :return: shape (..., 3).
    """
    A = np.asarray(matrices, dtype=float)
    p1 = A[..., 0, 1] ** 2 + A[..., 0, 2] ** 2 + A[..., 1, 2] ** 2
    diag = np.stack([A[..., 0, 0], A[..., 1, 1], A[..., 2, 2]], axis=-1)
    q = diag.sum(axis=-1) / 3
    p2 = ((diag - q[..., None]) ** 2).sum(axis=-1) + 2 * p1
    p = np.sqrt(p2 / 6)
    scalar = p > 0
    safe_p = np.where(scalar, p, 1.0)
    B = (A - q[..., None, None] * np.eye(3)) / safe_p[..., None, None]
    r = np.clip(np.linalg.det(B) / 2, -1.0, 1.0)
    r = np.where(np.abs(r) >= 1.0 - R_SNAP, np.sign(r), r)
    phi = np.arccos(r) / 3
    e_max = q + 2 * p * np.cos(phi)
    e_min = q + 2 * p * np.cos(phi + 2 * math.pi / 3)
    e_mid = 3 * q - e_max - e_min
    eig = np.stack([e_min, e_mid, e_max], axis=-1)
    eig = np.where(scalar[..., None], eig, diag)
    return np.sort(eig, axis=-1)


def operator_matrices(kappa, kappa_prime, kappa_second, tau, tau_prime):
    """
    Operator matrices in the Frenet basis, vectorized over samples.
    :rtype: (np.ndarray, np.ndarray, np.ndarray)
    :return: matrices (n, 3, 3), R (n,), Σ (n,).
    """
    kappa, kappa_prime, kappa_second, tau, tau_prime = (
        np.asarray(v, dtype=float) for v in (kappa, kappa_prime, kappa_second, tau, tau_prime))
    if np.any(kappa <= 0):
        raise NonpositiveKappa('operator needs κ > 0')
    if np.any(np.abs(tau) < ZERO_TORSION):
        raise ZeroTorsion('operator is undefined on planar curves (τ = 0)')
    log_k = kappa_prime / kappa
    R = log_k + tau_prime / tau
    Sigma = kappa_second / kappa - log_k ** 2 + kappa ** 2 - tau ** 2
    mats = np.zeros(kappa.shape + (3, 3))
    mats[..., 0, 2] = mats[..., 2, 0] = kappa
    mats[..., 1, 1] = -tau
    mats[..., 1, 2] = mats[..., 2, 1] = -R
    mats[..., 2, 2] = Sigma / tau
    return mats, R, Sigma


def operator_L(kappa, kappa_prime, kappa_second, tau, tau_prime, s=0.0):
    """
    Operator at a single sample.
    :param float kappa: curvature, positive.
    :param float kappa_prime: κ'.
    :param float kappa_second: κ''.
    :param float tau: torsion, non-zero.
    :param float tau_prime: τ'.
    :param float s: arc length of the sample.
    :rtype: OperatorSample
    """
    mats, R, Sigma = operator_matrices(kappa, kappa_prime, kappa_second, tau, tau_prime)
    eig = symmetric_eigenvalues(mats)
    return OperatorSample(s, mats, tuple(float(v) for v in eig), float(R), float(Sigma))


def profile_derivatives(profile):
    """
    (κ'', τ', mask) for a profile: analytic values when the profile carries them, stencils
    otherwise, with `mask` excluding one-sided stencil samples in that case.
    """
    n = len(profile)
    mask = np.ones(n, dtype=bool)
    kappa_second, tau_prime = profile.kappa_second, profile.tau_prime
    if kappa_second is None:
        kappa_second = stencil_derivative(profile.kappa_prime, profile.step, order=1)
        mask &= interior_mask(n)
    if tau_prime is None:
        tau_prime = stencil_derivative(profile.tau, profile.step, order=1)
        mask &= interior_mask(n)
    return kappa_second, tau_prime, mask


def operator_fields(profile):
    """R and Σ along a profile."""
    kappa_second, tau_prime, _ = profile_derivatives(profile)
    _, R, Sigma = operator_matrices(profile.kappa, profile.kappa_prime, kappa_second, profile.tau, tau_prime)
    return R, Sigma


def operator_spectrum(profile):
    """Sorted operator eigenvalues at every profile sample, shape (n, 3)."""
    kappa_second, tau_prime, _ = profile_derivatives(profile)
    mats, _, _ = operator_matrices(profile.kappa, profile.kappa_prime, kappa_second, profile.tau, tau_prime)
    return symmetric_eigenvalues(mats)


def operator_world(profile, curve):
    """
    Operator expressed in world coordinates, F·L·Fᵀ with F the Frenet frame of `curve`.
    Constant along curves of the closed-form construction.
    :rtype: np.ndarray
    :return: shape (n, 3, 3).
    """
    kappa_second, tau_prime, _ = profile_derivatives(profile)
    mats, _, _ = operator_matrices(profile.kappa, profile.kappa_prime, kappa_second, profile.tau, tau_prime)
    frames = curve.frames
    return np.einsum('nij,njk,nlk->nil', frames, mats, frames)


def tangent_cone_residual(curve, eigenvalues):
    """Largest |Σ λᵢ tᵢ²|: tangents of a generating curve lie on the operator's null cone."""
    lam = np.asarray(eigenvalues, dtype=float)
    return float(np.max(np.abs(curve.tangent ** 2 @ lam)))


def extract_invariants(profile):
    """
    Estimates c1 = κ²τ, c2 = Σ/τ − τ and c3 = −(Σ + R² + κ²) at every sample; their standard
    deviations measure how far the profile is from a solution.
    :param CurvatureProfile profile: the profile.
    :rtype: InvariantEstimate
    """
    kappa_second, tau_prime, mask = profile_derivatives(profile)
    _, R, Sigma = operator_matrices(profile.kappa, profile.kappa_prime, kappa_second, profile.tau, tau_prime)
    kappa, tau = profile.kappa, profile.tau
    samples = np.column_stack([kappa ** 2 * tau, Sigma / tau - tau, -(Sigma + R ** 2 + kappa ** 2)])
    return InvariantEstimate(samples[mask])
