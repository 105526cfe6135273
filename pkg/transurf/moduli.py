"""
Moduli of a generating curve: the cubic −λ³ + c₂λ² − c₃λ + c₁ = 0 whose roots are the
constant eigenvalues of the curve operator, in coefficient and root form.
"""

import math
import logging

import numpy as np

from transurf.errors import ZeroRoot, SameSign, ComplexRoots, ZeroC1

# relative discriminant below which the roots are taken as complex
DISCRIMINANT_EPS = 1e-12


class Moduli(object):
    """
    Coefficients and roots of the characteristic cubic in canonical storage
    λ1 ≤ λ2 < 0 < λ3 (c1 > 0). Parameter sets with two positive roots are stored negated
    with `mirrored` set; `signed_coefficients` and `signed_roots` give them back.
    """

    def __init__(self, c1, c2, c3, roots, mirrored=False):
        """
        :param float c1: product of the roots.
        :param float c2: sum of the roots.
        :param float c3: sum of the pairwise products of the roots.
        :param tuple roots: canonical roots (λ1, λ2, λ3).
        :param bool mirrored: whether the caller-facing orientation is the negation of this one.
        """
        self.c1 = float(c1)
        self.c2 = float(c2)
        self.c3 = float(c3)
        self.roots = tuple(float(r) for r in roots)
        self.mirrored = bool(mirrored)

    @property
    def orientation(self):
        """+1 for canonical moduli, -1 for mirrored ones (sign of the torsion)."""
        return -1.0 if self.mirrored else 1.0

    @property
    def signed_coefficients(self):
        if self.mirrored:
            return -self.c1, -self.c2, self.c3
        return self.c1, self.c2, self.c3

    @property
    def signed_roots(self):
        """Roots in the caller-facing orientation, ascending."""
        return tuple(sorted(self.orientation * r for r in self.roots))

    def cubic(self, lam):
        """Evaluates −λ³ + c₂λ² − c₃λ + c₁ in canonical orientation."""
        return -lam ** 3 + self.c2 * lam ** 2 - self.c3 * lam + self.c1

    def to_dict(self):
        c1, c2, c3 = self.signed_coefficients
        return {'c1': c1, 'c2': c2, 'c3': c3,
                'roots': list(self.signed_roots), 'mirrored': self.mirrored}

    @classmethod
    def from_dict(cls, d):
        """
        Rebuilds moduli from their JSON object, re-deriving coefficients from the roots.
        :param dict d: object with keys "c1", "c2", "c3" and "roots".
        :rtype: Moduli
        """
        m = coefficients_from_roots(*d['roots'])
        c = m.signed_coefficients
        for key, value in zip(('c1', 'c2', 'c3'), c):
            if key in d and not math.isclose(d[key], value, rel_tol=1e-9, abs_tol=1e-12):
                raise ValueError('moduli entry {}={} disagrees with roots {}'.format(key, d[key], d['roots']))
        return m

    def __eq__(self, other):
        return isinstance(other, Moduli) and self.roots == other.roots and self.mirrored == other.mirrored

    def __repr__(self):
        return 'Moduli(c1={!r}, c2={!r}, c3={!r}, roots={!r}, mirrored={!r})'.format(
            self.c1, self.c2, self.c3, self.roots, self.mirrored)


def discriminant(c1, c2, c3):
    """Discriminant of λ³ − c₂λ² + c₃λ − c₁; equal to ∏(λi − λj)² over root pairs."""
    return (18 * c1 * c2 * c3 - 4 * c1 * c2 ** 3 + c2 ** 2 * c3 ** 2
            - 4 * c3 ** 3 - 27 * c1 ** 2)


def _vieta(l1, l2, l3):
    return l1 * l2 * l3, l1 + l2 + l3, l1 * l2 + l1 * l3 + l2 * l3


def coefficients_from_roots(l1, l2, l3):
    """
    Builds moduli from three roots with mixed signs.
    :param float l1: first root.
    :param float l2: second root.
    :param float l3: third root.
    :rtype: Moduli
    :return: moduli in canonical storage, mirrored when two roots are positive.
    """
    roots = [float(l1), float(l2), float(l3)]
    if any(r == 0 for r in roots):
        raise ZeroRoot('roots {} contain zero, so c1 would vanish'.format(roots))
    n_negative = sum(r < 0 for r in roots)
    if n_negative in (0, 3):
        raise SameSign('roots {} all share one sign'.format(roots))

    mirrored = n_negative == 1
    if mirrored:
        roots = [-r for r in roots]
    roots = sorted(roots)
    c1, c2, c3 = _vieta(*roots)
    return Moduli(c1, c2, c3, roots, mirrored=mirrored)


def _newton_polish(c1, c2, c3, lam, steps=3):
    # roots of λ³ − c₂λ² + c₃λ − c₁
    for _ in range(steps):
        f = ((lam - c2) * lam + c3) * lam - c1
        fp = (3 * lam - 2 * c2) * lam + c3
        if fp == 0:
            break
        step = f / fp
        lam -= step
        if abs(step) <= 1e-16 * max(1.0, abs(lam)):
            break
    return lam


def _largest_real_root(c1, c2, c3):
    """Largest root of λ³ − c₂λ² + c₃λ − c₁ by the trigonometric method (three real roots)."""
    b, c, d = -c2, c3, -c1
    p = c - b * b / 3
    q = 2 * b ** 3 / 27 - b * c / 3 + d
    if p >= 0:
        # triple root
        return -b / 3
    r = (3 * q / (2 * p)) * math.sqrt(-3 / p)
    theta = math.acos(min(1.0, max(-1.0, r))) / 3
    return 2 * math.sqrt(-p / 3) * math.cos(theta) - b / 3


def roots_from_coefficients(c1, c2, c3):
    """
    Roots of −λ³ + c₂λ² − c₃λ + c₁ = 0 when they are real, non-zero and of mixed signs.
    The positive root (after mirroring c1 < 0 to c1 > 0) is found by the trigonometric
    method and Newton-polished; the two negative roots follow from the deflated quadratic.
    :param float c1: constant coefficient, non-zero.
    :param float c2: quadratic coefficient.
    :param float c3: linear coefficient.
    :rtype: Moduli
    """
    c1, c2, c3 = float(c1), float(c2), float(c3)
    if c1 == 0:
        raise ZeroC1('c1 = 0 admits a zero root')

    scale = max(abs(c2), math.sqrt(abs(c3)), abs(c1) ** (1.0 / 3.0))
    delta = discriminant(c1, c2, c3)
    if delta < -DISCRIMINANT_EPS * scale ** 6:
        raise ComplexRoots('discriminant {:.6g} < 0 for (c1, c2, c3) = ({}, {}, {})'.format(delta, c1, c2, c3))

    mirrored = c1 < 0
    if mirrored:
        c1, c2 = -c1, -c2

    l3 = _newton_polish(c1, c2, c3, _largest_real_root(c1, c2, c3))
    if l3 <= 0:
        raise SameSign('all roots are negative for the given coefficients')
    # remaining pair: λ² − (c₂ − λ3)λ + c₁/λ3 = 0
    total = c2 - l3
    product = c1 / l3
    if total >= 0:
        raise SameSign('all roots are positive for the given coefficients')
    disc = total * total - 4 * product
    if disc < 0:
        # double root up to rounding, the discriminant test already passed
        logging.debug('Clamping deflated discriminant %.3g to zero', disc)
        disc = 0.0
    l1 = (total - math.sqrt(disc)) / 2
    l2 = product / l1
    l1, l2 = sorted((l1, l2))

    return Moduli(c1, c2, c3, (l1, l2, l3), mirrored=mirrored)


def is_double_root(m, tol=1e-9):
    """True when the two negative roots coincide to `tol` relative."""
    l1, l2, _ = m.roots
    return abs(l1 - l2) <= tol * max(1.0, abs(l1))


def cubic_residual(m):
    """Largest |−λ³ + c₂λ² − c₃λ + c₁| over the stored roots, relative to the largest coefficient."""
    scale = max(1.0, abs(m.c1), abs(m.c2), abs(m.c3))
    return max(abs(m.cubic(r)) for r in m.roots) / scale


def eigen_matrix(m, swap_axes=False):
    """The diagonal operator in the eigenbasis used by the closed-form construction."""
    l1, l2, l3 = (m.orientation * r for r in m.roots)
    if swap_axes:
        l1, l2 = l2, l1
    return np.diag([l1, l2, l3])
