"""
Closed-form reference surfaces: the plane, the Scherk family S_θ and the helicoid.
Each one is a translation surface built from explicit generating curves.
"""

import math

import numpy as np

from transurf.errors import GridHitsSingularity, ParallelDirections, SpanHitsSingularity
from transurf.curve import circular_helix, straight_line, scherk_curve
from transurf.geometry import surface_from_curves, SIN_PHI_MIN
from transurf.register import register

DEFAULT_GRID = 41
HELICOID_TOL = 1e-9


class ScherkParams(object):
    """Scale c > 0 and family angle θ ∈ [0, π); θ = 0 is the plane."""

    def __init__(self, c=1.0, theta=math.pi / 2):
        if not c > 0:
            raise ValueError('Scherk scale must be positive, got {}'.format(c))
        if not 0 <= theta < math.pi:
            raise ValueError('Scherk angle must lie in [0, π), got {}'.format(theta))
        self.c = float(c)
        self.theta = float(theta)

    def __repr__(self):
        return 'ScherkParams(c={!r}, theta={!r})'.format(self.c, self.theta)


def scherk_curvature(c, s):
    """Arc-length curvature 2c·e^{cs}/(1+e^{2cs}) = c·sech(cs) of the Scherk generator."""
    return c / np.cosh(c * np.asarray(s, dtype=float))


def scherk_generators(p, n=DEFAULT_GRID, span=None):
    """
    The two generating curves of S_θ: α(u) = (u, 0, −(1/c)log cos cu) and
    β(v) = (v cos θ, v sin θ, (1/c)log cos cv), the image of α under the reflected rotation
    [[cos θ, −sin θ, 0], [sin θ, cos θ, 0], [0, 0, −1]].
    :param ScherkParams p: parameters.
    :param int n: samples per curve.
    :param tuple span: parameter span strictly inside (−π/2c, π/2c).
    :rtype: (SpaceCurve, SpaceCurve)
    """
    try:
        alpha = scherk_curve(p.c, span, n)
    except SpanHitsSingularity as e:
        raise GridHitsSingularity(str(e))
    ct, st = math.cos(p.theta), math.sin(p.theta)
    matrix = np.array([[ct, -st, 0.0], [st, ct, 0.0], [0.0, 0.0, -1.0]])
    return alpha, alpha.transformed(matrix)


def scherk_surface(p, n=DEFAULT_GRID, span=None, sin_phi_min=SIN_PHI_MIN, num_workers=1):
    """
    Scherk surface S_θ through its generating-curve decomposition.
    :param ScherkParams p: parameters.
    :param int n: grid size per direction.
    :param tuple span: parameter span of both generators.
    :rtype: TranslationSurface
    """
    alpha, beta = scherk_generators(p, n, span)
    return surface_from_curves(alpha, beta, sin_phi_min=sin_phi_min, num_workers=num_workers)


def helicoid_coordinates(u, v):
    """X(u, v) = (cos u cos v, sin u cos v, u)."""
    u, v = np.asarray(u, dtype=float), np.asarray(v, dtype=float)
    return np.stack([np.cos(u) * np.cos(v), np.sin(u) * np.cos(v), u], axis=-1)


def helicoid_surface(n=DEFAULT_GRID, span=(-math.pi, math.pi), stagger=True, sin_phi_min=SIN_PHI_MIN,
                     num_workers=1):
    """
    Helicoid as α(s) + α(t) with α(s) = (cos s, sin s, s)/2. Rows are uniform in s over `span`;
    with `stagger` the column grid is shifted by half a step so that no node lies on the
    singular set s − t ∈ 2πℤ. The curves carry the arc length s/√2 and the original parameter.
    The result is checked against X(u, v) under s = u + v, t = u − v.
    :rtype: TranslationSurface
    """
    s = np.linspace(span[0], span[1], n)
    t = s + (s[1] - s[0]) / 2 if stagger else s

    def helix(grid):
        return circular_helix(0.5, 0.5, s_grid=grid / math.sqrt(2)).replace(parameter=grid)

    surface = surface_from_curves(helix(s), helix(t), sin_phi_min=sin_phi_min, num_workers=num_workers)

    ss, tt = np.meshgrid(s, t, indexing='ij')
    deviation = np.max(np.linalg.norm(surface.position - helicoid_coordinates((ss + tt) / 2, (ss - tt) / 2),
                                      axis=-1))
    assert deviation <= HELICOID_TOL,\
        "ERROR: translation helicoid deviates from X(u,v) by {:.3g}".format(deviation)
    return surface


def plane_surface(u_dir=(1.0, 0.0, 0.0), v_dir=(0.0, 1.0, 0.0), n=DEFAULT_GRID, span=(-1.0, 1.0),
                  sin_phi_min=SIN_PHI_MIN, num_workers=1):
    """
    Plane spanned by two unit directions, as the sum of two lines.
    :rtype: TranslationSurface
    """
    u_dir, v_dir = np.asarray(u_dir, dtype=float), np.asarray(v_dir, dtype=float)
    if np.linalg.norm(np.cross(u_dir, v_dir)) < 1e-12:
        raise ParallelDirections('directions {} and {} are parallel'.format(u_dir, v_dir))
    grid = np.linspace(span[0], span[1], n)
    return surface_from_curves(straight_line(u_dir, grid), straight_line(v_dir, grid),
                               sin_phi_min=sin_phi_min, num_workers=num_workers)


def _make_plane(params, n=DEFAULT_GRID, **kwargs):
    return plane_surface(n=n, **kwargs)


def _make_scherk(params, n=DEFAULT_GRID, **kwargs):
    return scherk_surface(ScherkParams(*params), n=n, **kwargs)


def _make_helicoid(params, n=DEFAULT_GRID, **kwargs):
    return helicoid_surface(n=n, **kwargs)


def _scherk_generator(params, n):
    p = ScherkParams(*params)
    return scherk_curve(p.c, None, n), (lambda s: scherk_curvature(p.c, s))


def _helicoid_generator(params, n):
    s = np.linspace(-math.pi, math.pi, n)
    return circular_helix(0.5, 0.5, s_grid=s / math.sqrt(2)).replace(parameter=s), None


def _plane_generator(params, n):
    return straight_line((1.0, 0.0, 0.0), np.linspace(-1.0, 1.0, n)), None


register('plane', _make_plane, generator=_plane_generator)
register('scherk', _make_scherk, max_params=2, generator=_scherk_generator)
register('helicoid', _make_helicoid, generator=_helicoid_generator)
