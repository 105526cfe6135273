"""
Verification reports: named residuals with their tolerances, for constructed surfaces,
ingested curve files and the closed-form fixtures.
"""

import math
import logging
from collections import OrderedDict
from datetime import datetime as dt

import numpy as np

import transurf
from transurf.errors import EXIT_PASS, EXIT_REPORT_FAILED, ComplexRoots, SameSign, ZeroC1, ZeroTorsion
from transurf.moduli import roots_from_coefficients, eigen_matrix
from transurf.curvature_ode import CurvatureProfile, equilibria, first_integral
from transurf.curve import (SpaceCurve, GeneratingCurve, frenet_reconstruct, profile_interpolants,
                            rigid_alignment_distance, curvature_torsion_from_samples)
from transurf.geometry import (operator_fields, operator_spectrum, operator_world, tangent_cone_residual,
                               extract_invariants, minimality_residual, minimality_residual_general)
from transurf.utils.numerics import stencil_derivative, interior_mask, grid_steps

SCHEMA_VERSION = 1
PLANAR_NOTE = 'planar generator, Scherk regime'


class ReportEntry(object):
    """One named residual; it passes when its value is finite and within tolerance."""

    def __init__(self, name, value, tolerance, note=None):
        self.name = name
        self.value = float(value)
        self.tolerance = float(tolerance)
        self.note = note

    @property
    def passed(self):
        return math.isfinite(self.value) and self.value <= self.tolerance

    def to_dict(self):
        entry = {'max': self.value if math.isfinite(self.value) else None,
                 'tolerance': self.tolerance, 'pass': self.passed}
        if self.note:
            entry['note'] = self.note
        return entry


class VerificationReport(object):
    """
    Ordered collection of report entries plus the checks that did not apply, with the run inputs.
    Overall pass holds iff every entry passes.
    """

    def __init__(self, command, inputs=None):
        self.command = command
        self.inputs = inputs or {}
        self.entries = OrderedDict()
        self.skipped = OrderedDict()
        self.extra = OrderedDict()

    def add(self, name, value, tolerance, note=None):
        entry = ReportEntry(name, value, tolerance, note)
        self.entries[name] = entry
        logging.info('%-22s max=%-12.4g tol=%-10.3g %s', name, entry.value, entry.tolerance,
                     'pass' if entry.passed else 'FAIL')
        return entry

    def skip(self, name, reason):
        self.skipped[name] = reason
        logging.info('%-22s skipped: %s', name, reason)

    @property
    def passed(self):
        return all(entry.passed for entry in self.entries.values())

    @property
    def exit_code(self):
        return EXIT_PASS if self.passed else EXIT_REPORT_FAILED

    def __getitem__(self, name):
        return self.entries[name]

    def __contains__(self, name):
        return name in self.entries

    def failures(self):
        return [name for name, entry in self.entries.items() if not entry.passed]

    def to_dict(self, timestamp=True):
        """
        JSON-ready form. With `timestamp=False` the document only depends on the inputs.
        :rtype: dict
        """
        n_pass = sum(entry.passed for entry in self.entries.values())
        doc = OrderedDict()
        doc['schema'] = SCHEMA_VERSION
        doc['tool'] = 'transurf'
        doc['version'] = transurf.__version__
        doc['timestamp'] = dt.now().astimezone().isoformat(timespec='seconds') if timestamp else None
        doc['command'] = self.command
        doc['inputs'] = self.inputs
        doc['pass'] = self.passed
        doc['entries'] = OrderedDict((name, entry.to_dict()) for name, entry in self.entries.items())
        doc['skipped'] = OrderedDict(self.skipped)
        doc['summary'] = {'entries': len(self.entries), 'passed': n_pass,
                          'failed': len(self.entries) - n_pass, 'skipped': len(self.skipped)}
        doc.update(self.extra)
        return doc


def _max(values):
    values = np.asarray(values, dtype=float)
    return float(np.max(values)) if values.size else 0.0


def _surface_entries(report, surface, mean_tolerance, config):
    regular = ~surface.degenerate
    report.add('mean_curvature_max', surface.max_abs('H'), mean_tolerance,
               note='{} degenerate nodes excluded'.format(surface.degenerate_count)
               if surface.degenerate_count else None)
    report.add('gauss_sign', max(0.0, _max(surface.K[regular])), config.gauss_sign)
    report.add('H_two_ways', _max(np.abs(surface.H[regular] - surface.H_forms[regular])), config.H_two_ways)


def planar_curvature_residual(s_grid, kappa):
    """Largest |(log κ)'' + κ²| over interior samples, zero on the Scherk generators."""
    h = float(s_grid[1] - s_grid[0])
    log_k = np.log(kappa)
    residual = stencil_derivative(log_k, h, order=2) + kappa ** 2
    return _max(np.abs(residual[interior_mask(len(kappa))]))


def _path_equivalence(profile, curve, frenet_span):
    s_grid = curve.s_grid
    k = int(np.searchsorted(s_grid, s_grid[0] + frenet_span + 1e-12, side='right')) - 1
    k = max(k, 1)
    kappa, tau = profile_interpolants(profile)
    n_steps, h = grid_steps((s_grid[0], s_grid[k]), curve.step)
    assert n_steps == k, "ERROR: Frenet grid does not match the curve grid"
    rebuilt = frenet_reconstruct(kappa, tau, (s_grid[0], s_grid[k]), h)
    return rigid_alignment_distance(curve, rebuilt, s_max=s_grid[k])


def verify_construction(result, config, command='construct'):
    """
    Report of a construction run.
    :param ConstructionResult result: the run.
    :param VerificationConfiguration config: tolerances.
    :rtype: VerificationReport
    """
    report = VerificationReport(command, result.inputs())
    m = result.moduli
    profile, curve, surface = result.profile, result.curve, result.surface
    c1, c2, c3 = m.signed_coefficients
    y_low, y_high = equilibria(m)

    speed = np.abs(np.linalg.norm(curve.tangent, axis=1) - 1)
    fd_speed = np.linalg.norm(stencil_derivative(curve.position, curve.step), axis=1)
    fd_speed = np.abs(fd_speed - 1)[interior_mask(len(curve))]
    report.add('unit_speed', max(_max(speed), _max(fd_speed)), config.unit_speed)

    report.add('kappa_sq_tau', _max(np.abs(curve.kappa ** 2 * curve.tau - c1)) / abs(c1), config.kappa_sq_tau,
               note='relative to |c1|')

    R, Sigma = operator_fields(profile)
    tau = profile.tau
    report.add('sigma_relation', _max(np.abs(Sigma - tau * (c2 + tau))), config.sigma_relation)
    report.add('c3_relation', _max(np.abs(Sigma + R ** 2 + profile.kappa ** 2 + c3)), config.c3_relation)
    report.add('first_integral', _max(np.abs(profile.first_integral_residual)), config.first_integral)

    spectrum = operator_spectrum(profile)
    deviation = _max(np.abs(spectrum - np.asarray(m.signed_roots)))
    spread = _max(np.ptp(spectrum, axis=0))
    report.add('eigen_constancy', max(deviation, spread), config.eigen_constancy)

    _surface_entries(report, surface, config.mean_curvature_max, config)

    band = max(0.0, y_low - float(np.min(profile.kappa)), float(np.max(profile.kappa)) - y_high)
    report.add('band_confinement', band, config.band_confinement)

    target = eigen_matrix(m, swap_axes=result.swap_axes)
    world = operator_world(profile, curve)
    if isinstance(curve, GeneratingCurve):
        l1, l2, l3 = m.roots
        slope = math.sqrt((l3 - l1) * (l3 - l2))
        report.add('slope_ratio', _max(np.abs(curve.slope_ratio - slope)), config.slope_ratio)
        report.add('operator_world', _max(np.abs(world - target)), config.operator_world)
    else:
        report.skip('slope_ratio', 'helix path: the curve has no phase variable')
        report.add('operator_world', _max(np.abs(world - world[0])), config.operator_world,
                   note='helix path: constancy along the curve')
    report.add('tangent_cone', tangent_cone_residual(curve, np.diag(target)), config.tangent_cone)

    report.add('path_equivalence', _path_equivalence(profile, curve, config.frenet_span), config.path_equivalence,
               note='Frenet reconstruction over s in [{:g}, {:g}]'.format(
                   curve.s_grid[0], min(curve.s_grid[-1], curve.s_grid[0] + config.frenet_span)))
    return report


def profile_from_curve(curve):
    """Profile of an ingested arc-length curve; κ' comes from stencils."""
    kappa_prime = stencil_derivative(curve.kappa, curve.step, order=1)
    return CurvatureProfile(curve.s_grid, curve.kappa, kappa_prime, curve.tau)


def _verify_space_curve(report, curve, config):
    mask = interior_mask(len(curve))
    speed = np.linalg.norm(stencil_derivative(curve.position, curve.step), axis=1)
    report.add('unit_speed', max(_max(np.abs(np.linalg.norm(curve.tangent, axis=1) - 1)),
                                 _max(np.abs(speed - 1)[mask])), config.ingest_unit_speed)

    arc_length_checks = ('kappa_sq_tau', 'sigma_relation', 'c3_relation', 'first_integral', 'eigen_constancy',
                         'band_confinement')
    if np.any(curve.kappa <= 0):
        for name in arc_length_checks + ('planar_curvature_ode',):
            report.skip(name, 'curvature vanishes: straight segments carry no Frenet invariants')
        return

    tau_max = _max(np.abs(curve.tau))
    if tau_max <= config.planar_torsion:
        for name in arc_length_checks:
            report.skip(name, 'max |tau| = {:.3g}: {}'.format(tau_max, PLANAR_NOTE))
        report.add('planar_curvature_ode', planar_curvature_residual(curve.s_grid, curve.kappa),
                   config.planar_curvature_ode, note=PLANAR_NOTE)
        report.extra['regime'] = PLANAR_NOTE
        return

    profile = profile_from_curve(curve)
    try:
        estimate = extract_invariants(profile)
    except ZeroTorsion as e:
        for name in arc_length_checks:
            report.skip(name, str(e))
        return
    c1, c2, c3 = estimate.coefficients
    report.extra['estimated_coefficients'] = {'c1': c1, 'c2': c2, 'c3': c3}
    kst = curve.kappa ** 2 * curve.tau
    report.add('kappa_sq_tau', _max(np.abs(kst - np.mean(kst))) / abs(c1), config.ingest_relation,
               note='constancy relative to the mean')
    dev = estimate.deviation(estimate.coefficients)
    report.add('sigma_relation', dev[1], config.ingest_relation, note='spread of Σ/τ − τ')
    report.add('c3_relation', dev[2], config.ingest_relation, note='spread of −(Σ + R² + κ²)')

    spectrum = operator_spectrum(profile)[mask]
    report.add('eigen_constancy', _max(np.ptp(spectrum, axis=0)), config.ingest_eigen_constancy)

    try:
        m = roots_from_coefficients(c1, c2, c3)
    except (ComplexRoots, SameSign, ZeroC1) as e:
        report.skip('first_integral', 'estimated moduli are not admissible: {}'.format(e))
        report.skip('band_confinement', 'estimated moduli are not admissible: {}'.format(e))
        return
    report.extra['estimated_moduli'] = m.to_dict()
    residual = first_integral(m, profile.kappa, profile.kappa_prime)[mask]
    report.add('first_integral', _max(np.abs(residual)), config.ingest_first_integral)
    y_low, y_high = equilibria(m)
    band = max(0.0, y_low - float(np.min(curve.kappa)), float(np.max(curve.kappa)) - y_high)
    report.add('band_confinement', band, config.ingest_relation)


def verify_ingested(curve, other=None, config=None, inputs=None, command='verify'):
    """
    Report of curve files: the parameterization-free minimality test against `other` (the curve
    itself by default), and for arc-length curve files the invariant and operator checks,
    or the planar curvature equation when the torsion vanishes.
    :param curve: `SpaceCurve` or `SampledCurve`.
    :param other: second generating curve, same types.
    :param VerificationConfiguration config: tolerances.
    :rtype: VerificationReport
    """
    report = VerificationReport(command, inputs)
    other = curve if other is None else other
    report.add('minimality_general',
               minimality_residual_general(curve, other, max_nodes=config.verify_max_nodes),
               config.minimality_general,
               note='pairs on at most {} samples per curve'.format(config.verify_max_nodes))

    if isinstance(curve, SpaceCurve):
        _verify_space_curve(report, curve, config)
    else:
        sampled = curvature_torsion_from_samples(curve)
        speed_dev = _max(np.abs(sampled.speed - 1)[sampled.interior])
        report.extra['sampled_curvature'] = {
            'kappa_min': float(np.min(sampled.kappa[sampled.interior])),
            'kappa_max': float(np.max(sampled.kappa[sampled.interior])),
            'tau_max_abs': _max(np.abs(sampled.tau[sampled.interior])),
            'speed_deviation': speed_dev}
        for name in ('kappa_sq_tau', 'sigma_relation', 'c3_relation', 'first_integral', 'eigen_constancy'):
            report.skip(name, 'sampled-curve schema: no Frenet data, only parameterization-free tests apply')
    return report


def fixture_report(name, params, surface, config, generator=None, closed_form=None):
    """
    Report of a closed-form fixture surface.
    :param str name: fixture name.
    :param list params: fixture parameters.
    :param TranslationSurface surface: the surface.
    :param VerificationConfiguration config: tolerances.
    :param SpaceCurve generator: a finely sampled generating curve for the curvature checks.
    :param callable closed_form: arc-length curvature of `generator` in closed form.
    :rtype: VerificationReport
    """
    report = VerificationReport('fixture', {'fixture': name, 'params': list(params),
                                            'grid': list(surface.shape)})
    report.add('fixture_minimality', minimality_residual(surface.alpha, surface.beta), config.fixture_minimality)
    _surface_entries(report, surface, config.fixture_mean_curvature, config)
    if generator is not None and closed_form is not None:
        report.add('closed_form_curvature',
                   _max(np.abs(generator.kappa - closed_form(generator.s_grid))), config.closed_form_curvature)
        report.add('planar_curvature_ode', planar_curvature_residual(generator.s_grid, generator.kappa),
                   config.planar_curvature_ode, note=PLANAR_NOTE)
    return report
