import os
import math

import jsonpickle

ENV_TOL_SCALE = 'TRANSURF_TOL_SCALE'
DEFAULT_CONFIG_FILE = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                                   'config', 'verification.json')


class VerificationConfiguration(object):
    """
    Represents the tolerances of the verification report and the numerical defaults of a run.
    """

    TOLERANCE_FIELDS = (
        'unit_speed', 'kappa_sq_tau', 'sigma_relation', 'c3_relation', 'first_integral', 'eigen_constancy',
        'mean_curvature_max', 'gauss_sign', 'band_confinement', 'slope_ratio', 'path_equivalence',
        'operator_world', 'tangent_cone', 'H_two_ways', 'minimality_general', 'planar_torsion',
        'planar_curvature_ode', 'fixture_minimality', 'fixture_mean_curvature', 'ingest_relation',
        'ingest_eigen_constancy', 'ingest_first_integral', 'ingest_unit_speed', 'closed_form_curvature')

    def __init__(self, unit_speed=1e-9, kappa_sq_tau=1e-8, sigma_relation=1e-5, c3_relation=1e-5,
                 first_integral=1e-7, eigen_constancy=1e-6, mean_curvature_max=1e-5, gauss_sign=1e-8,
                 band_confinement=1e-6, slope_ratio=1e-8, path_equivalence=1e-5, operator_world=1e-6,
                 tangent_cone=1e-9, H_two_ways=1e-10, minimality_general=1e-6, planar_torsion=1e-8,
                 planar_curvature_ode=1e-6, fixture_minimality=1e-6, fixture_mean_curvature=1e-6,
                 ingest_relation=1e-5, ingest_eigen_constancy=1e-5, ingest_first_integral=1e-6,
                 ingest_unit_speed=1e-6, closed_form_curvature=1e-6,
                 step=1e-3, span=(0.0, 20.0), grid=101, sin_phi_min=1e-3, frenet_span=10.0,
                 verify_max_nodes=201, num_workers=1, mesh_format='obj'):
        """
        Creates a new verification configuration.
        :param float unit_speed: max ||α'| − 1| of constructed curves.
        :param float kappa_sq_tau: max |κ²τ − c1|, relative to |c1|.
        :param float sigma_relation: max |Σ − τ(c2 + τ)|.
        :param float c3_relation: max |Σ + R² + κ² + c3|.
        :param float first_integral: max first-integral residual of the curvature ODE.
        :param float eigen_constancy: max deviation of the operator spectrum from the roots.
        :param float mean_curvature_max: max |H| over regular surface nodes.
        :param float gauss_sign: max positive part of K.
        :param float band_confinement: max excursion of κ outside the equilibrium band.
        :param float slope_ratio: max deviation of w'/α₃' from √((λ3−λ1)(λ3−λ2)).
        :param float path_equivalence: max distance between the closed-form and the Frenet curve.
        :param float operator_world: max deviation of F·L·Fᵀ from the diagonal root matrix.
        :param float tangent_cone: max |Σ λᵢ tᵢ²|.
        :param float H_two_ways: max |H − H_forms| over regular nodes.
        :param float minimality_general: minimality residual of ingested curves.
        :param float planar_torsion: |τ| below which an ingested curve counts as planar.
        :param float planar_curvature_ode: max |(log κ)'' + κ²| on planar generators.
        :param float fixture_minimality: minimality residual of fixture generators.
        :param float fixture_mean_curvature: max |H| on fixture surfaces.
        :param float ingest_relation: κ²τ and Σ relations on ingested curves (finite differences).
        :param float ingest_eigen_constancy: spectrum constancy on ingested curves.
        :param float ingest_first_integral: first-integral residual on ingested curves.
        :param float ingest_unit_speed: unit-speed deviation on ingested curves.
        :param float closed_form_curvature: fixture curvature against its closed form.
        :param float step: default RK4 step.
        :param tuple span: default arc-length span.
        :param int grid: default surface grid size per direction.
        :param float sin_phi_min: regularity threshold of surface nodes.
        :param float frenet_span: arc length over which the Frenet reconstruction is compared.
        :param int verify_max_nodes: samples per curve used by the ingest minimality test.
        :param int num_workers: threads evaluating the surface grid.
        :param str mesh_format: 'obj' or 'ply'.
        """

        # identities of constructed curves
        self.unit_speed = unit_speed
        self.kappa_sq_tau = kappa_sq_tau
        self.sigma_relation = sigma_relation
        self.c3_relation = c3_relation
        self.first_integral = first_integral
        self.eigen_constancy = eigen_constancy
        self.band_confinement = band_confinement
        self.slope_ratio = slope_ratio
        self.path_equivalence = path_equivalence
        self.operator_world = operator_world
        self.tangent_cone = tangent_cone

        # surface
        self.mean_curvature_max = mean_curvature_max
        self.gauss_sign = gauss_sign
        self.H_two_ways = H_two_ways

        # ingested data and fixtures
        self.minimality_general = minimality_general
        self.planar_torsion = planar_torsion
        self.planar_curvature_ode = planar_curvature_ode
        self.fixture_minimality = fixture_minimality
        self.fixture_mean_curvature = fixture_mean_curvature
        self.ingest_relation = ingest_relation
        self.ingest_eigen_constancy = ingest_eigen_constancy
        self.ingest_first_integral = ingest_first_integral
        self.ingest_unit_speed = ingest_unit_speed
        self.closed_form_curvature = closed_form_curvature

        # numerical defaults
        self.step = step
        self.span = tuple(span)
        self.grid = grid
        self.sin_phi_min = sin_phi_min
        self.frenet_span = frenet_span
        self.verify_max_nodes = verify_max_nodes
        self.num_workers = num_workers
        self.mesh_format = mesh_format

    def tolerance(self, name):
        assert name in self.TOLERANCE_FIELDS, "ERROR: unknown tolerance '{}'".format(name)
        return getattr(self, name)

    def scaled(self, factor):
        """
        Copy of this configuration with every tolerance multiplied by `factor`.
        :param float factor: strictly positive scale.
        :rtype: VerificationConfiguration
        """
        assert factor > 0 and math.isfinite(factor), "ERROR: tolerance scale must be positive"
        copy = jsonpickle.decode(jsonpickle.encode(self))
        for name in self.TOLERANCE_FIELDS:
            setattr(copy, name, getattr(self, name) * factor)
        return copy

    def save_json(self, json_file_path):
        """
        Saves a text file representing this configuration in a JSON format.
        :param str json_file_path: the path to the JSON file in which to save this configuration.
        :return:
        """
        jsonpickle.set_preferred_backend('json')
        jsonpickle.set_encoder_options('json', indent=4, sort_keys=False)
        with open(json_file_path, 'w') as json_file:
            json_str = jsonpickle.encode(self)
            json_file.write(json_str)

    @classmethod
    def load_json(cls, json_file_path):
        """
        Loads a configuration object from the given JSON formatted file.
        :param str json_file_path: the path to the JSON file from which to load a configuration.
        :rtype: VerificationConfiguration
        :return: the configuration object stored in the given JSON file.
        """
        with open(json_file_path) as json_file:
            config = jsonpickle.decode(json_file.read())
        assert isinstance(config, cls), "ERROR: {} does not hold a {}".format(json_file_path, cls.__name__)
        # lists come back from json where tuples went in
        config.span = tuple(config.span)
        return config


def load_configuration(json_file_path=None):
    """
    Loads the configuration from a file (the shipped defaults when none is given, or the class
    defaults when that file is missing) and applies the `TRANSURF_TOL_SCALE` environment variable.
    :param str json_file_path: path to a jsonpickle configuration file.
    :rtype: VerificationConfiguration
    """
    if json_file_path is not None:
        config = VerificationConfiguration.load_json(json_file_path)
    elif os.path.isfile(DEFAULT_CONFIG_FILE):
        config = VerificationConfiguration.load_json(DEFAULT_CONFIG_FILE)
    else:
        config = VerificationConfiguration()

    factor = os.environ.get(ENV_TOL_SCALE)
    if factor:
        try:
            factor = float(factor)
        except ValueError:
            raise ValueError('{} must be a positive number, got {!r}'.format(ENV_TOL_SCALE, factor))
        if not factor > 0:
            raise ValueError('{} must be a positive number, got {!r}'.format(ENV_TOL_SCALE, factor))
        config = config.scaled(factor)
    return config
