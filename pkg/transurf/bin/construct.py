#################################################################################
#
#             Project Title:  Construction of minimal translation surfaces from moduli
#             Date:           2026-10-19
#
#################################################################################

# General stuff
import os
import argparse
import logging

# Custom imports
from transurf.config import load_configuration
from transurf.moduli import coefficients_from_roots, roots_from_coefficients
from transurf.curvature_ode import equilibria
from transurf.curve import GeneratingCurve
from transurf.pipeline import construct
from transurf.report import verify_construction
from transurf.utils.io import create_clear_dir, write_csv, write_json, export_mesh
from transurf.utils.logging import change_log_handler
from transurf.utils.general import _save_metadata
from transurf.utils.parser import str2float, str2positive_float, str2int, str2str, str2bool, \
    str2mesh_format, str2log_level

#######################################################################
# Create parser
#######################################################################


def create_parser(parser_creator=None):
    """
    Create argparse argument list
    """
    parser_creator = parser_creator or argparse.ArgumentParser

    parser = parser_creator(formatter_class=argparse.RawDescriptionHelpFormatter,
                            description="Construct a minimal translation surface from the roots or the "
                                        "coefficients of its characteristic cubic.")

    # Required arguments
    required_named = parser.add_argument_group("required named arguments")
    moduli = required_named.add_mutually_exclusive_group(required=True)
    moduli.add_argument("--roots", nargs=3, type=str2float, metavar=("L1", "L2", "L3"),
                        help="Roots of the cubic: non-zero, two of one sign and one of the other")
    moduli.add_argument("--coeffs", nargs=3, type=str2float, metavar=("C1", "C2", "C3"),
                        help="Coefficients (c1, c2, c3) of -x^3 + c2 x^2 - c3 x + c1 = 0")
    required_named.add_argument("--y0", type=str2float, required=True,
                                help="Initial curvature, strictly between the two equilibria")

    parser = create_optional_args(parser)

    return parser


def create_optional_args(parser):
    """Add optional args to parser

    """
    parser.add_argument("--span", nargs=2, type=str2float, default=None, metavar=("S0", "S1"),
                        help="Arc-length interval of the curve. Defaults to the configuration value (0 20)")
    parser.add_argument("--step", type=str2positive_float, default=None,
                        help="RK4 step; the effective step divides the span exactly. Default 1e-3")
    parser.add_argument("--grid", type=str2int, default=None,
                        help="Surface samples per direction. Default 101")
    parser.add_argument("--out", type=str, default="results/construct/",
                        help="Output directory")
    parser.add_argument("--mesh-format", type=str2mesh_format, default=None,
                        help="Mesh file format: 'obj' | 'ply'")
    parser.add_argument("--w0", type=str2float, default=None,
                        help="Phase at the start of the curve. Must agree with y0 modulo pi; derived when omitted")
    parser.add_argument("--swap-axes", type=str2bool, default=False,
                        help="Exchange the roles of the two negative roots (congruent curve)")
    parser.add_argument("--num-workers", type=str2int, default=None,
                        help="Threads evaluating the surface grid")
    parser.add_argument("--config", type=str2str, default=None,
                        help="jsonpickle configuration file with tolerances and defaults")
    parser.add_argument("--log-level", default="info", type=str2log_level,
                        help="Get logging level from input args: 'info' | 'warn','warning' | 'error' | 'critical' ")
    parser.add_argument("--no-timestamp", default=False, action="store_true",
                        help="Leave the report timestamp null so that identical runs give identical files")
    return parser

#######################################################################
# Helper Functions
#######################################################################


def _moduli_from_args(args):
    if args.roots is not None:
        return coefficients_from_roots(*args.roots)
    return roots_from_coefficients(*args.coeffs)


def _moduli_document(result):
    """Moduli, equilibria and construction constants of a run."""
    doc = result.moduli.to_dict()
    y_low, y_high = equilibria(result.moduli)
    doc['equilibria'] = [y_low, y_high]
    doc['helix_path'] = result.helix_path
    if isinstance(result.curve, GeneratingCurve):
        amplitudes = result.curve.amplitudes
        doc['amplitudes'] = {'A': amplitudes.A, 'B': amplitudes.B, 'w0': amplitudes.w0}
    else:
        doc['helix'] = {'kappa': float(result.curve.kappa[0]), 'tau': float(result.curve.tau[0])}
    return doc

#######################################################################
# Main method for construction
#######################################################################


def run(args):
    """Main method for construction

    :args: Argparse.Args: User-defined arguments
    :returns: int: exit code, 0 iff the report passed

    """
    config = load_configuration(args.config)
    span = tuple(args.span) if args.span is not None else config.span
    step = args.step or config.step
    grid = args.grid or config.grid
    mesh_format = args.mesh_format or config.mesh_format
    num_workers = args.num_workers or config.num_workers

    create_clear_dir(args.out)
    change_log_handler(os.path.join(args.out, "construct.log"), args.log_level)
    _save_metadata({k: v for k, v in vars(args).items() if k != "func"}, args.out)

    moduli = _moduli_from_args(args)
    result = construct(moduli, args.y0, s_span=span, h=step, grid=grid, w0=args.w0,
                       swap_axes=args.swap_axes, sin_phi_min=config.sin_phi_min,
                       num_workers=num_workers)
    report = verify_construction(result, config)

    write_csv(result.profile.to_frame(), os.path.join(args.out, "profile.csv"))
    write_csv(result.curve.to_frame(), os.path.join(args.out, "curve.csv"))
    write_csv(result.surface.to_frame(), os.path.join(args.out, "surface.csv"))
    counts = export_mesh(result.surface, os.path.join(args.out, "surface.{}".format(mesh_format)), mesh_format)
    if counts["omitted_cells"]:
        logging.warning("%d mesh cells touch degenerate nodes and were omitted", counts["omitted_cells"])
    report.extra["mesh"] = dict(counts, format=mesh_format)

    write_json(_moduli_document(result), os.path.join(args.out, "moduli.json"))
    write_json(report.to_dict(timestamp=not args.no_timestamp), os.path.join(args.out, "report.json"))

    logging.info("Report %s (%d entries, failed: %s); outputs in %s",
                 "passed" if report.passed else "FAILED", len(report.entries), report.failures() or "none",
                 args.out)
    return report.exit_code

#######################################################################
# Main - Run construction engine
#######################################################################


def main():
    """Main method for construction argparse

    """
    parser = create_parser()
    args = parser.parse_args()
    return run(args)


#######################################################################
#  Run main method
#######################################################################

if __name__ == "__main__":
    raise SystemExit(main())
