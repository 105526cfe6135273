#################################################################################
#
#             Project Title:  Mesh export of translation surfaces from curve files
#             Date:           2026-10-19
#
#################################################################################

# General stuff
import os
import argparse
import logging

# Custom imports
from transurf.config import load_configuration
from transurf.errors import ParseError
from transurf.curve import SpaceCurve
from transurf.geometry import surface_from_curves, minimality_residual
from transurf.pipeline import surface_indices
from transurf.report import VerificationReport
from transurf.utils.io import create_clear_dir, write_csv, write_json, export_mesh, read_space_curve
from transurf.utils.logging import change_log_handler
from transurf.utils.parser import str2str, str2int, str2mesh_format, str2log_level

#######################################################################
# Create parser
#######################################################################


def create_parser(parser_creator=None):
    """
    Create argparse argument list
    """
    parser_creator = parser_creator or argparse.ArgumentParser

    parser = parser_creator(formatter_class=argparse.RawDescriptionHelpFormatter,
                            description="Rebuild the translation surface of one or two curve files and "
                                        "write it as a mesh.")

    parser.add_argument("curve_csv", type=str,
                        help="Curve CSV in the 's,x,y,z,tx,ty,tz,nx,ny,nz,bx,by,bz,kappa,tau' schema")

    parser = create_optional_args(parser)

    return parser


def create_optional_args(parser):
    """Add optional args to parser

    """
    parser.add_argument("--other", type=str2str, default=None,
                        help="Second generating curve. Defaults to the first one")
    parser.add_argument("--grid", type=str2int, default=None,
                        help="Surface samples per direction, taken evenly from the curve samples. Default 101")
    parser.add_argument("--format", type=str2mesh_format, default=None,
                        help="Mesh file format: 'obj' | 'ply'")
    parser.add_argument("--out", type=str, default="results/export/",
                        help="Output directory")
    parser.add_argument("--num-workers", type=str2int, default=None,
                        help="Threads evaluating the surface grid")
    parser.add_argument("--config", type=str2str, default=None,
                        help="jsonpickle configuration file with tolerances and defaults")
    parser.add_argument("--log-level", default="info", type=str2log_level,
                        help="Get logging level from input args: 'info' | 'warn','warning' | 'error' | 'critical' ")
    parser.add_argument("--no-timestamp", default=False, action="store_true",
                        help="Leave the report timestamp null")
    return parser

#######################################################################
# Helper Functions
#######################################################################


def _read_frame_curve(path):
    curve = read_space_curve(path)
    if not isinstance(curve, SpaceCurve):
        raise ParseError("{} holds raw samples; export needs the Frenet-frame curve schema".format(path), line=1)
    return curve

#######################################################################
# Main method for export
#######################################################################


def run(args):
    """Main method for export

    :args: Argparse.Args: User-defined arguments
    :returns: int: exit code, 0 iff the surface checks passed

    """
    config = load_configuration(args.config)
    grid = args.grid or config.grid
    mesh_format = args.format or config.mesh_format

    create_clear_dir(args.out)
    change_log_handler(os.path.join(args.out, "export.log"), args.log_level)

    alpha = _read_frame_curve(args.curve_csv)
    beta = _read_frame_curve(args.other) if args.other else alpha
    alpha = alpha.subsample(surface_indices(len(alpha), grid))
    beta = beta.subsample(surface_indices(len(beta), grid))

    surface = surface_from_curves(alpha, beta, sin_phi_min=config.sin_phi_min,
                                  num_workers=args.num_workers or config.num_workers)
    write_csv(surface.to_frame(), os.path.join(args.out, "surface.csv"))
    counts = export_mesh(surface, os.path.join(args.out, "surface.{}".format(mesh_format)), mesh_format)
    logging.info("Wrote %d vertices and %d triangles (%d cells omitted)",
                 counts["vertices"], counts["faces"], counts["omitted_cells"])

    report = VerificationReport("export", {"curve": args.curve_csv, "other": args.other, "grid": grid})
    report.add("minimality_general", minimality_residual(alpha, beta), config.minimality_general,
               note="frame form on the surface grid")
    report.add("mean_curvature_max", surface.max_abs("H"), config.mean_curvature_max)
    report.extra["mesh"] = dict(counts, format=mesh_format)
    write_json(report.to_dict(timestamp=not args.no_timestamp), os.path.join(args.out, "report.json"))
    return report.exit_code

#######################################################################
# Main - Run export engine
#######################################################################


def main():
    """Main method for export argparse

    """
    parser = create_parser()
    args = parser.parse_args()
    return run(args)


#######################################################################
#  Run main method
#######################################################################

if __name__ == "__main__":
    raise SystemExit(main())
