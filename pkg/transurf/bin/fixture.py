#################################################################################
#
#             Project Title:  Closed-form reference surfaces (plane, Scherk, helicoid)
#             Date:           2026-10-19
#
#################################################################################

# General stuff
import os
import argparse
import logging

# Custom imports
from transurf.config import load_configuration
from transurf.register import make, make_generator, fixture_list
from transurf.fixtures import DEFAULT_GRID
from transurf.report import fixture_report
from transurf.utils.io import create_clear_dir, write_csv, write_json, export_mesh
from transurf.utils.logging import change_log_handler
from transurf.utils.parser import str2fixture, str2int, str2str, str2mesh_format, str2log_level

#######################################################################
# Create parser
#######################################################################


def create_parser(parser_creator=None):
    """
    Create argparse argument list
    """
    parser_creator = parser_creator or argparse.ArgumentParser

    parser = parser_creator(formatter_class=argparse.RawDescriptionHelpFormatter,
                            description="Write a closed-form minimal translation surface.")

    parser.add_argument("name", type=str2fixture,
                        help="""
                            Fixture specifier, parameters separated by ':'
                        - plane
                        - scherk[:c[:theta]]      (defaults c=1, theta=pi/2; theta=0 is the plane)
                        - helicoid
                        """)

    parser = create_optional_args(parser)

    return parser


def create_optional_args(parser):
    """Add optional args to parser

    """
    parser.add_argument("--grid", type=str2int, default=DEFAULT_GRID,
                        help="Surface samples per direction")
    parser.add_argument("--curve-samples", type=str2int, default=2001,
                        help="Samples of the generating curve written to curve.csv")
    parser.add_argument("--out", type=str, default="results/fixture/",
                        help="Output directory")
    parser.add_argument("--mesh-format", type=str2mesh_format, default=None,
                        help="Mesh file format: 'obj' | 'ply'")
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
# Main method for fixtures
#######################################################################


def run(args):
    """Main method for fixtures

    :args: Argparse.Args: User-defined arguments
    :returns: int: exit code, 0 iff the report passed

    """
    config = load_configuration(args.config)
    mesh_format = args.mesh_format or config.mesh_format
    name, params = args.name

    create_clear_dir(args.out)
    change_log_handler(os.path.join(args.out, "fixture.log"), args.log_level)
    logging.info("Fixture '%s' with parameters %s (known: %s)", name, params, fixture_list)

    surface = make(name, params, n=args.grid, sin_phi_min=config.sin_phi_min,
                   num_workers=args.num_workers or config.num_workers)
    generator, closed_form = make_generator(name, params, n=args.curve_samples)

    write_csv(surface.to_frame(), os.path.join(args.out, "surface.csv"))
    counts = export_mesh(surface, os.path.join(args.out, "surface.{}".format(mesh_format)), mesh_format)
    if generator is not None:
        write_csv(generator.to_frame(), os.path.join(args.out, "curve.csv"))

    report = fixture_report(name, params, surface, config, generator=generator, closed_form=closed_form)
    report.extra["mesh"] = dict(counts, format=mesh_format)
    write_json(report.to_dict(timestamp=not args.no_timestamp), os.path.join(args.out, "report.json"))
    return report.exit_code

#######################################################################
# Main - Run fixture engine
#######################################################################


def main():
    """Main method for fixture argparse

    """
    parser = create_parser()
    args = parser.parse_args()
    return run(args)


#######################################################################
#  Run main method
#######################################################################

if __name__ == "__main__":
    raise SystemExit(main())
