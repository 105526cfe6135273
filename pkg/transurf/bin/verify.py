#################################################################################
#
#             Project Title:  Verification of generating-curve files
#             Date:           2026-10-19
#
#################################################################################

# General stuff
import os
import argparse
import logging

# Custom imports
from transurf.config import load_configuration
from transurf.report import verify_ingested
from transurf.utils.io import create_clear_dir, write_json, read_space_curve, get_file_name_without_extension
from transurf.utils.logging import change_log_handler
from transurf.utils.parser import str2str, str2int, str2log_level

#######################################################################
# Create parser
#######################################################################


def create_parser(parser_creator=None):
    """
    Create argparse argument list
    """
    parser_creator = parser_creator or argparse.ArgumentParser

    parser = parser_creator(formatter_class=argparse.RawDescriptionHelpFormatter,
                            description="Check curve files for minimality of their translation surface and for "
                                        "the invariants of a generating curve.")

    parser.add_argument("file", type=str,
                        help="Curve CSV, either 's,x,y,z,tx,ty,tz,nx,ny,nz,bx,by,bz,kappa,tau' or 'u,x,y,z'")

    parser = create_optional_args(parser)

    return parser


def create_optional_args(parser):
    """Add optional args to parser

    """
    parser.add_argument("--other", type=str2str, default=None,
                        help="Second generating curve; the surface is file + other. Defaults to file itself")
    parser.add_argument("--out", type=str, default="results/verify/",
                        help="Output directory for report.json and verify.log")
    parser.add_argument("--max-nodes", type=str2int, default=None,
                        help="Samples per curve used by the minimality test. Default 201")
    parser.add_argument("--config", type=str2str, default=None,
                        help="jsonpickle configuration file with tolerances and defaults")
    parser.add_argument("--log-level", default="info", type=str2log_level,
                        help="Get logging level from input args: 'info' | 'warn','warning' | 'error' | 'critical' ")
    parser.add_argument("--no-timestamp", default=False, action="store_true",
                        help="Leave the report timestamp null")
    return parser

#######################################################################
# Main method for verification
#######################################################################


def run(args):
    """Main method for verification

    :args: Argparse.Args: User-defined arguments
    :returns: int: exit code, 0 iff the report passed

    """
    config = load_configuration(args.config)
    if args.max_nodes:
        config.verify_max_nodes = args.max_nodes

    create_clear_dir(args.out)
    change_log_handler(os.path.join(args.out, "verify.log"), args.log_level)

    curve = read_space_curve(args.file)
    other = read_space_curve(args.other) if args.other else None
    logging.info("Read %d samples from %s (%s)", len(curve), args.file, type(curve).__name__)

    inputs = {"file": get_file_name_without_extension(args.file),
              "other": get_file_name_without_extension(args.other) if args.other else None,
              "samples": len(curve), "schema": type(curve).__name__}
    report = verify_ingested(curve, other, config, inputs=inputs)
    write_json(report.to_dict(timestamp=not args.no_timestamp), os.path.join(args.out, "report.json"))

    logging.info("Report %s, failed: %s", "passed" if report.passed else "FAILED", report.failures() or "none")
    return report.exit_code

#######################################################################
# Main - Run verification engine
#######################################################################


def main():
    """Main method for verification argparse

    """
    parser = create_parser()
    args = parser.parse_args()
    return run(args)


#######################################################################
#  Run main method
#######################################################################

if __name__ == "__main__":
    raise SystemExit(main())
