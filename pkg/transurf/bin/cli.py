#################################################################################
#
#             Project Title:  Command-line front end of transurf
#             Date:           2026-10-19
#
#################################################################################

# General stuff
import sys
import argparse
import logging

# Custom imports
import transurf
from transurf.errors import TransurfError
from transurf.bin import construct, verify, export, fixture

# Usage errors share argparse's exit status
EXIT_USAGE = 2

SUBCOMMANDS = {
    "construct": construct,
    "verify": verify,
    "export": export,
    "fixture": fixture,
}

#######################################################################
# Create parser
#######################################################################


def create_parser(parser_creator=None):
    """
    Create argparse argument list with one subparser per subcommand
    """
    parser_creator = parser_creator or argparse.ArgumentParser

    parser = parser_creator(formatter_class=argparse.RawDescriptionHelpFormatter,
                            description="Minimal translation surfaces: construction, verification and export.")
    parser.add_argument("--version", action="version", version="transurf {}".format(transurf.__version__))
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    for name, module in SUBCOMMANDS.items():
        sub = module.create_parser(
            lambda **kwargs: subparsers.add_parser(name, help=kwargs.get("description"), **kwargs))
        sub.set_defaults(func=module.run)

    return parser

#######################################################################
# Main - Dispatch subcommands
#######################################################################


def main(argv=None):
    """Main method for the transurf command line

    :argv: list: arguments without the program name, sys.argv by default
    :returns: int: exit code

    """
    parser = create_parser()
    args = parser.parse_args(argv)

    # Set logging level
    logging.basicConfig(level=args.log_level, format='%(message)s')

    try:
        return args.func(args)
    except TransurfError as e:
        logging.error("%s: %s", type(e).__name__, e)
        return e.exit_code
    except ValueError as e:
        logging.error("Invalid argument: %s", e)
        return EXIT_USAGE


#######################################################################
#  Run main method
#######################################################################

if __name__ == "__main__":
    sys.exit(main())
