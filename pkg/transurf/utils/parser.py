#################################################################################
#
#             Project Title:  Argument parsing utilities for transurf
#             Date:           2026-10-19
#
#################################################################################


#################################################################################
#   Module Imports
#################################################################################

import argparse

from transurf.utils.general import LOG_LEVEL_DICT

#################################################################################
#   Function-Class Declaration
#################################################################################


def str2log_level(s):
    """Set log level for execution

    :s: str: Log level string
    :returns: Logging.Level: Log level

    """
    s = s.lower()
    if s not in LOG_LEVEL_DICT:
        raise argparse.ArgumentTypeError(
            "Log level '{}' not recognized, must be one of the following: {}"
            .format(s, list(LOG_LEVEL_DICT.keys())))

    return LOG_LEVEL_DICT[s]


def str2str(s):
    """Test if a string exists

    :s: String

    """
    if (s == ""):
        return None
    return s


def str2int(s):
    """Parse a strictly positive integer

    :s: String

    """
    try:
        value = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError("'{}' is not an integer".format(s))
    if value <= 0:
        raise argparse.ArgumentTypeError("'{}' must be a positive integer".format(s))
    return value


def str2float(s):
    """Parse a float, accepting the usual CLI spellings
    like `1e-3` or `-4`

    :s: String
    :returns: float

    """
    try:
        return float(s)
    except ValueError:
        raise argparse.ArgumentTypeError("'{}' is not a real number".format(s))


def str2positive_float(s):
    """Parse a strictly positive float (steps, scales)

    :s: String

    """
    value = str2float(s)
    if not value > 0:
        raise argparse.ArgumentTypeError("'{}' must be strictly positive".format(s))
    return value


def str2bool(v):
    if isinstance(v, bool):
        return v
    if v.lower() in ('yes', 'true', 't', 'y', '1'):
        return True
    elif v.lower() in ('no', 'false', 'f', 'n', '0'):
        return False
    else:
        raise argparse.ArgumentTypeError("Input to str2bool unexpected - {}".format(v))


def str2mesh_format(s):
    """Mesh formats understood by the mesh writer

    :s: String
    :returns: 'obj' or 'ply'

    """
    s = s.lower().lstrip('.')
    if s not in ('obj', 'ply'):
        raise argparse.ArgumentTypeError("Mesh format must be 'obj' or 'ply', got '{}'".format(s))
    return s


def str2fixture(s):
    """Split a fixture specifier into its name and numeric
    parameters, e.g. `scherk:1:1.5707963` -> ('scherk', [1.0, 1.5707963])

    :s: String
    :returns: (name, list of floats)

    """
    tags = s.strip().split(":")
    name = tags[0].lower()
    if not name:
        raise argparse.ArgumentTypeError("Empty fixture name")
    params = [str2float(t) for t in tags[1:]]
    return name, params

#######################################################################
# Main
#######################################################################
