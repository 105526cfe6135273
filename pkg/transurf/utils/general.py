#################################################################################
#
#             Project Title:  General utilities for transurf
#             Date:           2026-10-19
#
#################################################################################


#################################################################################
#   Module Imports
#################################################################################

import os
import json
import logging

#################################################################################
#   Function-Class Declaration
#################################################################################

LOG_LEVEL_DICT = {
    'critical': logging.CRITICAL,
    'error': logging.ERROR,
    'warn': logging.WARNING,
    'warning': logging.WARNING,
    'info': logging.INFO,
    'debug': logging.DEBUG
}


def show_progress():
    """Whether loops should draw tqdm progress bars,
    true once the root logger shows INFO messages

    :returns: bool

    """
    return logging.getLogger().isEnabledFor(logging.INFO)


def _save_metadata(args, outdir, filename="args.json"):
    """Save metadata for execution

    :args: dict: User-defined arguments
    :outdir: str: Ouput directory

    """
    with open(os.path.join(outdir, filename), 'wt') as f:
        json.dump(args, f, indent=4, default=str)

#######################################################################
# Main
#######################################################################
