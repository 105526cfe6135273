#################################################################################
#
#             Project Title:  Error classes for transurf
#             Date:           2026-10-19
#
#################################################################################

"""Errors raised by the construction and verification pipeline.

Every error carries a stable ``exit_code`` used by the command line:

    ==========================  ====
    ZeroRoot                     11
    SameSign                     12
    ComplexRoots                 13
    ZeroC1                       14
    DoubleRoot                   20
    InitialValueOutOfBand        21
    StepTooLarge                 22
    NonpositiveY                 23
    NonmonotonePhase             30
    PhaseMismatch                31
    NonpositiveKappa             32
    BadRadius                    33
    SpanHitsSingularity          34
    GridTooCoarse                35
    DegenerateSecondDerivative   36
    ZeroTorsion                  40
    DegenerateNode               41
    GridHitsSingularity          50
    ParallelDirections           51
    UnknownFixture               52
    ParseError                   60
    IoError                      61
    ==========================  ====

Exit code 0 means the report passed, 1 that it was written but failed and
2 covers usage errors, from argparse or from an invalid value.
"""

#################################################################################
#   Function-Class Declaration
#################################################################################

EXIT_PASS = 0
EXIT_REPORT_FAILED = 1


class TransurfError(Exception):
    """Base class of every pipeline error."""
    exit_code = 10


# moduli

class ZeroRoot(TransurfError):
    exit_code = 11


class SameSign(TransurfError):
    exit_code = 12


class ComplexRoots(TransurfError):
    exit_code = 13


class ZeroC1(TransurfError):
    exit_code = 14


# curvature ODE

class DoubleRoot(TransurfError):
    exit_code = 20


class InitialValueOutOfBand(TransurfError):
    exit_code = 21


class StepTooLarge(TransurfError):
    exit_code = 22


class NonpositiveY(TransurfError):
    exit_code = 23


# curves

class NonmonotonePhase(TransurfError):
    exit_code = 30


class PhaseMismatch(TransurfError):
    exit_code = 31


class NonpositiveKappa(TransurfError):
    exit_code = 32


class BadRadius(TransurfError):
    exit_code = 33


class SpanHitsSingularity(TransurfError):
    exit_code = 34


class GridTooCoarse(TransurfError):
    exit_code = 35


class DegenerateSecondDerivative(TransurfError):
    exit_code = 36


# geometry

class ZeroTorsion(TransurfError):
    exit_code = 40


class DegenerateNode(TransurfError):
    exit_code = 41


# fixtures

class GridHitsSingularity(TransurfError):
    exit_code = 50


class ParallelDirections(TransurfError):
    exit_code = 51


class UnknownFixture(TransurfError):
    exit_code = 52


# input / output

class ParseError(TransurfError):
    """Raised when an ingested CSV file does not follow a known schema.

    :param str message: description of the problem.
    :param int line: 1-based line of the file holding the offending value.
    :param str column: name of the offending column, if known.
    """
    exit_code = 60

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append('line {}'.format(line))
        if column is not None:
            where.append('column {}'.format(column))
        if where:
            message = '{} ({})'.format(message, ', '.join(where))
        super().__init__(message)


class IoError(TransurfError):
    exit_code = 61
