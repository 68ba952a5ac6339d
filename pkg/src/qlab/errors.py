"""Error taxonomy shared by the library and the command line front end.

Each subclass maps to one documented exit category, so scripts can tell a
malformed file from a failed validity check without scraping messages.
"""


class QLabError(Exception):
    """Base class for all errors raised by this package."""

    category = "error"
    exit_code = 1


class ParseError(QLabError):
    """Malformed input text: syntax, missing fields, duplicates, bad version."""

    category = "parse"
    exit_code = 2


class ValidationError(QLabError):
    """Content that parses but violates a declared invariant (trace, norm, positivity)."""

    category = "validation"
    exit_code = 3


class DimensionError(QLabError):
    """Shape mismatches, out-of-range indices, capacity overflow."""

    category = "dimension"
    exit_code = 4


class NumericError(QLabError):
    """Numerical preconditions broken: non-unitary, non-Hermitian, NaN or Inf."""

    category = "numeric"
    exit_code = 5
