"""Exception types shared across the toolkit.

The CLI maps these onto its exit-code taxonomy: verification failures
exit 1, usage problems exit 2, capacity limits exit 3, bad input data
exit 4.
"""


class CapacityError(Exception):
    """An exact computation was requested beyond its configured size bound."""


class InputFormatError(Exception):
    """An input file or serialized object could not be parsed."""


class GeneralPositionError(InputFormatError):
    """A curve arrangement violates the general-position requirements."""


class GenerationError(Exception):
    """A random generator failed to produce a valid instance within its retry limit."""
