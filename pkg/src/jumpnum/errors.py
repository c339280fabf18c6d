"""Exception hierarchy.

``DataError`` subclasses signal problems with the input data (bad fixture,
inconsistent multiplicities, unsatisfied preconditions); the command line
maps them to the "data" exit code.  ``InternalError`` marks conditions that
should be impossible on consistent input, such as a non-terminating
unloading loop.
"""


class JumpnumError(Exception):
    pass


class DataError(JumpnumError):
    """Input data is malformed or mathematically inconsistent."""


class FixtureError(DataError):
    """A fixture file could not be parsed or failed validation."""


class InconsistentDataError(DataError):
    """Declared combinatorial data violates a consistency relation."""


class PreconditionError(DataError):
    """An operation was called outside its stated domain."""


class LatticeConfigError(DataError):
    """Required lattice data (restrictions, cone, curve family) is missing."""


class InternalError(JumpnumError):
    """An internal invariant failed; indicates a bug or pathological input."""
