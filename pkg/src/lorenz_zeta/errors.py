"""Exception hierarchy shared by all modules."""


class LorenzZetaError(Exception):
    """Base class for every error raised by the library."""


class InputError(LorenzZetaError):
    """Bad user input; the CLI maps these to exit status 2."""


class ComputationError(LorenzZetaError):
    """A computation could not be carried out; CLI exit status 3."""


class MalformedWord(InputError):
    pass


class EmptyWord(InputError):
    pass


class InadmissiblePair(InputError):
    pass


class ShiftPastEnd(InputError):
    pass


class BoundTooLarge(InputError):
    pass


class IoFailure(InputError):
    pass


class DuplicatePoint(ComputationError):
    pass


class TooSmall(ComputationError):
    pass


class CycleBudgetExceeded(ComputationError):
    pass


class StructureMismatch(ComputationError):
    """An internal consistency check failed. Points to a bug, not bad input."""


class NonIntegerCoefficient(ComputationError):
    pass


class NonUnitConstant(ComputationError):
    pass
