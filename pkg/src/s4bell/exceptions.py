"""Exception hierarchy. Every error raised by the package derives from S4BellError."""


class S4BellError(ValueError):
    pass


class InvalidTranspositionError(S4BellError):
    pass


class RepresentationInconsistencyError(S4BellError):
    pass


class InvalidStateError(S4BellError):
    pass


class NoBasisPartitionError(S4BellError):
    pass


class LabelingMismatchError(S4BellError):
    pass


class InvalidBasisError(S4BellError):
    pass


class LabelNotFoundError(S4BellError, KeyError):
    pass


class OrbitClosureError(S4BellError):
    pass


class InequalityFixtureMismatchError(S4BellError):
    pass


class GraphStructureError(S4BellError):
    pass


class WinTableMismatchError(S4BellError):
    pass
