"""Exception types raised across the package."""


class EmbedError(Exception):
    """Base class for all package errors."""


# input validation

class EmptyInput(EmbedError, ValueError):
    pass


class DuplicateVertexInSimplex(EmbedError, ValueError):
    pass


class IndexOutOfRange(EmbedError, IndexError):
    pass


class MissingEdgeValue(EmbedError, ValueError):
    pass


class UnknownEdge(EmbedError, KeyError):
    pass


class NonFiniteValue(EmbedError, ValueError):
    pass


class NonFiniteScalar(EmbedError, ValueError):
    pass


class LengthMismatch(EmbedError, ValueError):
    pass


class ComplexMismatch(EmbedError, ValueError):
    pass


class UnknownSimplex(EmbedError, KeyError):
    pass


class BadBarycentric(EmbedError, ValueError):
    pass


class CliqueCapTooSmall(EmbedError, ValueError):
    pass


class CombinatorialBlowup(EmbedError, ValueError):
    """Raised when an exhaustive subset check would exceed its guard."""


class UnknownFamily(EmbedError, ValueError):
    pass


class ParseError(EmbedError, ValueError):
    pass


# solver outcomes

class RetriesExhausted(EmbedError, RuntimeError):
    """Random sampling failed to produce a usable configuration.

    This points at pathological tolerance settings, not at a mathematical
    obstruction.
    """


class SolverDiverged(EmbedError, RuntimeError):
    pass


class SingularFamily(EmbedError, RuntimeError):
    pass


class VerificationFailed(EmbedError, RuntimeError):
    pass
