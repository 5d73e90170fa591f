"""Exception types shared across the package."""


class SymdegError(Exception):
    """Base class for all domain errors raised by symdeg."""


class ParseError(SymdegError, ValueError):
    """Malformed textual or JSON input."""


class IncompatibleOrientation(SymdegError, ValueError):
    """Orientation is not preserved (with reversal) by the involution."""


class PreconditionViolated(SymdegError, ValueError):
    """A documented precondition of an operation does not hold."""


class NotEmbeddable(SymdegError):
    """The interval does not embed into the class (or the quotient construction breaks)."""


class NotDegeneration(SymdegError):
    """The target class is not below the source in the Hom order."""


class InternalError(SymdegError, RuntimeError):
    """An invariant that the theory guarantees was found to be violated."""


class NoRealPoint(SymdegError):
    """The matrix oracle could not produce a point over the chosen field."""


class NegativeWeightEntry(SymdegError):
    """A one-parameter family has no limit at t = 0."""


class NoSurjection(NotEmbeddable):
    """There is no epimorphism from the class onto the interval."""


class NotIsotropic(SymdegError):
    """An embedding that should be isotropic is not."""


class InconsistentPoint(InternalError):
    """Hom dimensions of an explicit point do not come from a direct sum of intervals."""
