"""Exception hierarchy shared by every module."""


class PolyconvexError(Exception):
    """Base class; CLI maps subclasses onto exit codes."""


class PreconditionError(PolyconvexError):
    """Input violates an operation's precondition (CLI exit code 3)."""


class DimensionMismatch(PreconditionError, ValueError):
    pass


class EmptyPolyhedron(PreconditionError):
    pass


class NotAMember(PreconditionError):
    pass


class NotInDomain(NotAMember):
    pass


class NotSupplementary(PreconditionError):
    pass


class NotACone(PreconditionError):
    pass


class NotAFace(PreconditionError):
    pass


class NotSublinear(PreconditionError):
    pass


class DomainNotConeAt(PreconditionError):
    pass


class AffineFlat(PreconditionError):
    pass


class TooLarge(PreconditionError):
    pass


class InvariantViolation(PolyconvexError, AssertionError):
    """A checked identity failed; always indicates a bug (CLI exit code 4)."""
