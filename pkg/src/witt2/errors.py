"""Exception types shared across the package."""


class AlgebraError(Exception):
    """Base class for all errors raised by witt2."""


class FieldMismatch(AlgebraError):
    """Operands belong to different field descriptors."""


class DivisionByZero(AlgebraError):
    pass


class NotASubfield(AlgebraError):
    """Requested scalar extension target does not contain the source field."""


class UnsupportedDescriptor(AlgebraError):
    """The operation needs structure this field descriptor does not expose."""


class ZeroScalar(AlgebraError):
    """A nonzero scalar slot received zero."""


class SingularForm(AlgebraError):
    """Operation requires a nonsingular quadratic form."""


class Reducible(AlgebraError):
    """Polynomial expected to be irreducible has a detected factor."""


class NotSeparableCase(AlgebraError):
    """Minimal-polynomial normalization applies to the separable case only."""


class InvalidParams(AlgebraError):
    """Generator parameters violate their precondition."""


class NotBiquadratic(AlgebraError):
    pass


class NotInKernel(AlgebraError):
    pass


class ShapeMismatch(AlgebraError):
    """Extension is not in the recognized parametric family."""


class DegenerateParameter(AlgebraError):
    """A diagonal bilinear scalar in a closed-form combination vanished."""


class SearchExhausted(AlgebraError):
    """Bounded search ended without a witness; carries partial progress."""

    def __init__(self, message, progress=None):
        super().__init__(message)
        self.progress = progress


class InternalInvariantViolation(AlgebraError):
    """An oracle produced evidence contradicting a proved invariant."""


class ParseError(AlgebraError):
    """Input text does not match the published grammar."""

    def __init__(self, message, pos=None):
        super().__init__(message if pos is None else f"{message} (at {pos})")
        self.pos = pos
