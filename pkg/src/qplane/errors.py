"""Exception hierarchy for the qplane package.

Every failure mode that callers are expected to handle gets its own class;
all of them derive from QPlaneError so library users can catch broadly.
"""


class QPlaneError(Exception):
    """Base class for all qplane errors."""


class MixedContext(QPlaneError):
    """Two values from different field contexts were combined."""


class DivisionByZero(QPlaneError):
    """Division or inversion of a zero scalar (or zero denominator)."""


class ZeroArgument(QPlaneError):
    """An operation that requires nonzero input received zero."""


class ZeroElement(QPlaneError):
    """A multiset that must consist of nonzero scalars contains zero."""


class ParseError(QPlaneError):
    """A scalar string does not match the grammar.

    Carries the offending position when known.
    """

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class DimensionMismatch(QPlaneError):
    """Matrix shapes are incompatible for the requested operation."""


class NotSquare(QPlaneError):
    """A square matrix was required."""


class SingularConjugator(QPlaneError):
    """The conjugating matrix g is not invertible."""


class RelationViolated(QPlaneError):
    """A pair (A, B) does not satisfy AB = q·BA."""


class EigenvaluesNotFound(QPlaneError):
    """The spectrum of a matrix could not be fully resolved in the field."""


class LengthMismatch(QPlaneError):
    """A vector argument has the wrong length."""


class BadIndex(QPlaneError):
    """A component or quotient index violates its defining constraints."""


class DegeneratePoint(QPlaneError):
    """A randomly sampled point was degenerate and resampling kept failing."""


class UnsupportedShape(QPlaneError):
    """semisimplify received a pair it cannot decompose into known blocks."""
