"""Exception hierarchy; every engine error derives from :class:`QuadgorError`."""


class QuadgorError(Exception):
    """Base class for engine errors (CLI exit code 1)."""


class DivisionByZero(QuadgorError, ZeroDivisionError):
    pass


class FieldMismatch(QuadgorError, TypeError):
    pass


class RingMismatch(QuadgorError, TypeError):
    pass


class ParseError(QuadgorError, SyntaxError):
    """Malformed input text; ``position`` is a 0-based column when known."""

    def __init__(self, msg, position=None):
        if position is not None:
            msg = f"{msg} (at column {position})"
        super().__init__(msg)
        self.position = position


class UnknownVariable(ParseError):
    pass


class NonHomogeneous(QuadgorError, ValueError):
    pass


class UnitIdeal(QuadgorError, ValueError):
    pass


class NotArtinian(QuadgorError, ValueError):
    pass


class NotQuadratic(QuadgorError, ValueError):
    pass


class ZeroInput(QuadgorError, ValueError):
    pass


class TooFewVariables(QuadgorError, ValueError):
    pass


class NotAlternating(QuadgorError, ValueError):
    pass


class OddSize(QuadgorError, ValueError):
    pass


class EvenSize(QuadgorError, ValueError):
    pass


class PreconditionUnmet(QuadgorError, ValueError):
    pass
