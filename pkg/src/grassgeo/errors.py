"""Shared exception types."""


class GrassgeoError(Exception):
    """Base class for all library errors."""


class FieldMismatch(GrassgeoError, TypeError):
    """Elements of different fields (or rings) were combined."""


class BudgetExceeded(GrassgeoError, RuntimeError):
    """A configurable step budget ran out (Groebner/elimination)."""


class NotIsolated(GrassgeoError, ValueError):
    """Local multiplicity requested at a non-isolated point."""


class UnsupportedArity(GrassgeoError, ValueError):
    """Local multiplicity supports at most two local parameters."""


class SamplingError(GrassgeoError, RuntimeError):
    """No suitable point/line was found within the retry budget."""


class NonGeneralConfiguration(GrassgeoError, RuntimeError):
    """A seeded configuration failed a genericity check; reseed."""


class CertificateNotApplicable(GrassgeoError, ValueError):
    """Preconditions of a tangency/multiplicity certificate fail."""


class ParseError(GrassgeoError, ValueError):
    """Syntax error in a polynomial expression, with a position."""

    def __init__(self, message, text="", pos=0):
        self.pos = pos
        self.text = text
        if text:
            caret = " " * pos + "^"
            message = "%s at position %d\n  %s\n  %s" % (message, pos, text, caret)
        super().__init__(message)
