"""Exception taxonomy for the whole package.

Every failure mode that callers are expected to handle gets its own
class here so that tests and the CLI can catch precisely.  Anything
raised as InternalInconsistency means two independent computations of
the same quantity disagreed; that is a bug in this package or a broken
input scene, never a recoverable user error.
"""


class LightlikeLabError(Exception):
    """Base class for all package errors."""


class ParamError(LightlikeLabError):
    """Structure parameters (p, q) outside the admissible integer range."""


class ShapeError(LightlikeLabError):
    """Vector or matrix dimensions that do not fit the operation."""


class DivByZero(LightlikeLabError, ZeroDivisionError):
    """Division by an exact zero scalar."""


class NotInSpan(LightlikeLabError):
    """Coordinate extraction requested for a vector outside the span."""


class ParseError(LightlikeLabError):
    """Malformed scalar or polynomial text."""


class ImmersionRankDrop(LightlikeLabError):
    """Chart Jacobian loses rank at the evaluation point."""


class NotLightlike(LightlikeLabError):
    """Operation requires a degenerate induced metric but the radical is zero."""


class ScreenInvalid(LightlikeLabError):
    """User-supplied screen override fails one of its contracts."""


class LtrConstructionFailed(LightlikeLabError):
    """Null transversal frame construction could not complete."""


class NotTransversalConfig(LightlikeLabError):
    """Operation requires the screen of the normal bundle to be nontrivial."""


class FrameIncomplete(LightlikeLabError):
    """Adapted frame is missing a component the operation needs."""


class InsufficientScene(LightlikeLabError):
    """Scene lacks the fields or sections a requested check needs."""


class ValidationError(LightlikeLabError):
    """Scene document failed structural validation."""


class InternalInconsistency(LightlikeLabError):
    """Two independent routes to the same value disagreed."""
