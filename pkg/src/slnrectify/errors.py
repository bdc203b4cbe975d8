"""Exception hierarchy shared by all modules."""


class SlnRectifyError(Exception):
    """Base class for all library errors."""


class AllZeroInput(SlnRectifyError):
    """Every polynomial in an input list was zero."""


class ResourceExceeded(SlnRectifyError):
    """A configured degree/size/step budget was exhausted."""


class NotASection(SlnRectifyError):
    """Elimination produced no generator of parameter-degree one; the
    assignment map was not a closed embedding."""


class NotUnimodular(SlnRectifyError):
    """A matrix that must have determinant one does not."""

    def __init__(self, det, msg="determinant is not identically 1"):
        super().__init__(f"{msg}: det = {det}")
        self.det = det


class InvalidSupport(SlnRectifyError):
    """A generator payload mentions a forbidden variable."""


class FirstColumnNotPreserved(SlnRectifyError):
    """A curve-valued right factor does not have first column e1."""


class SearchExhausted(SlnRectifyError):
    """A randomized search ran out of budget without a verified hit."""

    def __init__(self, trials, msg="search budget exhausted"):
        super().__init__(f"{msg} after {trials} trials")
        self.trials = trials


class PreconditionFailed(SlnRectifyError):
    """A documented operation precondition does not hold."""


class DivisionObstruction(SlnRectifyError):
    """Internal guard: an exact division that must succeed did not."""


class NotAnEmbedding(SlnRectifyError):
    """The input curve is not a closed embedding."""

    def __init__(self, report=None, msg="input curve is not an embedding"):
        super().__init__(msg)
        self.report = report


class UnsupportedSize(SlnRectifyError):
    """The requested operation is not available at this matrix size."""


class DivisibilityFails(SlnRectifyError):
    """g2 does not divide g1*g3 - 1."""

    def __init__(self, remainder):
        super().__init__(f"division leaves remainder {remainder}")
        self.remainder = remainder


class HeuristicFailed(SlnRectifyError):
    """Best-effort normalization gave up; explicitly not a refutation."""

    def __init__(self, trials, msg="divisibility heuristic gave up"):
        super().__init__(f"{msg} after {trials} trials")
        self.trials = trials


class DegreeObstruction(SlnRectifyError):
    """Neither component degree divides the other; the plane curve was
    not a genuine embedding."""


class OriginContact(SlnRectifyError):
    """A plane curve that must avoid the origin passes through it."""


class ParseError(SlnRectifyError):
    """Malformed input file."""

    def __init__(self, msg, line=None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{msg}{where}")
        self.line = line


class ReplayMismatch(SlnRectifyError):
    """Certificate replay disagrees with the recorded transcript."""
