"""Exception and warning types shared across the package."""

from __future__ import annotations


class BraidGammaError(Exception):
    """Base class for all errors raised by this package."""


class DuplicateIndexError(BraidGammaError):
    """A generator was given repeated strand indices."""


class IndexRangeError(BraidGammaError):
    """A strand index, slot, or exponent is outside its admissible range."""


class GroupMismatchError(BraidGammaError):
    """Two words belong to different target groups (or different slot counts)."""


class WordSyntaxError(BraidGammaError):
    """Malformed word text.  `position` is the 0-based offset of the error."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ValidationError(BraidGammaError):
    """A choreography or configuration failed its validity checks."""


class EndpointMismatchError(BraidGammaError):
    """Concatenation was attempted between choreographies that do not meet."""


class CollinearTripleError(BraidGammaError):
    """A spatial path left the restricted configuration space (3 points collinear)."""


class DegenerateError(BraidGammaError):
    """The traced path sits on, or crosses, a stratum of codimension two or worse.

    Carries enough context (segment, offending index tuples, time window)
    to perturb the input and retry.
    """

    def __init__(self, message, *, segment=None, subsets=None, window=None):
        detail = message
        if segment is not None:
            detail += f" [segment {segment}]"
        if subsets:
            detail += " [points " + ", ".join(str(sorted(s)) for s in subsets) + "]"
        if window is not None:
            detail += f" [t in {window}]"
        detail += "; a small rational perturbation of the waypoints usually resolves this"
        super().__init__(detail)
        self.segment = segment
        self.subsets = tuple(tuple(sorted(s)) for s in subsets) if subsets else ()
        self.window = window


class UnstableWarning(UserWarning):
    """A wall was touched tangentially (double root, no sign change).

    Nothing is emitted for the touch; the warning names the tuple and time so
    the caller can decide whether to perturb.
    """

    def __init__(self, message, *, segment=None, subset=None, time=None):
        detail = message
        if segment is not None:
            detail += f" [segment {segment}]"
        if subset:
            detail += f" [points {sorted(subset)}]"
        if time is not None:
            detail += f" [t = {time}]"
        super().__init__(detail)
        self.segment = segment
        self.subset = tuple(sorted(subset)) if subset else ()
        self.time = time
