"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class TraceSysError(Exception):
    """Base class for every error raised by this package."""


# ---------------------------------------------------------------- monoid

class DuplicateLetter(TraceSysError):
    pass


class UnknownLetterInPair(TraceSysError):
    pass


class ReflexivePair(TraceSysError):
    pass


class UnknownLetter(TraceSysError):
    pass


class AlphabetTooLarge(TraceSysError):
    """Clique enumeration is exponential; alphabets above the cap are refused."""


# ---------------------------------------------------------------- system

class UnknownState(TraceSysError):
    pass


class DiamondViolation(TraceSysError):
    """The free action does not commute on an independent pair at some state."""

    def __init__(self, state, a, b):
        self.state, self.a, self.b = state, a, b
        super().__init__(f"diamond broken at state {state!r} for pair ({a!r}, {b!r})")


class NotAccessible(TraceSysError):
    pass


class TrivialSystem(TraceSysError):
    pass


class NotIrreducible(TraceSysError):
    pass


# ---------------------------------------------------------------- spectral

class NoRootInUnitInterval(TraceSysError):
    """det of the inversion matrix has no root in (0, 1]; a hypothesis failed."""


class SingularAtT(TraceSysError):
    pass


class NonConvergence(TraceSysError):
    pass


class AmbiguousBasic(TraceSysError):
    """A component radius falls inside the basic-flag tolerance band."""


# ---------------------------------------------------------------- measure

class KernelDimensionNotOne(TraceSysError):
    def __init__(self, dim):
        self.dim = dim
        super().__init__(f"kernel dimension is {dim}, expected 1")


class NonPositiveKernelVector(TraceSysError):
    pass


class CrossCheckFailure(TraceSysError):
    pass


class ClassificationMismatch(TraceSysError):
    """Graph-based and measure-based positive/null labels disagree."""


# ---------------------------------------------------------------- sampling / oracle

class EmptySet(TraceSysError):
    def __init__(self, n):
        self.n = n
        super().__init__(f"no execution of length {n}")


class CapExceeded(TraceSysError):
    pass


# ---------------------------------------------------------------- frontends

class ParseError(TraceSysError):
    def __init__(self, line_no, message):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class NotOneBounded(TraceSysError):
    def __init__(self, marking, transition):
        self.marking, self.transition = marking, transition
        super().__init__(
            f"firing {transition!r} at marking {{{', '.join(sorted(marking))}}} "
            "puts two tokens on a place"
        )


class StateExplosion(TraceSysError):
    pass
