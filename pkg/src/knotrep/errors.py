"""Exception and warning types shared across the package."""


class KnotrepError(Exception):
    """Base class for all package-specific errors."""


class PresentationError(KnotrepError):
    """Malformed presentation source text."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            message = f"{message} ({where})"
        super().__init__(message)
        self.line = line
        self.column = column


class NotInfiniteCyclic(KnotrepError):
    """The presentation does not abelianize to an infinite cyclic group."""

    def __init__(self, message, homology=None):
        super().__init__(message)
        self.homology = homology


class ZeroArgument(KnotrepError):
    """A zero polynomial was passed where a nonzero one is required."""


class DivisionFailed(KnotrepError):
    """An exact division that should always succeed did not.  Bug trap."""


class ActionInvalid(KnotrepError):
    """A coset action does not satisfy the relators of the base presentation."""


class InfiniteCover(KnotrepError):
    """An infinite cover was requested where only finite ones make sense."""


class CapExceeded(KnotrepError):
    """Subgroup closure grew past the configured element cap."""

    def __init__(self, message, cap=None):
        super().__init__(message)
        self.cap = cap


class BudgetExhausted(KnotrepError):
    """Backtracking search ran out of its node budget.

    ``partial`` holds the (deduplicated) representations found before the
    budget ran out.
    """

    def __init__(self, message, partial=()):
        super().__init__(message)
        self.partial = list(partial)


class NotPeriodic(KnotrepError):
    """The given images do not satisfy the branched-cover relators."""


class RepInvalid(KnotrepError):
    """A representation fails to kill some relator."""


class AllDenominatorsVanish(KnotrepError):
    """No generator block of the twisted boundary has nonzero determinant."""


class IdentityRelatorWarning(UserWarning):
    """A relator freely reduced to the empty word."""
