"""Exception hierarchy shared by all artinlab modules.

The CLI maps these onto exit codes: ValueError family -> 2 (usage),
ResourceLimitError -> 3, InvariantViolation -> 1.
"""


class ArtinlabError(Exception):
    """Base class for artinlab-specific failures."""


class IncompatibleCongruences(ArtinlabError, ValueError):
    """CRT input congruences clash; carries the offending pair."""

    def __init__(self, first, second):
        self.first = first
        self.second = second
        super().__init__(f"incompatible congruences: {first} vs {second}")


class ExcludedPointError(ArtinlabError, ValueError):
    """A shifted argument n + h_i hit 0 mod p where the Legendre symbol vanishes."""


class ConstructionFailure(ArtinlabError, RuntimeError):
    """The residue-class construction found no admissible value (preconditions violated)."""


class ResourceLimitError(ArtinlabError, RuntimeError):
    """Requested computation exceeds a configured size/overflow budget."""


class InsufficientDataError(ArtinlabError, ValueError):
    """A census did not contain enough elements for the requested statistic."""


class DegenerateDistributionError(ArtinlabError, ValueError):
    """Weighted expectation requested but the total weight is zero."""


class InvariantViolation(ArtinlabError, RuntimeError):
    """A machine-checked invariant failed mid-run; indicates an implementation bug."""
