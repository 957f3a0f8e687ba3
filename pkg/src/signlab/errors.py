"""Exception types shared across the package."""


class SignLabError(Exception):
    """Base class for all package-specific errors."""


class LimitExceeded(SignLabError):
    """A requested computation exceeds a configured size cap."""


class DependentRows(SignLabError):
    """The given rows do not span a hyperplane (rank below n-1)."""


class AliasError(SignLabError):
    """Modulus too small: distinct attainable sums would collide mod Q."""


class RetryExhausted(SignLabError):
    """Too many consecutive dependent draws; points at RNG misuse."""


class CrossCheckError(SignLabError):
    """An internal numerical cross-check failed (fast path vs exact path)."""
