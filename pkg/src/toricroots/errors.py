"""Exception types shared across the package."""


class ToricError(Exception):
    """Base class for every error raised by this package."""


class InputError(ToricError):
    """Invalid input: malformed files, bad ray data, misuse of an operation."""


class DimensionError(InputError):
    """Vector or matrix dimensions do not match the ambient lattice."""


class DegenerateSystemError(InputError):
    """Rays do not span the ambient space over the rationals."""


class InfiniteRootSetError(InputError):
    """The ray system admits infinitely many roots, so it cannot be the ray
    set of a complete fan."""


class UnboundedPolyhedronError(ToricError):
    """An elimination step found an unbounded coordinate interval."""


class NoAdditiveActionError(ToricError):
    """The requested computation needs an additive action, but none exists."""


class UniquenessHoldsError(ToricError):
    """A witness pair was requested, but the additive action is unique."""


class InternalInvariantError(ToricError):
    """A cross-checked invariant failed.  This signals a bug in the tool or a
    genuine theory violation, never bad input."""
