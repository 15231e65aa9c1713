"""Exception types shared across the package.

Everything deriving from :class:`DomainError` means "the inputs left the
mathematically valid domain"; the CLI maps these to exit code 2.
"""


class DomainError(ValueError):
    """Input outside the valid mathematical domain of an operation."""


class TimeOverflowError(DomainError):
    """|t/tau| too large for the hyperbolic variant (cosh/sinh would overflow)."""


class DegenerateTimeError(DomainError):
    """f(t) vanishes: the ladder construction divides by sqrt(2 f(t))."""


class EmptyWindowError(DomainError):
    """Search window [t_lo, t_hi] with t_lo >= t_hi."""
