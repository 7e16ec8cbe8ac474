"""Exception types shared across the package.

Three failure modes are kept distinct: arguments outside an operation's
domain, arguments too close to a pole of the gamma family, and a series
that ran out of its term budget before reaching tolerance.  The last one
is never silently swallowed -- a truncated sum is worse than no answer
when the whole point is certifying strict inequalities.
"""


class DomainError(ValueError):
    """Input outside the mathematical domain of the operation."""


class PoleError(DomainError):
    """Argument within the guard distance of a gamma-family pole."""


class ConvergenceError(RuntimeError):
    """Series/iteration failed to meet tolerance within its budget."""
