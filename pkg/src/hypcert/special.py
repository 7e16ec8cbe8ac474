"""Gamma-family primitives and an AGM elliptic-integral oracle.

The gamma functions delegate to the platform's libm ``lgamma`` (binary64,
comfortably inside the 1e-13 relative contract the rest of the package
assumes) and add the domain/pole policing that libm does not do.  Negative
arguments are supported only through the reflection formula

    Gamma(x) * Gamma(1-x) = pi / sin(pi * x),

which is the only regime the verification layer ever touches (arguments in
(-1, 0)).  ``agm_elliptic_K`` is an independent route to the classical
complete elliptic integral K and is used to cross-check the hypergeometric
evaluator rather than the other way around.
"""

from __future__ import annotations

import math

from .errors import DomainError, PoleError

# Arguments closer than this to a non-positive integer are rejected instead
# of letting 1/sin(pi*x) amplify rounding into garbage.
POLE_GUARD = 1e-8


def ln_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0.

    Relative accuracy is that of libm's lgamma, well below 1e-13 against
    max(1, |ln Gamma|).
    """
    if not (x > 0.0) or math.isinf(x):
        raise DomainError(f"ln_gamma needs a positive finite argument, got {x!r}")
    return math.lgamma(x)


def gamma(x: float) -> float:
    """Gamma(x) for real x that is not (close to) a non-positive integer.

    Positive arguments go through exp(ln_gamma(x)); negative ones through
    reflection, Gamma(x) = pi / (sin(pi x) * Gamma(1 - x)).
    """
    if math.isnan(x) or math.isinf(x):
        raise DomainError(f"gamma needs a finite argument, got {x!r}")
    if x > 0.0:
        return math.exp(math.lgamma(x))
    # nearest non-positive integer (for x <= 0 that is just round(x))
    if abs(x - round(x)) < POLE_GUARD:
        raise PoleError(f"gamma argument {x!r} is within {POLE_GUARD} of a pole")
    return math.pi / (math.sin(math.pi * x) * math.exp(math.lgamma(1.0 - x)))


def beta(x: float, y: float) -> float:
    """Euler beta B(x, y) = Gamma(x)Gamma(y)/Gamma(x+y) for x, y > 0.

    Computed as exp of ln_gamma differences so intermediate overflow cannot
    occur for the magnitudes this package deals with.
    """
    if not (x > 0.0 and y > 0.0):
        raise DomainError(f"beta needs positive arguments, got ({x!r}, {y!r})")
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


def gamma_ratio(n: int, a: float, b: float) -> float:
    """Gamma(n + a) / Gamma(n + b) for a positive integer n.

    For large n this behaves like n**(a-b); the test suite pins that
    asymptotic.  Both shifted arguments must be positive.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"gamma_ratio needs a positive integer n, got {n!r}")
    if not (n + a > 0.0 and n + b > 0.0):
        raise DomainError(
            f"gamma_ratio needs n+a and n+b positive, got n={n}, a={a!r}, b={b!r}"
        )
    return math.exp(math.lgamma(n + a) - math.lgamma(n + b))


def agm_elliptic_K(r: float) -> float:
    """Complete elliptic integral K(r) = pi / (2 AGM(1, sqrt(1-r^2))).

    The arithmetic-geometric mean converges quadratically; a few iterations
    reach the binary64 fixed point, giving K to ~1e-15 relative.  Valid for
    0 <= r < 1.
    """
    if not (0.0 <= r < 1.0):
        raise DomainError(f"agm_elliptic_K needs 0 <= r < 1, got {r!r}")
    a = 1.0
    b = math.sqrt(1.0 - r * r)
    for _ in range(64):
        if abs(a - b) <= 4e-16 * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return math.pi / (2.0 * a)
