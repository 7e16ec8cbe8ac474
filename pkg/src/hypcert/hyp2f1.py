"""Gauss hypergeometric function on [0, 1) and elliptic-integral wrappers.

The evaluator is built for one job: resolving strict inequalities between
hypergeometric values at the 1e-10 scale.  Three regimes are stitched
together:

* plain power series with compensated (Kahan) summation for arguments up
  to ``switch_point`` -- and for all arguments when the parameter excess
  e = c - a - b is a non-unit integer, where only a budgeted-series
  contract is offered (x <= 0.99);
* the logarithmic connection formula at unit excess (c = a + b + 1), the
  regime every comparison in this package lives in, accurate to ~1e-14
  right up to 1 - 1e-8;
* the reflection-based connection formula for non-integer excess.

Series termination is tail-aware: the plain series stops only when the
current term times the geometric tail bound 1/(1-x) is below tolerance,
which is what makes zero-balanced cases (e = 0) trustworthy at x = 0.999.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError
from .special import gamma

# How far the excess may sit from an integer and still be treated as that
# integer by the dispatcher.  Covers float noise in c = a + b + 1 without
# misclassifying genuinely non-integer excesses.
_EXCESS_SNAP = 1e-9

# Guard distance for third parameters near non-positive integers (poles of
# the series coefficients).
_C_GUARD = 1e-8


@dataclass(frozen=True)
class SeriesConfig:
    """Tolerance and budget contract for series evaluation.

    rel_tol is the target relative truncation error of a single series,
    max_terms the hard budget before ConvergenceError, and switch_point the
    argument beyond which connection formulas take over from the plain
    series.
    """

    rel_tol: float = 1e-13
    max_terms: int = 2_000_000
    switch_point: float = 0.8

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0.0):
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol!r}")
        if self.max_terms < 1000:
            raise DomainError(f"max_terms must be >= 1000, got {self.max_terms!r}")
        if not (0.0 < self.switch_point < 1.0):
            raise DomainError(
                f"switch_point must lie in (0,1), got {self.switch_point!r}"
            )


DEFAULT_SERIES = SeriesConfig()


def _near_nonpos_int(z: float, guard: float) -> bool:
    return z < 0.5 and abs(z - round(z)) < guard


@dataclass(frozen=True)
class HypParams:
    """Parameter triple (a, b; c) with the c-pole invariant enforced."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        if _near_nonpos_int(self.c, _C_GUARD):
            raise DomainError(
                f"third parameter {self.c!r} is within {_C_GUARD} of a "
                "non-positive integer"
            )

    @property
    def excess(self) -> float:
        return self.c - self.a - self.b


def _digamma(x: float) -> float:
    """Digamma via reflection + upward recurrence + asymptotic series.

    Internal helper for the logarithmic connection formula; not part of the
    package surface.
    """
    if x != x:
        raise DomainError("digamma of nan")
    if x < 0.5:
        if abs(x - round(x)) < _C_GUARD:
            raise DomainError(f"digamma argument {x!r} too close to a pole")
        # psi(x) = psi(1-x) - pi * cot(pi * x)
        return _digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    acc = 0.0
    z = x
    while z < 12.0:
        acc -= 1.0 / z
        z += 1.0
    inv2 = 1.0 / (z * z)
    # psi(z) ~ ln z - 1/(2z) - sum cf[j] * z^(-2(j+1))
    s = 0.0
    zpow = inv2
    for cf in (
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
    ):
        s += cf * zpow
        zpow *= inv2
    return acc + math.log(z) - 0.5 / z - s


_PSI_1 = _digamma(1.0)  # -EulerGamma
_PSI_2 = _digamma(2.0)  # 1 - EulerGamma


def _raw_series(a: float, b: float, c: float, x: float, cfg: SeriesConfig) -> float:
    """Power series with Kahan compensation and a geometric tail bound.

    Stops once |term| / (1 - x) <= rel_tol * |sum| twice in a row; raises
    ConvergenceError when the budget runs out first.
    """
    s = 1.0
    comp = 0.0
    t = 1.0
    tail = 1.0 / (1.0 - x)
    ok_streak = 0
    for n in range(cfg.max_terms):
        t *= (a + n) * (b + n) * x / ((c + n) * (n + 1.0))
        # Kahan update
        y = t - comp
        hi = s + y
        comp = (hi - s) - y
        s = hi
        if abs(t) * tail <= cfg.rel_tol * abs(s):
            ok_streak += 1
            if ok_streak >= 2:
                return s
        else:
            ok_streak = 0
    raise ConvergenceError(
        f"series for ({a}, {b}; {c}) at x={x} did not reach rel_tol="
        f"{cfg.rel_tol} within {cfg.max_terms} terms"
    )


def _log_connection_unit_excess(
    a: float, b: float, x: float, cfg: SeriesConfig
) -> float:
    """F(a, b; a+b+1; x) near x = 1 via the logarithmic expansion in w = 1-x.

    F = A + B*w * sum_k coef_k * w^k * (ln w + d_k), with
        A = Gamma(a+b+1) / (Gamma(a+1) Gamma(b+1)),   B = a*b*A,
        coef_0 = 1,  coef_{k+1} = coef_k (a+1+k)(b+1+k) / ((k+1)(k+2)),
        d_0 = psi(a+1) + psi(b+1) - psi(1) - psi(2),
        d_{k+1} = d_k + 1/(a+1+k) + 1/(b+1+k) - 1/(k+1) - 1/(k+2).
    """
    w = 1.0 - x
    c = a + b + 1.0
    A = gamma(c) / (gamma(a + 1.0) * gamma(b + 1.0))
    B = a * b * A
    if B == 0.0 or w == 0.0:
        return A
    lw = math.log(w)
    dk = _digamma(a + 1.0) + _digamma(b + 1.0) - _PSI_1 - _PSI_2
    coef = 1.0
    s = 0.0
    comp = 0.0
    bw = B * w
    tail = 1.0 / (1.0 - w)
    ok_streak = 0
    for k in range(cfg.max_terms):
        term = coef * (lw + dk)
        y = term - comp
        hi = s + y
        comp = (hi - s) - y
        s = hi
        f_partial = A + bw * s
        if abs(bw * term) * tail <= cfg.rel_tol * max(abs(f_partial), 1e-300):
            ok_streak += 1
            if ok_streak >= 2:
                return A + bw * s
        else:
            ok_streak = 0
        dk += (
            1.0 / (a + 1.0 + k)
            + 1.0 / (b + 1.0 + k)
            - 1.0 / (k + 1.0)
            - 1.0 / (k + 2.0)
        )
        coef *= (a + 1.0 + k) * (b + 1.0 + k) * w / ((k + 1.0) * (k + 2.0))
    raise ConvergenceError(
        f"log-case expansion for ({a}, {b}) at x={x} did not converge "
        f"within {cfg.max_terms} terms"
    )


def _connection_noninteger(
    a: float, b: float, c: float, x: float, cfg: SeriesConfig
) -> float:
    """Connection formula for non-integer excess e = c - a - b near x = 1:

    F(a,b;c;x) = G(c)G(e)/(G(c-a)G(c-b)) * F(a, b; 1-e; w)
               + G(c)G(-e)/(G(a)G(b)) * w^e * F(c-a, c-b; 1+e; w),  w = 1-x.
    """
    w = 1.0 - x
    e = c - a - b
    if _near_nonpos_int(1.0 - e, 1e-6) or _near_nonpos_int(1.0 + e, 1e-6):
        # both sub-series would sit on a coefficient pole; retreat to the
        # plain series where its contract still applies
        if x <= 0.99:
            return _raw_series(a, b, c, x, cfg)
        raise ConvergenceError(
            f"excess {e!r} too close to an integer for the connection formula"
        )
    first = (
        gamma(c)
        * gamma(e)
        / (gamma(c - a) * gamma(c - b))
        * _raw_series(a, b, 1.0 - e, w, cfg)
    )
    second = (
        gamma(c)
        * gamma(-e)
        / (gamma(a) * gamma(b))
        * math.pow(w, e)
        * _raw_series(c - a, c - b, 1.0 + e, w, cfg)
    )
    return first + second


def hyp2f1(a: float, b: float, c: float, x: float, cfg: SeriesConfig | None = None) -> float:
    """Gauss hypergeometric F(a, b; c; x) for 0 <= x < 1.

    Accuracy: <= 1e-12 relative for x <= cfg.switch_point; <= 1e-10 relative
    on [switch_point, 1 - 1e-8] when the excess c-a-b equals 1; the
    non-integer-excess connection formula covers the rest, except that
    non-unit integer excess beyond the switch point falls back to the plain
    series and is only guaranteed up to x = 0.99.
    """
    if cfg is None:
        cfg = DEFAULT_SERIES
    if _near_nonpos_int(c, _C_GUARD):
        raise DomainError(
            f"third parameter {c!r} is within {_C_GUARD} of a non-positive integer"
        )
    if not (0.0 <= x < 1.0):
        raise DomainError(f"argument must satisfy 0 <= x < 1, got {x!r}")
    if x == 0.0:
        return 1.0
    # F is symmetric in (a, b); fixing an order makes the symmetry exact in
    # floating point on every route (the connection coefficients are not
    # associativity-safe under swapping)
    if b < a:
        a, b = b, a
    # terminating polynomial: a or b a non-positive integer
    if (a <= 0.0 and a == round(a)) or (b <= 0.0 and b == round(b)):
        return _raw_series(a, b, c, x, cfg)
    if x <= cfg.switch_point:
        return _raw_series(a, b, c, x, cfg)
    e = c - a - b
    m = round(e)
    if abs(e - m) <= _EXCESS_SNAP:
        if m == 1:
            return _log_connection_unit_excess(a, b, x, cfg)
        # integer excess != 1: budgeted plain series only
        return _raw_series(a, b, c, x, cfg)
    return _connection_noninteger(a, b, c, x, cfg)


def hyp2f1_at_one(a: float, b: float, c: float) -> float:
    """Limit F(a, b; c; 1^-) = Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b)).

    Requires positive excess c > a + b (the limit diverges otherwise).
    """
    if _near_nonpos_int(c, _C_GUARD):
        raise DomainError(
            f"third parameter {c!r} is within {_C_GUARD} of a non-positive integer"
        )
    if not (c > a + b):
        raise DomainError(
            f"limit at 1 needs c > a + b, got c={c!r}, a+b={(a + b)!r}"
        )
    return gamma(c) * gamma(c - a - b) / (gamma(c - a) * gamma(c - b))


def hyp2f1_dx(a: float, b: float, c: float, x: float, cfg: SeriesConfig | None = None) -> float:
    """d/dx F(a, b; c; x) = (a b / c) * F(a+1, b+1; c+1; x)."""
    return (a * b / c) * hyp2f1(a + 1.0, b + 1.0, c + 1.0, x, cfg)


def elliptic_Ka(a: float, r: float, cfg: SeriesConfig | None = None) -> float:
    """Generalized complete elliptic integral of the first kind:
    (pi/2) * F(a, 1-a; 1; r^2) for a in (0,1), r in (0,1)."""
    if not (0.0 < a < 1.0):
        raise DomainError(f"elliptic_Ka needs a in (0,1), got {a!r}")
    if not (0.0 < r < 1.0):
        raise DomainError(f"elliptic_Ka needs r in (0,1), got {r!r}")
    return 0.5 * math.pi * hyp2f1(a, 1.0 - a, 1.0, r * r, cfg)


def elliptic_Ea(a: float, r: float, cfg: SeriesConfig | None = None) -> float:
    """Generalized complete elliptic integral of the second kind:
    (pi/2) * F(a-1, 1-a; 1; r^2) for a in (0,1), r in (0,1)."""
    if not (0.0 < a < 1.0):
        raise DomainError(f"elliptic_Ea needs a in (0,1), got {a!r}")
    if not (0.0 < r < 1.0):
        raise DomainError(f"elliptic_Ea needs r in (0,1), got {r!r}")
    return 0.5 * math.pi * hyp2f1(a - 1.0, 1.0 - a, 1.0, r * r, cfg)


# keep the name list explicit so help() reads like the module intends
__all__ = [
    "SeriesConfig",
    "DEFAULT_SERIES",
    "HypParams",
    "hyp2f1",
    "hyp2f1_at_one",
    "hyp2f1_dx",
    "elliptic_Ka",
    "elliptic_Ea",
]
