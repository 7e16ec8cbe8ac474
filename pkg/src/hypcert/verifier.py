"""Numerical certification of the comparison claims.

The object under study is

    G(x) = [F(a-1-delta, b+delta; p; 1-x^d) - F(a-1, b; p; 1-x^c)] / (1-x^c)

on x in (0,1).  For admissible parameters and shifts delta <= delta1 the
claims are: G decreases strictly from c2(delta) at 0+ to c1(delta) at 1-,
which yields the two-sided sandwich

    F_c + c1*(1-x^c)  <  F_d  <  F_c + c2*(1-x^c),

and for delta above the threshold the difference F_d - F_c changes sign.
Each claim becomes a grid check that reports a worst margin; the auxiliary
polynomial/lemma facts (g, g1, Q, the boundary polynomial f4, beta-function
convexity, convexity of the difference along the c-argument) get checks of
their own.  A suite run sweeps a fixed parameter sample and merges all
results into a deterministic JSON report.

Margin convention: every check reduces to a single ``worst_margin`` float,
the signed distance to its tightest constraint; the check passes iff the
margin is positive (skipped checks report status and pass vacuously).
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from .constants import (
    Case,
    ExponentPair,
    ParamPair,
    c1,
    c2,
    condition_case,
    delta1,
    delta1_alpha_variant,
    derive_params,
    f4,
    f5,
    g,
    g1,
    Q,
    Q1,
)
from .errors import DomainError
from .hyp2f1 import DEFAULT_SERIES, SeriesConfig, hyp2f1, hyp2f1_at_one
from .special import beta as beta_fn
from .special import ln_gamma

# Strictness thresholds shared across checks: theorem inequalities are
# strict, so interior margins must clear INTERIOR_MARGIN; consecutive-
# difference monotonicity gets MONOTONE_SLACK of room where cancellation
# dominates; extrapolated endpoint limits must match the closed-form
# constants to ENDPOINT_TOL.
INTERIOR_MARGIN = 1e-12
MONOTONE_SLACK = 1e-9
ENDPOINT_TOL = 1e-5

_TANH_GAMMA = 3.0

_SPACINGS = ("clustered", "uniform")

CHECK_IDS = (
    "G_monotone",
    "sandwich",
    "crossing",
    "crossing_control",
    "sharpness",
    "f4_roots",
    "lemma_g",
    "lemma_g1",
    "lemma_Q",
    "beta_convex",
    "fpp_positive",
)


@dataclass(frozen=True)
class GridSpec:
    """Abscissa grid on (0,1); clustered spacing piles points toward both
    endpoints, where the limits live."""

    n_points: int = 512
    x_lo: float = 1e-4
    x_hi: float = 1.0 - 1e-4
    spacing: str = "clustered"

    def __post_init__(self) -> None:
        if self.n_points < 16:
            raise DomainError(f"need n_points >= 16, got {self.n_points!r}")
        if not (0.0 < self.x_lo < self.x_hi < 1.0):
            raise DomainError(
                f"need 0 < x_lo < x_hi < 1, got ({self.x_lo!r}, {self.x_hi!r})"
            )
        if self.spacing not in _SPACINGS:
            raise DomainError(
                f"spacing must be one of {_SPACINGS}, got {self.spacing!r}"
            )


DEFAULT_GRID = GridSpec()


def make_grid(spec: GridSpec) -> np.ndarray:
    """Strictly increasing abscissas from x_lo to x_hi inclusive."""
    if spec.spacing == "uniform":
        return np.linspace(spec.x_lo, spec.x_hi, spec.n_points)
    u = np.linspace(-1.0, 1.0, spec.n_points)
    mid = 0.5 * (spec.x_lo + spec.x_hi)
    half = 0.5 * (spec.x_hi - spec.x_lo)
    return mid + half * np.tanh(_TANH_GAMMA * u) / math.tanh(_TANH_GAMMA)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one check.

    ``worst_margin`` is the signed distance to the tightest constraint
    (positive = satisfied); ``witnesses`` is a list of [input, value] pairs
    pinning down where the margin was attained (always non-empty on
    failure); ``status`` is "ok" or "skipped: <reason>" -- skipped checks
    pass vacuously.
    """

    check_id: str
    params: dict
    passed: bool
    worst_margin: float
    witnesses: list
    tolerance_used: float
    status: str = "ok"

    def to_json_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "params": self.params,
            "passed": self.passed,
            "worst_margin": self.worst_margin,
            "witnesses": self.witnesses,
            "tolerance_used": self.tolerance_used,
            "status": self.status,
        }


def _skipped(check_id: str, params: dict, reason: str) -> CheckResult:
    return CheckResult(
        check_id=check_id,
        params=params,
        passed=True,
        worst_margin=0.0,
        witnesses=[],
        tolerance_used=0.0,
        status=f"skipped: {reason}",
    )


def _result(check_id, params, margin, witnesses, tol) -> CheckResult:
    return CheckResult(
        check_id=check_id,
        params=params,
        passed=bool(margin > 0.0),
        worst_margin=float(margin),
        witnesses=witnesses,
        tolerance_used=float(tol),
    )


@dataclass(frozen=True)
class Report:
    """Merged, canonically ordered results of a suite or single-check run."""

    meta: dict
    checks: tuple
    passed: bool

    def to_json_text(self) -> str:
        body = {
            "meta": self.meta,
            "checks": [c.to_json_dict() for c in self.checks],
            "passed": self.passed,
        }
        return json.dumps(body, sort_keys=True, indent=2) + "\n"


def _canonical_order(results) -> tuple:
    return tuple(
        sorted(results, key=lambda r: (r.check_id, json.dumps(r.params, sort_keys=True)))
    )


def _build_report(meta: dict, results) -> Report:
    checks = _canonical_order(results)
    return Report(meta=meta, checks=checks, passed=all(c.passed for c in checks))


# ---------------------------------------------------------------------------
# G and its envelopes


def _pair_values(pp, ep, delta, x, cfg):
    """(F_c, F_d, 1-x^c) at one abscissa; powers of x are formed through
    expm1/log1p so that 1-x^c stays accurate at both ends."""
    lx = math.log1p(x - 1.0)
    w_c = -math.expm1(ep.c_exp * lx)
    w_d = -math.expm1(ep.d_exp * lx)
    p = pp.a + pp.b
    f_c = hyp2f1(pp.a - 1.0, pp.b, p, w_c, cfg)
    f_d = hyp2f1(pp.a - 1.0 - delta, pp.b + delta, p, w_d, cfg)
    return f_c, f_d, w_c


def G_value(pp: ParamPair, ep: ExponentPair, delta: float, x: float,
            cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """The difference quotient G(x); 0 identically when delta = 0 and
    c = d (the numerator vanishes term by term)."""
    if not (0.0 < x < 1.0):
        raise DomainError(f"need x in (0,1), got {x!r}")
    if delta == 0.0 and ep.c_exp == ep.d_exp:
        return 0.0
    f_c, f_d, w_c = _pair_values(pp, ep, delta, x, cfg)
    return (f_d - f_c) / w_c


def _difference(pp, ep, delta, x, cfg):
    """F_d - F_c at one abscissa (the sign-change object)."""
    f_c, f_d, _ = _pair_values(pp, ep, delta, x, cfg)
    return f_d - f_c


def _extrap_low(pp, ep, delta, cfg, s0=1e-9):
    """Limit of G at 0+.

    Near 0 the quotient behaves like L + A*s + B*s*ln(s) with s = x^c (the
    numerator's expansion around argument 1 carries a logarithm); fitting
    that basis and reading off L removes the droop a raw endpoint read
    would keep.  The fit abscissas pin s itself at s0*(1,2,4) rather than
    reusing grid points: the terms the basis drops -- s^2*ln(s) from the
    first factor and x^d*ln(x^d) from the second -- then stay below ~1e-7
    for every admissible exponent pair, whereas at grid-sized x the x^d
    terms reach ~1e-3 when d = 1.  The hypergeometric arguments are formed
    straight from s because x = s**(1/c) can be too small for log1p(x-1)."""
    p = pp.a + pp.b
    basis, gs = [], []
    for mult in (1.0, 2.0, 4.0):
        s = s0 * mult
        u = math.exp(ep.d_exp / ep.c_exp * math.log(s))
        f_c = hyp2f1(pp.a - 1.0, pp.b, p, 1.0 - s, cfg)
        if 1.0 - u < 1.0:
            f_d = hyp2f1(pp.a - 1.0 - delta, pp.b + delta, p, 1.0 - u, cfg)
        else:
            # u below one ulp: the value at argument 1 is exact to
            # working precision
            f_d = hyp2f1_at_one(pp.a - 1.0 - delta, pp.b + delta, p)
        gs.append((f_d - f_c) / (1.0 - s))
        basis.append([1.0, mult, mult * math.log(s)])
    coef = np.linalg.solve(np.asarray(basis), np.asarray(gs))
    return float(coef[0])


def _extrap_high(xs, gs, c_exp):
    """Limit of G at 1- from the three highest grid points: G is analytic
    in w = 1-x^c at w = 0, so a quadratic in w extrapolates to O(w^3)."""
    w = np.array([-math.expm1(c_exp * math.log1p(x - 1.0)) for x in xs[-3:]])
    scale = w[0]
    m = np.column_stack([np.ones(3), w / scale, (w / scale) ** 2])
    coef = np.linalg.solve(m, np.asarray(gs[-3:]))
    return float(coef[0])


def _admissibility_gate(check_id, params, pp, ep):
    """Common precondition gate; returns (None, dp, d1) when admissible or
    (skip-result, None, None) when the tuple is out of scope."""
    dp = derive_params(pp)
    if condition_case(dp) is Case.INADMISSIBLE:
        return _skipped(check_id, params, "inadmissible parameter pair"), None, None
    r = ep.ratio
    if not (0.0 < r <= dp.ratio_bound):
        return (
            _skipped(check_id, params, "exponent ratio above admissible bound"),
            None,
            None,
        )
    return None, dp, delta1(pp, ep)


def _theorem_params(pp, ep, delta):
    return {
        "a": pp.a,
        "b": pp.b,
        "c": ep.c_exp,
        "d": ep.d_exp,
        "delta": delta,
    }


def check_G_monotone(pp: ParamPair, ep: ExponentPair, delta: float,
                     grid: GridSpec = DEFAULT_GRID,
                     cfg: SeriesConfig = DEFAULT_SERIES) -> CheckResult:
    """Strict decrease of G across the grid plus endpoint-limit agreement:
    G(0+) = c2(delta) and G(1-) = c1(delta), both to ENDPOINT_TOL via
    endpoint extrapolation."""
    params = _theorem_params(pp, ep, delta)
    skip, dp, d1 = _admissibility_gate("G_monotone", params, pp, ep)
    if skip is not None:
        return skip
    if not (pp.a - 1.0 < delta <= d1):
        return _skipped("G_monotone", params, "shift outside monotone range")

    xs = make_grid(grid)
    gs = [G_value(pp, ep, delta, float(x), cfg) for x in xs]

    witnesses = []
    margin = math.inf
    for i in range(len(gs) - 1):
        m = MONOTONE_SLACK - (gs[i + 1] - gs[i])
        if m < margin:
            margin = m
            worst_pair = [float(xs[i]), gs[i + 1] - gs[i]]
    if margin <= 0.0:
        witnesses.append(worst_pair)

    lo_err = abs(_extrap_low(pp, ep, delta, cfg) - c2(pp, delta))
    hi_err = abs(_extrap_high(xs, gs, ep.c_exp) - c1(pp, ep, delta))
    for x_end, err in ((0.0, lo_err), (float(xs[-1]), hi_err)):
        m = ENDPOINT_TOL - err
        if m <= 0.0:
            witnesses.append([x_end, err])
        margin = min(margin, m)

    return _result("G_monotone", params, margin, witnesses, MONOTONE_SLACK)


def check_sandwich(pp: ParamPair, ep: ExponentPair, delta: float,
                   grid: GridSpec = DEFAULT_GRID,
                   cfg: SeriesConfig = DEFAULT_SERIES) -> CheckResult:
    """Two-sided envelope: at every grid point the difference quotient
    (F_d - F_c)/w lies strictly between c1 and c2 with margin above
    INTERIOR_MARGIN.  Margins are taken on the quotient rather than on F
    itself: the raw gap F_d - (F_c + c1*w) collapses like w^2 as x -> 1
    at the threshold shift, while the identical strict inequality keeps
    a ~1e-8 quotient margin there."""
    params = _theorem_params(pp, ep, delta)
    skip, dp, d1 = _admissibility_gate("sandwich", params, pp, ep)
    if skip is not None:
        return skip
    if not (pp.a - 1.0 < delta <= d1):
        return _skipped("sandwich", params, "shift outside monotone range")

    lo_const = c1(pp, ep, delta)
    hi_const = c2(pp, delta)
    xs = make_grid(grid)
    margin = math.inf
    witnesses = []
    for x in xs:
        f_c, f_d, w_c = _pair_values(pp, ep, delta, float(x), cfg)
        quot = (f_d - f_c) / w_c
        m = min(quot - lo_const, hi_const - quot)
        if m - INTERIOR_MARGIN < margin:
            margin = m - INTERIOR_MARGIN
            worst = [float(x), m]
    if margin <= 0.0:
        witnesses.append(worst)
    return _result("sandwich", params, margin, witnesses, INTERIOR_MARGIN)


def _tail_abscissas(ep, n=160):
    """Abscissas crowding x = 1: w_c from 1e-8 up to 0.3, mapped back
    through x = (1-w_c)^(1/c).  The sign change for shifts just above the
    threshold lives in this tail."""
    ws = np.logspace(-8.0, math.log10(0.3), n)
    return [float(math.exp(math.log1p(-w) / ep.c_exp)) for w in ws]


def find_crossing(pp: ParamPair, ep: ExponentPair, delta: float,
                  grid: GridSpec = DEFAULT_GRID,
                  cfg: SeriesConfig = DEFAULT_SERIES) -> CheckResult:
    """Both-sign witnesses for F_d - F_c when the shift exceeds the
    threshold: a point with difference > INTERIOR_MARGIN and one with
    difference < -INTERIOR_MARGIN, found by a clustered scan (plus a
    near-1 tail scan) and localized by bisecting the sign change."""
    params = _theorem_params(pp, ep, delta)
    skip, dp, d1 = _admissibility_gate("crossing", params, pp, ep)
    if skip is not None:
        return skip
    if not (d1 < delta < 0.0):
        return _skipped("crossing", params, "shift not above the threshold")

    xs = [float(x) for x in make_grid(grid)]
    xs.extend(_tail_abscissas(ep))
    xs.sort()
    ds = [_difference(pp, ep, delta, x, cfg) for x in xs]

    i_pos = max(range(len(ds)), key=lambda i: ds[i])
    i_neg = min(range(len(ds)), key=lambda i: ds[i])
    best_pos, best_neg = ds[i_pos], ds[i_neg]
    margin = min(best_pos, -best_neg) - INTERIOR_MARGIN
    witnesses = [[xs[i_pos], best_pos], [xs[i_neg], best_neg]]

    if margin > 0.0:
        # localize the sign change between the last strong positive and the
        # first strong negative
        j = next(i for i in range(len(ds)) if ds[i] < -INTERIOR_MARGIN)
        candidates = [i for i in range(j) if ds[i] > INTERIOR_MARGIN]
        if candidates:
            lo, hi = xs[candidates[-1]], xs[j]
            for _ in range(48):
                mid = 0.5 * (lo + hi)
                dm = _difference(pp, ep, delta, mid, cfg)
                if dm > INTERIOR_MARGIN:
                    lo = mid
                elif dm < -INTERIOR_MARGIN:
                    hi = mid
                else:
                    break
            witnesses.append(["crossing_near", 0.5 * (lo + hi)])

    return _result("crossing", params, margin, witnesses, INTERIOR_MARGIN)


def check_crossing_control(pp: ParamPair, ep: ExponentPair, delta: float,
                           grid: GridSpec = DEFAULT_GRID,
                           cfg: SeriesConfig = DEFAULT_SERIES) -> CheckResult:
    """Absence control: just below the threshold no scanned point may show
    F_d - F_c < -INTERIOR_MARGIN (up to grid resolution)."""
    params = _theorem_params(pp, ep, delta)
    skip, dp, d1 = _admissibility_gate("crossing_control", params, pp, ep)
    if skip is not None:
        return skip
    if not (pp.a - 1.0 < delta <= d1):
        return _skipped("crossing_control", params, "shift above the threshold")

    xs = [float(x) for x in make_grid(grid)]
    xs.extend(_tail_abscissas(ep))
    xs.sort()
    ds = [_difference(pp, ep, delta, x, cfg) for x in xs]
    i_min = min(range(len(ds)), key=lambda i: ds[i])
    margin = ds[i_min] + INTERIOR_MARGIN
    witnesses = [] if margin > 0.0 else [[xs[i_min], ds[i_min]]]
    return _result("crossing_control", params, margin, witnesses, INTERIOR_MARGIN)


def check_sharpness(pp: ParamPair, ep: ExponentPair, threshold_form: str = "beta",
                    grid: GridSpec = DEFAULT_GRID,
                    cfg: SeriesConfig = DEFAULT_SERIES) -> CheckResult:
    """Supremum characterization of the threshold: at the candidate shift
    the strict inequality F_c < F_d holds grid-wide (tested on the
    difference quotient, whose margin stays scale-uniform where the raw
    gap collapses like w^2), while nudging the shift up by 1e-3 and 1e-2
    (clipped below 0; fallback: halfway to 0) produces a sign change.
    Run with threshold_form="alpha" this check uses the rejected variant
    constant and is expected to fail."""
    if threshold_form not in ("beta", "alpha"):
        raise DomainError(f"threshold_form must be beta|alpha, got {threshold_form!r}")
    params = {"a": pp.a, "b": pp.b, "c": ep.c_exp, "d": ep.d_exp,
              "threshold_form": threshold_form}
    skip, dp, d1 = _admissibility_gate("sharpness", params, pp, ep)
    if skip is not None:
        return skip
    cand = d1 if threshold_form == "beta" else delta1_alpha_variant(pp, ep)

    witnesses = []
    margin = math.inf

    xs = [float(x) for x in make_grid(grid)]
    quots = [G_value(pp, ep, cand, x, cfg) for x in xs]
    i_min = min(range(len(quots)), key=lambda i: quots[i])
    at_margin = quots[i_min] - INTERIOR_MARGIN
    if at_margin <= 0.0:
        witnesses.append([xs[i_min], quots[i_min]])
    margin = min(margin, at_margin)

    above = []
    for eps in (1e-3, 1e-2):
        nudged = cand + eps if cand + eps < 0.0 else 0.5 * cand
        if nudged not in above:
            above.append(nudged)
    for nudged in above:
        sub = find_crossing(pp, ep, nudged, grid, cfg)
        if sub.status != "ok":
            # nudged shift fell outside (threshold, 0): counts as a failure
            # of the characterization at this form
            witnesses.append([f"no crossing range at shift {nudged!r}", 0.0])
            margin = min(margin, -1.0)
            continue
        if not sub.passed:
            witnesses.extend(sub.witnesses[:2])
        margin = min(margin, sub.worst_margin)

    return _result("sharpness", params, margin, witnesses, INTERIOR_MARGIN)


# ---------------------------------------------------------------------------
# Lemma-level checks


def isolate_roots_f4(n_scan: int = 10_000):
    """The two zeros of the case-boundary polynomial f4 on (0,1), found by
    sign scan and bisection.  Raises if the scan does not see exactly two
    sign changes."""
    xs = np.linspace(1e-4, 1.0 - 1e-4, n_scan)
    vals = np.array([f4(float(x)) for x in xs])
    signs = np.sign(vals)
    flips = [i for i in range(len(xs) - 1) if signs[i] * signs[i + 1] < 0]
    if len(flips) != 2:
        raise DomainError(f"expected exactly two sign changes of f4, saw {len(flips)}")
    roots = []
    for i in flips:
        lo, hi = float(xs[i]), float(xs[i + 1])
        flo = f4(lo)
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            fm = f4(mid)
            if fm == 0.0:
                lo = hi = mid
                break
            if (flo < 0.0) == (fm < 0.0):
                lo, flo = mid, fm
            else:
                hi = mid
            if hi - lo < 1e-16:
                break
        roots.append(0.5 * (lo + hi))
    return roots[0], roots[1]


def check_f4_roots(n_scan: int = 10_000) -> CheckResult:
    """Root isolation for f4 plus the structural facts about f5: f4 has
    exactly two zeros in (0,1) with residual <= INTERIOR_MARGIN, and f5 is
    increasing there with exactly one sign change."""
    params = {"n_scan": n_scan}
    try:
        a0, a1 = isolate_roots_f4(n_scan)
    except DomainError as exc:
        return CheckResult("f4_roots", params, False, -1.0, [[str(exc), 0.0]],
                           INTERIOR_MARGIN)
    margin = min(INTERIOR_MARGIN - abs(f4(a0)), INTERIOR_MARGIN - abs(f4(a1)))
    witnesses = [[a0, f4(a0)], [a1, f4(a1)]]

    xs = np.linspace(1e-4, 1.0 - 1e-4, 2000)
    f5_vals = [f5(float(x)) for x in xs]
    f5_flips = sum(
        1 for i in range(len(xs) - 1) if (f5_vals[i] < 0.0) != (f5_vals[i + 1] < 0.0)
    )
    f5_diff_min = min(f5_vals[i + 1] - f5_vals[i] for i in range(len(xs) - 1))
    if f5_flips != 1:
        margin = min(margin, -1.0)
        witnesses.append([f"f5 sign changes = {f5_flips}", 0.0])
    margin = min(margin, f5_diff_min)
    if f5_diff_min <= 0.0:
        witnesses.append(["f5 non-increasing somewhere", f5_diff_min])
    return _result("f4_roots", params, margin, witnesses, INTERIOR_MARGIN)


def check_lemma_g(pp: ParamPair, n: int = 256) -> CheckResult:
    """Nonnegativity of g on the closed wedge 0 <= x <= (beta+p)/k,
    -beta*x <= y <= 0 (n x n grid), the interior stationary value
    alpha*beta/((p+1)^2 - 4*alpha*beta) when the stationary point falls
    inside the wedge, and the identity between the right boundary slice
    and g1."""
    params = {"a": pp.a, "b": pp.b}
    dp = derive_params(pp)
    if condition_case(dp) is Case.INADMISSIBLE:
        return _skipped("lemma_g", params, "inadmissible parameter pair")

    xmax = (dp.beta + dp.p) / dp.k
    xs = np.linspace(0.0, xmax, n)
    ts = np.linspace(0.0, 1.0, n)
    grid_min = math.inf
    worst = [0.0, 0.0]
    for x in xs:
        ys = -dp.beta * float(x) * ts
        vals = ys * ys + ((dp.p + 1.0) * float(x) - 1.0) * ys \
            + dp.alpha * dp.beta * float(x) ** 2
        i = int(np.argmin(vals))
        if vals[i] < grid_min:
            grid_min = float(vals[i])
            worst = [float(x), float(ys[i])]
    margin = grid_min + INTERIOR_MARGIN
    witnesses = [] if margin > 0.0 else [worst]

    den = (dp.p + 1.0) ** 2 - 4.0 * dp.alpha * dp.beta
    x0, y0 = (dp.p + 1.0) / den, -2.0 * dp.alpha * dp.beta / den
    if 0.0 < x0 < xmax and -dp.beta * x0 < y0 < 0.0:
        expected = dp.alpha * dp.beta / den
        dev = abs(g(x0, y0, dp) - expected) / expected
        margin = min(margin, 1e-13 - dev, expected)
        if 1e-13 - dev <= 0.0:
            witnesses.append([x0, dev])

    ys_b = np.linspace(-dp.beta * xmax, 0.0, n)
    slice_dev = max(abs(g(xmax, float(y), dp) - g1(float(y), dp)) for y in ys_b)
    margin = min(margin, 1e-13 - slice_dev)
    if 1e-13 - slice_dev <= 0.0:
        witnesses.append(["boundary slice deviation", slice_dev])

    return _result("lemma_g", params, margin, witnesses, INTERIOR_MARGIN)


def check_lemma_g1(pp: ParamPair, n: int = 512) -> CheckResult:
    """Per-case behavior of the boundary quadratic on [-h/(alpha k), 0]:
    strictly increasing with the computed endpoint values (to 1e-10) when
    alpha >= sqrt(3)*beta, nonnegative in the remaining admissible case."""
    params = {"a": pp.a, "b": pp.b}
    dp = derive_params(pp)
    case = condition_case(dp)
    if case is Case.INADMISSIBLE:
        return _skipped("lemma_g1", params, "inadmissible parameter pair")

    lo = -dp.h / (dp.alpha * dp.k)
    ys = np.linspace(lo, 0.0, n)
    vals = [g1(float(y), dp) for y in ys]
    witnesses = []

    if case is Case.A:
        diff_min = min(vals[i + 1] - vals[i] for i in range(n - 1))
        end_lo = dp.beta ** 2 * dp.p * (dp.p + dp.beta) / dp.k ** 2
        end_hi = dp.h * (dp.p + dp.beta) / dp.k ** 2
        err = max(abs(vals[0] - end_lo), abs(vals[-1] - end_hi))
        margin = min(diff_min, 1e-10 - err)
        if diff_min <= 0.0:
            witnesses.append(["non-increasing step", diff_min])
        if 1e-10 - err <= 0.0:
            witnesses.append(["endpoint deviation", err])
        return _result("lemma_g1", params, margin, witnesses, 1e-10)

    i_min = min(range(n), key=lambda i: vals[i])
    margin = vals[i_min] + INTERIOR_MARGIN
    if margin <= 0.0:
        witnesses.append([float(ys[i_min]), vals[i_min]])
    return _result("lemma_g1", params, margin, witnesses, INTERIOR_MARGIN)


def check_lemma_Q(pp: ParamPair, ep: ExponentPair, delta: float,
                  N: int = 200) -> CheckResult:
    """Tail behavior of the coefficient sequence: Q strictly decreasing on
    1..N, Q(N) < Q(1), eventual Q < -1 (horizon doubled up to 64N), and
    the first-difference identity against Q1 to 1e-10 for n = 1..50."""
    params = _theorem_params(pp, ep, delta)
    params["N"] = N
    skip, dp, d1 = _admissibility_gate("lemma_Q", params, pp, ep)
    if skip is not None:
        return skip
    if not (pp.a - 1.0 < delta <= d1):
        return _skipped("lemma_Q", params, "shift outside monotone range")

    qs = [Q(n, pp, ep, delta) for n in range(1, N + 1)]
    witnesses = []
    diff_max = -math.inf
    for i in range(N - 1):
        d = qs[i + 1] - qs[i]
        if d > diff_max:
            diff_max = d
            worst = [float(i + 1), d]
    margin = -diff_max
    if margin <= 0.0:
        witnesses.append(worst)
    margin = min(margin, qs[0] - qs[-1])

    horizon = N
    trend_ok = False
    for _ in range(7):
        if Q(horizon, pp, ep, delta) < -1.0:
            trend_ok = True
            break
        horizon *= 2
    if not trend_ok:
        margin = min(margin, -1.0)
        witnesses.append([f"Q({horizon}) still >= -1", Q(horizon // 2, pp, ep, delta)])

    u, v = pp.a - delta, pp.b + delta
    a, b = pp.a, pp.b
    ident_margin = math.inf
    for n in range(1, 51):
        lhs = qs[n] - qs[n - 1] if n < N else Q(n + 1, pp, ep, delta) - Q(n, pp, ep, delta)
        factor = math.exp(
            ln_gamma(n + u - 1.0) + ln_gamma(n + v)
            - ln_gamma(n + a) - ln_gamma(b + n + 1.0)
        )
        rhs = factor * Q1(n, pp, ep, delta)
        dev = abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))
        ident_margin = min(ident_margin, 1e-10 - dev)
        if 1e-10 - dev <= 0.0:
            witnesses.append([f"identity at n={n}", dev])
    margin = min(margin, ident_margin)

    return _result("lemma_Q", params, margin, witnesses, 1e-10)


def check_beta_convex(pp: ParamPair, n: int = 200) -> CheckResult:
    """x -> B(a-x, b+x) on (0,a) for a <= b: strictly increasing and
    strictly convex (first and second differences positive)."""
    params = {"a": pp.a, "b": pp.b}
    if pp.a > pp.b:
        return _skipped("beta_convex", params, "requires a <= b")
    a, b = pp.a, pp.b
    xs = np.linspace(a / n, a - a / n, n)
    vals = [beta_fn(a - float(x), b + float(x)) for x in xs]
    d1s = [vals[i + 1] - vals[i] for i in range(n - 1)]
    d2s = [d1s[i + 1] - d1s[i] for i in range(n - 2)]
    margin = min(min(d1s), min(d2s))
    witnesses = []
    if margin <= 0.0:
        i = min(range(n - 1), key=lambda i: d1s[i])
        witnesses.append([float(xs[i]), d1s[i]])
    return _result("beta_convex", params, margin, witnesses, 0.0)


def check_fpp_positive(pp: ParamPair, ep: ExponentPair, delta: float,
                       n: int = 48, step: float = 1e-4,
                       cfg: SeriesConfig = DEFAULT_SERIES) -> CheckResult:
    """Convexity of the difference along the c-argument: with
    t(x) = 1-(1-x)^(d/c), second centered differences of
    f(x) = F(a-1-delta, b+delta; p; t(x)) - F(a-1, b; p; x) must exceed
    -1e-6 on an interior grid."""
    params = _theorem_params(pp, ep, delta)
    skip, dp, d1 = _admissibility_gate("fpp_positive", params, pp, ep)
    if skip is not None:
        return skip
    if not (pp.a - 1.0 < delta <= d1):
        return _skipped("fpp_positive", params, "shift outside monotone range")

    a, b = pp.a, pp.b
    p = a + b
    u, v = a - delta, b + delta
    dc = ep.d_exp / ep.c_exp

    def diff_at(x):
        t = -math.expm1(dc * math.log1p(-x))
        return hyp2f1(u - 1.0, v, p, t, cfg) - hyp2f1(a - 1.0, b, p, x, cfg)

    xs = np.linspace(0.01, 0.95, n)
    margin = math.inf
    witnesses = []
    for x in xs:
        x = float(x)
        second = (diff_at(x - step) - 2.0 * diff_at(x) + diff_at(x + step)) / step**2
        m = second + 1e-6
        if m < margin:
            margin = m
            worst = [x, second]
    if margin <= 0.0:
        witnesses.append(worst)
    return _result("fpp_positive", params, margin, witnesses, 1e-6)


# ---------------------------------------------------------------------------
# Suite assembly


@dataclass(frozen=True)
class VerifyConfig:
    """Everything a suite run depends on.  b_specs entries may be numbers
    or the token "1-a"; ratio_specs entries numbers or "bound" (the pair's
    own admissible limit, taken exactly via (c,d) = (ratio_bound, 1))."""

    grid: GridSpec = DEFAULT_GRID
    series: SeriesConfig = DEFAULT_SERIES
    a_values: tuple = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
    b_specs: tuple = ("1-a", 1.0, 1.5, 3.0)
    ratio_specs: tuple = (0.3, 0.6, 2.0 / 3.0, "bound")
    d_exp: float = 3.0
    threshold_form: str = "beta"
    workers: int | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.threshold_form not in ("beta", "alpha"):
            raise DomainError(
                f"threshold_form must be beta|alpha, got {self.threshold_form!r}"
            )
        if not (self.d_exp > 0.0):
            raise DomainError(f"d_exp must be positive, got {self.d_exp!r}")
        if self.workers is not None and self.workers < 1:
            raise DomainError(f"workers must be >= 1, got {self.workers!r}")


DEFAULT_CONFIG = VerifyConfig()


def _resolve_pairs(config):
    pairs = []
    for a in config.a_values:
        for spec in config.b_specs:
            b = 1.0 - a if spec == "1-a" else float(spec)
            pp = ParamPair(float(a), b)
            if pp not in pairs:
                pairs.append(pp)
    return pairs


def _resolve_exponents(config, dp):
    """Admissible (ratio, ExponentPair) list for one pair, in config order."""
    eps = []
    seen = set()
    for spec in config.ratio_specs:
        if spec == "bound":
            r, ep = dp.ratio_bound, ExponentPair(dp.ratio_bound, 1.0)
        else:
            r = float(spec)
            ep = ExponentPair(r * config.d_exp, config.d_exp)
            r = ep.ratio
        if r in seen or not (0.0 < r <= dp.ratio_bound):
            continue
        seen.add(r)
        eps.append(ep)
    return eps


def _monotone_shifts(pp, d1):
    left = pp.a - 1.0 + 1e-3
    shifts = [left, 0.5 * (pp.a - 1.0 + d1), d1]
    out = []
    for s in shifts:
        if pp.a - 1.0 < s <= d1 and s not in out:
            out.append(s)
    return out


def _crossing_shifts(d1):
    shifts = []
    for cand in (0.5 * d1, d1 + 1e-2 if d1 + 1e-2 < 0.0 else 0.5 * d1):
        if cand not in shifts:
            shifts.append(cand)
    return shifts


def build_tasks(config: VerifyConfig):
    """Deterministic task list (check_id, params) covering the configured
    sample: per pair the lemma checks, per admissible (pair, ratio) the
    theorem checks at the standard shift sets, plus one global root check."""
    tasks = [("f4_roots", {"n_scan": 10_000})]
    for pp in _resolve_pairs(config):
        dp = derive_params(pp)
        if condition_case(dp) is Case.INADMISSIBLE:
            continue
        base = {"a": pp.a, "b": pp.b}
        tasks.append(("beta_convex", dict(base)))
        tasks.append(("lemma_g", dict(base)))
        tasks.append(("lemma_g1", dict(base)))
        for ep in _resolve_exponents(config, dp):
            d1 = delta1(pp, ep)
            for delta in _monotone_shifts(pp, d1):
                t = _theorem_params(pp, ep, delta)
                tasks.append(("G_monotone", dict(t)))
                tasks.append(("sandwich", dict(t)))
                tasks.append(("fpp_positive", dict(t)))
                tq = dict(t)
                tq["N"] = 200
                tasks.append(("lemma_Q", tq))
            for delta in _crossing_shifts(d1):
                tasks.append(("crossing", _theorem_params(pp, ep, delta)))
            tasks.append(("crossing_control", _theorem_params(pp, ep, d1 - 1e-6)))
            sharp = {"a": pp.a, "b": pp.b, "c": ep.c_exp, "d": ep.d_exp,
                     "threshold_form": config.threshold_form}
            tasks.append(("sharpness", sharp))
    return tasks


def _execute_task(arg):
    kind, params, config = arg
    grid, cfg = config.grid, config.series
    if kind == "f4_roots":
        return check_f4_roots(params["n_scan"])
    pp = ParamPair(params["a"], params["b"])
    if kind == "beta_convex":
        return check_beta_convex(pp)
    if kind == "lemma_g":
        return check_lemma_g(pp)
    if kind == "lemma_g1":
        return check_lemma_g1(pp)
    ep = ExponentPair(params["c"], params["d"])
    if kind == "G_monotone":
        return check_G_monotone(pp, ep, params["delta"], grid, cfg)
    if kind == "sandwich":
        return check_sandwich(pp, ep, params["delta"], grid, cfg)
    if kind == "fpp_positive":
        return check_fpp_positive(pp, ep, params["delta"], cfg=cfg)
    if kind == "lemma_Q":
        return check_lemma_Q(pp, ep, params["delta"], params["N"])
    if kind == "crossing":
        return find_crossing(pp, ep, params["delta"], grid, cfg)
    if kind == "crossing_control":
        return check_crossing_control(pp, ep, params["delta"], grid, cfg)
    if kind == "sharpness":
        return check_sharpness(pp, ep, params["threshold_form"], grid, cfg)
    raise DomainError(f"unknown check id {kind!r}")


def _suite_meta(config: VerifyConfig) -> dict:
    return {
        "sample": {
            "a_values": list(config.a_values),
            "b_specs": [str(s) if isinstance(s, str) else float(s)
                        for s in config.b_specs],
            "ratio_specs": [str(s) if isinstance(s, str) else float(s)
                            for s in config.ratio_specs],
            "d_exp": config.d_exp,
            "threshold_form": config.threshold_form,
        },
        "grid": {
            "n_points": config.grid.n_points,
            "x_lo": config.grid.x_lo,
            "x_hi": config.grid.x_hi,
            "spacing": config.grid.spacing,
        },
        "tolerances": {
            "series_rel_tol": config.series.rel_tol,
            "interior_margin": INTERIOR_MARGIN,
            "monotone_slack": MONOTONE_SLACK,
            "endpoint_tol": ENDPOINT_TOL,
        },
        "seed": config.seed,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def _run_tasks(tasks, config):
    args = [(kind, params, config) for kind, params in tasks]
    workers = config.workers
    if workers is None:
        workers = os.cpu_count() or 1
    if workers == 1 or len(args) < 2:
        return [_execute_task(a) for a in args]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        chunk = max(1, len(args) // (4 * workers))
        return list(pool.map(_execute_task, args, chunksize=chunk))


def run_suite(config: VerifyConfig = DEFAULT_CONFIG) -> Report:
    """Run every check over the configured sample.  The report is
    byte-identical across worker counts (modulo the timestamp): results
    are merged in canonical (check_id, params) order and each task is
    computed independently."""
    results = _run_tasks(build_tasks(config), config)
    return _build_report(_suite_meta(config), results)


def run_check(check_id: str, config: VerifyConfig = DEFAULT_CONFIG) -> Report:
    """Run only the named check across the sample."""
    if check_id not in CHECK_IDS:
        raise DomainError(
            f"unknown check id {check_id!r}; known: {', '.join(CHECK_IDS)}"
        )
    tasks = [t for t in build_tasks(config) if t[0] == check_id]
    results = _run_tasks(tasks, config)
    meta = _suite_meta(config)
    meta["check_filter"] = check_id
    return _build_report(meta, results)


def sweep_rows(pp: ParamPair, ep: ExponentPair, delta: float,
               grid: GridSpec = DEFAULT_GRID,
               cfg: SeriesConfig = DEFAULT_SERIES):
    """Per-abscissa data for plotting/re-checking: yields tuples matching
    the CSV header a,b,c,d,delta,x,G,F_c,F_d,lower_env,upper_env."""
    lo_const = c1(pp, ep, delta)
    hi_const = c2(pp, delta)
    for x in make_grid(grid):
        x = float(x)
        f_c, f_d, w_c = _pair_values(pp, ep, delta, x, cfg)
        yield (pp.a, pp.b, ep.c_exp, ep.d_exp, delta, x,
               (f_d - f_c) / w_c, f_c, f_d,
               f_c + lo_const * w_c, f_c + hi_const * w_c)


SWEEP_HEADER = "a,b,c,d,delta,x,G,F_c,F_d,lower_env,upper_env"


__all__ = [
    "INTERIOR_MARGIN",
    "MONOTONE_SLACK",
    "ENDPOINT_TOL",
    "CHECK_IDS",
    "GridSpec",
    "DEFAULT_GRID",
    "make_grid",
    "CheckResult",
    "Report",
    "G_value",
    "check_G_monotone",
    "check_sandwich",
    "find_crossing",
    "check_crossing_control",
    "check_sharpness",
    "isolate_roots_f4",
    "check_f4_roots",
    "check_lemma_g",
    "check_lemma_g1",
    "check_lemma_Q",
    "check_beta_convex",
    "check_fpp_positive",
    "VerifyConfig",
    "DEFAULT_CONFIG",
    "build_tasks",
    "run_suite",
    "run_check",
    "sweep_rows",
    "SWEEP_HEADER",
]
