"""Gauss hypergeometric evaluation and numerical certification of sharp
two-sided comparison bounds between F(a-1, b; a+b; 1-x^c) and its shifted
companion F(a-1-delta, b+delta; a+b; 1-x^d)."""

from .constants import (
    Case,
    DeltaValue,
    DerivedParams,
    ExponentPair,
    ParamPair,
    c1,
    c2,
    c3,
    c4,
    c5,
    c6,
    c7,
    c8,
    condition_case,
    delta1,
    delta1_alpha_variant,
    derive_params,
    f1,
    f2,
    f3,
    f4,
    f5,
)
from .errors import ConvergenceError, DomainError, PoleError
from .hyp2f1 import (
    DEFAULT_SERIES,
    SeriesConfig,
    elliptic_Ea,
    elliptic_Ka,
    hyp2f1,
    hyp2f1_at_one,
    hyp2f1_dx,
)
from .special import agm_elliptic_K, beta, gamma, gamma_ratio, ln_gamma
from .verifier import (
    CheckResult,
    DEFAULT_CONFIG,
    G_value,
    GridSpec,
    Report,
    VerifyConfig,
    isolate_roots_f4,
    run_check,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "Case",
    "DeltaValue",
    "DerivedParams",
    "ExponentPair",
    "ParamPair",
    "c1",
    "c2",
    "c3",
    "c4",
    "c5",
    "c6",
    "c7",
    "c8",
    "condition_case",
    "delta1",
    "delta1_alpha_variant",
    "derive_params",
    "f1",
    "f2",
    "f3",
    "f4",
    "f5",
    "ConvergenceError",
    "DomainError",
    "PoleError",
    "DEFAULT_SERIES",
    "SeriesConfig",
    "elliptic_Ea",
    "elliptic_Ka",
    "hyp2f1",
    "hyp2f1_at_one",
    "hyp2f1_dx",
    "agm_elliptic_K",
    "beta",
    "gamma",
    "gamma_ratio",
    "ln_gamma",
    "CheckResult",
    "DEFAULT_CONFIG",
    "G_value",
    "GridSpec",
    "Report",
    "VerifyConfig",
    "isolate_roots_f4",
    "run_check",
    "run_suite",
    "__version__",
]
