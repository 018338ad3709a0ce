"""Closed-form estimators for the Dirichlet concentration vector.

Three procedures, all cheap enough to refit inside a per-draw backtest
loop:

* ``estimate_mle``: closed-form maximum likelihood.  Per-category shares
  are the column means; the total mass divides a constant involving the
  Euler-Mascheroni constant by a log-dispersion term of the entries.
* ``estimate_mom``: method of moments, the plain column mean.
* ``estimate_main_diagonal``: the diagonal of the most recent square
  window of the matrix (the freshest K draws).

The MLE total-mass formula takes logs of every matrix entry and is
therefore undefined whenever any entry is zero, which is always the case
for 0/1 indicator matrices.  ``smoothing`` adds a uniform offset first
for opt-in use on such data; the default of 0 errors instead of silently
adjusting.

The moment and diagonal estimators can legitimately return zero entries.
Density code downstream rejects those while the predictive expectation
accepts them, so ``EstimatorConfig.positivity_floor`` offers an explicit
lift of exact zeros rather than a hidden one.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .distributions import CountMatrix

__all__ = [
    "EULER_MASCHERONI",
    "EstimationError",
    "ZeroEntryError",
    "DegenerateDataError",
    "NonPositiveAlphaError",
    "InsufficientRowsError",
    "EstimatorKind",
    "EstimatorConfig",
    "estimate_mle",
    "estimate_mom",
    "estimate_main_diagonal",
    "estimate_alpha",
    "mle_alpha_from_stats",
    "apply_positivity_floor",
]

# Used at exactly this printed precision so results are reproducible digit
# for digit; extra decimals would change the estimates.
EULER_MASCHERONI = 0.57721566490


class EstimationError(ValueError):
    """Base class for estimator failures."""


class ZeroEntryError(EstimationError):
    """A matrix entry is zero where its log is required."""


class DegenerateDataError(EstimationError):
    """The total-mass denominator vanished (every column is constant)."""


class NonPositiveAlphaError(EstimationError):
    """The estimate is not a valid concentration vector."""


class InsufficientRowsError(EstimationError):
    """Fewer rows than categories, so no trailing square window exists."""


class EstimatorKind(Enum):
    MLE = "mle"
    MOM = "mm"
    MAIN_DIAGONAL = "md"


def _counts_of(matrix) -> np.ndarray:
    """Accept a CountMatrix or any nonnegative integer matrix.

    The estimator formulas do not need the constant-row-sum property that
    draw histories guarantee, so plain arrays are fine here.
    """
    if isinstance(matrix, CountMatrix):
        return matrix.counts
    arr = np.asarray(matrix)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 2:
        raise ValueError(f"need an n-by-K count matrix with n >= 1, K >= 2, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        rounded = np.rint(arr)
        if not np.array_equal(arr, rounded):
            raise ValueError("counts must hold integers")
        arr = rounded
    arr = arr.astype(np.int64)
    if np.any(arr < 0):
        raise ValueError("counts must be nonnegative")
    return arr


@dataclass(frozen=True)
class EstimatorConfig:
    """An estimator choice plus its knobs."""

    kind: EstimatorKind
    mle_smoothing: float = 0.0
    positivity_floor: float = 0.0

    def __post_init__(self) -> None:
        if self.mle_smoothing < 0:
            raise ValueError("mle_smoothing must be nonnegative")
        if self.positivity_floor < 0:
            raise ValueError("positivity_floor must be nonnegative")


def mle_alpha_from_stats(rows: int, col_means: np.ndarray, col_log_sums: np.ndarray) -> np.ndarray:
    """Closed-form MLE from sufficient statistics of the (smoothed) matrix.

    ``col_means`` are the per-category means f_j, ``col_log_sums`` the
    per-category sums of entry logs.  Shared by the matrix-level estimator
    and the rolling backtest loop so the arithmetic exists once.
    """
    f = np.asarray(col_means, dtype=np.float64)
    logs = np.asarray(col_log_sums, dtype=np.float64)
    k = f.size
    # 0 ln 0 = 0 by convention.
    f_log_f = np.where(f > 0.0, f * np.log(np.where(f > 0.0, f, 1.0)), 0.0)
    denominator = rows * float(f_log_f.sum()) - float((f * logs).sum())
    if denominator == 0.0:
        raise DegenerateDataError("total-mass denominator is zero (all columns constant)")
    alpha0 = rows * (k - 1) * EULER_MASCHERONI / denominator
    if alpha0 <= 0.0:
        raise NonPositiveAlphaError(f"estimated total mass {alpha0:.6g} is not positive")
    return alpha0 * f


def estimate_mle(matrix, smoothing: float = 0.0) -> np.ndarray:
    """Closed-form maximum likelihood estimate of the concentration vector."""
    if smoothing < 0:
        raise ValueError("smoothing must be nonnegative")
    counts = _counts_of(matrix)
    smoothed = counts + float(smoothing)
    if np.any(smoothed == 0.0):
        raise ZeroEntryError(
            "matrix has zero entries after smoothing; the total-mass formula takes logs of every entry"
        )
    col_log_sums = np.log(smoothed).sum(axis=0)
    col_means = smoothed.mean(axis=0)
    return mle_alpha_from_stats(counts.shape[0], col_means, col_log_sums)


def estimate_mom(matrix) -> np.ndarray:
    """Method-of-moments estimate: the per-category column mean."""
    counts = _counts_of(matrix)
    return counts.sum(axis=0) / counts.shape[0]


def estimate_main_diagonal(matrix) -> np.ndarray:
    """Main diagonal of the trailing square window (the most recent K draws)."""
    counts = _counts_of(matrix)
    n, k = counts.shape
    if n < k:
        raise InsufficientRowsError(f"need at least {k} rows for a trailing {k}x{k} window, got {n}")
    return np.diagonal(counts[n - k:]).astype(np.float64)


def apply_positivity_floor(alpha: np.ndarray, floor: float) -> np.ndarray:
    """Lift exact zeros to ``floor``; positive entries are never touched."""
    if floor <= 0:
        return alpha
    return np.where(alpha == 0.0, floor, alpha)


def estimate_alpha(matrix, config: EstimatorConfig) -> np.ndarray:
    """Dispatch to the configured estimator and apply the positivity floor."""
    if config.kind is EstimatorKind.MLE:
        alpha = estimate_mle(matrix, config.mle_smoothing)
    elif config.kind is EstimatorKind.MOM:
        alpha = estimate_mom(matrix)
    else:
        alpha = estimate_main_diagonal(matrix)
    return apply_positivity_floor(alpha, config.positivity_floor)
