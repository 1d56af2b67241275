"""Regression of complexity on utterance position, and what the slopes mean.

Per role, complexity is regressed on position with a per-dialogue random
intercept (REML over the variance ratio, generalized least squares for the
coefficients) or with plain least squares. Slope signs and significance
then classify the dialogue pattern, and dialogue-level bootstrap
resampling yields confidence bands around position-binned means.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize
from scipy import stats as scipy_stats

from .complexity import ComplexityRecord

CONVERGENCE_LABELS = ("convergent", "divergent", "parallel_increase",
                      "parallel_decrease", "follower_rising", "inconclusive")

RESULTS_COLUMNS = ("role", "method", "slope", "se", "p", "stars",
                   "sigma_u2", "sigma_e2", "n_obs", "n_groups")
BANDS_COLUMNS = ("role", "bin", "mean", "lo", "hi", "n")

# follower slope must exceed this multiple of the initiator slope before a
# joint increase counts as the follower catching up
FOLLOWER_RISING_RATIO = 10.0


class DegenerateDesignError(Exception):
    """The data cannot identify the requested regression."""


@dataclass(frozen=True, slots=True)
class RegressionResult:
    slope: float
    intercept: float
    slope_se: float
    p_value: float
    sigma_u2: float
    sigma_e2: float
    n_obs: int
    n_groups: int
    method: str
    warnings: tuple[str, ...] = ()
    quad_coef: float | None = None

    @property
    def stars(self) -> str:
        return significance_stars(self.p_value)


@dataclass(frozen=True, slots=True)
class ConvergenceLabel:
    """Joint reading of the two per-role regressions."""

    label: str
    initiator: RegressionResult
    follower: RegressionResult
    alpha: float


@dataclass(frozen=True, slots=True)
class BootstrapBand:
    bin: int
    mean_sc: float
    ci_low: float
    ci_high: float
    n_dialogues: int


def significance_stars(p: float) -> str:
    """Conventional significance stars; empty below one star."""
    if p < 0.001:
        return "***"
    if p < 0.01:
        return "**"
    if p < 0.05:
        return "*"
    return ""


def _design(records: list[ComplexityRecord] | tuple[ComplexityRecord, ...],
            use_normalized: bool) -> tuple[np.ndarray, np.ndarray, list[str]]:
    if use_normalized:
        x = np.array([r.position_norm for r in records], dtype=float)
    else:
        x = np.array([r.position for r in records], dtype=float)
    y = np.array([r.sc for r in records], dtype=float)
    groups = [r.dialogue_id for r in records]
    return x, y, groups


def fit_ols(records: list[ComplexityRecord] | tuple[ComplexityRecord, ...],
            use_normalized: bool = False,
            quadratic: bool = False) -> RegressionResult:
    """Least squares of complexity on position, closed form.

    Two-sided t-test on the position coefficient. With `quadratic`, a
    squared-position term is added and reported as quad_coef.
    """
    x, y, groups = _design(records, use_normalized)
    n = len(x)
    if n < 3:
        raise DegenerateDesignError(f"need at least 3 observations, got {n}")
    if np.ptp(x) == 0:
        raise DegenerateDesignError("utterance position is constant")
    n_groups = len(set(groups))
    if np.ptp(y) == 0:
        return RegressionResult(
            slope=0.0, intercept=float(y[0]), slope_se=0.0, p_value=1.0,
            sigma_u2=0.0, sigma_e2=0.0, n_obs=n, n_groups=n_groups,
            method="ols", warnings=("response is constant",),
            quad_coef=0.0 if quadratic else None)
    if quadratic:
        return _ols_quadratic(x, y, n, n_groups)
    xbar = x.mean()
    ybar = y.mean()
    sxx = float(np.sum((x - xbar) ** 2))
    slope = float(np.sum((x - xbar) * (y - ybar)) / sxx)
    intercept = ybar - slope * xbar
    resid = y - intercept - slope * x
    df = n - 2
    sigma_e2 = float(resid @ resid) / df
    se = math.sqrt(sigma_e2 / sxx)
    if se == 0:
        p = 1.0
    else:
        p = 2.0 * float(scipy_stats.t.sf(abs(slope / se), df))
    return RegressionResult(slope=slope, intercept=float(intercept),
                            slope_se=se, p_value=p, sigma_u2=0.0,
                            sigma_e2=sigma_e2, n_obs=n, n_groups=n_groups,
                            method="ols")


def _ols_quadratic(x: np.ndarray, y: np.ndarray, n: int,
                   n_groups: int) -> RegressionResult:
    if n < 4 or len(np.unique(x)) < 3:
        raise DegenerateDesignError("quadratic fit needs >= 4 observations and >= 3 distinct positions")
    design = np.column_stack([np.ones(n), x, x * x])
    coef, _, _, _ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    df = n - 3
    sigma_e2 = float(resid @ resid) / df
    cov = sigma_e2 * np.linalg.inv(design.T @ design)
    se = math.sqrt(float(cov[1, 1]))
    if se == 0:
        p = 1.0
    else:
        p = 2.0 * float(scipy_stats.t.sf(abs(coef[1] / se), df))
    return RegressionResult(slope=float(coef[1]), intercept=float(coef[0]),
                            slope_se=se, p_value=p, sigma_u2=0.0,
                            sigma_e2=sigma_e2, n_obs=n, n_groups=n_groups,
                            method="ols", quad_coef=float(coef[2]))


def fit_lmm(records: list[ComplexityRecord] | tuple[ComplexityRecord, ...],
            use_normalized: bool = False,
            theta: float | None = None) -> RegressionResult:
    """Random-intercept model: complexity ~ position + (1 | dialogue).

    The variance ratio theta = sigma_u^2 / sigma_e^2 is profiled out and
    estimated by restricted maximum likelihood (grid scan plus bounded
    refinement); coefficients come from generalized least squares at the
    chosen ratio. Passing `theta` pins the ratio instead of estimating it
    (theta=0 reproduces plain least squares). The slope p-value is a
    two-sided Wald test on the normal scale. A single-dialogue input falls
    back to fit_ols, flagged in warnings.
    """
    x, y, groups = _design(records, use_normalized)
    n = len(x)
    if n < 3:
        raise DegenerateDesignError(f"need at least 3 observations, got {n}")
    if np.ptp(x) == 0:
        raise DegenerateDesignError("utterance position is constant")
    n_groups = len(set(groups))
    if n_groups < 2:
        base = fit_ols(records, use_normalized=use_normalized)
        return RegressionResult(
            slope=base.slope, intercept=base.intercept, slope_se=base.slope_se,
            p_value=base.p_value, sigma_u2=0.0, sigma_e2=base.sigma_e2,
            n_obs=base.n_obs, n_groups=n_groups, method="ols",
            warnings=base.warnings + ("single dialogue; fell back to ordinary least squares",))
    if np.ptp(y) == 0:
        return RegressionResult(
            slope=0.0, intercept=float(y[0]), slope_se=0.0, p_value=1.0,
            sigma_u2=0.0, sigma_e2=0.0, n_obs=n, n_groups=n_groups,
            method="lmm", warnings=("response is constant",))

    suff = _group_sufficient_stats(x, y, groups)
    if theta is None:
        theta_hat = _reml_theta(suff, n)
    else:
        if theta < 0:
            raise ValueError(f"theta must be non-negative, got {theta}")
        theta_hat = float(theta)
    beta, cov_unscaled, rvr = _gls_at(suff, theta_hat)
    df = n - 2
    sigma_e2 = rvr / df
    sigma_u2 = theta_hat * sigma_e2
    se = math.sqrt(sigma_e2 * cov_unscaled[1, 1])
    if se == 0:
        p = 1.0
    else:
        p = 2.0 * float(scipy_stats.norm.sf(abs(beta[1] / se)))
    return RegressionResult(slope=float(beta[1]), intercept=float(beta[0]),
                            slope_se=se, p_value=p, sigma_u2=float(sigma_u2),
                            sigma_e2=float(sigma_e2), n_obs=n,
                            n_groups=n_groups, method="lmm")


@dataclass(frozen=True, slots=True)
class _GroupStats:
    """Per-dialogue sums that make each variance-ratio evaluation O(groups)."""

    n: np.ndarray      # observations per group
    sx: np.ndarray     # sum of x
    sxx: np.ndarray    # sum of x^2
    sy: np.ndarray     # sum of y
    sxy: np.ndarray    # sum of x*y
    syy: np.ndarray    # sum of y^2


def _group_sufficient_stats(x: np.ndarray, y: np.ndarray,
                            groups: list[str]) -> _GroupStats:
    order = sorted(set(groups))
    index = {g: i for i, g in enumerate(order)}
    g = len(order)
    out = {name: np.zeros(g) for name in ("n", "sx", "sxx", "sy", "sxy", "syy")}
    for xi, yi, gi in zip(x, y, groups):
        i = index[gi]
        out["n"][i] += 1.0
        out["sx"][i] += xi
        out["sxx"][i] += xi * xi
        out["sy"][i] += yi
        out["sxy"][i] += xi * yi
        out["syy"][i] += yi * yi
    return _GroupStats(**out)


def _gls_at(s: _GroupStats, theta: float) -> tuple[np.ndarray, np.ndarray, float]:
    """GLS solve at a fixed variance ratio.

    Within a dialogue of size m, the correlation structure inverts in
    closed form: inverse = identity minus c times the all-ones matrix with
    c = theta / (1 + theta*m). Returns (beta, unscaled covariance, weighted
    residual sum of squares).
    """
    c = theta / (1.0 + theta * s.n)
    a11 = float(np.sum(s.n - c * s.n * s.n))
    a12 = float(np.sum(s.sx - c * s.n * s.sx))
    a22 = float(np.sum(s.sxx - c * s.sx * s.sx))
    b1 = float(np.sum(s.sy - c * s.n * s.sy))
    b2 = float(np.sum(s.sxy - c * s.sx * s.sy))
    q = float(np.sum(s.syy - c * s.sy * s.sy))
    a = np.array([[a11, a12], [a12, a22]])
    b = np.array([b1, b2])
    beta = np.linalg.solve(a, b)
    rvr = q - float(beta @ b)
    return beta, np.linalg.inv(a), rvr


def _reml_criterion(s: _GroupStats, theta: float, n: int) -> float:
    c = theta / (1.0 + theta * s.n)
    a11 = float(np.sum(s.n - c * s.n * s.n))
    a12 = float(np.sum(s.sx - c * s.n * s.sx))
    a22 = float(np.sum(s.sxx - c * s.sx * s.sx))
    b1 = float(np.sum(s.sy - c * s.n * s.sy))
    b2 = float(np.sum(s.sxy - c * s.sx * s.sy))
    q = float(np.sum(s.syy - c * s.sy * s.sy))
    det_a = a11 * a22 - a12 * a12
    if det_a <= 0:
        return math.inf
    # solve the 2x2 system by hand; cheap inside the optimizer loop
    beta0 = (a22 * b1 - a12 * b2) / det_a
    beta1 = (a11 * b2 - a12 * b1) / det_a
    rvr = q - (beta0 * b1 + beta1 * b2)
    if rvr <= 0:
        return math.inf
    logdet_v = float(np.sum(np.log1p(theta * s.n)))
    return (n - 2) * math.log(rvr) + logdet_v + math.log(det_a)


def _reml_theta(s: _GroupStats, n: int) -> float:
    grid = np.concatenate([[0.0], np.logspace(-8, 6, 57)])
    crits = [_reml_criterion(s, t, n) for t in grid]
    best = int(np.argmin(crits))
    lo = grid[best - 1] if best > 0 else 0.0
    hi = grid[best + 1] if best + 1 < len(grid) else grid[-1] * 10.0
    if hi <= lo:
        return float(grid[best])
    res = optimize.minimize_scalar(lambda t: _reml_criterion(s, t, n),
                                   bounds=(lo, hi), method="bounded",
                                   options={"xatol": 1e-10})
    if res.success and res.fun <= crits[best]:
        return float(res.x)
    return float(grid[best])


def classify_convergence(initiator: RegressionResult,
                         follower: RegressionResult,
                         alpha: float = 0.05) -> ConvergenceLabel:
    """Read the two slopes jointly.

    Opposite significant slopes mean the parties move toward (initiator
    down, follower up) or away from each other; same-sign significant
    slopes are parallel drift, except that a shared increase where the
    follower's slope dwarfs the initiator's is the follower catching up.
    Anything not significant on both sides is inconclusive.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    sig = initiator.p_value < alpha and follower.p_value < alpha
    si = initiator.slope
    sf = follower.slope
    label = "inconclusive"
    if sig:
        if si < 0 < sf:
            label = "convergent"
        elif sf < 0 < si:
            label = "divergent"
        elif si > 0 and sf > 0:
            if sf > FOLLOWER_RISING_RATIO * si:
                label = "follower_rising"
            else:
                label = "parallel_increase"
        elif si < 0 and sf < 0:
            label = "parallel_decrease"
    return ConvergenceLabel(label=label, initiator=initiator,
                            follower=follower, alpha=alpha)


def position_bin(position_norm: float, n_bins: int) -> int:
    """Equal-width bin (1..n_bins) for a normalized position in (0, 1]."""
    # the tiny slack keeps k/n boundaries in their mathematical bin despite
    # binary rounding of the division
    return max(1, math.ceil(position_norm * n_bins - 1e-9))


def bootstrap_bands(records: list[ComplexityRecord] | tuple[ComplexityRecord, ...],
                    n_bins: int = 10, n_resamples: int = 1000,
                    seed: int = 0) -> list[BootstrapBand]:
    """Percentile confidence bands for position-binned mean complexity.

    Whole dialogues are resampled with replacement (utterance-level
    resampling would ignore within-dialogue correlation). Per bin, mean_sc
    is the observed mean and the interval spans the 2.5th to 97.5th
    percentile of resampled means. Bins nobody lands in are omitted.
    Deterministic for a given seed.
    """
    if n_bins < 1:
        raise ValueError(f"n_bins must be >= 1, got {n_bins}")
    if n_resamples < 1:
        raise ValueError(f"n_resamples must be >= 1, got {n_resamples}")
    if not records:
        return []
    dialogue_ids = sorted({r.dialogue_id for r in records})
    index = {d: i for i, d in enumerate(dialogue_ids)}
    n_dial = len(dialogue_ids)

    sums = np.zeros((n_dial, n_bins))
    counts = np.zeros((n_dial, n_bins))
    for r in records:
        if not 0.0 < r.position_norm <= 1.0:
            raise ValueError(f"record has no usable normalized position: {r.position_norm}")
        b = position_bin(r.position_norm, n_bins) - 1
        i = index[r.dialogue_id]
        sums[i, b] += r.sc
        counts[i, b] += 1.0

    rng = np.random.default_rng(seed)
    draws = rng.integers(0, n_dial, size=(n_resamples, n_dial))
    # chunk the resample axis so huge runs stay within memory
    chunk = max(1, 10_000_000 // max(1, n_dial * n_bins))
    mean_rows = []
    for start in range(0, n_resamples, chunk):
        idx = draws[start:start + chunk]
        s = sums[idx].sum(axis=1)
        k = counts[idx].sum(axis=1)
        with np.errstate(invalid="ignore"):
            mean_rows.append(np.where(k > 0, s / np.where(k > 0, k, 1.0), np.nan))
    means = np.vstack(mean_rows)

    total_sum = sums.sum(axis=0)
    total_cnt = counts.sum(axis=0)
    bands = []
    for b in range(n_bins):
        if total_cnt[b] == 0:
            continue
        observed = float(total_sum[b] / total_cnt[b])
        col = means[:, b]
        col = col[~np.isnan(col)]
        if col.size == 0:
            lo = hi = observed
        else:
            lo = float(np.percentile(col, 2.5))
            hi = float(np.percentile(col, 97.5))
        n_in_bin = int(np.sum(counts[:, b] > 0))
        bands.append(BootstrapBand(bin=b + 1, mean_sc=observed, ci_low=lo,
                                   ci_high=hi, n_dialogues=n_in_bin))
    return bands


def result_to_dict(result: RegressionResult) -> dict:
    """JSON-friendly view of a fit, stars included."""
    return {
        "method": result.method,
        "slope": result.slope,
        "intercept": result.intercept,
        "se": result.slope_se,
        "p": result.p_value,
        "stars": result.stars,
        "sigma_u2": result.sigma_u2,
        "sigma_e2": result.sigma_e2,
        "n_obs": result.n_obs,
        "n_groups": result.n_groups,
        "warnings": list(result.warnings),
        "quad_coef": result.quad_coef,
    }


def results_csv(rows: list[tuple[str, RegressionResult]]) -> str:
    """Fits as CSV, one row per (role, fit)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(RESULTS_COLUMNS)
    for role, r in rows:
        writer.writerow((role, r.method, repr(r.slope), repr(r.slope_se),
                         repr(r.p_value), r.stars, repr(r.sigma_u2),
                         repr(r.sigma_e2), r.n_obs, r.n_groups))
    return out.getvalue()


def bands_csv(rows: list[tuple[str, BootstrapBand]]) -> str:
    """Bands as CSV, one row per (role, bin)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(BANDS_COLUMNS)
    for role, b in rows:
        writer.writerow((role, b.bin, repr(b.mean_sc), repr(b.ci_low),
                         repr(b.ci_high), b.n_dialogues))
    return out.getvalue()


def report_json(pattern: ConvergenceLabel,
                fits: dict[str, dict[str, RegressionResult]],
                bands: dict[str, list[BootstrapBand]] | None = None) -> str:
    """Single JSON document bundling fits, the pattern label, and any bands."""
    doc: dict = {
        "alpha": pattern.alpha,
        "label": pattern.label,
        "fits": {role: {method: result_to_dict(r) for method, r in by_method.items()}
                 for role, by_method in fits.items()},
    }
    if bands is not None:
        doc["bands"] = {
            role: [{"bin": b.bin, "mean": b.mean_sc, "lo": b.ci_low,
                    "hi": b.ci_high, "n": b.n_dialogues} for b in role_bands]
            for role, role_bands in bands.items()
        }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
