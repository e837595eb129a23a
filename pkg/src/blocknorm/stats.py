"""Normalized block statistics for one and two samples.

Six statistics, all scale-free by construction:

* ``Wn`` / ``In``: the raw self-normalized sum of big-block (resp. odd
  interlaced) sums, sum(Y) / sqrt(sum(Y^2)).
* ``WnStar`` / ``InStar``: the one-sample Student t statistic of the
  block sums against a hypothesized per-observation mean mu, i.e.
  (mean(Y) - m*mu) * sqrt(k) / sd(Y).  Under independent normal block
  sums this is exactly t distributed with k-1 degrees of freedom.
* ``TnStar``: the same t statistic computed from all 2k consecutive
  batch sums, exactly t with 2k-1 degrees of freedom in the independent
  normal case.
* ``TwoSampleW``: the difference of per-block-count-scaled big-block
  sums of two independent samples over the root of the summed squared
  scales.

Every statistic raises DegenerateDenominatorError, not an infinity, when
its denominator vanishes (all block sums zero, or all equal for the
centered versions), so Monte Carlo callers can count such draws.

Series are 1-D arrays of finite floats; batches of series are 2-D with
one series per row.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blocks import (
    Batch,
    BigSmall,
    BlockScheme,
    Interlace,
    batch_partition,
    batch_sums_matrix,
    bbsb_partition,
    bigblock_sums_matrix,
    interlace_partition,
    interlace_sums_matrix,
)
from .dist import NORMAL, RefDist, student_t
from .errors import ConfigurationError, DataError, DegenerateDenominatorError

STAT_KINDS = ("Wn", "WnStar", "In", "InStar", "TnStar", "TwoSampleW")

STAT_FLAG_BY_KIND = {
    "Wn": "w",
    "WnStar": "w-star",
    "In": "i",
    "InStar": "i-star",
    "TnStar": "t-star",
    "TwoSampleW": "two-sample",
}
STAT_KIND_BY_FLAG = {flag: kind for kind, flag in STAT_FLAG_BY_KIND.items() if kind != "TwoSampleW"}


@dataclass(frozen=True)
class StatValue:
    """A computed statistic with its recommended reference distribution."""

    kind: str
    value: float
    k: int
    ref: RefDist


@dataclass(frozen=True)
class TwoSampleData:
    """Two independent samples; both must be nonempty."""

    x1: np.ndarray
    x2: np.ndarray


def _validate_series(series, name: str = "series") -> np.ndarray:
    x = np.asarray(series, dtype=float)
    if x.ndim != 1:
        raise DataError(f"{name} must be 1-D, got shape {x.shape}")
    if x.size < 1:
        raise DataError(f"{name} must be nonempty")
    if not np.isfinite(x).all():
        raise DataError(f"{name} contains non-finite values")
    return x


def _selfnorm_rows(y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """sum(Y)/sqrt(sum(Y^2)) per row, with an all-zero degeneracy mask."""
    degenerate = np.all(y == 0.0, axis=1)
    num = y.sum(axis=1)
    den = np.sqrt((y * y).sum(axis=1))
    values = np.divide(num, den, out=np.zeros_like(num), where=~degenerate)
    return values, degenerate


def _student_rows(y: np.ndarray, hyp_block_mean: float) -> tuple[np.ndarray, np.ndarray]:
    """One-sample t statistic per row of block sums; degenerate when all sums tie."""
    k = y.shape[1]
    degenerate = y.max(axis=1) == y.min(axis=1)
    sd = y.std(axis=1, ddof=1)
    num = (y.mean(axis=1) - hyp_block_mean) * np.sqrt(k)
    values = np.divide(num, sd, out=np.zeros_like(num), where=~degenerate)
    return values, degenerate


@dataclass(frozen=True)
class StatKernel:
    """Vectorized evaluator of one statistic kind for fixed (scheme, n).

    Built once per run; `values` maps a (rows, n) batch of series to the
    statistic values plus a degeneracy mask. The scalar operations below
    run through the same kernel, so batched and one-at-a-time evaluation
    agree bit for bit.
    """

    kind: str
    scheme: BlockScheme
    n: int
    n_sums: int
    block_length: int
    studentized: bool
    ref: RefDist

    def sums(self, x: np.ndarray) -> np.ndarray:
        s = self.scheme
        if isinstance(s, BigSmall):
            return bigblock_sums_matrix(x, s.m1, s.m2, self.n_sums)
        if isinstance(s, Interlace):
            return interlace_sums_matrix(x, s.m, self.n_sums)
        return batch_sums_matrix(x, s.m, self.n_sums // 2)

    def values(self, x: np.ndarray, mu0: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
        y = self.sums(x)
        if self.studentized:
            return _student_rows(y, self.block_length * mu0)
        if mu0 != 0.0:
            y = y - self.block_length * mu0
        return _selfnorm_rows(y)


def make_kernel(kind: str, scheme: BlockScheme, n: int) -> StatKernel:
    """Validate a (statistic, scheme, n) combination and build its kernel."""
    if kind in ("Wn", "WnStar"):
        if not isinstance(scheme, BigSmall):
            raise ConfigurationError(f"statistic {kind} requires the big-small scheme")
        part = bbsb_partition(n, scheme.m1, scheme.m2)
        n_sums, length = part.k, scheme.m1
    elif kind in ("In", "InStar"):
        if not isinstance(scheme, Interlace):
            raise ConfigurationError(f"statistic {kind} requires the interlace scheme")
        part = interlace_partition(n, scheme.m)
        n_sums, length = part.k, scheme.m
    elif kind == "TnStar":
        if not isinstance(scheme, Batch):
            raise ConfigurationError(f"statistic {kind} requires the batch scheme")
        part = batch_partition(n, scheme.m)
        n_sums, length = 2 * part.k, scheme.m
    else:
        raise ConfigurationError(f"unknown statistic kind {kind!r}")

    studentized = kind in ("WnStar", "InStar", "TnStar")
    if studentized:
        if n_sums < 2:
            raise ConfigurationError(f"statistic {kind} needs at least 2 block sums, got {n_sums}")
        ref = student_t(n_sums - 1)
    else:
        ref = student_t(n_sums)
    return StatKernel(
        kind=kind,
        scheme=scheme,
        n=n,
        n_sums=n_sums,
        block_length=length,
        studentized=studentized,
        ref=ref,
    )


def _scalar(kernel: StatKernel, series: np.ndarray, mu0: float) -> StatValue:
    values, degenerate = kernel.values(series[np.newaxis, :], mu0)
    if degenerate[0]:
        raise DegenerateDenominatorError(
            f"{kernel.kind}: block sums leave no spread to normalize by"
        )
    return StatValue(kind=kernel.kind, value=float(values[0]), k=kernel.n_sums, ref=kernel.ref)


def w_n(series, m1: int, m2: int) -> StatValue:
    """Self-normalized sum of the big-block sums, sum(Y)/sqrt(sum(Y^2))."""
    x = _validate_series(series)
    return _scalar(make_kernel("Wn", BigSmall(m1, m2), x.size), x, 0.0)


def w_n_star(series, m1: int, m2: int, mu: float = 0.0) -> StatValue:
    """Student t statistic of the big-block sums against block mean m1*mu."""
    x = _validate_series(series)
    return _scalar(make_kernel("WnStar", BigSmall(m1, m2), x.size), x, float(mu))


def i_n(series, m: int) -> StatValue:
    """Self-normalized sum of the odd interlaced block sums.

    Identical to w_n with m1 = m2 = m: the odd blocks of the interlacing
    scheme are exactly the big blocks of the equal-size big-small scheme.
    """
    x = _validate_series(series)
    return _scalar(make_kernel("In", Interlace(m), x.size), x, 0.0)


def i_n_star(series, m: int, mu: float = 0.0) -> StatValue:
    """Student t statistic of the odd interlaced block sums."""
    x = _validate_series(series)
    return _scalar(make_kernel("InStar", Interlace(m), x.size), x, float(mu))


def t_n_star(series, m: int) -> StatValue:
    """Student t statistic of all 2k consecutive batch sums.

    The denominator is the batch-means estimate of the long-run scale,
    so this is the batch-means studentized mean.
    """
    x = _validate_series(series)
    return _scalar(make_kernel("TnStar", Batch(m), x.size), x, 0.0)


def two_sample_w(data: TwoSampleData, m1: int, m2: int) -> StatValue:
    """Two-sample statistic comparing big-block sums of independent samples.

    Each sample l is cut by the big-small scheme into k_l big-block sums
    with sum S_l and sum of squares V_l^2; the statistic is
    (S_1/k_1 - S_2/k_2) / sqrt(V_1^2/k_1^2 + V_2^2/k_2^2).

    When sizes are driven by exponents, m1 and m2 should be computed
    from the combined length n1 + n2 (see exponents_to_sizes).
    """
    x1 = _validate_series(data.x1, "x1")
    x2 = _validate_series(data.x2, "x2")
    period = m1 + m2
    k1, k2 = x1.size // period, x2.size // period
    if k1 < 1 or k2 < 1:
        raise ConfigurationError(
            f"each sample needs at least one full block pair: k1={k1}, k2={k2}"
        )
    bbsb_partition(x1.size, m1, m2)
    bbsb_partition(x2.size, m1, m2)
    y1 = bigblock_sums_matrix(x1[np.newaxis, :], m1, m2, k1)[0]
    y2 = bigblock_sums_matrix(x2[np.newaxis, :], m1, m2, k2)[0]
    v1_sq = float((y1 * y1).sum())
    v2_sq = float((y2 * y2).sum())
    if v1_sq == 0.0 and v2_sq == 0.0:
        raise DegenerateDenominatorError("TwoSampleW: both samples have all-zero block sums")
    value = (y1.sum() / k1 - y2.sum() / k2) / np.sqrt(v1_sq / k1**2 + v2_sq / k2**2)
    k_min = min(k1, k2)
    # No finite-sample reference law is established for the two-sample
    # statistic; t(min(k)-1) is a package convention, with the normal
    # limit as fallback when that df would drop below 1.
    ref = student_t(k_min - 1) if k_min >= 2 else NORMAL
    return StatValue(kind="TwoSampleW", value=float(value), k=k_min, ref=ref)
