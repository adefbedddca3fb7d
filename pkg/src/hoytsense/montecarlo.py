"""Monte-Carlo ground truth for the analytic chain.

Simulates the detector decision statistic directly — central chi-square under
noise, noncentral chi-square via its Poisson mixture under signal — and
estimates the AUC as the pairwise rank statistic over equal-sized batches.
Nothing here touches the closed forms, the series, or the quadrature, so
agreement is evidence rather than tautology.

Reproducibility contract: every batch derives its generator from
(master_seed, batch index) through SeedSequence spawn keys, and batch results
are combined in index order with exact summation.  The estimate is therefore
bit-identical no matter how the batches would be scheduled, which the
acceptance suite checks by re-running sweeps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .detector import DetectorConfig
from .hoyt import HoytFading, sample_snr

__all__ = [
    "McConfig",
    "McEstimate",
    "batch_rng",
    "sample_statistic",
    "estimate_auc",
    "estimate_pd",
]


@dataclass(frozen=True)
class McConfig:
    """Simulation budget and seeding.

    trials below ~10_000 give standard errors too wide to validate anything;
    the constructor allows them (handy for smoke tests) but acceptance-grade
    runs should stay at the default million.
    """

    trials: int = 1_000_000
    master_seed: int = 0
    batch_size: int = 65_536

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if not (0 <= self.master_seed < 2 ** 64):
            raise ValueError("master_seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True)
class McEstimate:
    value: float
    std_error: float
    trials: int


def batch_rng(mc: McConfig, index: int) -> np.random.Generator:
    """Deterministic per-batch generator: (master_seed, batch index) -> PCG64."""
    seq = np.random.SeedSequence(entropy=mc.master_seed, spawn_key=(index,))
    return np.random.Generator(np.random.PCG64(seq))


def sample_statistic(cfg: DetectorConfig, snr: float, hypothesis: str,
                     rng: np.random.Generator,
                     size: Optional[int] = None):
    """Draw the decision statistic under H0 or H1 at a fixed SNR.

    H0: central chi-square with 2u degrees of freedom (2 * Gamma(u)).
    H1: noncentral chi-square, noncentrality 2*snr, drawn exactly through
    the Poisson mixture — K ~ Poisson(snr) extra unit-shape gamma terms —
    which is what makes fractional u work without accept/reject loops.

    Returns a scalar when size is None, else an ndarray of that length.
    """
    if snr < 0.0:
        raise ValueError(f"snr must be >= 0, got {snr}")
    if hypothesis not in ("H0", "H1"):
        raise ValueError(f"hypothesis must be 'H0' or 'H1', got {hypothesis!r}")
    n = 1 if size is None else int(size)
    if n < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    u = cfg.time_bandwidth
    if hypothesis == "H0":
        y = 2.0 * rng.standard_gamma(u, n)
    else:
        extra = rng.poisson(snr, n)
        y = 2.0 * rng.standard_gamma(u + extra)
    return float(y[0]) if size is None else y


def _batch_sizes(mc: McConfig):
    remaining = mc.trials
    while remaining > 0:
        n = min(mc.batch_size, remaining)
        remaining -= n
        yield n


def estimate_auc(cfg: DetectorConfig, channel: Union[HoytFading, float],
                 mc: McConfig) -> McEstimate:
    """Rank-statistic AUC estimate.

    channel: a HoytFading instance (a fresh SNR is drawn for every H1 trial,
    so the estimate targets the fading-averaged AUC) or a plain float (both
    statistics at that fixed SNR, targeting the instantaneous AUC).

    Each batch draws n H0 and n H1 statistics and counts, via two binary
    searches against the sorted H0 sample, how many of the n^2 cross pairs
    rank the H1 draw higher (ties count half).  Batch values are pooled with
    n^2 weights — the pair counts — in fixed batch order.  The standard
    error is the Hanley-McNeil estimate at the total trial count; batching
    leaves the leading variance term intact because the per-draw projections
    pool across batches even though cross-batch pairs are never compared.

    Draw order inside a batch is part of the reproducibility contract:
    H0 gammas, then the SNR normals (Hoyt only), then the Poisson counts,
    then the H1 gammas.  Do not reorder.
    """
    fixed_snr: Optional[float] = None
    if not isinstance(channel, HoytFading):
        fixed_snr = float(channel)
        if fixed_snr < 0.0:
            raise ValueError(f"fixed snr must be >= 0, got {channel}")
    u = cfg.time_bandwidth
    weighted = []
    weights = []
    for index, n in enumerate(_batch_sizes(mc)):
        rng = batch_rng(mc, index)
        y0 = 2.0 * rng.standard_gamma(u, n)
        if fixed_snr is None:
            snrs = sample_snr(channel, rng, n)
        else:
            snrs = np.full(n, fixed_snr)
        extra = rng.poisson(snrs)
        y1 = 2.0 * rng.standard_gamma(u + extra)
        y0_sorted = np.sort(y0)
        below = np.searchsorted(y0_sorted, y1, side="left")
        below_or_tied = np.searchsorted(y0_sorted, y1, side="right")
        wins = 0.5 * (below + below_or_tied).sum()
        pairs = float(n) * float(n)
        weighted.append(wins)          # = pairs * batch AUC
        weights.append(pairs)
    value = math.fsum(weighted) / math.fsum(weights)
    n_tot = float(mc.trials)
    pxxy = value / (2.0 - value)
    pxyy = 2.0 * value * value / (1.0 + value)
    var = (value * (1.0 - value)
           + (n_tot - 1.0) * (pxxy - value * value)
           + (n_tot - 1.0) * (pxyy - value * value)) / (n_tot * n_tot)
    return McEstimate(value, math.sqrt(max(var, 0.0)), mc.trials)


def estimate_pd(cfg: DetectorConfig, channel: Union[HoytFading, float],
                threshold: float, mc: McConfig) -> McEstimate:
    """Empirical detection probability: fraction of H1 statistics above threshold.

    Same channel convention and per-batch seeding as estimate_auc.  The
    standard error is the plain binomial one.
    """
    if threshold < 0.0:
        raise ValueError(f"threshold must be >= 0, got {threshold}")
    fixed_snr: Optional[float] = None
    if not isinstance(channel, HoytFading):
        fixed_snr = float(channel)
        if fixed_snr < 0.0:
            raise ValueError(f"fixed snr must be >= 0, got {channel}")
    u = cfg.time_bandwidth
    hits = 0
    for index, n in enumerate(_batch_sizes(mc)):
        rng = batch_rng(mc, index)
        if fixed_snr is None:
            snrs = sample_snr(channel, rng, n)
        else:
            snrs = np.full(n, fixed_snr)
        extra = rng.poisson(snrs)
        y1 = 2.0 * rng.standard_gamma(u + extra)
        hits += int((y1 > threshold).sum())
    p = hits / mc.trials
    se = math.sqrt(max(p * (1.0 - p) / mc.trials, 0.0))
    return McEstimate(p, se, mc.trials)
