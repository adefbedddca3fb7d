"""Energy-detector metrics on the unfaded channel.

The decision statistic has 2u degrees of freedom with u the observation
time-bandwidth product: central chi-square under noise only, noncentral with
noncentrality 2*snr when a signal is present.  From those two distributions
follow the false-alarm and detection probabilities, and the area under the
ROC curve at a fixed SNR, which is what everything else in the package
averages over fading.

Three independent AUC routes are kept side by side on purpose: a finite
Laguerre-recurrence form for integer u, an infinite series valid for any
real u > 0, and direct quadrature of P_d against the noise-only threshold
density.  They must agree; the validation suite holds them to that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from . import specfun
from .specfun import ConvergenceError
from .quadrature import EvalPolicy, integrate_half_line

__all__ = [
    "DetectorConfig",
    "MetricValue",
    "pf",
    "pd",
    "threshold_for_pf",
    "auc_awgn",
    "auc_awgn_series",
    "auc_awgn_1f1_variant",
    "cauc_awgn",
    "auc_quadrature",
    "roc_points_awgn",
]

_INTEGER_EPS = 1e-12
_LN2 = math.log(2.0)

# Beyond these SNRs the miss probability is below ~1e-17 (the complement
# decays like exp(-snr/2) times a polynomial whose degree grows with u,
# hence the + 4u guard band) and the AUC is 1 to double precision.
_SERIES_SATURATION = 80.0
_LAGUERRE_SATURATION = 320.0

_DEFAULT_POLICY = EvalPolicy()

_METHODS = ("closed_integer", "closed_series", "quadrature", "monte_carlo")


@dataclass(frozen=True)
class DetectorConfig:
    """Receiver configuration; time_bandwidth is u = T*W of the integrator."""

    time_bandwidth: float

    def __post_init__(self) -> None:
        u = self.time_bandwidth
        if not (math.isfinite(u) and u > 0.0):
            raise ValueError(
                f"time-bandwidth product must be finite and positive, got {u!r}")

    @property
    def is_integer(self) -> bool:
        return abs(self.time_bandwidth - round(self.time_bandwidth)) < _INTEGER_EPS


@dataclass(frozen=True)
class MetricValue:
    """A computed probability plus how it was obtained.

    `method` is one of closed_integer / closed_series / quadrature /
    monte_carlo.  `est_error` is an estimate (usually a bound) of the
    numerical error of `value`; it does not include model error.

    Note: the canonical metrics always land in [0, 1], and the test suite
    asserts that, but the range is deliberately not enforced here — the
    diagnostic variants of uncorrected formulas (kept for the errata report)
    produce values far outside the unit interval, and they need to be
    representable to be reported.
    """

    value: float
    method: str
    terms_used: int = 0
    est_error: float = 0.0

    def __post_init__(self) -> None:
        if self.method not in _METHODS:
            raise ValueError(f"unknown method {self.method!r}, expected one of {_METHODS}")
        if self.terms_used < 0:
            raise ValueError(f"terms_used must be >= 0, got {self.terms_used}")
        if not (self.est_error >= 0.0):
            raise ValueError(f"est_error must be >= 0, got {self.est_error}")


def pf(cfg: DetectorConfig, threshold: float) -> float:
    """False-alarm probability at the given energy threshold.

    The noise-only statistic is central chi-square with 2u degrees of
    freedom, so this is the regularized upper gamma Q(u, threshold/2);
    strictly decreasing in the threshold.
    """
    if threshold < 0.0:
        raise ValueError(f"threshold must be >= 0, got {threshold}")
    return specfun.reg_upper_gamma(cfg.time_bandwidth, 0.5 * threshold)


def pd(cfg: DetectorConfig, snr: float, threshold: float) -> float:
    """Detection probability Q_u(sqrt(2*snr), sqrt(threshold)).

    snr is the instantaneous linear SNR.  At snr=0 this reduces exactly to
    pf (same incomplete-gamma evaluation), which keeps ROC curves honest at
    the no-signal end.
    """
    if snr < 0.0:
        raise ValueError(f"snr must be >= 0, got {snr}")
    if threshold < 0.0:
        raise ValueError(f"threshold must be >= 0, got {threshold}")
    if snr == 0.0:
        # identical evaluation, not just equal in the limit: avoids the
        # sqrt/square round-trip perturbing the gamma argument by an ulp
        return pf(cfg, threshold)
    return specfun.marcum_q(cfg.time_bandwidth,
                            math.sqrt(2.0 * snr), math.sqrt(threshold))


def threshold_for_pf(cfg: DetectorConfig, pf_target: float) -> float:
    """Invert pf: find the threshold whose false-alarm probability is pf_target.

    Safeguarded Newton on the monotone pf; the derivative is minus the
    noise-only threshold density, available in closed form.  Converges to
    |pf - target| below 1e-12, comfortably inside the 1e-10 contract.
    """
    if not (0.0 < pf_target < 1.0):
        raise ValueError(f"pf_target must lie in (0, 1), got {pf_target}")
    u = cfg.time_bandwidth
    lo, hi = 0.0, 2.0 * u + 4.0
    while pf(cfg, hi) > pf_target:
        hi *= 2.0
        if hi > 1e9:
            raise ConvergenceError("threshold bracket ran away")
    lam = min(2.0 * u, 0.5 * hi)
    if lam <= 0.0:
        lam = 0.5 * hi
    ln_norm = u * _LN2 + specfun.ln_gamma(u)
    for _ in range(200):
        err = pf(cfg, lam) - pf_target
        if abs(err) < 1e-13:
            return lam
        if err > 0.0:
            lo = lam  # pf too high -> threshold too low
        else:
            hi = lam
        # density of the noise-only statistic at lam (= -d pf / d lam)
        if lam > 0.0:
            ln_pdf = (u - 1.0) * math.log(lam) - 0.5 * lam - ln_norm
        else:
            ln_pdf = -math.inf
        step_ok = False
        if ln_pdf > -700.0:
            nxt = lam + err / math.exp(ln_pdf)
            if lo < nxt < hi:
                lam = nxt
                step_ok = True
        if not step_ok:
            lam = 0.5 * (lo + hi)
    err = pf(cfg, lam) - pf_target
    if abs(err) < 1e-10:
        return lam
    raise ConvergenceError(
        f"threshold inversion stalled at pf error {err:.3e} for target {pf_target}")


def _auc_integer(u_int: int, snr: float) -> float:
    # finite sum over Laguerre polynomials of order alpha = u-1 evaluated at
    # -snr/2, with weights 2^-(l+u); single recurrence pass, no specfun calls
    alpha = u_int - 1.0
    x = -0.5 * snr
    acc = 0.0
    p_prev = 0.0
    p = 1.0
    weight = 0.5 ** u_int
    for l in range(u_int):
        acc += p * weight
        weight *= 0.5
        p_prev, p = p, ((2.0 * l + 1.0 + alpha - x) * p - (l + alpha) * p_prev) / (l + 1.0)
    return 1.0 - math.exp(-0.5 * snr) * acc


def auc_awgn_series(cfg: DetectorConfig, snr: float,
                    policy: Optional[EvalPolicy] = None) -> MetricValue:
    """AUC at fixed SNR by the real-u series (works for integer u too).

    The series is a Poisson(snr) mixture of half-domain regularized
    incomplete-beta weights c_l = I_{1/2}(u, u+l).  The weights are built by
    an additive recurrence with strictly positive increments (c_0 = 1/2
    exactly), so no cancellation occurs anywhere; the truncation error is
    bounded by the Poisson tail because every weight is below 1.
    """
    if snr < 0.0:
        raise ValueError(f"snr must be >= 0, got {snr}")
    if policy is None:
        policy = _DEFAULT_POLICY
    u = cfg.time_bandwidth
    if snr >= _SERIES_SATURATION + 4.0 * u:
        return MetricValue(1.0, "closed_series", 0,
                           math.exp(-0.5 * (snr - 4.0 * u)))
    pois = math.exp(-snr)
    c = 0.5
    inc = math.exp(specfun.ln_gamma(2.0 * u) - specfun.ln_gamma(u)
                   - specfun.ln_gamma(u + 1.0) - 2.0 * u * _LN2)
    total = 0.0
    streak = 0
    for l in range(policy.max_terms):
        total += pois * c
        nxt = pois * snr / (l + 1.0)
        if l >= snr:
            tail = nxt / (1.0 - snr / (l + 2.0))
            if tail <= policy.rel_tol * total:
                streak += 1
                if streak >= 3 or tail == 0.0:
                    # truncation tail plus per-term roundoff accumulation
                    return MetricValue(total, "closed_series", l + 1,
                                       tail + 1e-16 * (l + 1) * total)
            else:
                streak = 0
        pois = nxt
        c += inc
        inc *= (2.0 * u + l) / (2.0 * (u + l + 1.0))
    raise ConvergenceError(
        f"AUC series needed more than {policy.max_terms} terms at snr={snr}")


def auc_awgn(cfg: DetectorConfig, snr: float,
             policy: Optional[EvalPolicy] = None) -> MetricValue:
    """AUC of the detector at a fixed instantaneous SNR.

    Integer u dispatches to the exact finite Laguerre form, any other u to
    the series.  Both return 1/2 exactly at snr=0 and increase toward 1.
    """
    if snr < 0.0:
        raise ValueError(f"snr must be >= 0, got {snr}")
    if cfg.is_integer:
        u_int = int(round(cfg.time_bandwidth))
        if snr >= _LAGUERRE_SATURATION + 4.0 * u_int:
            return MetricValue(1.0, "closed_integer", 0,
                               math.exp(-0.25 * (snr - 4.0 * u_int)))
        return MetricValue(_auc_integer(u_int, snr), "closed_integer",
                           u_int, 1e-15)
    return auc_awgn_series(cfg, snr, policy)


def auc_awgn_1f1_variant(cfg: DetectorConfig, snr: float,
                         as_printed: bool = False) -> MetricValue:
    """Integer-u AUC through the confluent-hypergeometric route.

    The stable evaluation folds the detection-side incomplete gamma into a
    regularized upper gamma plus a short sum of terminating Kummer
    polynomials at argument -snr/2 (all-positive terms after the Kummer
    transform of the published expression), which matches auc_awgn to
    near machine precision.

    With as_printed=True the routine instead evaluates the uncorrected
    textbook transcription of the same expression — Kummer functions at
    +snr/2 with no compensating exponential — which exceeds 1 for every
    u >= 1 at moderate SNR.  That variant exists purely so the errata
    report can quantify the defect; do not use it for anything else.
    """
    if snr < 0.0:
        raise ValueError(f"snr must be >= 0, got {snr}")
    if not cfg.is_integer:
        raise ValueError("the hypergeometric AUC form requires integer u")
    u = int(round(cfg.time_bandwidth))
    base = 1.0 - specfun.reg_upper_gamma(float(u), 0.5 * snr)
    if as_printed:
        acc = 0.0
        for l in range(u):
            acc += (specfun.pochhammer(float(u), l)
                    * specfun.kummer_1f1(float(u + l), float(1 + l), 0.5 * snr)
                    / (math.factorial(l) * 2.0 ** (u + l)))
        # infinite est_error: the printed transcription carries no accuracy claim
        return MetricValue(base + acc, "closed_integer", u, math.inf)
    acc = 0.0
    for l in range(1 - u, u):
        acc += (specfun.pochhammer(float(u), l)
                * specfun.kummer_1f1(float(1 - u), float(1 + l), -0.5 * snr,
                                     regularized=True)
                / 2.0 ** (u + l))
    value = base + math.exp(-0.5 * snr) * acc
    return MetricValue(value, "closed_integer", 2 * u - 1, 1e-14)


def cauc_awgn(cfg: DetectorConfig, snr: float,
              policy: Optional[EvalPolicy] = None) -> MetricValue:
    """Complementary AUC, returned as exactly 1 - auc_awgn(...)."""
    base = auc_awgn(cfg, snr, policy)
    return MetricValue(1.0 - base.value, base.method,
                       base.terms_used, base.est_error)


def _ln_threshold_density(u: float, lam: float, ln_norm: float) -> float:
    if lam <= 0.0:
        return -math.inf
    return (u - 1.0) * math.log(lam) - 0.5 * lam - ln_norm


def auc_quadrature(cfg: DetectorConfig, snr: float,
                   policy: Optional[EvalPolicy] = None) -> MetricValue:
    """Reference AUC: integrate P_d against the noise-only threshold density.

    This route shares no series or identity with the closed forms (detection
    probability evaluated pointwise, density in log form, adaptive panels),
    so agreement with auc_awgn is a meaningful check rather than an algebraic
    tautology.

    At non-integer u the threshold density behaves like lam**(u-1) at the
    origin, which Gauss-Legendre panels resolve only algebraically; the
    integral is therefore taken in lam = v**p with p chosen so the
    transformed integrand has several continuous derivatives at v = 0.
    """
    if snr < 0.0:
        raise ValueError(f"snr must be >= 0, got {snr}")
    if policy is None:
        policy = _DEFAULT_POLICY
    u = cfg.time_bandwidth
    ln_norm = u * _LN2 + specfun.ln_gamma(u)
    a = math.sqrt(2.0 * snr)

    def density_weighted_prob(lam: float) -> float:
        ln_pdf = _ln_threshold_density(u, lam, ln_norm)
        if ln_pdf < -740.0:
            return 0.0
        b = math.sqrt(lam)
        if a > b + 12.0:
            prob = 1.0  # miss probability below exp(-72) here
        else:
            prob = specfun.marcum_q(u, a, b)
        return prob * math.exp(ln_pdf)

    scale = 2.0 * u + snr + 1.0
    if cfg.is_integer:
        power = 1.0  # polynomial prefactor, already smooth at lam = 0
        integrand = density_weighted_prob
    else:
        # transformed integrand ~ v**(p*u - 1) at the origin
        power = max(2.0, math.ceil(5.0 / u))

        def integrand(v: float) -> float:
            base = density_weighted_prob(v ** power)
            if base == 0.0:
                return 0.0
            return base * power * v ** (power - 1.0)

        scale = scale ** (1.0 / power)
    value, err, evals = integrate_half_line(integrand, policy, scale=scale)
    return MetricValue(value, "quadrature", evals, err)


def roc_points_awgn(cfg: DetectorConfig, snr: float,
                    n_points: int) -> List[Tuple[float, float]]:
    """(pf, pd) pairs on an even false-alarm grid, endpoints clipped to (0,1).

    pd is computed at the threshold that realizes each pf, so the pairs lie
    exactly on the detector's ROC; a trapezoid sum over them approaches the
    closed-form AUC as the grid refines.
    """
    if n_points < 2:
        raise ValueError(f"need at least 2 points, got {n_points}")
    out = []
    for k in range(n_points):
        target = k / (n_points - 1.0)
        target = min(max(target, 1e-9), 1.0 - 1e-9)
        lam = threshold_for_pf(cfg, target)
        out.append((pf(cfg, lam), pd(cfg, snr, lam)))
    return out
