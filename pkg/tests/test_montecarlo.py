"""Monte-Carlo estimators: reproducibility, statistic law, closure."""

import math

import numpy as np
import pytest

from hoytsense.average import avg_auc_closed, avg_pd_quadrature
from hoytsense.detector import DetectorConfig, auc_awgn, pd as pd_closed, \
    threshold_for_pf
from hoytsense.hoyt import HoytFading
from hoytsense.montecarlo import (McConfig, McEstimate, batch_rng,
                                  estimate_auc, estimate_pd, sample_statistic)
from hoytsense.quadrature import EvalPolicy

TIGHT = EvalPolicy(rel_tol=1e-13, max_terms=100_000)


def test_config_validation():
    cfg = McConfig()
    assert cfg.trials == 1_000_000 and cfg.batch_size == 65_536
    with pytest.raises(ValueError):
        McConfig(trials=0)
    with pytest.raises(ValueError):
        McConfig(batch_size=0)
    with pytest.raises(ValueError):
        McConfig(master_seed=-1)
    with pytest.raises(ValueError):
        McConfig(master_seed=2 ** 64)


def test_batch_rng_streams_are_stable_and_distinct():
    mc = McConfig(master_seed=99)
    a = batch_rng(mc, 0).standard_normal(8)
    b = batch_rng(mc, 0).standard_normal(8)
    c = batch_rng(mc, 1).standard_normal(8)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    # a different master seed moves every stream
    d = batch_rng(McConfig(master_seed=100), 0).standard_normal(8)
    assert not np.array_equal(a, d)


def test_sample_statistic_law():
    cfg = DetectorConfig(2.5)
    rng = np.random.default_rng(7)
    n = 200_000
    y0 = sample_statistic(cfg, 0.0, "H0", rng, size=n)
    # noise-only: chi-square with 2u degrees of freedom (mean 2u, var 4u)
    assert float(np.mean(y0)) == pytest.approx(5.0, abs=4 * math.sqrt(10.0 / n))
    assert float(np.var(y0)) == pytest.approx(10.0, rel=0.02)
    y1 = sample_statistic(cfg, 3.0, "H1", rng, size=n)
    # signal: noncentral chi-square, mean 2u + 2 snr, var 4u + 8 snr
    se = math.sqrt((10.0 + 24.0) / n)
    assert float(np.mean(y1)) == pytest.approx(11.0, abs=4 * se)
    assert float(np.var(y1)) == pytest.approx(34.0, rel=0.03)
    assert float(np.min(y0)) >= 0.0
    scalar = sample_statistic(cfg, 1.0, "H1", rng)
    assert np.ndim(scalar) == 0 and float(scalar) >= 0.0
    with pytest.raises(ValueError):
        sample_statistic(cfg, 1.0, "H2", rng)
    with pytest.raises(ValueError):
        sample_statistic(cfg, -1.0, "H1", rng)


def test_estimate_auc_replay_is_bitwise():
    cfg = DetectorConfig(5.0)
    f = HoytFading(0.5, 10.0)
    mc = McConfig(trials=150_000, master_seed=42)
    e1 = estimate_auc(cfg, f, mc)
    e2 = estimate_auc(cfg, f, mc)
    assert isinstance(e1, McEstimate)
    assert e1.value == e2.value and e1.std_error == e2.std_error
    assert e1.trials == 150_000
    # a new seed gives a statistically distinct estimate
    e3 = estimate_auc(cfg, f, McConfig(trials=150_000, master_seed=43))
    assert e3.value != e1.value


def test_estimate_auc_fixed_snr_closure():
    mc = McConfig(trials=400_000, master_seed=11)
    for u, g in ((1.0, 2.0), (5.0, 10.0), (2.5, 5.0)):
        cfg = DetectorConfig(u)
        est = estimate_auc(cfg, g, mc)
        ref = auc_awgn(cfg, g, TIGHT).value
        assert abs(est.value - ref) < 4.0 * est.std_error
        assert 0.0 < est.std_error < 0.01


def test_estimate_auc_fading_closure():
    mc = McConfig(trials=400_000, master_seed=12)
    for u, q, mean in ((5.0, 0.5, 10.0), (2.5, 0.1, 3.0)):
        cfg = DetectorConfig(u)
        f = HoytFading(q, mean)
        est = estimate_auc(cfg, f, mc)
        ref = avg_auc_closed(cfg, f).value
        assert abs(est.value - ref) < 4.0 * est.std_error


def test_estimate_auc_uneven_batches():
    cfg = DetectorConfig(2.0)
    est = estimate_auc(cfg, 1.0, McConfig(trials=70_001, master_seed=3,
                                          batch_size=16_384))
    assert est.trials == 70_001
    assert 0.5 < est.value < 1.0 and math.isfinite(est.std_error)


def test_estimate_pd_closures():
    cfg = DetectorConfig(2.5)
    lam = threshold_for_pf(cfg, 0.1)
    mc = McConfig(trials=400_000, master_seed=21)
    # fixed SNR against the Marcum form
    est = estimate_pd(cfg, 2.0, lam, mc)
    want = pd_closed(cfg, 2.0, lam)
    se = math.sqrt(want * (1.0 - want) / mc.trials)
    assert abs(est.value - want) < 4.0 * se
    assert est.std_error == pytest.approx(se, rel=0.2)
    # fading-averaged against the quadrature form
    f = HoytFading(0.5, 6.0)
    est = estimate_pd(cfg, f, lam, mc)
    want = avg_pd_quadrature(cfg, f, lam, TIGHT).value
    assert abs(est.value - want) < 4.0 * est.std_error
    # zero SNR reduces to the false-alarm probability
    est = estimate_pd(cfg, 0.0, lam, mc)
    assert abs(est.value - 0.1) < 4.0 * est.std_error


def test_standard_error_scales_with_trials():
    cfg = DetectorConfig(5.0)
    f = HoytFading(0.5, 10.0)
    e_small = estimate_auc(cfg, f, McConfig(trials=50_000, master_seed=5))
    e_large = estimate_auc(cfg, f, McConfig(trials=800_000, master_seed=5))
    assert e_large.std_error < e_small.std_error
    assert e_large.std_error == pytest.approx(e_small.std_error / 4.0,
                                              rel=0.25)
