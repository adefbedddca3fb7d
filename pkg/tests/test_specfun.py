"""Kernel special functions against high-precision reference values.

Reference constants were computed independently with mpmath at 50-digit
working precision and frozen here; tolerances are relative unless the value
itself is O(1), in which case absolute and relative coincide.
"""

import math

import pytest

from hoytsense.specfun import (ConvergenceError, FunctionAccuracy, bessel_i,
                               binomial, gauss_2f1, kummer_1f1, laguerre,
                               ln_gamma, marcum_q, pochhammer,
                               reg_lower_gamma, reg_upper_gamma)

# mpmath mp.loggamma / mp.gammainc(regularized=True)
LGAMMA_5P5 = 3.95781396761871629388
RUG_5_5 = 0.440493285065212411443
RUG_3_2P5 = 0.543813115883329517998
RUG_0P5_0P1 = 0.654720846018577029403
RUG_2P7_3P1 = 0.331999170052872127641

# mpmath mp.besseli
I0_1 = 1.2660658777520083356
I0_0P5 = 1.06348337074132351926
I1_2P3 = 2.09780002751742147684
I2P5_1P7 = 0.245280222047693300305
I0S_800 = 0.0141069450058691839791     # exp(-x) I0(x) at x = 800
I0S_150 = 0.0326007478839180494851
I1S_150 = 0.0324918963888489424816

# mpmath 1 - int_0^b t (t/a)^(m-1) exp(-(t^2+a^2)/2) I_(m-1)(a t) dt
MARCUM_1_1_1 = 0.732879803796820218251
MARCUM_1_2_1 = 0.918107696369406003911
MARCUM_2P5_1P3_2P1 = 0.664290114625566931586
MARCUM_5_2_3 = 0.790576956531218788481
MARCUM_1_10P5_11 = 0.325125710704336596302

# mpmath mp.hyp1f1 / mp.hyp2f1
KUM_2_3_M1 = 0.528482235314230713618
KUM_0P5_1P5_M10 = 0.280247390506642740635
G2F1_0P5_1P5_1_0P9 = 7.0332143885152268437
G2F1_1_2_3_0P999 = 11.8411810789410773177
G2F1_0P3_0P7_2P1_0P85 = 1.13639529650956882861
G2F1_1_10_3P5_0P5 = 16.758497090832851961

# mpmath mp.laguerre
LAG_12_2P5_7 = -6.80175944401804891544


def test_ln_gamma_spot_values():
    assert ln_gamma(5.5) == pytest.approx(LGAMMA_5P5, rel=1e-15)
    assert ln_gamma(1.0) == 0.0
    assert ln_gamma(2.0) == 0.0
    # recurrence ln G(x+1) = ln G(x) + ln x
    for x in (0.3, 1.7, 9.2):
        assert ln_gamma(x + 1.0) == pytest.approx(ln_gamma(x) + math.log(x),
                                                  rel=1e-14, abs=1e-14)


def test_ln_gamma_rejects_nonpositive():
    with pytest.raises(ValueError):
        ln_gamma(0.0)
    with pytest.raises(ValueError):
        ln_gamma(-2.5)


def test_regularized_gamma_frozen_values():
    assert reg_upper_gamma(5.0, 5.0) == pytest.approx(RUG_5_5, rel=1e-13)
    assert reg_upper_gamma(3.0, 2.5) == pytest.approx(RUG_3_2P5, rel=1e-13)
    assert reg_upper_gamma(0.5, 0.1) == pytest.approx(RUG_0P5_0P1, rel=1e-13)
    assert reg_upper_gamma(2.7, 3.1) == pytest.approx(RUG_2P7_3P1, rel=1e-13)


def test_regularized_gamma_complement_and_limits():
    for a in (0.4, 1.0, 3.3, 12.0):
        for x in (1e-3, 0.5, 2.0, 30.0):
            p = reg_lower_gamma(a, x)
            q = reg_upper_gamma(a, x)
            assert abs(p + q - 1.0) < 1e-13
            assert 0.0 <= p <= 1.0 and 0.0 <= q <= 1.0
    assert reg_upper_gamma(2.0, 0.0) == 1.0
    assert reg_upper_gamma(2.0, 900.0) < 1e-300


def test_regularized_gamma_rejects_bad_domain():
    with pytest.raises(ValueError):
        reg_upper_gamma(0.0, 1.0)
    with pytest.raises(ValueError):
        reg_upper_gamma(2.0, -0.5)


def test_bessel_frozen_values():
    assert bessel_i(0.0, 1.0) == pytest.approx(I0_1, rel=1e-14)
    assert bessel_i(0.0, 0.5) == pytest.approx(I0_0P5, rel=1e-14)
    assert bessel_i(1.0, 2.3) == pytest.approx(I1_2P3, rel=1e-14)
    assert bessel_i(2.5, 1.7) == pytest.approx(I2P5_1P7, rel=1e-14)


def test_bessel_scaled_frozen_values():
    # the asymptotic branch (large x) carries the exp(-x) factor internally
    assert bessel_i(0.0, 800.0, scaled=True) == pytest.approx(I0S_800, rel=1e-13)
    assert bessel_i(0.0, 150.0, scaled=True) == pytest.approx(I0S_150, rel=1e-13)
    assert bessel_i(1.0, 150.0, scaled=True) == pytest.approx(I1S_150, rel=1e-13)


def test_bessel_scaling_consistency():
    for nu in (0.0, 1.0, 2.5):
        for x in (0.3, 2.0, 20.0):
            assert bessel_i(nu, x, scaled=True) * math.exp(x) == pytest.approx(
                bessel_i(nu, x), rel=1e-12)


def test_bessel_half_order_closed_form():
    # I_(1/2)(x) = sqrt(2/(pi x)) sinh x
    for x in (0.3, 2.0, 10.0):
        want = math.sqrt(2.0 / (math.pi * x)) * math.sinh(x)
        assert bessel_i(0.5, x) == pytest.approx(want, rel=1e-13)


def test_bessel_at_zero_argument():
    assert bessel_i(0.0, 0.0) == 1.0
    assert bessel_i(1.5, 0.0) == 0.0


def test_marcum_frozen_values():
    assert marcum_q(1.0, 1.0, 1.0) == pytest.approx(MARCUM_1_1_1, rel=1e-13)
    assert marcum_q(1.0, 2.0, 1.0) == pytest.approx(MARCUM_1_2_1, rel=1e-13)
    assert marcum_q(2.5, 1.3, 2.1) == pytest.approx(MARCUM_2P5_1P3_2P1, rel=1e-13)
    assert marcum_q(5.0, 2.0, 3.0) == pytest.approx(MARCUM_5_2_3, rel=1e-13)
    # large, nearly balanced arguments exercise the downward re-anchoring
    assert marcum_q(1.0, 10.5, 11.0) == pytest.approx(MARCUM_1_10P5_11, rel=1e-12)


def test_marcum_degenerate_arguments():
    # zero noncentrality reduces to the regularized upper gamma
    for m in (1.0, 2.5, 5.0):
        for b in (0.7, 2.0):
            assert marcum_q(m, 0.0, b) == pytest.approx(
                reg_upper_gamma(m, 0.5 * b * b), rel=1e-13)
    assert marcum_q(3.0, 2.0, 0.0) == 1.0


def test_marcum_monotonicity_and_range():
    bs = [0.0, 0.5, 1.0, 2.0, 4.0, 8.0]
    for m in (1.0, 3.5):
        for a in (0.0, 1.0, 3.0):
            vals = [marcum_q(m, a, b) for b in bs]
            assert all(0.0 <= v <= 1.0 for v in vals)
            assert all(x >= y - 1e-14 for x, y in zip(vals, vals[1:]))
        # larger noncentrality shifts mass upward
        for b in (1.0, 3.0):
            assert marcum_q(m, 2.0, b) >= marcum_q(m, 1.0, b) - 1e-14


def test_kummer_frozen_values():
    assert kummer_1f1(2.0, 3.0, -1.0) == pytest.approx(KUM_2_3_M1, rel=1e-13)
    assert kummer_1f1(0.5, 1.5, -10.0) == pytest.approx(KUM_0P5_1P5_M10, rel=1e-12)
    # terminating polynomial case, exact rational value
    assert kummer_1f1(-3.0, 2.0, 5.0) == pytest.approx(19.0 / 24.0, rel=1e-14)


def test_kummer_exponential_identity():
    for a in (0.5, 2.0, 7.0):
        for x in (-6.0, -0.3, 1.2, 4.0):
            assert kummer_1f1(a, a, x) == pytest.approx(math.exp(x), rel=1e-12)


def test_kummer_regularized_nonpositive_denominator():
    # terminating numerator with nonpositive integer b: leading 1/Gamma(b+k)
    # terms vanish, leaving a short polynomial (values derived by hand)
    assert kummer_1f1(-2.0, -1.0, 1.5, regularized=True) == pytest.approx(
        1.5 ** 2, rel=1e-14)
    assert kummer_1f1(-3.0, -1.0, 2.0, regularized=True) == pytest.approx(
        3.0 * 4.0 - 8.0, rel=1e-14)
    # regularized at positive b is the plain value over Gamma(b)
    assert kummer_1f1(2.0, 3.0, -1.0, regularized=True) == pytest.approx(
        KUM_2_3_M1 / math.gamma(3.0), rel=1e-13)


def test_gauss_2f1_frozen_values():
    # four values, one per evaluation branch: direct series, Euler flip with
    # negative-integer exponent, the log case at integer c-a-b, and the
    # connection formula at non-integer c-a-b
    assert gauss_2f1(1.0, 10.0, 3.5, 0.5) == pytest.approx(
        G2F1_1_10_3P5_0P5, rel=1e-13)
    assert gauss_2f1(0.5, 1.5, 1.0, 0.9) == pytest.approx(
        G2F1_0P5_1P5_1_0P9, rel=1e-12)
    assert gauss_2f1(1.0, 2.0, 3.0, 0.999) == pytest.approx(
        G2F1_1_2_3_0P999, rel=1e-12)
    assert gauss_2f1(0.3, 0.7, 2.1, 0.85) == pytest.approx(
        G2F1_0P3_0P7_2P1_0P85, rel=1e-12)


def test_gauss_2f1_binomial_identity():
    for z in (0.1, 0.45, 0.8, 0.97):
        assert gauss_2f1(0.5, 1.0, 1.0, z) * math.sqrt(1.0 - z) == pytest.approx(
            1.0, rel=1e-12)


def test_laguerre_frozen_and_explicit():
    assert laguerre(12, 2.5, 7.0) == pytest.approx(LAG_12_2P5_7, rel=1e-12)
    # low orders against the textbook polynomials
    for alpha in (0.0, 1.0, 4.0):
        for x in (-2.0, 0.0, 1.3):
            assert laguerre(0, alpha, x) == 1.0
            assert laguerre(1, alpha, x) == pytest.approx(alpha + 1.0 - x,
                                                          rel=1e-14, abs=1e-14)
            want2 = 0.5 * x * x - (alpha + 2.0) * x \
                + 0.5 * (alpha + 1.0) * (alpha + 2.0)
            assert laguerre(2, alpha, x) == pytest.approx(want2, rel=1e-13,
                                                          abs=1e-13)


def test_laguerre_rejects_bad_order():
    with pytest.raises(ValueError):
        laguerre(-1, 2.0, 1.0)


def test_pochhammer_and_binomial():
    assert pochhammer(3.0, 4) == 3.0 * 4.0 * 5.0 * 6.0
    assert pochhammer(0.5, 3) == pytest.approx(0.5 * 1.5 * 2.5, rel=1e-15)
    assert pochhammer(2.0, 0) == 1.0
    # negative n: (a)_(-n) = 1/(a-n)_n
    assert pochhammer(5.0, -2) == pytest.approx(1.0 / (3.0 * 4.0), rel=1e-15)
    with pytest.raises(ValueError):
        pochhammer(2.0, -3)  # hits the pole at zero
    assert binomial(5.0, 2) == 10.0
    assert binomial(4.5, 3) == pytest.approx(4.5 * 3.5 * 2.5 / 6.0, rel=1e-15)
    assert binomial(3.0, 0) == 1.0
    with pytest.raises(ValueError):
        binomial(3.0, -1)
    # consistency with the rising factorial
    for top, k in ((7.5, 3), (2.0, 2), (10.3, 5)):
        assert binomial(top, k) == pytest.approx(
            pochhammer(top - k + 1.0, k) / math.factorial(k), rel=1e-13)


def test_accuracy_policy_validation():
    with pytest.raises(ValueError):
        FunctionAccuracy(rel_tol=0.0)
    with pytest.raises(ValueError):
        FunctionAccuracy(rel_tol=-1e-10)
    with pytest.raises(ValueError):
        FunctionAccuracy(max_terms=99)


def test_series_cap_raises_convergence_error():
    tiny = FunctionAccuracy(rel_tol=1e-13, max_terms=100)
    with pytest.raises(ConvergenceError):
        kummer_1f1(0.5, 1.5, 600.0, tiny)
    with pytest.raises(ConvergenceError):
        # direct-series branch with large numerator parameters: terms grow
        # until k ~ 70 and the 100-term budget runs out first
        gauss_2f1(30.0, 30.0, 1.1, 0.5, tiny)
