"""Special-function kernel: regularized incomplete gamma, modified Bessel I,
Marcum Q, confluent and Gauss hypergeometric functions, Laguerre polynomials.

Everything here is scalar, pure Python double precision. The implementations
follow the usual series/continued-fraction splits (Numerical Recipes style for
the incomplete gamma; DLMF 15.8 transformations for 2F1) and are tuned for the
argument ranges the detector formulas actually hit. Extended precision lives
only in the test oracles, never here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

MAXLOG = 709.782712893384  # log(DBL_MAX); exp() overflows above this
MINLOG = -745.13321910194  # below this exp() underflows to 0
_EPS = 2.220446049250313e-16

# x below this the Bessel ascending series cannot overflow (max partial sum
# is bounded by I_nu(x) ~ e^x/sqrt(2 pi x), and e^600 ~ 3.8e260)
_BESSEL_SERIES_MAX_X = 600.0


class ConvergenceError(ArithmeticError):
    """A series or refinement loop hit its term cap before reaching tolerance."""


@dataclass(frozen=True)
class FunctionAccuracy:
    """Truncation policy for the kernel series."""

    rel_tol: float = 1e-13
    max_terms: int = 10_000

    def __post_init__(self):
        if not (0.0 < self.rel_tol < 1e-6):
            raise ValueError("rel_tol must be in (0, 1e-6)")
        if self.max_terms < 100:
            raise ValueError("max_terms must be >= 100")


_DEFAULT_ACC = FunctionAccuracy()


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function, x > 0."""
    if not x > 0.0:
        raise ValueError(f"ln_gamma requires x > 0, got {x}")
    return math.lgamma(x)


# ---------------------------------------------------------------------------
# regularized incomplete gamma
# ---------------------------------------------------------------------------

def _lower_gamma_series(a, x, acc):
    # P(a,x) by ascending series; good for x < a + 1
    lp = a * math.log(x) - x - math.lgamma(a + 1.0)
    if lp < MINLOG:
        return 0.0
    term = 1.0
    total = 1.0
    ap = a
    for _ in range(acc.max_terms):
        ap += 1.0
        term *= x / ap
        total += term
        if term < acc.rel_tol * total:
            return math.exp(lp) * total
    raise ConvergenceError(f"lower-gamma series stalled at a={a}, x={x}")


def _upper_gamma_cf(a, x, acc):
    # Q(a,x) by Lentz continued fraction; good for x >= a + 1
    lp = a * math.log(x) - x - math.lgamma(a)
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, acc.max_terms):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < acc.rel_tol:
            return 0.0 if lp < MINLOG else math.exp(lp) * h
    raise ConvergenceError(f"upper-gamma continued fraction stalled at a={a}, x={x}")


def reg_upper_gamma(a: float, x: float, acc: FunctionAccuracy = _DEFAULT_ACC) -> float:
    """Q(a, x) = Gamma(a, x)/Gamma(a), the regularized upper incomplete gamma."""
    if not a > 0.0:
        raise ValueError(f"reg_upper_gamma requires a > 0, got {a}")
    if x < 0.0:
        raise ValueError(f"reg_upper_gamma requires x >= 0, got {x}")
    if x == 0.0:
        return 1.0
    if x < a + 1.0:
        # P is at most ~0.7 here, so 1 - P costs no precision
        return 1.0 - _lower_gamma_series(a, x, acc)
    return _upper_gamma_cf(a, x, acc)


def reg_lower_gamma(a: float, x: float, acc: FunctionAccuracy = _DEFAULT_ACC) -> float:
    """P(a, x) = 1 - Q(a, x)."""
    if not a > 0.0:
        raise ValueError(f"reg_lower_gamma requires a > 0, got {a}")
    if x < 0.0:
        raise ValueError(f"reg_lower_gamma requires x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    if x < a + 1.0:
        return _lower_gamma_series(a, x, acc)
    return 1.0 - _upper_gamma_cf(a, x, acc)


# ---------------------------------------------------------------------------
# modified Bessel function of the first kind
# ---------------------------------------------------------------------------

def bessel_i(nu: float, x: float, scaled: bool = False,
             acc: FunctionAccuracy = _DEFAULT_ACC) -> float:
    """I_nu(x) for nu >= 0, x >= 0.

    scaled=True returns e^{-x} I_nu(x), which stays representable for any x;
    the unscaled value raises OverflowError once e^x itself overflows.
    """
    if nu < 0.0:
        raise ValueError(f"bessel_i requires nu >= 0, got {nu}")
    if x < 0.0:
        raise ValueError(f"bessel_i requires x >= 0, got {x}")
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0

    if x <= _BESSEL_SERIES_MAX_X:
        # ascending series around the first term (x/2)^nu / Gamma(nu+1)
        lt = nu * math.log(0.5 * x) - math.lgamma(nu + 1.0)
        q = 0.25 * x * x
        term = 1.0
        total = 1.0
        for k in range(acc.max_terms):
            term *= q / ((k + 1.0) * (nu + k + 1.0))
            total += term
            if term < acc.rel_tol * total:
                break
        else:
            raise ConvergenceError(f"bessel_i series stalled at nu={nu}, x={x}")
        lv = lt + math.log(total)
        if scaled:
            return math.exp(lv - x)
        if lv > MAXLOG:
            raise OverflowError(f"bessel_i({nu}, {x}) exceeds double range")
        return math.exp(lv)

    # large argument: asymptotic expansion of e^{-x} I_nu(x)
    mu = 4.0 * nu * nu
    term = 1.0
    total = 1.0
    prev = math.inf
    for k in range(1, 40):
        term *= -(mu - (2.0 * k - 1.0) ** 2) / (8.0 * x * k)
        if abs(term) >= prev:
            # asymptotic tail started growing before reaching tolerance
            raise ConvergenceError(f"bessel_i asymptotic diverges at nu={nu}, x={x}")
        total += term
        prev = abs(term)
        if abs(term) < acc.rel_tol * abs(total):
            break
    val = total / math.sqrt(2.0 * math.pi * x)
    if scaled:
        return val
    if x > MAXLOG:
        raise OverflowError(f"bessel_i({nu}, {x}) exceeds double range")
    return val * math.exp(x)


# ---------------------------------------------------------------------------
# Marcum Q
# ---------------------------------------------------------------------------

def marcum_q(m: float, a: float, b: float, acc: FunctionAccuracy = _DEFAULT_ACC) -> float:
    """Generalized Marcum Q_m(a, b) for real order m > 0.

    Canonical Poisson mixture: Q_m(a,b) = sum_k w_k Q(m+k, b^2/2) with
    w_k Poisson(a^2/2) weights. The sum is taken outward from the Poisson
    mode so large a^2/2 costs O(sqrt(a^2/2)) terms instead of O(a^2/2), and
    the per-term incomplete gammas come from the stable one-step recurrence
    Q(s+1, x) = Q(s, x) + x^s e^{-x}/Gamma(s+1) anchored at a single
    continued-fraction/series evaluation.
    """
    if not m > 0.0:
        raise ValueError(f"marcum_q requires m > 0, got {m}")
    if a < 0.0 or b < 0.0:
        raise ValueError("marcum_q requires a >= 0 and b >= 0")
    if b == 0.0:
        return 1.0
    x = 0.5 * b * b
    if a == 0.0:
        return reg_upper_gamma(m, x, acc)
    h = 0.5 * a * a

    k0 = int(h)
    # anchor at the mode: weight, Q, and gamma increment, all via logs
    lw = k0 * math.log(h) - h - math.lgamma(k0 + 1.0)
    w_up = math.exp(lw)
    q_anchor = reg_upper_gamma(m + k0, x, acc)
    le = (m + k0) * math.log(x) - x - math.lgamma(m + k0 + 1.0)
    e_anchor = math.exp(le) if le > MINLOG else 0.0

    total = w_up * q_anchor
    wsum = w_up

    # upward from the mode
    w, qv, e = w_up, q_anchor, e_anchor
    k = k0
    while k - k0 < acc.max_terms:
        w *= h / (k + 1.0)
        qv += e
        e *= x / (m + k + 1.0)
        k += 1
        total += w * qv
        wsum += w
        if k > h and w < acc.rel_tol * total * (1.0 - h / (k + 1.0)):
            break
    else:
        raise ConvergenceError(f"marcum_q upward sum stalled (m={m}, a={a}, b={b})")

    # downward from the mode; Q(s-1,x) = Q(s,x) - x^{s-1}e^{-x}/Gamma(s)
    w, qv, e = w_up, q_anchor, e_anchor
    for k in range(k0, 0, -1):
        w *= k / h
        e *= (m + k) / x
        nxt = qv - e
        if nxt < 0.1 * qv:
            # heavy cancellation in the deep tail: re-anchor exactly
            nxt = reg_upper_gamma(m + k - 1.0, x, acc)
        qv = nxt
        total += w * qv
        wsum += w
        if w < acc.rel_tol * total:
            break

    # the weights are a probability mass; roundoff can push the sum a hair out
    return min(1.0, max(0.0, total))


# ---------------------------------------------------------------------------
# confluent hypergeometric 1F1
# ---------------------------------------------------------------------------

def _is_nonpos_int(v):
    return v <= 0.0 and v == math.floor(v)


def kummer_1f1(a: float, b: float, x: float, acc: FunctionAccuracy = _DEFAULT_ACC,
               regularized: bool = False) -> float:
    """Kummer's 1F1(a; b; x).

    regularized=True returns 1F1(a;b;x)/Gamma(b), term-by-term as
    sum_k (a)_k x^k / (Gamma(b+k) k!), which stays finite for b a nonpositive
    integer (the leading poles drop out). Negative x with non-terminating a
    goes through the Kummer transform 1F1(a;b;x) = e^x 1F1(b-a;b;-x) to avoid
    alternating-series cancellation.
    """
    if _is_nonpos_int(b) and not regularized:
        raise ValueError(f"kummer_1f1 pole: b={b} is a nonpositive integer")

    terminating = _is_nonpos_int(a)
    if x < 0.0 and not terminating:
        # e^x 1F1(b-a; b; -x); the same identity holds for the regularized form
        return math.exp(x) * kummer_1f1(b - a, b, -x, acc, regularized)

    # first nonzero index: k0 = 1-b when b is a nonpositive integer (regularized)
    k0 = 0
    if regularized and _is_nonpos_int(b):
        k0 = int(1.0 - b)
    if terminating and k0 > -int(a):
        return 0.0  # every term carries either a pole-killed 1/Gamma or (a)_k = 0

    # term at k0
    if k0 == 0:
        term = 1.0 / math.gamma(b) if regularized else 1.0
    else:
        # (a)_{k0} x^{k0} / (Gamma(b+k0) k0!) with b+k0 = 1
        poch = 1.0
        for j in range(k0):
            poch *= a + j
        term = poch * x ** k0 / math.factorial(k0)
    total = term
    small = 0
    k = k0
    while k - k0 < acc.max_terms:
        term *= (a + k) * x / ((b + k) * (k + 1.0))
        total += term
        k += 1
        if terminating and a + k == 0.0:
            # polynomial ended before anything else mattered... also covers a=0
            term = 0.0
        if term == 0.0:
            return total
        small = small + 1 if abs(term) <= acc.rel_tol * (abs(total) + 1e-300) else 0
        if small >= 2:
            return total
    raise ConvergenceError(f"kummer_1f1 stalled at a={a}, b={b}, x={x}")


# ---------------------------------------------------------------------------
# Gauss hypergeometric 2F1 on z in [0, 1)
# ---------------------------------------------------------------------------

def _digamma(x):
    # real digamma via upward recurrence + asymptotic tail; x may not be a
    # nonpositive integer (callers guarantee this)
    if x < 0.0:
        return _digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    r = 0.0
    # push the argument past 20 so the truncated asymptotic tail is < 1e-15
    while x < 20.0:
        r -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    return r + math.log(x) - 0.5 / x - inv2 * (
        1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 / 240.0)))


def _rgamma(x):
    # 1/Gamma(x), zero at the poles, sign-correct for negative non-integers
    if _is_nonpos_int(x):
        return 0.0
    return 1.0 / math.gamma(x)


def _2f1_series(a, b, c, z, acc):
    term = 1.0
    total = 1.0
    small = 0
    for k in range(acc.max_terms):
        term *= (a + k) * (b + k) * z / ((c + k) * (k + 1.0))
        total += term
        if term == 0.0:
            return total
        small = small + 1 if abs(term) <= acc.rel_tol * (abs(total) + 1e-300) else 0
        if small >= 2:
            return total
    raise ConvergenceError(f"2F1 series stalled at ({a},{b};{c};{z})")


def _2f1_nearone_logcase(a, b, c, z, acc):
    # c - a - b = m, a nonnegative integer: A&S 15.3.10/15.3.11.
    m = int(round(c - a - b))
    w = 1.0 - z
    gc = math.gamma(c)
    first = 0.0
    if m > 0:
        # finite sum: Gamma(m)Gamma(c)/(Gamma(a+m)Gamma(b+m)) *
        #             sum_{k<m} (a)_k (b)_k / (k! (1-m)_k) * w^k
        pref = math.gamma(m) * gc * _rgamma(a + m) * _rgamma(b + m)
        term = pref
        first = pref
        for k in range(m - 1):
            term *= (a + k) * (b + k) * w / ((k + 1.0) * (k + 1.0 - m))
            first += term
    # log series: -(-1)^m Gamma(c)/(Gamma(a)Gamma(b)) w^m *
    #   sum_k (a+m)_k (b+m)_k /(k!(m+k)!) w^k [ln w - psi(k+1) - psi(k+m+1)
    #                                          + psi(a+k+m) + psi(b+k+m)]
    sign = -1.0 if m % 2 else 1.0
    pref = -sign * gc * _rgamma(a) * _rgamma(b) * w ** m
    lw = math.log(w)
    coef = 1.0 / math.factorial(m)
    pa, pb = _digamma(a + m), _digamma(b + m)
    p1, pm1 = _digamma(1.0), _digamma(m + 1.0)
    total = 0.0
    for k in range(acc.max_terms):
        bracket = lw - p1 - pm1 + pa + pb
        term = coef * bracket
        total += term
        if k > 2 and abs(term) < acc.rel_tol * (abs(total) + 1e-300):
            return first + pref * total
        coef *= (a + m + k) * (b + m + k) * w / ((k + 1.0) * (m + k + 1.0))
        # digammas advance by 1/argument each step
        p1 += 1.0 / (k + 1.0)
        pm1 += 1.0 / (m + k + 1.0)
        pa += 1.0 / (a + m + k)
        pb += 1.0 / (b + m + k)
    raise ConvergenceError(f"2F1 log-case stalled at ({a},{b};{c};{z})")


def gauss_2f1(a: float, b: float, c: float, z: float,
              acc: FunctionAccuracy = _DEFAULT_ACC) -> float:
    """2F1(a, b; c; z) for real parameters and 0 <= z < 1.

    Direct series for z <= 0.5; otherwise the z -> 1-z connection formula,
    with the degenerate integer c-a-b case handled by the logarithmic variant.
    """
    if not (0.0 <= z < 1.0):
        raise ValueError(f"gauss_2f1 requires 0 <= z < 1, got z={z}")
    if _is_nonpos_int(c):
        raise ValueError(f"gauss_2f1 pole: c={c} is a nonpositive integer")
    if z == 0.0:
        return 1.0
    if _is_nonpos_int(a) or _is_nonpos_int(b):
        return _2f1_series(a, b, c, z, acc)  # terminating polynomial
    if z <= 0.5:
        return _2f1_series(a, b, c, z, acc)

    m = c - a - b
    if abs(m - round(m)) > 1e-8:
        # connect at z -> 1-z; signed gammas, since negative non-integer
        # arguments are legal here and lgamma would drop the sign
        g1 = math.gamma(c) * math.gamma(m) * _rgamma(a + m) * _rgamma(b + m)
        g2 = math.gamma(c) * math.gamma(-m) * _rgamma(a) * _rgamma(b)
        w = 1.0 - z
        return (g1 * _2f1_series(a, b, 1.0 - m, w, acc)
                + g2 * w ** m * _2f1_series(a + m, b + m, 1.0 + m, w, acc))
    mi = int(round(m))
    if mi < 0:
        # flip to a nonnegative integer gap: F = (1-z)^m F(c-a, c-b; c; z)
        return (1.0 - z) ** m * gauss_2f1(c - a, c - b, c, z, acc)
    return _2f1_nearone_logcase(a, b, c, z, acc)


# ---------------------------------------------------------------------------
# Laguerre, Pochhammer, binomial
# ---------------------------------------------------------------------------

def laguerre(n: int, alpha: float, x: float) -> float:
    """Generalized Laguerre polynomial L_n^alpha(x) by the three-term recurrence."""
    if n < 0 or n != int(n):
        raise ValueError(f"laguerre requires integer n >= 0, got {n}")
    n = int(n)
    if n == 0:
        return 1.0
    p0 = 1.0
    p1 = 1.0 + alpha - x
    for k in range(1, n):
        p0, p1 = p1, ((2.0 * k + 1.0 + alpha - x) * p1 - (k + alpha) * p0) / (k + 1.0)
    return p1


def pochhammer(a: float, n: int) -> float:
    """(a)_n = Gamma(a+n)/Gamma(a) for integer n (negative n allowed)."""
    if n != int(n):
        raise ValueError(f"pochhammer requires integer n, got {n}")
    n = int(n)
    out = 1.0
    if n >= 0:
        for j in range(n):
            out *= a + j
        return out
    for j in range(1, -n + 1):
        d = a - j
        if d == 0.0:
            raise ValueError(f"pochhammer({a}, {n}) hits a gamma pole")
        out /= d
    return out


def binomial(top: float, k: int) -> float:
    """binom(top, k) = top (top-1) ... (top-k+1) / k! for real top, integer k >= 0."""
    if k < 0 or k != int(k):
        raise ValueError(f"binomial requires integer k >= 0, got {k}")
    out = 1.0
    for j in range(int(k)):
        out *= (top - j) / (j + 1.0)
    return out
