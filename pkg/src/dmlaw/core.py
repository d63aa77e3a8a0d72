"""Analytic facts about the Darling-Mandelbrot law and its geometric
convolution.

The Darling-Mandelbrot law with tail exponent alpha, 0 < alpha < 1, is
the limit of the normalized cost of failed attempts in
anticipated-rejection sampling when a single attempt survives to at
least x elementary operations with probability ~ c * x**(-alpha).  Its
characteristic function is the reciprocal of an entire power series,

    phi_alpha(s) = 1 / (1 - sum_{n>=1} alpha/(n-alpha) * (is)**n / n!),

which is the workhorse here: it gives the moments by power-series
inversion, the Laplace transform by continuation to imaginary argument,
and the exponential tail rate a0 as the unique positive real zero of the
denominator.  The "shifted" variant (total cost including the one
successful attempt) multiplies by e**(is).

The geometric convolution with exact-hit probability p is the law of a
Geometric(p)-fold sum of independent shifted draws: it models samplers
whose completed attempts still fail (e.g. by overshooting the target
size) with probability 1 - p.
"""

import math
from dataclasses import dataclass

from dmlaw import specfun

# practical range of the power series in s; outside, direct the caller
# to density-based evaluation instead of silently losing digits
_CF_MAX_ARG = 30.0
_MAX_TERMS = 10_000


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"tail exponent must satisfy 0 < alpha < 1, got {alpha}")


def _check_p(p):
    if not 0.0 < p <= 1.0:
        raise ValueError(f"success probability must satisfy 0 < p <= 1, got {p}")


@dataclass(frozen=True)
class TailConstant:
    """Exponential tail descriptor of the Darling-Mandelbrot density.

    The density decays like ``amplitude * exp(-a0 * x)`` where -a0 is the
    real zero of the analytically-continued Laplace denominator and
    ``amplitude = (a0 / alpha) * exp(-a0)``.
    """

    a0: float
    amplitude: float


def _denom_series(alpha, w, coeff_slope=0.0):
    """Evaluate 1 - sum_{n>=1} (coeff_slope*n + alpha)/(n-alpha) * w**n / n!.

    With coeff_slope = 0 this is the characteristic-function denominator
    at is = w (w may be complex); coeff_slope = (1-p)/p gives the
    denominator of the geometric convolution's direct series.
    """
    total = 1.0 + 0.0j if isinstance(w, complex) else 1.0
    term = 1.0 + 0.0j if isinstance(w, complex) else 1.0
    for n in range(1, _MAX_TERMS):
        term *= w / n
        contrib = (coeff_slope * n + alpha) / (n - alpha) * term
        total -= contrib
        if abs(contrib) < 1e-16 * max(1.0, abs(total)):
            return total
    raise ArithmeticError(f"denominator series did not converge at w={w}")


def cf_dm(alpha, s, shifted=False):
    """Characteristic function of the Darling-Mandelbrot law at real s.

    Returns a complex value; with ``shifted`` the law is translated by +1
    (multiplication by e**(is)).  Raises for |s| > 30 where the power
    series loses practical accuracy -- use the density grid and numerical
    integration for large arguments instead.
    """
    _check_alpha(alpha)
    if abs(s) > _CF_MAX_ARG:
        raise ValueError(
            f"cf_dm: |s|={abs(s):.3g} beyond the series' practical range "
            f"({_CF_MAX_ARG:g}); integrate against the density grid instead"
        )
    value = 1.0 / _denom_series(alpha, 1j * float(s))
    if shifted:
        value *= complex(math.cos(s), math.sin(s))
    return value


def cf_dmp(alpha, p, s, shifted=False):
    """Characteristic function of the geometric convolution law.

    Computed by geometric resummation: p*phi / (1 - (1-p)*e**(is)*phi)
    with phi = cf_dm(alpha, s).  The modulus of the geometric factor is
    bounded by 1-p, so the denominator stays away from zero.  With
    ``shifted`` the result carries the final e**(is) factor, giving the
    characteristic function of the full cost law.
    """
    _check_alpha(alpha)
    _check_p(p)
    phi = cf_dm(alpha, s)
    eis = complex(math.cos(s), math.sin(s))
    value = p * phi / (1.0 - (1.0 - p) * eis * phi)
    if shifted:
        value *= eis
    return value


def laplace_dm(alpha, z):
    """Laplace transform of the Darling-Mandelbrot density at real z > 0.

    Uses the incomplete-gamma closed form z**(-alpha) / (-alpha *
    lower_gamma(-alpha, z)); equal to the series continuation
    1 / _denom_series(alpha, -z) to ~1e-12 on z in [0.2, 10].
    """
    _check_alpha(alpha)
    if not z > 0.0:
        raise ValueError(f"laplace_dm: need z > 0, got {z}")
    return z ** (-alpha) / (-alpha * specfun.lower_gamma(-alpha, z))


def _raw_moments(alpha, max_order, coeff_slope=0.0):
    """Moments (orders 0..max_order) of the law whose characteristic
    function is 1/(1 - sum (coeff_slope*n + alpha)/(n-alpha) (is)^n/n!),
    by power-series inversion.  Returned unscaled (true moments)."""
    # scaled[n] = m_n / n!; inversion of (1 - C(s)) * phi(s) = 1
    coeffs = [0.0] + [
        (coeff_slope * n + alpha) / ((n - alpha) * math.factorial(n))
        for n in range(1, max_order + 1)
    ]
    scaled = [1.0] + [0.0] * max_order
    for n in range(1, max_order + 1):
        scaled[n] = sum(coeffs[j] * scaled[n - j] for j in range(1, n + 1))
    return [scaled[n] * math.factorial(n) for n in range(max_order + 1)]


def _shift_moments(raw):
    """Moments of Y+1 from moments of Y (binomial expansion)."""
    out = []
    for n in range(len(raw)):
        out.append(sum(math.comb(n, j) * raw[j] for j in range(n + 1)))
    return out


def moments_dm(alpha, order, shifted=False):
    """order-th moment of the Darling-Mandelbrot law, optionally of the
    +1-shifted variant.

    Closed forms for checking: the shifted mean is 1/(1-alpha) and the
    variance (shift-invariant) is alpha/((1-alpha)**2 * (2-alpha)).
    """
    _check_alpha(alpha)
    if order < 1 or order != int(order):
        raise ValueError(f"moments_dm: order must be a positive integer, got {order}")
    raw = _raw_moments(alpha, int(order))
    if shifted:
        raw = _shift_moments(raw)
    return raw[int(order)]


def moments_dmp(alpha, p, order):
    """order-th moment of the full geometric-convolution cost law.

    The mean is 1/(p*(1-alpha)) and the variance
    (alpha + 2*(1-p)*(1-alpha)) / (p**2 * (1-alpha)**2 * (2-alpha)).
    At p = 1 this reduces to the shifted moments through the same code
    path (the extra series coefficient vanishes identically).
    """
    _check_alpha(alpha)
    _check_p(p)
    if order < 1 or order != int(order):
        raise ValueError(f"moments_dmp: order must be a positive integer, got {order}")
    raw = _raw_moments(alpha, int(order), coeff_slope=(1.0 - p) / p)
    return _shift_moments(raw)[int(order)]


def find_a0(alpha):
    """Tail rate of the Darling-Mandelbrot law: the unique positive zero of the
    characteristic-function denominator continued to real argument.

    The denominator D(z) = 1 - sum alpha/(n-alpha) z^n/n! satisfies
    D(0) = 1 and D(z) -> -inf, so a sign change exists; it is bracketed
    by doubling, narrowed by bisection and polished by Newton steps to
    1e-12.  Returns a TailConstant (rate and tail amplitude).
    """
    _check_alpha(alpha)

    def d(z):
        return _denom_series(alpha, z).real if isinstance(z, complex) else _denom_series(alpha, z)

    lo, hi = 0.0, 1.0
    for _ in range(200):
        if d(hi) < 0.0:
            break
        lo, hi = hi, 2.0 * hi
    else:  # pragma: no cover - impossible for 0 < alpha < 1
        raise ArithmeticError("find_a0: failed to bracket the denominator zero")
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if d(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    root = 0.5 * (lo + hi)
    # Newton polish; derivative of the denominator series
    for _ in range(6):
        f = d(root)
        df = 0.0
        term = 1.0  # z^(n-1)/(n-1)! at n=1
        for n in range(1, _MAX_TERMS):
            contrib = alpha / (n - alpha) * term
            df -= contrib
            term *= root / n
            if abs(contrib) < 1e-18 * max(1.0, abs(df)):
                break
        step = f / df
        root -= step
        if abs(step) < 1e-13 * root:
            break
    return TailConstant(a0=root, amplitude=root / alpha * math.exp(-root))


def legendre_nu(theta_max, scan_step=0.25, nu_cap=40.0):
    """Smallest positive degree nu with P_nu(cos(theta_max)) = 0.

    Scan-plus-bisection on nu in (0, nu_cap]; accuracy 1e-8.  The
    half-angle of a circular cone with this axis angle has survival
    exponent alpha = nu/2 for the random walk confined to it.
    """
    if not 0.0 < theta_max < math.pi:
        raise ValueError(f"legendre_nu: need theta_max in (0, pi), got {theta_max}")
    x = math.cos(theta_max)
    prev_nu, prev_val = 0.0, 1.0  # P_0 = 1
    nu = scan_step
    while nu <= nu_cap + 1e-12:
        val = specfun.legendre_p(nu, x)
        if val == 0.0:
            return nu
        if prev_val > 0.0 > val or prev_val < 0.0 < val:
            lo, hi, flo = prev_nu, nu, prev_val
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                fmid = specfun.legendre_p(mid, x)
                if fmid == 0.0:
                    return mid
                if (flo > 0) == (fmid > 0):
                    lo, flo = mid, fmid
                else:
                    hi = mid
            return 0.5 * (lo + hi)
        prev_nu, prev_val = nu, val
        nu += scan_step
    raise ArithmeticError(
        f"legendre_nu: no sign change found for nu <= {nu_cap} at theta_max={theta_max}"
    )


def wedge_alpha(theta):
    """Survival exponent pi/(2*theta) of the planar walk confined to a
    wedge of opening angle theta (theta in (0, 2*pi]; the value 2*pi is
    the plane slit along a half-line)."""
    if not theta > 0.0:
        raise ValueError(f"wedge_alpha: need theta > 0, got {theta}")
    if theta > 2.0 * math.pi + 1e-12:
        raise ValueError(
            f"wedge_alpha: theta={theta} exceeds 2*pi; winding sectors not supported"
        )
    return math.pi / (2.0 * theta)
