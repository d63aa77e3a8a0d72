"""Scalar special functions used by the distribution core.

Everything here is real-argument only.  The incomplete gamma functions are
needed with a *negative non-integer* first parameter (the tail exponent
enters as -alpha with 0 < alpha < 1), which the usual library routines do
not cover; they are reduced by the upward shift recurrence

    Gamma(s, z) = (Gamma(s+1, z) - z**s * exp(-z)) / s

to the safe range s in (0, 1] where the standard continued-fraction/series
evaluation (scipy's regularized ``gammaincc``) applies.

The Gauss hypergeometric sum is a plain power series plus the z/(z-1)
Pfaff transformation so that arguments z <= -1 (needed to continue the
density's interval-1 closed form past x = 2) stay inside the unit disk.

All functions are pure and thread-safe.
"""

import math

from scipy.special import gammaincc as _reg_upper_gamma

_MAX_TERMS = 10_000


def gamma(y):
    """Gamma function, rejecting the poles at 0, -1, -2, ...

    Relative accuracy about 1e-15 for |y| <= 30 (delegates to the C
    library implementation).
    """
    if y != y or math.isinf(y):
        raise ValueError(f"gamma: argument must be finite, got {y}")
    if y <= 0.0 and y == math.floor(y):
        raise ValueError(f"gamma: pole at non-positive integer y={y}")
    return math.gamma(y)


def upper_gamma(s, z):
    """Upper incomplete gamma Gamma(s, z) = int_z^inf x**(s-1) e**(-x) dx.

    Parameters
    ----------
    s : float
        Real parameter.  Negative values are allowed as long as s is not
        a non-positive integer (the shift recurrence divides by s).
    z : float
        Must be positive (real branch only).

    Notes
    -----
    For s > 0 this is ``gammaincc(s, z) * Gamma(s)``.  For s < 0 the
    value is built by the upward recurrence from s+1, s+2, ... until the
    parameter is positive; one or two steps suffice for the range used
    by the distribution core (s = -alpha in (-1, 0)).
    """
    if not z > 0.0:
        raise ValueError(f"upper_gamma: z must be > 0, got {z}")
    if s <= 0.0 and s == math.floor(s):
        raise ValueError(
            f"upper_gamma: non-positive integer parameter s={s} not supported"
        )
    if s > 0.0:
        return _reg_upper_gamma(s, z) * math.gamma(s)
    # climb to positive parameter, then unwind:
    #   Gamma(s, z) = (Gamma(s+1, z) - z^s e^-z) / s
    n_shift = int(math.ceil(-s))
    top = upper_gamma(s + n_shift, z)
    logz = math.log(z)
    for k in range(n_shift - 1, -1, -1):
        sk = s + k
        top = (top - math.exp(sk * logz - z)) / sk
    return top


def lower_gamma(s, z):
    """Lower incomplete gamma gamma(s, z) = Gamma(s) - Gamma(s, z)."""
    if not z > 0.0:
        raise ValueError(f"lower_gamma: z must be > 0, got {z}")
    return gamma(s) - upper_gamma(s, z)


def erf(x):
    """Error function (standard normalization), any real x."""
    return math.erf(x)


def gauss_2f1(a, b, c, z):
    """Gauss hypergeometric sum 2F1(a, b; c; z) for real arguments, z < 1.

    The direct series is used for z in (-1, 1); for z <= -0.5 the Pfaff
    transformation

        2F1(a, b; c; z) = (1-z)**(-a) * 2F1(a, c-b; c; z/(z-1))

    maps the argument into (1/3, 1), keeping the series geometric.  The
    series stops when a term drops below 1e-16 of the partial sum; if the
    running sum is much larger than the result the answer has lost
    significance and an error is raised instead of returning noise.
    """
    if c <= 0.0 and c == math.floor(c):
        raise ValueError(f"gauss_2f1: c must not be a non-positive integer, got {c}")
    if z >= 1.0:
        raise ValueError(f"gauss_2f1: need z < 1, got {z}")
    if z <= -0.5:
        # Pfaff: argument z/(z-1) lands in [1/3, 1) for z <= -0.5
        return (1.0 - z) ** (-a) * gauss_2f1(a, c - b, c, z / (z - 1.0))

    total = 1.0
    term = 1.0
    peak = 1.0
    for n in range(_MAX_TERMS):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z
        total += term
        mag = abs(total)
        if mag > peak:
            peak = mag
        if abs(term) < 1e-16 * max(1.0, mag):
            # alternating/cancelling series: make sure the partial sums
            # never dwarfed the result, otherwise the digits are gone
            if mag < 1e-13 * peak and peak > 1.0:
                raise ArithmeticError(
                    "gauss_2f1: catastrophic cancellation "
                    f"(result {total:.3e} vs partial-sum peak {peak:.3e})"
                )
            return total
    raise ArithmeticError(
        f"gauss_2f1: no convergence after {_MAX_TERMS} terms (a={a}, b={b}, c={c}, z={z})"
    )


def legendre_p(nu, x):
    """Legendre function P_nu(x) of real degree nu >= 0, for x in (-1, 1].

    Computed as 2F1(-nu, nu+1; 1; (1-x)/2); for integer nu this reduces
    to the Legendre polynomial.
    """
    if nu < 0.0:
        raise ValueError(f"legendre_p: need nu >= 0, got {nu}")
    if not (-1.0 < x <= 1.0):
        raise ValueError(f"legendre_p: need x in (-1, 1], got {x}")
    if x == 1.0:
        return 1.0
    return gauss_2f1(-nu, nu + 1.0, 1.0, 0.5 * (1.0 - x))
