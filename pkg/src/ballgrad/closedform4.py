"""Closed-form evaluation of the sharp gradient-bound quantities in R^4.

Everything here is an explicit formula: the radial profile function
``psi_closed``, the directional-constant components ``c_components`` /
``c_closed``, the radial constants ``frak_c`` / ``c_at_zero`` /
``gradient_bound``, and the classical reference constants for the disk
and for half-spaces in every dimension.

Removable singularities (0/0 of order r^3 at r=0, and of order z at z=0
inside h1) are served by truncated series branches below the thresholds
``SERIES_R_THRESHOLD`` / ``SERIES_Z_THRESHOLD``; the series coefficients
were derived symbolically offline and are validated against
high-precision evaluation in the test suite.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .exceptions import EvaluationError, SeriesBranchWarning

SERIES_R_THRESHOLD = 1e-3
SERIES_Z_THRESHOLD = 1e-6

_16_3PI = 16.0 / (3.0 * math.pi)


@dataclass(frozen=True)
class EvalPoint:
    """A parameter pair (r, z): radius r in (0,1), auxiliary variable z >= 0."""

    r: float
    z: float

    def __post_init__(self):
        if not (0.0 < self.r < 1.0):
            raise ValueError(f"r must lie in (0, 1), got {self.r}")
        if not (self.z >= 0.0):
            raise ValueError(f"z must be >= 0, got {self.z}")


@dataclass(frozen=True)
class SharpConstantReport:
    r: float
    frak_c: float
    c_at_zero: float
    gradient_bound: float
    method: str  # "closed_form" | "series_branch"


def _sqrt_s(r, z):
    # sqrt(4 - r^2 + 4 z^2); strictly positive for r < 2
    return np.sqrt(4.0 - r * r + 4.0 * z * z)


def _atan_den(r, z):
    # (2 - r^2)^2 + 4 (1 - r^2) z^2 -- strictly positive for r < 1,
    # so the arctan terms never need a quadrant correction.
    d = (2.0 - r * r) ** 2 + 4.0 * (1.0 - r * r) * z * z
    assert np.all(d > 0.0), "arctan denominator lost positivity"
    return d


def _psi_closed_arr(r, z):
    """Vectorized closed form of the profile function; z may be any sign."""
    z = np.asarray(z, dtype=float)
    r2 = r * r
    s = _sqrt_s(r, z)
    den = _atan_den(r, z)
    z2 = z * z

    t1 = r * ((4.0 + r2 * (4.0 + r)) * z + 4.0 * (1.0 + r2) * z * z2
              + (2.0 + r2 + 2.0 * (1.0 + r2) * z2) * s) \
        / ((1.0 + z2) * (1.0 - r2))
    t2 = 4.0 * np.arctan(r * (-2.0 * r * z + (r2 - 2.0) * s) / den)

    # log argument 1 + z(z + r^2 z - r s): cancels catastrophically for
    # large positive z, so use the rationalized equivalent there; the
    # direct form is cancellation-free for z <= 0.
    p2 = 1.0 + (2.0 - 2.0 * r2 + r2 * r2) * z2 + (1.0 - r2) ** 2 * z2 * z2
    arg_pos = p2 / (1.0 + (1.0 + r2) * z2 + r * z * s)
    arg_neg = 1.0 + z * (z + r2 * z - r * s)
    arg = np.where(z >= 0.0, arg_pos, arg_neg)
    if not np.all(arg > 0.0):
        raise EvaluationError("log argument went non-positive in psi_closed "
                              f"(r={r}); this indicates catastrophic cancellation")
    t3 = 2.0 * (1.0 - r2) * z * np.log(arg / ((1.0 + r) ** 2 * (1.0 + z2)))

    return (1.0 - r) * (1.0 + r) ** 3 / (64.0 * r ** 3) * (t1 + t2 + t3)


def psi_closed(p, sign=1):
    """Closed form of the profile integral Psi_r(sign * z).

    ``sign=-1`` evaluates the reflected profile Psi_r(-z) (the same
    expression continued to a negative argument; validated against
    direct quadrature).
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return float(_psi_closed_arr(p.r, sign * p.z))


def _h1_quotient(r, z):
    # (atanh(r z/S) - atanh(r(r^2-3) z/S)) / (2 (1-r^2) z), continued to z=0.
    s = _sqrt_s(r, z)
    if z < SERIES_Z_THRESHOLD:
        # limit r*sqrt(4-r^2)/(2(1-r^2)) plus the z^2 correction term
        s0 = math.sqrt(4.0 - r * r)
        c2 = r * (-2.0 / s0 + r * r * (28.0 - 27.0 * r ** 2 + 9.0 * r ** 4 - r ** 6)
                  / (3.0 * s0 ** 3))
        return (r * s0 + z * z * c2) / (2.0 * (1.0 - r * r))
    a = r * z / s
    b = r * (r * r - 3.0) * z / s
    if not (abs(a) < 1.0 and abs(b) < 1.0):
        raise ValueError("inverse-tanh argument left (-1, 1) in h1")
    return (math.atanh(a) - math.atanh(b)) / (2.0 * (1.0 - r * r) * z)


def c_components(p):
    """The three components (h1, h2, h3) of the directional constant.

    c_closed(p) == 2 (1-r) / (pi r^3 sqrt(1+z^2)) * (h1 + h2 + h3).

    The two arctan terms of h2 are combined minus-first, which is the
    ordering that makes c_closed agree with the independent quadrature
    oracle (h2 is negative at z = 0 under this convention).
    """
    r, z = p.r, p.z
    r2 = r * r
    s = float(_sqrt_s(r, z))
    den = float(_atan_den(r, z))

    h1 = r * (1.0 + r2) * s / (2.0 * (1.0 - r2)) + _h1_quotient(r, z)
    h2 = math.atan(r * (2.0 * r * z - (2.0 - r2) * s) / den) \
        - math.atan(r * (2.0 * r * z + (2.0 - r2) * s) / den)

    a3 = r * z * s / (1.0 + (1.0 + r2) * z * z)
    if not abs(a3) < 1.0:
        raise ValueError("inverse-tanh argument left (-1, 1) in h3")
    h3 = 0.5 * (r2 - 1.0) * z * math.atanh(a3)
    return h1, h2, h3


def _hsum_series(r, z):
    # h1 + h2 + h3 = c3(z) r^3 + c5(z) r^5 + O(r^7)
    z2 = z * z
    opz = 1.0 + z2
    c3 = 8.0 / 3.0 * math.sqrt(opz)
    c5 = (32.0 * z2 ** 4 + 135.0 * z2 ** 3 + 213.0 * z2 ** 2 + 149.0 * z2 + 39.0) \
        / (15.0 * opz ** 3.5)
    return c3 * r ** 3 + c5 * r ** 5


def c_closed(p):
    """The directional constant C(z, r) for n = 4, in closed form."""
    r, z = p.r, p.z
    if r < SERIES_R_THRESHOLD:
        warnings.warn(f"r={r} below series threshold; using series branch",
                      SeriesBranchWarning, stacklevel=2)
        hsum = _hsum_series(r, z)
    else:
        h1, h2, h3 = c_components(p)
        hsum = h1 + h2 + h3
    return 2.0 * (1.0 - r) / (math.pi * r ** 3 * math.sqrt(1.0 + z * z)) * hsum


def envelope_L(p):
    """The numerator combination L(z) inside h1 (nonnegative, bounded by
    r z sqrt(4 - r^2))."""
    r, z = p.r, p.z
    s = float(_sqrt_s(r, z))
    return math.atanh(r * z / s) - math.atanh(r * (r * r - 3.0) * z / s)


def envelope_g1(p):
    """The envelope g1(z) = (r sqrt(4-r^2) + r(1+r^2) sqrt(4-r^2+4z^2)) / sqrt(1+z^2),
    decreasing in z with maximum at z = 0."""
    r, z = p.r, p.z
    s = float(_sqrt_s(r, z))
    return (r * math.sqrt(4.0 - r * r) + r * (1.0 + r * r) * s) \
        / math.sqrt(1.0 + z * z)


def _n_of_r(r):
    # r sqrt(4-r^2)(2+r^2) + 4(1-r^2) arctan(r sqrt(4-r^2)/(r^2-2));
    # the arctan argument is negative, so the second term is negative.
    s0 = math.sqrt(4.0 - r * r)
    return r * s0 * (2.0 + r * r) \
        + 4.0 * (1.0 - r * r) * math.atan(r * s0 / (r * r - 2.0))


def frak_c(r):
    """The sharp-constant profile F(r) on the closed interval [0, 1].

    Strictly decreasing; F(0) = 16/(3 pi) (series limit), and F(1) is
    evaluated directly.
    """
    if not (0.0 <= r <= 1.0):
        raise ValueError(f"r must lie in [0, 1], got {r}")
    if r < SERIES_R_THRESHOLD:
        return (16.0 / 3.0 - (2.0 / 15.0) * r * r) / math.pi
    return _n_of_r(r) / (math.pi * r ** 3)


def c_at_zero(r):
    """The z = 0 value C(0, r) = F(r)/(1 + r), directly from its formula."""
    if not (0.0 < r < 1.0):
        raise ValueError(f"r must lie in (0, 1), got {r}")
    if r < SERIES_R_THRESHOLD:
        return frak_c(r) / (1.0 + r)
    return _n_of_r(r) / (math.pi * (1.0 + r) * r ** 3)


def gradient_bound(r):
    """Sharp multiplier of the sup-norm bounding the full gradient at |x| = r.

    Equals F(r)/(1 - r^2); finite for every r in [0, 1) and divergent as
    r -> 1 (a ValueError is raised at r = 1 rather than returning inf).
    """
    if not (0.0 <= r < 1.0):
        raise ValueError(f"r must lie in [0, 1); the bound diverges at r=1 (got {r})")
    # factored denominator: 1 - r*r loses digits as r -> 1
    return frak_c(r) / ((1.0 - r) * (1.0 + r))


def v_certificate(r):
    """Auxiliary function whose nonnegativity certifies that frak_c decreases.

    v(0) = 0 and v'(r) = r^4 sqrt(4-r^2) / (2 (3-r^2)^2) >= 0.
    """
    if not (0.0 <= r <= 1.0):
        raise ValueError(f"r must lie in [0, 1], got {r}")
    if r == 0.0:
        return 0.0
    s0 = math.sqrt(4.0 - r * r)
    return r * (4.0 - r * r) * (6.0 - r * r) / (4.0 * (3.0 - r * r) * s0) \
        + math.atan(r * s0 / (r * r - 2.0))


def halfspace_constant(n, x_n=1.0):
    """Sharp gradient constant for bounded harmonic functions on a
    half-space in R^n, at distance x_n from the boundary.

    (4/sqrt(pi)) (n-1)^((n-1)/2) n^(-n/2) Gamma(n/2)/Gamma((n-1)/2) / x_n
    """
    if not (isinstance(n, (int, np.integer)) and n >= 2):
        raise ValueError(f"dimension must be an integer >= 2, got {n}")
    if not x_n > 0.0:
        raise ValueError(f"boundary distance must be positive, got {x_n}")
    log_gamma_ratio = math.lgamma(n / 2.0) - math.lgamma((n - 1) / 2.0)
    return 4.0 / math.sqrt(math.pi) * (n - 1.0) ** ((n - 1) / 2.0) \
        / n ** (n / 2.0) * math.exp(log_gamma_ratio) / x_n


def disk_constant(r):
    """Sharp gradient constant for the unit disk: (4/pi)/(1 - r^2)."""
    if not (0.0 <= r < 1.0):
        raise ValueError(f"r must lie in [0, 1), got {r}")
    return (4.0 / math.pi) / (1.0 - r * r)


def sharp_constant_report(r):
    """Bundle frak_c, c_at_zero and the gradient bound for one radius."""
    if not (0.0 <= r < 1.0):
        raise ValueError(f"r must lie in [0, 1), got {r}")
    fc = frak_c(r)
    gb = fc / ((1.0 - r) * (1.0 + r))
    c0 = fc / (1.0 + r)
    method = "series_branch" if r < SERIES_R_THRESHOLD else "closed_form"
    return SharpConstantReport(r=r, frak_c=fc, c_at_zero=c0,
                               gradient_bound=gb, method=method)
