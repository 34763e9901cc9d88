"""Phase function of the strip optimizer.

The optimizer of the three-lines problem is B(z) * exp(theta(z)) where theta
is holomorphic on |Im z| < 2 with a continuous extension to the closed strip.
Splitting theta = Re + i*Im at z = x + i*y gives two absolutely convergent
integrals over k in (0, infinity):

    Re theta(x+iy) = -(1/pi) * int g(k) (cos(xk) sinh(yk) - yk) / (k (cosh 2k - 1)) dk
    Im theta(x+iy) = +(1/pi) * int g(k) (sin(xk) cosh(yk) - xk) / (k (cosh 2k - 1)) dk

with the even, exponentially decaying weight

    g(k) = pi * (2 exp(-(2-2/g)|k|) + exp(-(2/g)|k|) - exp(-(4-2/g)|k|)),

for exponent parameter g > 2, and the limiting weight
g_inf(k) = pi * (2 exp(-2|k|) + 1 - exp(-4|k|)).

Both integrand ratios have a removable singularity of order k^3/k^3 at the
origin.  Below the threshold K0_SERIES they are evaluated by a Taylor series
in k^2 (numerator and denominator each divided by k^3); above it, by
cancellation-free identities (cosh(2k) - 1 = 2 sinh(k)^2, cos(u) - 1 =
-2 sin(u/2)^2, series for sinh(t) - t and sin(u) - u at small arguments),
switching to a scaled-exponential form for k >= 30 so that nothing
overflows for any k.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quadrature import DecayEnvelope, IntegralResult, QuadSpec, integrate_semi_infinite

__all__ = [
    "GammaParam",
    "StripPoint",
    "PhaseValue",
    "GAMMA_MIN",
    "GAMMA_MAX",
    "K0_SERIES",
    "g_gamma",
    "g_inf",
    "re_kernel",
    "im_kernel",
    "re_theta",
    "im_theta",
    "theta",
    "re_theta_inf_line",
]

GAMMA_MIN = 2.01
GAMMA_MAX = 1e6

# crossover between the Taylor branch and direct evaluation of the kernels
K0_SERIES = 1e-2
# crossover to the scaled-exponential (overflow-free) form
_K_BIG = 30.0
# below this argument, sinh(t)-t and sin(u)-u use their own series
_T_SMALL = 0.15


@dataclass(frozen=True)
class GammaParam:
    """Exponent parameter of the variational problem.

    Requires gamma > 2; the supported numeric range is [2.01, 1e6].  The
    value math.inf encodes the limiting problem (use GammaParam.limit()).
    """

    gamma: float

    def __post_init__(self):
        g = self.gamma
        if g == math.inf:
            return
        if not (g > 2.0):
            raise DomainError(f"gamma must be > 2 (got {g!r})")
        if not (GAMMA_MIN <= g <= GAMMA_MAX):
            raise DomainError(
                f"gamma={g!r} outside the supported range [{GAMMA_MIN}, {GAMMA_MAX}]")

    @classmethod
    def limit(cls) -> "GammaParam":
        """The gamma -> infinity variant (asymptotic weight g_inf)."""
        return cls(math.inf)

    @property
    def is_limit(self) -> bool:
        return self.gamma == math.inf

    def weight(self, k):
        """The weight g(k) for this parameter (g_inf for the limit variant)."""
        if self.is_limit:
            return g_inf(k)
        return g_gamma(self, k)

    def weight_slowest_rate(self) -> float:
        """Decay rate of the slowest exponential mode of the weight."""
        return 0.0 if self.is_limit else 2.0 / self.gamma


@dataclass(frozen=True)
class StripPoint:
    """Point z = x + iy of the closed strip |Im z| <= 2."""

    x: float
    y: float

    def __post_init__(self):
        if not (abs(self.y) <= 2.0):
            raise DomainError(f"|Im z| <= 2 required (got y={self.y!r})")

    @property
    def as_complex(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True)
class PhaseValue:
    """Value of theta at one strip point, with propagated quadrature error."""

    re: float
    im: float
    err_estimate: float

    @property
    def as_complex(self) -> complex:
        return complex(self.re, self.im)


def g_gamma(gp: GammaParam, k):
    """Weight g(k); strictly positive, even, g(0) = 2*pi."""
    a = np.abs(k)
    inv = 2.0 / gp.gamma
    return math.pi * (2.0 * np.exp(-(2.0 - inv) * a) + np.exp(-inv * a)
                      - np.exp(-(4.0 - inv) * a))


def g_inf(k):
    """Limiting weight; g_inf(0) = 2*pi and g_inf -> pi at infinity."""
    a = np.abs(k)
    return math.pi * (2.0 * np.exp(-2.0 * a) + 1.0 - np.exp(-4.0 * a))


def _sinh_m1(t: np.ndarray) -> np.ndarray:
    """sinh(t) - t without cancellation for small |t|."""
    t2 = t * t
    series = (t * t2 / 6.0) * (1.0 + t2 * (1.0 / 20.0 + t2 * (1.0 / 840.0 + t2 / 60480.0)))
    small = np.abs(t) < _T_SMALL
    return np.where(small, series, np.sinh(np.where(small, 0.0, t)) - t)


def _sin_m1(u: np.ndarray) -> np.ndarray:
    """sin(u) - u without cancellation for small |u|."""
    u2 = u * u
    series = -(u * u2 / 6.0) * (1.0 - u2 * (1.0 / 20.0 - u2 * (1.0 / 840.0 - u2 / 60480.0)))
    return np.where(np.abs(u) < _T_SMALL, series, np.sin(u) - u)


def _den_over_k3(k2: np.ndarray) -> np.ndarray:
    # k*(cosh(2k)-1) / k^3 as a Taylor series in k^2
    return 2.0 * (1.0 + k2 * (1.0 / 3.0 + k2 * (2.0 / 45.0 + k2 / 315.0)))


def _re_ratio(k: np.ndarray, x: float, y: float) -> np.ndarray:
    """(cos(xk) sinh(yk) - yk) / (k (cosh(2k)-1)) for k > 0, stable for all k."""
    out = np.empty_like(k)
    small = k < K0_SERIES
    big = k >= _K_BIG
    mid = ~(small | big)

    if small.any():
        k2 = k[small] ** 2
        b0 = y * (y * y - 3.0 * x * x) / 6.0
        b2 = y ** 5 / 120.0 - x * x * y ** 3 / 12.0 + x ** 4 * y / 24.0
        b4 = (y ** 7 / 5040.0 - x * x * y ** 5 / 240.0
              + x ** 4 * y ** 3 / 144.0 - x ** 6 * y / 720.0)
        out[small] = (b0 + k2 * (b2 + k2 * b4)) / _den_over_k3(k2)

    if mid.any():
        km = k[mid]
        t = y * km
        u = x * km
        num = np.cos(u) * _sinh_m1(t) - 2.0 * t * np.sin(0.5 * u) ** 2
        out[mid] = num / (2.0 * km * np.sinh(km) ** 2)

    if big.any():
        kb = k[big]
        ay = abs(y)
        sy = math.copysign(1.0, y) if y != 0.0 else 0.0
        grow = np.exp((ay - 2.0) * kb)
        num = (np.cos(x * kb) * sy * (-np.expm1(-2.0 * ay * kb)) * grow
               - 2.0 * y * kb * np.exp(-2.0 * kb))
        den = kb * np.expm1(-2.0 * kb) ** 2
        out[big] = num / den

    return out


def _im_ratio(k: np.ndarray, x: float, y: float) -> np.ndarray:
    """(sin(xk) cosh(yk) - xk) / (k (cosh(2k)-1)) for k > 0, stable for all k."""
    out = np.empty_like(k)
    small = k < K0_SERIES
    big = k >= _K_BIG
    mid = ~(small | big)

    if small.any():
        k2 = k[small] ** 2
        c0 = x * (3.0 * y * y - x * x) / 6.0
        c2 = x * y ** 4 / 24.0 - x ** 3 * y * y / 12.0 + x ** 5 / 120.0
        c4 = (x * y ** 6 / 720.0 - x ** 3 * y ** 4 / 144.0
              + x ** 5 * y * y / 240.0 - x ** 7 / 5040.0)
        out[small] = (c0 + k2 * (c2 + k2 * c4)) / _den_over_k3(k2)

    if mid.any():
        km = k[mid]
        t = y * km
        u = x * km
        num = np.sin(u) * 2.0 * np.sinh(0.5 * t) ** 2 + _sin_m1(u)
        out[mid] = num / (2.0 * km * np.sinh(km) ** 2)

    if big.any():
        kb = k[big]
        ay = abs(y)
        grow = np.exp((ay - 2.0) * kb)
        num = (np.sin(x * kb) * (1.0 + np.exp(-2.0 * ay * kb)) * grow
               - 2.0 * x * kb * np.exp(-2.0 * kb))
        den = kb * np.expm1(-2.0 * kb) ** 2
        out[big] = num / den

    return out


def re_kernel(gp: GammaParam, k, x: float, y: float):
    """Integrand of Re theta before the -(1/pi) prefactor.

    Finite for every k > 0 including the removable k -> 0 singularity,
    where kernel / g(k) -> y(y^2-3x^2)/12.
    """
    ka = np.asarray(k, dtype=float)
    val = gp.weight(ka) * _re_ratio(np.atleast_1d(ka), x, y).reshape(ka.shape)
    return float(val) if np.isscalar(k) or ka.ndim == 0 else val


def im_kernel(gp: GammaParam, k, x: float, y: float):
    """Integrand of Im theta before the +(1/pi) prefactor."""
    ka = np.asarray(k, dtype=float)
    val = gp.weight(ka) * _im_ratio(np.atleast_1d(ka), x, y).reshape(ka.shape)
    return float(val) if np.isscalar(k) or ka.ndim == 0 else val


def _line_rate(gp: GammaParam, y: float) -> float:
    rate = gp.weight_slowest_rate() + 2.0 - abs(y)
    if rate <= 0.0:
        raise DomainError(
            "phase integral has no decaying envelope at |y|=2 for the limit variant")
    return rate


def re_theta(gp: GammaParam, x: float, y: float,
             spec: QuadSpec = QuadSpec()) -> IntegralResult:
    """Re theta(x+iy) on the closed strip |y| <= 2.

    Even in x and odd in y; identically zero on the real axis.  The tail
    envelope amplitude 64 bounds g(k)(|sinh(yk)|+|y|k)/(k(cosh 2k - 1))
    times e^{(2-|y|+2/gamma)k} for k >= 1.
    """
    if abs(y) > 2.0:
        raise DomainError(f"|y| <= 2 required (got {y!r})")
    envelope = DecayEnvelope(amplitude=64.0, rate=_line_rate(gp, y))
    res = integrate_semi_infinite(lambda k: _re_ratio(k, x, y) * gp.weight(k),
                                  0.0, envelope, spec)
    return IntegralResult(-res.value / math.pi + 0.0, res.err_estimate / math.pi,
                          res.converged, res.evaluations)


def im_theta(gp: GammaParam, x: float, y: float,
             spec: QuadSpec = QuadSpec()) -> IntegralResult:
    """Im theta(x+iy) on the closed strip; odd in x, even in y."""
    if abs(y) > 2.0:
        raise DomainError(f"|y| <= 2 required (got {y!r})")
    envelope = DecayEnvelope(amplitude=13.0 + 26.0 * abs(x), rate=_line_rate(gp, y))
    res = integrate_semi_infinite(lambda k: _im_ratio(k, x, y) * gp.weight(k),
                                  0.0, envelope, spec)
    return IntegralResult(res.value / math.pi, res.err_estimate / math.pi,
                          res.converged, res.evaluations)


def theta(gp: GammaParam, z: StripPoint, spec: QuadSpec = QuadSpec()) -> PhaseValue:
    """theta(z) = Re + i*Im on the closed strip; theta(0) = 0."""
    re = re_theta(gp, z.x, z.y, spec)
    im = im_theta(gp, z.x, z.y, spec)
    return PhaseValue(re.value, im.value, re.err_estimate + im.err_estimate)


def re_theta_inf_line(x: float, spec: QuadSpec = QuadSpec()) -> IntegralResult:
    """The y = -1 slice of the limiting phase, Re theta_inf(x - i).

    Equals int_0^inf (2 e^{-2k} + 1 - e^{-4k})(cos(xk) sinh(k) - k)
    / (k (cosh(2k)-1)) dk, i.e. the weight's pi prefactor absorbed into
    the displayed integrand.
    """
    return re_theta(GammaParam.limit(), x, -1.0, spec)
