"""Optimal value of the variational problem and the CLR/LT bound factors.

With S = sup norm of the optimizer on Im z = -2/gamma and L = squared L2
norm on Im z = -1 (the boundary sup norm is exactly 1):

    M(gamma)   = 16 pi (gamma-2)^(gamma-2) / gamma^(gamma+1) * S^gamma / L
    CLR factor = (1/4) gamma^(gamma+1) / (gamma-2)^(gamma-2) * M,  gamma = d/sigma
    LT factor  = (1/4) gamma^((gamma+2)/2) / (gamma-2)^((gamma-4)/2) * M,
                 gamma = 2 + d/sigma

The two factor formulas are algebraically linked by
LT = CLR * ((gamma-2)/gamma)^(gamma/2) at equal gamma.  Prefactors switch to
log-space evaluation above gamma = 50 to avoid overflow of gamma^(gamma+1).
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .optimizer import l2_norm_sq_line, sup_norm_interior
from .phase import GammaParam, re_theta_inf_line
from .quadrature import DecayEnvelope, IntegralResult, QuadSpec, integrate_even_line

__all__ = [
    "BoundsReport",
    "PhysicalQuery",
    "LOG_SPACE_GAMMA",
    "m_gamma",
    "clr_factor",
    "clr_factor_at",
    "lt_factor",
    "lt_factor_at",
    "c_d_sigma",
    "clr_asymptotic",
    "lt_asymptotic",
    "scaling_constant",
    "bounds_report",
]

# prefactors like gamma^(gamma+1) are evaluated via exp/log above this
LOG_SPACE_GAMMA = 50.0


@dataclass(frozen=True)
class PhysicalQuery:
    """Dimension d and operator power sigma of a physical bound query.

    CLR bounds additionally require d/sigma > 2 (the inequality fails at
    or below 2); LT bounds only need d/sigma > 0.
    """

    d: int
    sigma: float

    def __post_init__(self):
        if not (isinstance(self.d, int) and self.d >= 1):
            raise DomainError(f"d must be a positive integer (got {self.d!r})")
        if not (self.sigma > 0):
            raise DomainError(f"sigma must be > 0 (got {self.sigma!r})")

    @property
    def ratio(self) -> float:
        return self.d / self.sigma


@dataclass(frozen=True)
class BoundsReport:
    """All computed quantities for one gamma, with the spec used."""

    gamma: float
    m_gamma: float
    ratio: float
    clr_factor: float
    lt_factor: float
    sup_interior: float
    l2_line_sq: float
    err_estimate: float
    spec_used: QuadSpec
    converged: bool = True


@functools.lru_cache(maxsize=256)
def _norms(gamma: float, spec: QuadSpec) -> tuple[IntegralResult, IntegralResult]:
    gp = GammaParam(gamma)
    return sup_norm_interior(gp, spec), l2_norm_sq_line(gp, spec)


def _combine(gamma: float, spec: QuadSpec, log_prefactor: float,
             direct_prefactor) -> IntegralResult:
    """prefactor * S^gamma / L with first-order error propagation.

    The relative error of S^gamma is gamma times the relative error of S.
    """
    sup, l2 = _norms(gamma, spec)
    if gamma > LOG_SPACE_GAMMA:
        value = math.exp(log_prefactor + gamma * math.log(sup.value)
                         - math.log(l2.value))
    else:
        value = direct_prefactor() * sup.value ** gamma / l2.value
    rel = gamma * sup.err_estimate / sup.value + l2.err_estimate / l2.value
    return IntegralResult(value, value * rel, sup.converged and l2.converged,
                          sup.evaluations + l2.evaluations)


def m_gamma(gp: GammaParam, spec: QuadSpec = QuadSpec()) -> IntegralResult:
    """The optimal value M(gamma) of the variational problem."""
    g = gp.gamma
    log_pref = (math.log(16.0 * math.pi) + (g - 2.0) * math.log(g - 2.0)
                - (g + 1.0) * math.log(g))
    return _combine(g, spec, log_pref,
                    lambda: 16.0 * math.pi * (g - 2.0) ** (g - 2.0) / g ** (g + 1.0))


def clr_factor_at(gamma: float, spec: QuadSpec = QuadSpec()) -> IntegralResult:
    """CLR bound factor at exponent gamma; simplifies to 4 pi S^gamma / L."""
    return _combine(gamma, spec, math.log(4.0 * math.pi),
                    lambda: 4.0 * math.pi)


def lt_factor_at(gamma: float, spec: QuadSpec = QuadSpec()) -> IntegralResult:
    """LT bound factor at exponent gamma: 4 pi ((gamma-2)/gamma)^(gamma/2) S^gamma / L."""
    g = gamma
    log_pref = math.log(4.0 * math.pi) + 0.5 * g * (math.log(g - 2.0) - math.log(g))
    return _combine(g, spec, log_pref,
                    lambda: 4.0 * math.pi * ((g - 2.0) / g) ** (0.5 * g))


def clr_factor(query: PhysicalQuery, spec: QuadSpec = QuadSpec()) -> IntegralResult:
    """Upper bound on the CLR constant ratio for (-Delta)^sigma + V."""
    if query.ratio <= 2.0:
        raise DomainError(
            f"CLR requires d/sigma > 2 (got d/sigma = {query.ratio!r})")
    return clr_factor_at(query.ratio, spec)


def lt_factor(query: PhysicalQuery, spec: QuadSpec = QuadSpec()) -> IntegralResult:
    """Upper bound on the LT constant ratio for (-Delta)^sigma + V."""
    return lt_factor_at(2.0 + query.ratio, spec)


def c_d_sigma(query: PhysicalQuery, spec: QuadSpec = QuadSpec()) -> IntegralResult:
    """The combination (d/sigma) * M(2 + d/sigma); depends only on d/sigma."""
    r = query.ratio
    m = m_gamma(GammaParam(2.0 + r), spec)
    return IntegralResult(r * m.value, r * m.err_estimate, m.converged,
                          m.evaluations)


def _inf_line_amplitude(front: float) -> float:
    # Re theta_inf(x-i) + pi*x/2 is bounded; probe it and add a unit margin
    probe = QuadSpec(abs_tol=1e-8, rel_tol=1e-8, max_subdivisions=400)
    k_hat = max(re_theta_inf_line(x, probe).value + 0.5 * math.pi * x
                for x in (4.0, 8.0, 12.0))
    return front * math.exp(2.0 * (k_hat + 1.0))


def clr_asymptotic(spec: QuadSpec = QuadSpec()) -> IntegralResult:
    """Limit of the CLR factor as d/sigma -> infinity.

    4 pi e^2 / int_R (x^2+9)/(x^2+1) exp(2 Re theta_inf(x-i)) dx.
    """
    inner_spec = spec.tightened(10.0)
    state = {"err": 0.0, "converged": True, "evals": 0}

    def integrand(xs):
        out = np.empty_like(xs)
        for i, x in enumerate(xs):
            rt = re_theta_inf_line(float(x), inner_spec)
            state["err"] = max(state["err"], rt.err_estimate)
            state["converged"] &= rt.converged
            state["evals"] += rt.evaluations
            out[i] = (x * x + 9.0) / (x * x + 1.0) * math.exp(2.0 * rt.value)
        return out

    envelope = DecayEnvelope(amplitude=_inf_line_amplitude(9.0), rate=math.pi)
    integral = integrate_even_line(integrand, envelope, spec)
    value = 4.0 * math.pi * math.e ** 2 / integral.value
    rel = integral.err_estimate / integral.value + 2.0 * state["err"]
    return IntegralResult(value, value * rel,
                          integral.converged and state["converged"],
                          integral.evaluations + state["evals"])


def lt_asymptotic(spec: QuadSpec = QuadSpec()) -> IntegralResult:
    """Limit of the LT factor as d/sigma -> infinity: clr_asymptotic / e."""
    clr = clr_asymptotic(spec)
    return IntegralResult(clr.value / math.e, clr.err_estimate / math.e,
                          clr.converged, clr.evaluations)


def scaling_constant(gp: GammaParam, p: float, q: float, a: float) -> float:
    """Closed-form constant relating the penalized and scale-invariant problems.

    C = ((g-2)p/q)^(q/w) * (q/((g-2)p) + 1) * a^((g-2)p/w),  w = (g-2)p + q;
    it is the minimum over alpha > 0 of alpha^((g-2)p) F^p + alpha^(-q) a N^q
    divided by (N^(g-2) F)^(pq/w).
    """
    if not (p > 0 and q > 0 and a > 0):
        raise DomainError("scaling_constant requires p, q, a > 0")
    gp2 = (gp.gamma - 2.0) * p
    w = gp2 + q
    return (gp2 / q) ** (q / w) * (q / gp2 + 1.0) * a ** (gp2 / w)


def bounds_report(gp: GammaParam, spec: QuadSpec = QuadSpec()) -> BoundsReport:
    """One-stop report: M, both factors, norms and the three-lines ratio."""
    sup, l2 = _norms(gp.gamma, spec)
    m = m_gamma(gp, spec)
    clr = clr_factor_at(gp.gamma, spec)
    lt = lt_factor_at(gp.gamma, spec)
    ratio = sup.value * l2.value ** (-1.0 / gp.gamma)
    return BoundsReport(
        gamma=gp.gamma, m_gamma=m.value, ratio=ratio, clr_factor=clr.value,
        lt_factor=lt.value, sup_interior=sup.value, l2_line_sq=l2.value,
        err_estimate=m.err_estimate, spec_used=spec,
        converged=m.converged)
