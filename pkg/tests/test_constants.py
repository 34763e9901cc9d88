import math

import numpy as np
import pytest

from sharp_constants.constants import (
    PhysicalQuery,
    bounds_report,
    c_d_sigma,
    clr_asymptotic,
    clr_factor,
    clr_factor_at,
    lt_asymptotic,
    lt_factor,
    lt_factor_at,
    m_gamma,
    scaling_constant,
)
from sharp_constants.errors import DomainError
from sharp_constants.optimizer import l2_norm_sq_line, sup_norm_interior
from sharp_constants.phase import GammaParam
from sharp_constants.quadrature import QuadSpec

import frozen

SPEC = QuadSpec()


class TestMGamma:
    @pytest.mark.parametrize("g", [3.0, 6.0, 9.0])
    def test_published_values(self, g):
        res = m_gamma(GammaParam(g), SPEC)
        assert res.converged
        assert res.value == pytest.approx(frozen.M_GAMMA_TABLE[g], abs=5e-9)

    def test_error_estimate_covers_table_match(self):
        res = m_gamma(GammaParam(3.0), SPEC)
        assert res.err_estimate < 5e-9


class TestClrFactor:
    @pytest.mark.parametrize("d,sigma,key", [(5, 1.0, 5.0), (3, 1.0, 3.0),
                                             (8, 1.0, 8.0)])
    def test_published_values(self, d, sigma, key):
        res = clr_factor(PhysicalQuery(d, sigma), SPEC)
        assert res.value == pytest.approx(frozen.CLR_TABLE[key], abs=1e-5)

    def test_domain_gate(self):
        with pytest.raises(DomainError):
            clr_factor(PhysicalQuery(4, 2.0), SPEC)
        with pytest.raises(DomainError):
            clr_factor(PhysicalQuery(1, 1.0), SPEC)


class TestLtFactor:
    def test_published_values(self):
        assert lt_factor(PhysicalQuery(1, 1.0), SPEC).value == pytest.approx(
            frozen.LT_1_1, abs=1e-5)
        assert lt_factor(PhysicalQuery(3, 0.5), SPEC).value == pytest.approx(
            frozen.LT_3_HALF, abs=1e-5)

    def test_gamma_four_from_clr_identity(self):
        # at gamma = 4 the published CLR factor times ((gamma-2)/gamma)^(gamma/2)
        # pins the LT factor: 6.28319 / 4
        res = lt_factor(PhysicalQuery(2, 1.0), SPEC)
        assert res.value == pytest.approx(frozen.CLR_TABLE[4.0] / 4.0, abs=2e-5)


class TestAlgebraicIdentity:
    @pytest.mark.parametrize("g", [3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0])
    def test_lt_equals_clr_times_power(self, g):
        clr = clr_factor_at(g, SPEC)
        lt = lt_factor_at(g, SPEC)
        assert lt.value == pytest.approx(clr.value * ((g - 2) / g) ** (g / 2),
                                         rel=1e-14)


class TestLogSpacePrefactors:
    @pytest.mark.parametrize("g", [3.0, 10.0, 25.0, 50.0])
    def test_direct_and_log_paths_agree(self, g):
        gp = GammaParam(g)
        sup = sup_norm_interior(gp, SPEC).value
        l2 = l2_norm_sq_line(gp, SPEC).value
        direct = 16 * math.pi * (g - 2) ** (g - 2) / g ** (g + 1) * sup ** g / l2
        logged = math.exp(math.log(16 * math.pi) + (g - 2) * math.log(g - 2)
                          - (g + 1) * math.log(g) + g * math.log(sup)
                          - math.log(l2))
        assert logged == pytest.approx(direct, rel=1e-12)

    def test_large_gamma_uses_log_space_without_overflow(self):
        res = m_gamma(GammaParam(300.0), SPEC)
        assert math.isfinite(res.value) and res.value > 0


class TestCdSigma:
    def test_identity_with_m(self):
        res = c_d_sigma(PhysicalQuery(1, 1.0), SPEC)
        assert res.value == pytest.approx(frozen.M_GAMMA_TABLE[3.0], abs=5e-9)
        res = c_d_sigma(PhysicalQuery(2, 1.0), SPEC)
        assert res.value == pytest.approx(2 * frozen.M_GAMMA_TABLE[4.0], abs=1e-8)

    def test_depends_only_on_ratio(self):
        a = c_d_sigma(PhysicalQuery(4, 2.0), SPEC)
        b = c_d_sigma(PhysicalQuery(2, 1.0), SPEC)
        assert a.value == b.value


class TestAsymptotics:
    def test_clr_limit(self):
        res = clr_asymptotic(SPEC)
        assert res.converged
        assert res.value == pytest.approx(frozen.CLR_LIMIT, abs=5e-6)

    def test_lt_limit(self):
        res = lt_asymptotic(SPEC)
        assert res.value == pytest.approx(frozen.LT_LIMIT, abs=2e-5)
        assert res.value == pytest.approx(clr_asymptotic(SPEC).value / math.e,
                                          rel=1e-15)

    def test_monotone_approach(self):
        asym = clr_asymptotic(SPEC).value
        c40 = clr_factor_at(40.0, SPEC).value
        c9 = clr_factor_at(9.0, SPEC).value
        assert asym < c40 < c9


class TestScalingConstant:
    def test_direct_substitution(self):
        assert scaling_constant(GammaParam(4.0), 1.0, 2.0, 1.0) == pytest.approx(
            2.0, rel=1e-15)

    def test_amplitude_power_law(self):
        gp = GammaParam(3.5)
        p, q, a = 1.3, 0.8, 0.6
        w = (gp.gamma - 2) * p
        expected = 4 ** (w / (w + q)) * scaling_constant(gp, p, q, a)
        assert scaling_constant(gp, p, q, 4 * a) == pytest.approx(expected, rel=1e-14)

    def test_parameter_validation(self):
        with pytest.raises(DomainError):
            scaling_constant(GammaParam(3.0), 0.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            scaling_constant(GammaParam(3.0), 1.0, 1.0, -2.0)

    def test_matches_grid_minimization_oracle(self):
        # C is the minimum over alpha of alpha^((g-2)p) F^p + alpha^(-q) a N^q
        # divided by (N^(g-2) F)^(pq/((g-2)p+q)); golden-section refinement
        # of a log-spaced alpha grid is the independent path
        rng = np.random.default_rng(20240817)
        golden = (math.sqrt(5) - 1) / 2
        for _ in range(20):
            g = float(rng.uniform(2.2, 9.0))
            p = float(rng.uniform(0.3, 3.0))
            q = float(rng.uniform(0.3, 3.0))
            a = float(rng.uniform(0.2, 5.0))
            big_f = float(rng.uniform(0.1, 10.0))
            big_n = float(rng.uniform(0.1, 10.0))

            def objective(alpha):
                return (alpha ** ((g - 2) * p) * big_f ** p
                        + alpha ** (-q) * a * big_n ** q)

            grid = np.exp(np.linspace(-12, 12, 4001))
            i = int(np.argmin([objective(al) for al in grid]))
            lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
            for _ in range(200):
                m1 = hi - golden * (hi - lo)
                m2 = lo + golden * (hi - lo)
                if objective(m1) < objective(m2):
                    hi = m2
                else:
                    lo = m1
            oracle = objective(0.5 * (lo + hi)) / (
                (big_n ** (g - 2) * big_f) ** (p * q / ((g - 2) * p + q)))
            got = scaling_constant(GammaParam(g), p, q, a)
            assert got == pytest.approx(oracle, rel=1e-6)


class TestPhysicalQuery:
    def test_validation(self):
        with pytest.raises(DomainError):
            PhysicalQuery(0, 1.0)
        with pytest.raises(DomainError):
            PhysicalQuery(3, 0.0)
        with pytest.raises(DomainError):
            PhysicalQuery(3, -1.0)


class TestBoundsReport:
    def test_fields_and_invariants(self):
        rep = bounds_report(GammaParam(3.0), SPEC)
        assert rep.gamma == 3.0
        assert rep.m_gamma == pytest.approx(frozen.M_GAMMA_TABLE[3.0], abs=5e-9)
        assert rep.m_gamma > 0
        assert rep.lt_factor > 1.0
        assert rep.clr_factor == pytest.approx(
            rep.lt_factor / (1 - 2 / rep.gamma) ** (rep.gamma / 2), rel=1e-14)
        assert rep.spec_used == SPEC
        assert rep.converged
        # ratio R reassembles M through the closed prefactor
        m_re = (16 * math.pi * (rep.gamma - 2) ** (rep.gamma - 2)
                / rep.gamma ** (rep.gamma + 1) * rep.ratio ** rep.gamma)
        assert m_re == pytest.approx(rep.m_gamma, rel=1e-13)
