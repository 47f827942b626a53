import itertools
import math

import numpy as np
import pytest

from qkernel.errors import DomainError, QuadratureNotConverged
from qkernel.qcore import Base, TruncationPolicy, poch_infinite
from qkernel.qintegrals import (
    FULL_PERIOD,
    HALF_PERIOD,
    QuadraturePolicy,
    WeightSpec,
    alsalam_verma_lhs,
    alsalam_verma_rhs,
    askey_roy_rhs,
    askey_wilson_lhs,
    askey_wilson_rhs,
    lbww_lhs,
    lbww_rhs,
    liu_qbeta_lhs,
    liu_qbeta_rhs,
    liu_r0_rhs,
    nassrallah_rahman_rhs,
    nr_intermediate_rhs,
    nr_product_rhs,
    nr_trig_lhs,
    qbailey_lhs,
    qbailey_rhs,
    trig_integral,
)

Q = Base(0.5 + 0j)
TP = TruncationPolicy()


class TestTrapezoid:
    def test_constant_on_half_period(self):
        w = WeightSpec(base=Q)
        assert trig_integral(w, HALF_PERIOD) == pytest.approx(math.pi, rel=1e-14)

    def test_constant_on_full_period(self):
        w = WeightSpec(base=Q)
        assert trig_integral(w, FULL_PERIOD) == pytest.approx(2 * math.pi, rel=1e-14)

    def test_policy_validation(self):
        with pytest.raises(DomainError):
            QuadraturePolicy(initial_nodes=6)
        with pytest.raises(DomainError):
            QuadraturePolicy(initial_nodes=9)

    def test_not_converged(self):
        # max_doublings = 0 cannot certify convergence of a nonconstant integrand
        w = WeightSpec(base=Q, denominator_h=(0.3, 0.4))
        with pytest.raises(QuadratureNotConverged):
            trig_integral(w, HALF_PERIOD, QuadraturePolicy(initial_nodes=8, max_doublings=0))

    def test_bad_interval(self):
        with pytest.raises(DomainError):
            trig_integral(WeightSpec(base=Q), (0.0, 1.0))

    def test_weight_pole_guard(self):
        with pytest.raises(DomainError):
            WeightSpec(base=Q, denominator_h=(1.0,))

    def test_node_diagnostics(self):
        diag = {}
        w = WeightSpec(base=Q, denominator_h=(0.3,), cos2_numerator=True)
        trig_integral(w, HALF_PERIOD, diagnostics=diag)
        assert diag["nodes"] >= 64


class TestAskeyWilson:
    def test_all_zero_parameters(self):
        # only (q; q)_inf survives in the closed form
        lhs = askey_wilson_lhs(0.0, 0.0, 0.0, 0.0, 0.5)
        rhs = 2 * math.pi / poch_infinite(0.5, 0.5)
        assert abs(lhs - rhs) <= 1e-14 * abs(rhs)
        assert askey_wilson_rhs(0.0, 0.0, 0.0, 0.0, 0.5) == pytest.approx(rhs, rel=1e-14)

    def test_example_parameters(self):
        lhs = askey_wilson_lhs(0.3, 0.4, 0.2, 0.1, 0.5)
        rhs = askey_wilson_rhs(0.3, 0.4, 0.2, 0.1, 0.5)
        assert abs(lhs - rhs) <= 1e-10 * abs(rhs)

    def test_scale_against_direct_products(self):
        a, b, c, d, q = 0.11, 0.23, 0.08, 0.31, 0.5
        direct = 2 * math.pi * poch_infinite(a * b * c * d, q)
        for pair in (q, a * b, a * c, a * d, b * c, b * d, c * d):
            direct /= poch_infinite(pair, q)
        assert askey_wilson_rhs(a, b, c, d, q) == pytest.approx(direct, rel=1e-13)


class TestAskeyRoy:
    def test_rhs_requires_nonzero_cdrho(self):
        with pytest.raises(DomainError):
            askey_roy_rhs(0.3, 0.4, 0.0, 0.1, 0.6, 0.5)

    def test_rho_mapping_symmetry_of_rhs(self):
        # rho -> q d /(c rho) maps the closed form into itself
        a, b, c, d, q, rho = 0.3, 0.4, 0.2, 0.1, 0.5, 0.6
        v1 = askey_roy_rhs(a, b, c, d, rho, q)
        v2 = askey_roy_rhs(a, b, c, d, q * d / (c * rho), q)
        assert v1 == pytest.approx(v2, rel=1e-12)


class TestNassrallahRahman:
    A = dict(a=0.3, b=0.4, c=0.2, d=0.25, s=0.5, r=0.35, q=0.5)

    def test_quadrature_match(self):
        lhs = nr_trig_lhs(**self.A)
        rhs = nassrallah_rahman_rhs(**self.A)
        assert abs(lhs - rhs) <= 1e-9 * abs(rhs)

    def test_intermediate_form(self):
        v1 = nassrallah_rahman_rhs(**self.A)
        v2 = nr_intermediate_rhs(**self.A)
        assert abs(v1 - v2) <= 1e-10 * abs(v1)

    def test_r_abcds_collapse(self):
        a, b, c, d, s, q = 0.3, 0.4, 0.2, 0.25, 0.5, 0.5
        r = a * b * c * d * s
        v = nassrallah_rahman_rhs(a, b, c, d, s, r, q)
        assert v == pytest.approx(nr_product_rhs(a, b, c, d, s, q), rel=1e-12)

    def test_s0_collapse_of_product_form(self):
        a, b, c, d, q = 0.3, 0.4, 0.2, 0.1, 0.5
        assert nr_product_rhs(a, b, c, d, 0.0, q) == pytest.approx(
            askey_wilson_rhs(a, b, c, d, q), rel=1e-13
        )

    def test_product_form_quadrature(self):
        a, b, c, d, s, q = 0.3, 0.4, 0.2, 0.25, 0.5, 0.5
        lhs = nr_trig_lhs(a, b, c, d, s, a * b * c * d * s, q)
        assert abs(lhs - nr_product_rhs(a, b, c, d, s, q)) <= 1e-9 * abs(lhs)

    def test_product_form_symmetric_in_all_five(self):
        base = nr_product_rhs(0.3, 0.4, 0.2, 0.25, 0.5, 0.5)
        for perm in itertools.islice(itertools.permutations((0.3, 0.4, 0.2, 0.25, 0.5)), 0, 120, 17):
            assert nr_product_rhs(*perm, 0.5) == pytest.approx(base, rel=1e-12)

    def test_r0_form(self):
        a, b, c, d, s, q = 0.3, 0.4, 0.2, 0.25, 0.5, 0.5
        lhs = nr_trig_lhs(a, b, c, d, s, 0.0, q)
        rhs = liu_r0_rhs(a, b, c, d, s, q)
        assert abs(lhs - rhs) <= 1e-9 * abs(rhs)

    def test_rhs_domain_guards(self):
        with pytest.raises(DomainError):
            nassrallah_rahman_rhs(0.3, 0.4, 0.2, 0.25, 0.5, 0.6, 0.5)  # |r/s| >= 1
        with pytest.raises(DomainError):
            nassrallah_rahman_rhs(0.3, 0.4, 0.2, 0.25, 0.5, 0.0, 0.5)  # r = 0


class TestLiuQBeta:
    A = dict(a=0.3, b=0.4, c=0.2, d=0.25, s=0.5, u=0.8, v=1.1, q=0.5)

    def test_quadrature_match(self):
        lhs = liu_qbeta_lhs(**self.A)
        rhs = liu_qbeta_rhs(**self.A)
        assert abs(lhs - rhs) <= 1e-9 * abs(rhs)

    def test_u_eq_q_collapse(self):
        a, b, c, d, s, v, q = 0.3, 0.4, 0.2, 0.25, 0.5, 1.1, 0.5
        alpha = a * a * b * c * d * s / q
        collapsed = liu_qbeta_rhs(a, b, c, d, s, q, v, q) * (
            poch_infinite(q * alpha, q) * poch_infinite(b * c * d * s, q)
        )
        assert collapsed == pytest.approx(nr_product_rhs(a, b, c, d, s, q), rel=1e-12)

    def test_s0_is_askey_wilson(self):
        a, b, c, d, q = 0.3, 0.4, 0.2, 0.25, 0.5
        v = liu_qbeta_rhs(a, b, c, d, 0.0, 0.8, 1.1, q)
        assert v == pytest.approx(askey_wilson_rhs(a, b, c, d, q), rel=1e-13)


class TestJacksonIntegralFormulas:
    def test_alsalam_verma(self):
        args = (0.3, 0.25, 0.4, 0.2, 0.55, 0.5)
        assert alsalam_verma_lhs(*args) == pytest.approx(
            alsalam_verma_rhs(*args), rel=1e-10
        )

    def test_alsalam_verma_abc_zero(self):
        # reduces to the integral of (qx/d, qx/s; q)_inf; both sides computed
        # through independent truncations
        d, s, q = 0.2, 0.55, 0.5
        lhs = alsalam_verma_lhs(0.0, 0.0, 0.0, d, s, q)
        rhs = (1 - q) * s * (
            poch_infinite(q, q) * poch_infinite(d / s, q) * poch_infinite(q * s / d, q)
        )
        assert abs(lhs - rhs) <= 1e-11 * abs(rhs)

    def test_qbailey(self):
        args = (0.3, 0.25, 0.4, 0.45, 0.55, 0.3, 0.5)
        assert qbailey_lhs(*args) == pytest.approx(qbailey_rhs(*args), rel=1e-9)

    def test_lbww(self):
        args = (0.3, 0.5, 0.35, 0.2, 0.25, 0.15, 0.5)
        assert lbww_lhs(*args) == pytest.approx(lbww_rhs(*args), rel=1e-9)

    def test_lbww_t_zero(self):
        args = (0.3, 0.5, 0.35, 0.2, 0.25, 0.0, 0.5)
        assert lbww_lhs(*args) == pytest.approx(lbww_rhs(*args), rel=1e-9)

    def test_lbww_alsalam_verma_shape(self):
        # h = rsuv makes lambda = r^2 s u^2 v^2 / q; the series still sums the
        # same integral, cross-checked against the direct q-integral
        u, v, h0, r, s, q = 0.3, 0.5, 0.2 * 0.25 * 0.3 * 0.5, 0.2, 0.25, 0.5
        assert lbww_lhs(u, v, h0, r, s, 0.1, q) == pytest.approx(
            lbww_rhs(u, v, h0, r, s, 0.1, q), rel=1e-9
        )
