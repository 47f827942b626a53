import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qkernel.errors import DomainError, TruncationExceeded
from qkernel.qcore import (
    Base,
    TruncationPolicy,
    as_base,
    h_weight,
    poch_finite,
    poch_infinite,
    poch_multi,
)

# frozen oracles: direct truncated products computed independently
# (200 factors for (0.5; 0.5)_inf, 2000 factors for (0.9; 0.9)_inf)
POCH_HALF = 0.2887880950866024
POCH_NINE = 1.2860674342766133e-06

_small = st.floats(min_value=-0.9, max_value=0.9).filter(lambda x: abs(x) > 1e-3)
_qs = st.floats(min_value=0.05, max_value=0.7)


class TestBase:
    def test_cap_enforced(self):
        with pytest.raises(DomainError):
            Base(0.9995 + 0j)
        with pytest.raises(DomainError):
            Base(1.2 + 0j)
        assert as_base(0.5).q == 0.5 + 0j

    def test_policy_validation(self):
        with pytest.raises(DomainError):
            TruncationPolicy(tol=0.0)
        with pytest.raises(DomainError):
            TruncationPolicy(max_terms=0)


class TestPochFinite:
    def test_empty_product(self):
        assert poch_finite(0.77 + 0.3j, 0.5, 0) == 1

    def test_hand_product(self):
        # (1 - 0.5)(1 - 0.25) = 0.375
        assert poch_finite(0.5, 0.5, 2) == pytest.approx(0.375, rel=1e-15)

    def test_vanishing_first_factor(self):
        assert poch_finite(1.0, 0.5, 3) == 0

    def test_negative_n_rejected(self):
        with pytest.raises(DomainError):
            poch_finite(0.5, 0.5, -1)

    @given(re=_small, im=_small, q=_qs, n=st.integers(min_value=0, max_value=50))
    def test_recurrence(self, re, im, q, n):
        a = complex(re, im)
        lhs = poch_finite(a, q, n + 1)
        rhs = poch_finite(a, q, n) * (1 - a * q**n)
        assert abs(lhs - rhs) < 1e-13


class TestPochInfinite:
    def test_zero_argument(self):
        assert poch_infinite(0.0, 0.5) == 1

    def test_frozen_oracle_half(self):
        v = poch_infinite(0.5, 0.5, TruncationPolicy(tol=1e-14))
        assert abs(v - POCH_HALF) / POCH_HALF < 1e-12

    def test_frozen_oracle_nine(self):
        v = poch_infinite(0.9, Base(0.9 + 0j), TruncationPolicy(tol=1e-14))
        assert abs(v - POCH_NINE) / POCH_NINE < 1e-11

    def test_cap_raises(self):
        with pytest.raises(TruncationExceeded):
            poch_infinite(0.9, 0.9, TruncationPolicy(tol=1e-14, max_terms=10))

    @given(re=_small, im=_small, q=_qs, n=st.integers(min_value=0, max_value=20))
    def test_splitting(self, re, im, q, n):
        a = complex(re, im)
        whole = poch_infinite(a, q)
        split = poch_finite(a, q, n) * poch_infinite(a * q**n, q)
        assert abs(whole - split) <= 1e-11 * max(1.0, abs(whole))

    @given(re=_small, im=_small, q=_qs)
    def test_conjugation(self, re, im, q):
        z = complex(re, im)
        lhs = poch_infinite(z.conjugate(), q)
        rhs = poch_infinite(z, q).conjugate()
        assert abs(lhs - rhs) <= 1e-14 * max(1.0, abs(rhs))


class TestPochMulti:
    def test_singleton(self):
        assert poch_multi([0.3], 0.5, 4) == poch_finite(0.3, 0.5, 4)

    def test_hand_pair(self):
        assert poch_multi([0.5, 0.25], 0.5, 1) == pytest.approx(0.375, rel=1e-15)

    def test_all_zero_infinite(self):
        assert poch_multi([0.0, 0.0, 0.0], 0.5, None) == 1

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            poch_multi([], 0.5, 3)


class TestHWeight:
    def test_zero_parameter(self):
        assert h_weight(1.234, [0.0], 0.5) == 1

    def test_quarter_turn_identity(self):
        # h(cos pi/2; a) = (ia, -ia; q)_inf = (-a^2; q^2)_inf
        a, q = 0.37, 0.5
        lhs = h_weight(math.pi / 2, [a], q)
        rhs = poch_infinite(-a * a, q * q)
        assert abs(lhs - rhs) <= 1e-12 * abs(rhs)

    def test_theta_zero(self):
        a, q = 0.41, 0.5
        lhs = h_weight(0.0, [a], q)
        rhs = poch_infinite(a, q) ** 2
        assert abs(lhs - rhs) <= 1e-13 * abs(rhs)

    @given(theta=st.floats(min_value=-3.1, max_value=3.1), a=_small, q=_qs)
    def test_even_in_theta(self, theta, a, q):
        assert h_weight(theta, [a], q) == h_weight(-theta, [a], q)

    def test_real_product_form(self):
        # prod_k (1 - 2 q^k a x + q^{2k} a^2) with x = cos theta
        theta, a, q = 0.83, 0.52, 0.5
        x = math.cos(theta)
        direct = 1.0
        for k in range(200):
            direct *= 1 - 2 * q**k * a * x + q ** (2 * k) * a * a
        assert abs(h_weight(theta, [a], q) - direct) <= 1e-12 * abs(direct)
