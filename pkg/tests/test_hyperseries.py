import cmath
import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qkernel.errors import DomainError, PoleInDenominator, TruncationExceeded
from qkernel.qcore import Base, TruncationPolicy, h_weight, poch_infinite
from qkernel.hyperseries import (
    SeriesSpec,
    eval_phi,
    eval_w,
    eval_wp_limit,
    nearest_pole_distance,
)

# independent 500-term truncation oracle of 2phi1(q/a, q/b; c; q, abc/q^2)
# at a=0.2, b=0.3, c=0.71, q=0.5
Q_GAUSS_SERIES = 2.1569181050350776


def _direct_phi(nums, dens, q, z, terms):
    """Reference evaluator written independently of eval_phi (no extra factor,
    r = s + 1 case)."""
    t = 1 + 0j
    total = t
    for k in range(terms):
        num = 1 + 0j
        for a in nums:
            num *= 1 - a * q**k
        den = 1 - q ** (k + 1)
        for b in dens:
            den *= 1 - b * q**k
        t = t * num / den * z
        total += t
    return total


class TestEvalPhi:
    def test_zero_argument(self):
        spec = SeriesSpec((0.2, 0.4), (0.3,), Base(0.5 + 0j), 0.0)
        assert eval_phi(spec).value == 1

    def test_unit_numerator_parameter(self):
        spec = SeriesSpec((1.0, 0.4), (0.3,), Base(0.5 + 0j), 0.37)
        assert eval_phi(spec).value == 1

    def test_q_gauss_example(self):
        q, a, b, c = 0.5, 0.2, 0.3, 0.71
        spec = SeriesSpec((q / a, q / b), (c,), Base(q + 0j), a * b * c / q**2)
        res = eval_phi(spec, TruncationPolicy(tol=1e-15))
        assert abs(res.value - Q_GAUSS_SERIES) / Q_GAUSS_SERIES < 1e-11
        rhs = (
            poch_infinite(c * a / q, q)
            * poch_infinite(c * b / q, q)
            / (poch_infinite(c, q) * poch_infinite(a * b * c / q**2, q))
        )
        assert abs(res.value - rhs) / abs(rhs) < 1e-11

    def test_matches_hand_rolled_balanced_evaluator(self):
        # r = s + 1, so the compensating factor is identically one
        q = 0.5
        spec = SeriesSpec((0.25, 0.4), (0.6,), Base(q + 0j), 0.45)
        res = eval_phi(spec)
        ref = _direct_phi([0.25, 0.4], [0.6], q, 0.45, 300)
        assert abs(res.value - ref) <= 1e-13 * abs(ref)

    def test_pole_detection(self):
        q = 0.5
        with pytest.raises(PoleInDenominator):
            eval_phi(SeriesSpec((0.2,), (1.0,), Base(q + 0j), 0.3))
        with pytest.raises(PoleInDenominator):
            eval_phi(SeriesSpec((0.2,), (4.0,), Base(q + 0j), 0.3))  # q^-2

    def test_divergent_raises(self):
        spec = SeriesSpec((0.2, 0.3), (0.4,), Base(0.5 + 0j), 1.8)
        with pytest.raises(TruncationExceeded):
            eval_phi(spec, TruncationPolicy(max_terms=2000))

    def test_terminating_requires_matching_parameter(self):
        spec = SeriesSpec((0.2,), (0.4,), Base(0.5 + 0j), 0.5, terminating_order=3)
        with pytest.raises(DomainError):
            eval_phi(spec)

    def test_terminating_exact_term_count(self):
        q = 0.5
        n = 7
        spec = SeriesSpec((q**-n, 0.3), (0.4,), Base(q + 0j), q, terminating_order=n)
        res = eval_phi(spec)
        assert res.terms_used == n + 1
        assert res.tail_estimate == 0.0

    @given(seed=st.integers(min_value=0, max_value=10_000))
    def test_terminating_parameter_permutation(self, seed):
        import numpy as np

        rng = np.random.default_rng(seed)
        q = float(rng.choice([0.3, 0.5, 0.7]))
        n = int(rng.integers(1, 9))
        nums = [q**-n, float(rng.uniform(0.1, 0.6)), float(rng.uniform(0.1, 0.6))]
        dens = [float(rng.uniform(0.1, 0.6)), float(rng.uniform(0.1, 0.6))]
        base = eval_phi(
            SeriesSpec(tuple(nums), tuple(dens), Base(q + 0j), q, n)
        ).value
        for perm in itertools.permutations(nums):
            v = eval_phi(SeriesSpec(perm, tuple(dens), Base(q + 0j), q, n)).value
            assert abs(v - base) <= 1e-13 * max(1e-30, abs(base))
        v = eval_phi(
            SeriesSpec(tuple(nums), tuple(reversed(dens)), Base(q + 0j), q, n)
        ).value
        assert abs(v - base) <= 1e-13 * max(1e-30, abs(base))

    def test_tail_estimate_bounds_extension(self):
        q = 0.5
        spec = SeriesSpec((0.25, 0.4), (0.6,), Base(q + 0j), 0.7)
        res = eval_phi(spec, TruncationPolicy(tol=1e-10))
        extended = _direct_phi([0.25, 0.4], [0.6], q, 0.7, 3 * res.terms_used)
        assert abs(res.value - extended) <= res.tail_estimate + 1e-14


class TestEvalW:
    def test_zero_argument(self):
        assert eval_w(0.3, [0.2, 0.4], 0.5, 0.0).value == 1

    def test_q_dougall_6w5_closed_form(self):
        # 6W5(abcds^2/q; abcds/r, s e^{i t}, s e^{-i t}; q, r/s)
        a, b, c, d, s, r, theta, q = 0.3, 0.4, 0.2, 0.25, 0.5, 0.35, 1.0, 0.5
        alpha = a * b * c * d * s * s / q
        e = cmath.exp(1j * theta)
        res = eval_w(alpha, [a * b * c * d * s / r, s * e, s / e], q, r / s)
        rhs = (
            poch_infinite(alpha * q, q)
            * poch_infinite(a * b * c * d, q)
            * h_weight(theta, [r], q)
            / (
                poch_infinite(r * s, q)
                * poch_infinite(r / s, q)
                * h_weight(theta, [a * b * c * d * s], q)
            )
        )
        assert abs(res.value - rhs) / abs(rhs) < 1e-9

    def test_literal_spec_agreement(self):
        # the same 8-parameter series built through eval_w and through the
        # explicit SeriesSpec must coincide
        q = 0.5
        a1 = 0.09
        tail = [0.15, 0.2, 0.25, 0.3, 0.12]
        via_w = eval_w(a1, tail, q, 0.4)
        sq = cmath.sqrt(a1)
        spec = SeriesSpec(
            (a1, q * sq, -q * sq, *tail),
            (sq, -sq, *(q * a1 / t for t in tail)),
            Base(q + 0j),
            0.4,
        )
        direct = eval_phi(spec)
        assert abs(via_w.value - direct.value) <= 1e-12 * abs(direct.value)

    def test_simplified_kernel_matches_literal(self):
        # (a1, q ra1, -q ra1; q)_n / (q, ra1, -ra1; q)_n
        #   = (a1; q)_n (1 - a1 q^{2n}) / ((q; q)_n (1 - a1))
        q, a1 = 0.5, 0.09
        tail = [0.15, 0.2, 0.25]
        literal = eval_w(a1, tail, q, 0.3).value
        total = 1 + 0j
        t = 1 + 0j
        for n in range(300):
            num = (1 - a1 * q**n)
            for x in tail:
                num *= 1 - x * q**n
            den = 1 - q ** (n + 1)
            for x in tail:
                den *= 1 - q * a1 / x * q**n
            t = t * num / den * 0.3
            total += t * (1 - a1 * q ** (2 * (n + 1))) / (1 - a1)
            if abs(t) < 1e-18:
                break
        assert abs(literal - total) <= 1e-12 * abs(total)

    def test_zero_a1_rejected(self):
        with pytest.raises(DomainError):
            eval_w(0.0, [0.2], 0.5, 0.1)


class TestWpLimit:
    def test_dougall_degenerate_sum(self):
        # alpha = 0 and w = 0 collapse to the single leading term
        res = eval_wp_limit(0.0, (0.0, 0.5), (0.3,), 0.5, 0.0)
        assert res.value == 1

    def test_matches_brute_force(self):
        alpha, q = 0.2, 0.5
        nums = (alpha, 1 / 0.3, 1 / 0.4)
        dens = (q * alpha * 0.3, q * alpha * 0.4)
        res = eval_wp_limit(alpha, nums, dens, q, -alpha * 0.12, +1)
        total = 0.0
        for n in range(80):
            t = (1 - alpha * q ** (2 * n)) / (1 - alpha)
            for x in nums:
                p = 1.0
                for j in range(n):
                    p *= 1 - x * q**j
                t *= p
            den = 1.0
            for x in (q,) + dens:
                p = 1.0
                for j in range(n):
                    p *= 1 - x * q**j
                den *= p
            t = t / den * (-alpha * 0.12) ** n * q ** (n * (n + 1) // 2)
            total += t
        assert abs(res.value - total) <= 1e-13 * max(1.0, abs(total))


def test_nearest_pole_distance():
    q = 0.5 + 0j
    assert nearest_pole_distance(1.0, q) == 0.0
    assert nearest_pole_distance(4.0, q) == 0.0  # q^-2
    assert nearest_pole_distance(0.5, q) == pytest.approx(0.5)
