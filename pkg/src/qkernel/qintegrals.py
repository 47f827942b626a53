"""Periodic-quadrature engine for trigonometric weight integrals, plus the
closed-form right-hand sides of the q-beta integral evaluations.

Integrands built from h(cos theta; .) factors are smooth and 2 pi periodic,
so the composite trapezoid rule on the period converges geometrically; node
counts double until two successive estimates agree.  Integrand evaluation is
vectorised over the node array with numpy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, QuadratureNotConverged
from .qcore import (
    Base,
    DEFAULT_TRUNCATION,
    TruncationPolicy,
    base_value,
    poch_infinite,
    tail_count,
)
from .hyperseries import eval_w, eval_wp_limit
from . import qcalculus

FULL_PERIOD = (-math.pi, math.pi)
HALF_PERIOD = (0.0, math.pi)


@dataclass(frozen=True)
class QuadraturePolicy:
    initial_nodes: int = 64
    max_doublings: int = 10
    tol: float = 1e-11

    def __post_init__(self):
        if self.initial_nodes < 8 or self.initial_nodes % 2:
            raise DomainError("initial_nodes must be even and at least 8")
        if self.max_doublings < 0 or not self.tol > 0:
            raise DomainError("max_doublings must be >= 0 and tol positive")


DEFAULT_QUADRATURE = QuadraturePolicy()


@dataclass(frozen=True)
class WeightSpec:
    """Trigonometric integrand: optional h(cos 2 theta; 1) factor, h factors
    in numerator and denominator, and an arbitrary vectorised extra factor."""

    base: Base
    numerator_h: tuple = ()
    denominator_h: tuple = ()
    cos2_numerator: bool = False
    extra_factor: Callable[[np.ndarray], np.ndarray] | None = field(default=None)

    def __post_init__(self):
        for a in self.denominator_h:
            if abs(complex(a)) >= 1:
                raise DomainError(
                    "denominator h-parameters need modulus < 1 (integrand poles)"
                )


def poch_infinite_vec(z: np.ndarray, q: complex, tol: float) -> np.ndarray:
    """(z; q)_infty over an array of first arguments."""
    zmax = float(np.max(np.abs(z))) if z.size else 0.0
    n = tail_count(zmax, abs(q), math.log10(tol))
    out = np.ones_like(z)
    zk = z.copy()
    for _ in range(n):
        out *= 1.0 - zk
        zk *= q
    return out


def _h_vec(theta: np.ndarray, a: complex, q: complex, tol: float) -> np.ndarray:
    if a == 0:
        return np.ones(theta.shape, dtype=complex)
    eip = np.exp(1j * theta)
    return poch_infinite_vec(a * eip, q, tol) * poch_infinite_vec(a / eip, q, tol)


def weight_values(w: WeightSpec, theta: np.ndarray, tp: TruncationPolicy) -> np.ndarray:
    """Evaluate the WeightSpec integrand over an array of angles."""
    q = complex(base_value(w.base))
    vals = np.ones(theta.shape, dtype=complex)
    if w.cos2_numerator:
        vals *= _h_vec(2.0 * theta, 1.0 + 0j, q, tp.tol)
    for a in w.numerator_h:
        vals *= _h_vec(theta, complex(a), q, tp.tol)
    for a in w.denominator_h:
        vals /= _h_vec(theta, complex(a), q, tp.tol)
    if w.extra_factor is not None:
        vals = vals * np.asarray(w.extra_factor(theta))
    return vals


def circle_one_sided_factor(
    up_num: Sequence, down_num: Sequence, up_den: Sequence, down_den: Sequence, q, tp: TruncationPolicy
) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorised factor of one-sided infinite products

        prod (c e^{i theta}; q)_inf * prod (c' e^{-i theta}; q)_inf
        / (same shape in the denominator).
    """
    qv = complex(base_value(q))

    def factor(theta: np.ndarray) -> np.ndarray:
        eip = np.exp(1j * theta)
        eim = np.conj(eip)
        vals = np.ones(theta.shape, dtype=complex)
        for coeff in up_num:
            vals *= poch_infinite_vec(complex(coeff) * eip, qv, tp.tol)
        for coeff in down_num:
            vals *= poch_infinite_vec(complex(coeff) * eim, qv, tp.tol)
        for coeff in up_den:
            vals /= poch_infinite_vec(complex(coeff) * eip, qv, tp.tol)
        for coeff in down_den:
            vals /= poch_infinite_vec(complex(coeff) * eim, qv, tp.tol)
        return vals

    return factor


def circle_phi_factor(
    a: complex, extra_upper: Sequence, lower: Sequence, q, z, max_terms: int = 2000
) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorised non-terminating series factor

        phi(a e^{i theta}, a e^{-i theta}, extra_upper...; lower...; q, z)

    with the balanced r = s + 1 convention (no compensating power of q)."""
    qv = complex(base_value(q))
    ups = [complex(x) for x in extra_upper]
    lows = [complex(x) for x in lower]

    def factor(theta: np.ndarray) -> np.ndarray:
        eip = np.exp(1j * theta)
        A = a * eip
        B = a * np.conj(eip)
        t = np.ones(theta.shape, dtype=complex)
        total = t.copy()
        qk = 1.0 + 0j
        small = 0
        for _ in range(max_terms):
            num = (1.0 - A * qk) * (1.0 - B * qk)
            for u in ups:
                num = num * (1.0 - u * qk)
            den = 1.0 - qv * qk
            for l in lows:
                den = den * (1.0 - l * qk)
            t = t * num / den * z
            qk *= qv
            total += t
            if float(np.max(np.abs(t))) < 1e-17 * max(1.0, float(np.max(np.abs(total)))):
                small += 1
                if small >= 3:
                    return total
            else:
                small = 0
        raise QuadratureNotConverged("series factor did not converge on the node set")

    return factor


def _nodes_and_weights(interval, n: int):
    if abs(interval[0] - FULL_PERIOD[0]) < 1e-12 and abs(interval[1] - FULL_PERIOD[1]) < 1e-12:
        theta = -math.pi + 2.0 * math.pi * np.arange(n) / n
        w = np.full(n, 2.0 * math.pi / n)
        return theta, w
    if abs(interval[0] - HALF_PERIOD[0]) < 1e-12 and abs(interval[1] - HALF_PERIOD[1]) < 1e-12:
        theta = math.pi * np.arange(n + 1) / n
        w = np.full(n + 1, math.pi / n)
        w[0] *= 0.5
        w[-1] *= 0.5
        return theta, w
    raise DomainError("interval must be (0, pi) or (-pi, pi)")


def trig_integral(
    w: WeightSpec,
    interval=HALF_PERIOD,
    qp: QuadraturePolicy = DEFAULT_QUADRATURE,
    tp: TruncationPolicy = DEFAULT_TRUNCATION,
    diagnostics: dict | None = None,
) -> complex:
    """Integrate the WeightSpec integrand over [0, pi] (even extension) or
    [-pi, pi] (periodic) by node-doubling trapezoid sums."""
    n = qp.initial_nodes
    prev = None
    for _ in range(qp.max_doublings + 1):
        theta, wts = _nodes_and_weights(interval, n)
        vals = weight_values(w, theta, tp)
        estimate = complex(np.sum(wts * vals))
        if prev is not None and abs(estimate - prev) < qp.tol * max(1.0, abs(estimate)):
            if diagnostics is not None:
                diagnostics["nodes"] = n
            return estimate
        prev = estimate
        n *= 2
    raise QuadratureNotConverged(
        f"trapezoid did not converge after {qp.max_doublings} doublings"
    )


# ---------------------------------------------------------------------------
# Closed-form right-hand sides and their paired left-hand sides.
# ---------------------------------------------------------------------------


def _pinf(values, q, tp: TruncationPolicy):
    acc = 1 + 0j
    for v in values:
        acc *= poch_infinite(v, q, tp)
    return acc


def askey_wilson_rhs(a, b, c, d, q, tp: TruncationPolicy = DEFAULT_TRUNCATION) -> complex:
    """2 pi (abcd; q)_inf / (q, ab, ac, ad, bc, bd, cd; q)_inf."""
    qv = base_value(q)
    num = poch_infinite(a * b * c * d, qv, tp)
    den = _pinf([qv, a * b, a * c, a * d, b * c, b * d, c * d], qv, tp)
    return 2.0 * math.pi * num / den


def askey_wilson_lhs(
    a, b, c, d, q,
    qp: QuadraturePolicy = DEFAULT_QUADRATURE,
    tp: TruncationPolicy = DEFAULT_TRUNCATION,
) -> complex:
    w = WeightSpec(base=Base(complex(base_value(q))), denominator_h=(a, b, c, d), cos2_numerator=True)
    return trig_integral(w, HALF_PERIOD, qp, tp)


def askey_roy_rhs(a, b, c, d, rho, q, tp: TruncationPolicy = DEFAULT_TRUNCATION) -> complex:
    """(abcd, rho, q/rho, c rho/d, q d/(c rho); q)_inf
    / (q, ac, ad, bc, bd; q)_inf."""
    if c * d * rho == 0:
        raise DomainError("askey_roy_rhs requires c d rho != 0")
    qv = base_value(q)
    num = _pinf([a * b * c * d, rho, qv / rho, c * rho / d, qv * d / (c * rho)], qv, tp)
    den = _pinf([qv, a * c, a * d, b * c, b * d], qv, tp)
    return num / den


def askey_roy_lhs(
    a, b, c, d, rho, q,
    qp: QuadraturePolicy = DEFAULT_QUADRATURE,
    tp: TruncationPolicy = DEFAULT_TRUNCATION,
) -> complex:
    """The raw integral over [-pi, pi] (divide by 2 pi to match the rhs)."""
    if c * d * rho == 0:
        raise DomainError("askey_roy_lhs requires c d rho != 0")
    qv = complex(base_value(q))
    factor = circle_one_sided_factor(
        up_num=[rho / d, qv / (c * rho)],
        down_num=[qv * d / rho, rho * c],
        up_den=[a, b],
        down_den=[c, d],
        q=qv,
        tp=tp,
    )
    w = WeightSpec(base=Base(qv), extra_factor=factor)
    return trig_integral(w, FULL_PERIOD, qp, tp)


def nr_product_rhs(a, b, c, d, s, q, tp: TruncationPolicy = DEFAULT_TRUNCATION) -> complex:
    """2 pi (abcd, abcs, abds, acds, bcds; q)_inf
    / (q, ab, ac, ad, as, bc, bd, bs, cd, cs, ds; q)_inf."""
    qv = base_value(q)
    num = _pinf([a * b * c * d, a * b * c * s, a * b * d * s, a * c * d * s, b * c * d * s], qv, tp)
    den = _pinf(
        [qv, a * b, a * c, a * d, a * s, b * c, b * d, b * s, c * d, c * s, d * s],
        qv, tp,
    )
    return 2.0 * math.pi * num / den


def nr_trig_lhs(
    a, b, c, d, s, r, q,
    qp: QuadraturePolicy = DEFAULT_QUADRATURE,
    tp: TruncationPolicy = DEFAULT_TRUNCATION,
) -> complex:
    """integral over [0, pi] of h(cos 2t; 1) h(cos t; r) / h(cos t; a,b,c,d,s)."""
    num = (r,) if r != 0 else ()
    w = WeightSpec(
        base=Base(complex(base_value(q))),
        numerator_h=num,
        denominator_h=(a, b, c, d, s),
        cos2_numerator=True,
    )
    return trig_integral(w, HALF_PERIOD, qp, tp)


def nassrallah_rahman_rhs(
    a, b, c, d, s, r, q,
    tp: TruncationPolicy = DEFAULT_TRUNCATION,
) -> complex:
    """Closed form with the very-well-poised 8W7(abcds^2/q; as, bs, cs, ds,
    abcds/r; q, r/s); requires 0 < |r/s| < 1."""
    if r == 0:
        raise DomainError("use liu_r0_rhs for the r = 0 case")
    if abs(r / s) >= 1:
        raise DomainError("nassrallah_rahman_rhs requires |r/s| < 1")
    qv = base_value(q)
    num = _pinf([r / s, r * s, a * b * c * s, b * c * d * s, a * c * d * s, a * b * d * s], qv, tp)
    den = _pinf(
        [qv, a * b, a * c, a * d, a * s, b * c, b * d, b * s, c * d, c * s, d * s,
         a * b * c * d * s * s],
        qv, tp,
    )
    w8 = eval_w(
        a * b * c * d * s * s / qv,
        [a * s, b * s, c * s, d * s, a * b * c * d * s / r],
        qv, r / s, tp,
    ).value
    return 2.0 * math.pi * num / den * w8


def nr_intermediate_rhs(
    a, b, c, d, s, r, q,
    tp: TruncationPolicy = DEFAULT_TRUNCATION,
) -> complex:
    """Alternative closed form of the same integral, built on
    8W7(rabc/q; r/s, ab, ac, bc, r/d; q, ds)."""
    if r == 0 or d == 0:
        raise DomainError("intermediate form requires r != 0 and d != 0")
    qv = base_value(q)
    num = _pinf([a * b * c * d, a * b * c * s, r * a, r * b, r * c], qv, tp)
    den = _pinf(
        [qv, a * b, a * c, a * d, b * c, b * d, c * d, r * a * b * c, a * s, b * s, c * s],
        qv, tp,
    )
    w8 = eval_w(
        r * a * b * c / qv,
        [r / s, a * b, a * c, b * c, r / d],
        qv, d * s, tp,
    ).value
    return 2.0 * math.pi * num / den * w8


def liu_r0_rhs(a, b, c, d, s, q, tp: TruncationPolicy = DEFAULT_TRUNCATION) -> complex:
    """r = 0 form: products times 3phi2(ab, ac, bc; abcd, abcs; q, ds)."""
    from .hyperseries import SeriesSpec, eval_phi

    qv = base_value(q)
    num = _pinf([a * b * c * d, a * b * c * s], qv, tp)
    den = _pinf(
        [qv, a * b, a * c, a * d, b * c, b * d, c * d, a * s, b * s, c * s], qv, tp
    )
    phi = eval_phi(
        SeriesSpec(
            numerator=(a * b, a * c, b * c),
            denominator=(a * b * c * d, a * b * c * s),
            base=Base(complex(base_value(q))),
            argument=d * s,
        ),
        tp,
    ).value
    return 2.0 * math.pi * num / den * phi


def liu_qbeta_rhs(
    a, b, c, d, s, u, v, q,
    tp: TruncationPolicy = DEFAULT_TRUNCATION,
) -> complex:
    """Prefactor 2 pi (abcd, abcs, abds, acds; q)_inf / (q, ab, ..., q alpha;
    q)_inf times the well-poised limit series in (-alpha^2 u v / a^2)^n
    q^{n(n-1)/2}, with alpha = a^2 b c d s / q."""
    qv = base_value(q)
    alpha = a * a * b * c * d * s / qv
    num = _pinf([a * b * c * d, a * b * c * s, a * b * d * s, a * c * d * s], qv, tp)
    den = _pinf(
        [qv, a * b, a * c, a * d, a * s, b * c, b * d, b * s, c * d, c * s, d * s,
         qv * alpha],
        qv, tp,
    )
    series = eval_wp_limit(
        alpha,
        numerator=(alpha, qv / u, qv / v, a * b, a * c, a * d, a * s),
        denominator=(alpha * u, alpha * v, a * b * c * d, a * b * c * s,
                     a * b * d * s, a * c * d * s),
        q=qv,
        w=-alpha * alpha * u * v / (a * a),
        shift=-1,
        policy=tp,
    ).value
    return 2.0 * math.pi * num / den * series


def liu_qbeta_lhs(
    a, b, c, d, s, u, v, q,
    qp: QuadraturePolicy = DEFAULT_QUADRATURE,
    tp: TruncationPolicy = DEFAULT_TRUNCATION,
) -> complex:
    """Quadrature side: h(cos 2t; 1)/h(cos t; a..s) times the 3phi2 factor
    phi(a e^{it}, a e^{-it}, alpha u v/q; alpha u, alpha v; q, bcds)."""
    qv = complex(base_value(q))
    alpha = a * a * b * c * d * s / qv
    factor = circle_phi_factor(
        a,
        extra_upper=[alpha * u * v / qv],
        lower=[alpha * u, alpha * v],
        q=qv,
        z=b * c * d * s,
    )
    w = WeightSpec(
        base=Base(qv),
        denominator_h=(a, b, c, d, s),
        cos2_numerator=True,
        extra_factor=factor,
    )
    return trig_integral(w, HALF_PERIOD, qp, tp)


def alsalam_verma_rhs(a, b, c, d, s, q, tp: TruncationPolicy = DEFAULT_TRUNCATION) -> complex:
    """(1-q) s (q, d/s, qs/d, abds, acds, bcds; q)_inf
    / (ad, as, bd, bs, cd, cs; q)_inf."""
    qv = base_value(q)
    num = _pinf([qv, d / s, qv * s / d, a * b * d * s, a * c * d * s, b * c * d * s], qv, tp)
    den = _pinf([a * d, a * s, b * d, b * s, c * d, c * s], qv, tp)
    return (1 - qv) * s * num / den


def alsalam_verma_lhs(a, b, c, d, s, q, tp: TruncationPolicy = DEFAULT_TRUNCATION) -> complex:
    """Jackson q-integral over [d, s] of
    (qx/d, qx/s, abcds x; q)_inf / (ax, bx, cx; q)_inf."""
    qv = base_value(q)
    abcds = a * b * c * d * s

    def f(x):
        num = _pinf([qv * x / d, qv * x / s, abcds * x], qv, tp)
        den = _pinf([a * x, b * x, c * x], qv, tp)
        return num / den

    return qcalculus.q_integral(f, d, s, qv, tp)


def lbww_rhs(u, v, h, r, s, t, q, tp: TruncationPolicy = DEFAULT_TRUNCATION) -> complex:
    """(1-q) v (q, u/v, qv/u, hu, hv, rsuv, rtuv; q)_inf
    / (rhuv, ru, rv, su, sv, tu, tv; q)_inf times the well-poised limit
    series with lambda = r h u v / q in (-stuv)^n q^{n(n-1)/2}."""
    qv = base_value(q)
    lam = r * h * u * v / qv
    num = _pinf([qv, u / v, qv * v / u, h * u, h * v, r * s * u * v, r * t * u * v], qv, tp)
    den = _pinf([lam * qv, r * u, r * v, s * u, s * v, t * u, t * v], qv, tp)
    pref = (1 - qv) * v * num / den
    if t == 0:
        # t -> 0 limit of (h/t; q)_n (-stuv)^n q^{n(n-1)/2}: terms become
        # (lam, ru, rv, h/s; q)_n (hsuv)^n q^{n(n-1)} / (q, hu, hv, rsuv; q)_n.
        total = 1 + 0j
        P = 1 + 0j
        W = 1 + 0j
        qn = 1 + 0j
        q2n = 1 + 0j
        small = 0
        for n in range(tp.max_terms):
            num_f = (1 - lam * qn) * (1 - r * u * qn) * (1 - r * v * qn) * (1 - h / s * qn)
            den_f = (1 - qv * qn) * (1 - h * u * qn) * (1 - h * v * qn) * (1 - r * s * u * v * qn)
            P = P * num_f / den_f
            W = W * (h * s * u * v) * qn * qn  # ratio of q^{n(n-1)} is q^{2n}
            qn *= qv
            q2n *= qv * qv
            contrib = (1 - lam * q2n) / (1 - lam) * P * W
            total += contrib
            small = small + 1 if abs(contrib) < tp.tol * max(1.0, abs(total)) else 0
            if small >= 3:
                break
        return pref * total
    series = eval_wp_limit(
        lam,
        numerator=(lam, r * u, r * v, h / s, h / t),
        denominator=(h * u, h * v, r * s * u * v, r * t * u * v),
        q=qv,
        w=-s * t * u * v,
        shift=-1,
        policy=tp,
    ).value
    return pref * series


def lbww_lhs(u, v, h, r, s, t, q, tp: TruncationPolicy = DEFAULT_TRUNCATION) -> complex:
    """Jackson q-integral over [u, v] of
    (qx/u, qx/v, hx; q)_inf / (rx, sx, tx; q)_inf."""
    qv = base_value(q)

    def f(x):
        num = _pinf([qv * x / u, qv * x / v, h * x], qv, tp)
        den = _pinf([r * x, s * x, t * x], qv, tp)
        return num / den

    return qcalculus.q_integral(f, u, v, qv, tp)


def qbailey_rhs(a, b, c, d, s, r, q, tp: TruncationPolicy = DEFAULT_TRUNCATION) -> complex:
    """(1-q) s (q, d/s, qs/d, rs, abcs, acds, abds, bcds; q)_inf
    / (r/d, ad, bd, cd, as, bs, cs, abcds^2; q)_inf
    times 8W7(abcds^2/q; as, bs, cs, ds, abcds/r; q, r/s)."""
    if abs(r / s) >= 1:
        raise DomainError("qbailey_rhs requires |r/s| < 1")
    qv = base_value(q)
    num = _pinf(
        [qv, d / s, qv * s / d, r * s, a * b * c * s, a * c * d * s, a * b * d * s,
         b * c * d * s],
        qv, tp,
    )
    den = _pinf(
        [r / d, a * d, b * d, c * d, a * s, b * s, c * s, a * b * c * d * s * s],
        qv, tp,
    )
    w8 = eval_w(
        a * b * c * d * s * s / qv,
        [a * s, b * s, c * s, d * s, a * b * c * d * s / r],
        qv, r / s, tp,
    ).value
    return (1 - qv) * s * num / den * w8


def qbailey_lhs(a, b, c, d, s, r, q, tp: TruncationPolicy = DEFAULT_TRUNCATION) -> complex:
    """Jackson q-integral over [d, s] of
    (abcx, qx/d, qx/s, rx; q)_inf / (ax, bx, cx, rx/(ds); q)_inf."""
    qv = base_value(q)

    def f(x):
        num = _pinf([a * b * c * x, qv * x / d, qv * x / s, r * x], qv, tp)
        den = _pinf([a * x, b * x, c * x, r * x / (d * s)], qv, tp)
        return num / den

    return qcalculus.q_integral(f, d, s, qv, tp)
