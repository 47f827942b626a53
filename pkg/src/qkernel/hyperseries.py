"""Evaluation of basic hypergeometric series r_phi_s and the very-well-poised
compact form r+1_W_r.

A series is *terminating* when a numerator parameter equals q^{-n}: it is then
summed over exactly n + 1 terms.  Terminating sums with growing alternating
terms cancel catastrophically (the largest term scales like q^{-n(n-1)/2}),
so they are evaluated in mpmath at a working precision sized from a cheap
log-magnitude pre-pass; plain complex arithmetic would return noise already
for moderate n.  Non-terminating series have geometrically decaying terms and
are summed in ordinary complex arithmetic with a three-consecutive-small-terms
stop rule.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from mpmath import mp

from .errors import DomainError, PoleInDenominator, TruncationExceeded
from .qcore import Base, DEFAULT_TRUNCATION, TruncationPolicy, base_value, mp_scalar

_POLE_TOL = 1e-12


@dataclass(frozen=True)
class SeriesSpec:
    """Parameters of an r_phi_s series."""

    numerator: tuple
    denominator: tuple
    base: Base
    argument: complex
    terminating_order: int | None = None


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms_used: int
    tail_estimate: float
    max_term: float = 1.0


def nearest_pole_distance(b, q) -> float:
    """Scaled distance from b to the pole lattice {q^{-j}, j >= 0}."""
    qv = complex(base_value(q))
    bv = complex(b)
    best = math.inf
    p = 1 + 0j
    for _ in range(100_000):
        best = min(best, abs(bv - p) / max(1.0, abs(p)))
        if abs(p) > abs(bv) + 1:
            break
        p = p / qv
    return best


def _check_denominator_poles(dens: Sequence, q) -> None:
    for b in dens:
        if nearest_pole_distance(b, q) < _POLE_TOL:
            raise PoleInDenominator(
                f"denominator parameter {complex(b)} sits on the q^-j lattice"
            )


def phi_terminating_core(
    build: Callable[[], tuple[list, list, object, object]], order: int
) -> tuple[object, float]:
    """Sum a terminating series at adaptively chosen precision.

    ``build`` is re-invoked under each working context and must return
    (numerator params, denominator params, argument z, base q) as mpmath
    values derived from exact inputs; constructing derived parameters such as
    q^{-n} or square roots inside ``build`` keeps them coherent with the
    working precision, which the cancellation analysis requires.

    Returns the sum (mpf/mpc) and log10 of the largest term magnitude.
    """
    n = order
    ambient = mp.dps

    # Log-magnitude pre-pass in float arithmetic: sizes the cancellation.
    with mp.workdps(30):
        nums, dens, z, q = build()
        nc = [complex(x) for x in nums]
        dc = [complex(x) for x in dens]
        zc = complex(z)
        qc = complex(q)
    d_exp = 1 + len(dc) - len(nc)
    log_t = 0.0
    max_log = 0.0
    qk = 1 + 0j
    for k in range(n):
        step = math.log10(abs(zc))
        dead = False
        for a in nc:
            fac = abs(1 - a * qk)
            if fac == 0.0:
                dead = True
                break
            step += math.log10(fac)
        if dead:
            break
        for b in dc:
            fac = abs(1 - b * qk)
            if fac < 1e-280:
                raise PoleInDenominator(
                    f"terminating series hits a vanishing denominator at k={k + 1}"
                )
            step -= math.log10(fac)
        fac = abs(1 - qc * qk)
        if fac < 1e-280:
            raise PoleInDenominator("base factor (q;q)_k vanished")
        step -= math.log10(fac)
        if d_exp:
            step += d_exp * k * math.log10(abs(qc))
        log_t += step
        max_log = max(max_log, log_t)
        qk *= qc

    work = ambient + int(math.ceil(max_log)) + 28
    with mp.workdps(work):
        nums, dens, z, q = build()
        total = mp.one
        t = mp.one
        qk = mp.one
        for k in range(n):
            num = mp.one
            for a in nums:
                num *= 1 - a * qk
            den = mp.one
            for b in dens:
                den *= 1 - b * qk
            den *= 1 - q * qk
            if den == 0:
                raise PoleInDenominator(
                    f"terminating series hits a vanishing denominator at k={k + 1}"
                )
            t = t * num / den * z
            if d_exp:
                t = t * (-qk) ** d_exp
            qk *= q
            total += t
        return total, max_log


def _eval_terminating(spec: SeriesSpec, n: int) -> SeriesResult:
    qv = base_value(spec.base)

    def build():
        return (
            [mp_scalar(a) for a in spec.numerator],
            [mp_scalar(b) for b in spec.denominator],
            mp_scalar(spec.argument),
            mp_scalar(qv),
        )

    value, max_log = phi_terminating_core(build, n)
    return SeriesResult(
        value=complex(value),
        terms_used=n + 1,
        tail_estimate=0.0,
        max_term=float(10.0 ** min(max_log, 300.0)),
    )


def eval_phi(spec: SeriesSpec, policy: TruncationPolicy = DEFAULT_TRUNCATION) -> SeriesResult:
    """Evaluate the series

        sum_n  (a_1..a_r; q)_n / (q, b_1..b_s; q)_n
               * ((-1)^n q^{n(n-1)/2})^{1+s-r} * z^n.

    Terminating specs are summed over exactly ``terminating_order + 1`` terms;
    otherwise summation stops once three consecutive terms drop below
    ``policy.tol * max(1, |partial sum|)``.
    """
    qv = base_value(spec.base)
    _check_denominator_poles(spec.denominator, qv)

    if spec.terminating_order is not None:
        n = spec.terminating_order
        if n < 0:
            raise DomainError("terminating_order must be nonnegative")
        target = complex(qv) ** (-n)
        gap = min(
            (abs(complex(a) - target) for a in spec.numerator), default=math.inf
        ) / max(1.0, abs(target))
        if gap > _POLE_TOL:
            raise DomainError(
                "terminating_order set but no numerator parameter equals q^-n"
            )
        return _eval_terminating(spec, n)

    q = complex(qv)
    z = complex(spec.argument)
    nums = [complex(a) for a in spec.numerator]
    dens = [complex(b) for b in spec.denominator]
    d_exp = 1 + len(dens) - len(nums)

    t = 1 + 0j
    total = t
    qk = 1 + 0j
    max_term = 1.0
    small: list[float] = []
    for k in range(policy.max_terms):
        num = 1 + 0j
        for a in nums:
            num *= 1 - a * qk
        den = 1 + 0j
        for b in dens:
            den *= 1 - b * qk
        den *= 1 - q * qk
        if den == 0:
            raise PoleInDenominator(f"vanishing denominator factor at k={k + 1}")
        t = t * num / den * z
        if d_exp:
            t = t * (-qk) ** d_exp
        qk *= q
        total += t
        mag = abs(t)
        if not math.isfinite(mag):
            raise TruncationExceeded("series terms became non-finite (divergent?)")
        max_term = max(max_term, mag)
        if mag < policy.tol * max(1.0, abs(total)):
            small.append(mag)
            if len(small) == 3:
                return SeriesResult(
                    value=total,
                    terms_used=k + 2,
                    tail_estimate=sum(small),
                    max_term=max_term,
                )
        else:
            small.clear()
    raise TruncationExceeded(
        f"series did not meet tol={policy.tol:g} within {policy.max_terms} terms"
    )


def eval_wp_limit(
    alpha,
    numerator: Sequence,
    denominator: Sequence,
    q,
    w,
    shift: int = -1,
    policy: TruncationPolicy = DEFAULT_TRUNCATION,
) -> SeriesResult:
    """Evaluate the well-poised limit sum

        sum_n (1 - alpha q^{2n})/(1 - alpha)
              * prod(numerator; q)_n / (q, denominator; q)_n
              * w^n q^{n(n + shift)/2},

    the confluent (parameter -> infinity) form of a very-well-poised series;
    shift is -1 or +1.  Terms decay super-exponentially, so plain complex
    arithmetic suffices.
    """
    if shift not in (-1, 1):
        raise DomainError("shift must be -1 or +1")
    qv = complex(base_value(q))
    _check_denominator_poles(denominator, qv)
    al = complex(alpha)
    if abs(1 - al) < 1e-300:
        raise DomainError("alpha = 1 degenerates the well-poised kernel")
    nums = [complex(x) for x in numerator]
    dens = [complex(x) for x in denominator]
    wv = complex(w)

    total = 1 + 0j
    P = 1 + 0j
    W = 1 + 0j
    qn = 1 + 0j
    q2n = 1 + 0j
    max_term = 1.0
    small: list[float] = []
    for n in range(policy.max_terms):
        num_f = 1 + 0j
        for x in nums:
            num_f *= 1 - x * qn
        den_f = 1 - qv * qn
        for x in dens:
            den_f *= 1 - x * qn
        if den_f == 0:
            raise PoleInDenominator(f"vanishing denominator factor at n={n + 1}")
        P = P * num_f / den_f
        W = W * wv * (qn if shift == -1 else qn * qv)
        qn *= qv
        q2n *= qv * qv
        t = (1 - al * q2n) / (1 - al) * P * W
        total += t
        mag = abs(t)
        if not math.isfinite(mag):
            raise TruncationExceeded("well-poised limit terms became non-finite")
        max_term = max(max_term, mag)
        if mag < policy.tol * max(1.0, abs(total)):
            small.append(mag)
            if len(small) == 3:
                return SeriesResult(total, n + 2, sum(small), max_term)
        else:
            small.clear()
    raise TruncationExceeded(
        f"well-poised limit sum did not converge within {policy.max_terms} terms"
    )


def w_spec(a1, tail: Sequence, q, z, terminating_order: int | None = None) -> SeriesSpec:
    """SeriesSpec for the very-well-poised r+1_W_r(a1; tail...; q, z).

    Numerator (a1, q sqrt(a1), -q sqrt(a1), tail...), denominator
    (sqrt(a1), -sqrt(a1), q a1/tail_i ...); principal square root.
    """
    if a1 == 0:
        raise DomainError("very-well-poised series requires a1 != 0")
    base = q if isinstance(q, Base) else Base(complex(q))
    qv = base.q
    sq = cmath.sqrt(complex(a1))
    nums = (complex(a1), qv * sq, -qv * sq) + tuple(complex(t) for t in tail)
    dens: list[complex] = [sq, -sq]
    for t in tail:
        if t == 0:
            raise DomainError("very-well-poised tail parameters must be nonzero")
        dens.append(qv * complex(a1) / complex(t))
    return SeriesSpec(
        numerator=nums,
        denominator=tuple(dens),
        base=base,
        argument=complex(z),
        terminating_order=terminating_order,
    )


def eval_w(
    a1,
    tail: Sequence,
    q,
    z,
    policy: TruncationPolicy = DEFAULT_TRUNCATION,
    terminating_order: int | None = None,
) -> SeriesResult:
    """Evaluate r+1_W_r(a1; tail...; q, z) by delegating to eval_phi."""
    return eval_phi(w_spec(a1, tail, q, z, terminating_order), policy)
