"""Identity registry and verification harness.

Every identity the library certifies is registered here with a recipe that
evaluates both sides through independent code paths (quadrature vs closed
form, series vs product, reconstruction vs direct evaluation) and a sampler
that draws admissible parameters.  ``run_suite`` executes pinned example
cases plus seeded random draws and reports residuals.

Orthogonality integrals are the one place where plain double precision is
insufficient: the diagonal norms decay like q^{n(n-1)} (cd)^n, far below the
float64 noise floor of the oscillating integrand, so those quadratures run in
mpmath with node values cached across the (n, m) sweep.
"""

from __future__ import annotations

import cmath
import math
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from mpmath import mp, mpf

from .errors import (
    DomainError,
    PoleInDenominator,
    QKernelError,
    QuadratureNotConverged,
    TruncationExceeded,
    UnknownIdentity,
)
from .qcore import (
    Base,
    DEFAULT_TRUNCATION,
    TruncationPolicy,
    mp_scalar,
    poch_finite,
    poch_infinite,
    tail_count,
)
from .hyperseries import (
    SeriesSpec,
    eval_phi,
    eval_w,
    eval_wp_limit,
    nearest_pole_distance,
    phi_terminating_core,
)
from . import qcalculus
from .polyfamilies import (
    BigQJacobiParams,
    QHahnParams,
    big_qjacobi_poly,
    qhahn_A,
    qhahn_L,
    qhahn_L0,
    qhahn_poly,
)
from . import qintegrals as qi
from .qintegrals import DEFAULT_QUADRATURE, QuadraturePolicy


@dataclass(frozen=True)
class PolicyBundle:
    truncation: TruncationPolicy = DEFAULT_TRUNCATION
    quadrature: QuadraturePolicy = DEFAULT_QUADRATURE


DEFAULT_POLICIES = PolicyBundle()


@dataclass
class CheckValues:
    """Raw outcome of one identity evaluation."""

    lhs: complex
    rhs: complex
    diagnostics: dict = field(default_factory=dict)
    scale: float = 1.0
    metric: str | None = None  # per-case override of the entry metric
    ok_extra: bool = True  # auxiliary conditions (e.g. imaginary residue)


@dataclass
class IdentityReport:
    id: str
    label: str
    params: dict
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    status: str  # pass | fail | skipped
    metric: str
    threshold: float
    scale: float
    diagnostics: dict = field(default_factory=dict)
    reason: str = ""


@dataclass(frozen=True)
class PinnedCase:
    label: str
    params: dict
    threshold: float | None = None
    metric: str | None = None
    recipe: Callable | None = None


@dataclass(frozen=True)
class IdentityDef:
    id: str
    description: str
    param_names: tuple
    threshold: float
    recipe: Callable
    sampler: Callable
    pinned: tuple = ()
    metric: str = "rel"
    int_params: tuple = ()


# ---------------------------------------------------------------------------
# sampling helpers
# ---------------------------------------------------------------------------

_Q_CHOICES = (0.3, 0.5, 0.7)


def _rng(seed: int, ident: str, draw: int | None = None):
    key = [seed & 0xFFFFFFFF, zlib.crc32(ident.encode())]
    if draw is not None:
        key.append(draw)
    return np.random.default_rng(key)


def _u(rng, lo: float, hi: float) -> float:
    return float(rng.uniform(lo, hi))


def _pick_q(rng, options: Sequence[float] = _Q_CHOICES) -> float:
    return float(options[int(rng.integers(len(options)))])


def _rejection(rng, build: Callable, ok: Callable | None = None, tries: int = 500) -> dict:
    for _ in range(tries):
        prm = build(rng)
        if ok is None or ok(prm):
            return prm
    raise QKernelError("sampler failed to find admissible parameters")


def _off_lattice(x, q, dist: float = 0.05) -> bool:
    return nearest_pole_distance(x, q) >= dist


# ---------------------------------------------------------------------------
# shared evaluation helpers
# ---------------------------------------------------------------------------


def _P(values: Sequence, q, tp: TruncationPolicy) -> complex:
    acc = 1 + 0j
    for v in values:
        acc *= poch_infinite(v, q, tp)
    return acc


def _pinf_mp(x, qm, neg_tol_log10: float):
    n = tail_count(float(abs(x)), float(qm), neg_tol_log10)
    acc = mp.one
    z = x
    for _ in range(n):
        acc *= 1 - z
        z *= qm
    return acc


def _quantize_dps(d: float) -> int:
    return max(40, 10 * int(math.ceil(d / 10.0)))


# ---------------------------------------------------------------------------
# q-Hahn orthogonality engine (extended-precision periodic trapezoid)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _qhahn_K_node(jn: int, jd: int, a, b, c, d, rho, q, dps: int):
    with mp.workdps(dps):
        qm = mpf(q)
        theta = -mp.pi + 2 * mp.pi * mpf(jn) / jd
        e = mp.expj(theta)
        em = mp.expj(-theta)
        tol = -(dps + 2)
        num = (
            _pinf_mp(rho * e / d, qm, tol)
            * _pinf_mp(q * d * em / rho, qm, tol)
            * _pinf_mp(rho * c * em, qm, tol)
            * _pinf_mp(q * e / (c * rho), qm, tol)
        )
        den = (
            _pinf_mp(a * e, qm, tol)
            * _pinf_mp(b * e, qm, tol)
            * _pinf_mp(c * em, qm, tol)
            * _pinf_mp(d * em, qm, tol)
        )
        return num / den


@lru_cache(maxsize=None)
def _qhahn_H_node(n: int, jn: int, jd: int, a, b, c, d, q, dps: int):
    with mp.workdps(dps):
        theta = -mp.pi + 2 * mp.pi * mpf(jn) / jd
        z = mp.expj(theta)
        p = QHahnParams(a, b, c, d, 1.0, Base(complex(q)))
        return qhahn_poly(n, p, z)


def _qhahn_deficit(k: int, a, b, c, d, q) -> float:
    """-log10 |L_k / L_0| (digits lost on the diagonal)."""
    if k == 0:
        return 0.0
    v = math.log10(abs(1 - a * b * c * d / q))
    for x in (q, a * c, a * d, b * c, b * d):
        v += math.log10(abs(complex(poch_finite(x, q, k))))
    v += k * (k - 1) * math.log10(abs(q)) + k * math.log10(abs(c * d))
    v -= math.log10(abs(1 - a * b * c * d * q ** (2 * k - 1)))
    v -= math.log10(abs(complex(poch_finite(a * b * c * d / q, q, k))))
    return max(0.0, -v)


def _qhahn_dps(n: int, m: int, a, b, c, d, q) -> int:
    deficit = 0.5 * (_qhahn_deficit(n, a, b, c, d, q) + _qhahn_deficit(m, a, b, c, d, q))
    growth = (n + m) * math.log10(1.0 / min(abs(a), abs(b)))
    return _quantize_dps(34 + deficit + growth)


def _qhahn_integral(n, m, a, b, c, d, rho, q, dps, qp: QuadraturePolicy) -> complex:
    """(1/2 pi) * integral over [-pi, pi] of K(theta) H_n H_m."""
    with mp.workdps(dps):
        stop = mpf(10) ** (-(dps - 28))

        def add_nodes(js, denom):
            s = mp.zero
            for j in js:
                fr = Fraction(j, denom)
                K = _qhahn_K_node(fr.numerator, fr.denominator, a, b, c, d, rho, q, dps)
                Hn = _qhahn_H_node(n, fr.numerator, fr.denominator, a, b, c, d, q, dps)
                Hm = Hn if m == n else _qhahn_H_node(
                    m, fr.numerator, fr.denominator, a, b, c, d, q, dps
                )
                s += K * Hn * Hm
            return s

        nodes = qp.initial_nodes
        total = add_nodes(range(nodes), nodes)
        prev = total / nodes
        for _ in range(qp.max_doublings):
            nodes *= 2
            total += add_nodes(range(1, nodes, 2), nodes)
            cur = total / nodes
            if abs(cur - prev) < stop * max(mp.one, abs(cur)):
                return complex(cur)
            prev = cur
    raise QuadratureNotConverged("q-Hahn orthogonality quadrature did not converge")


# ---------------------------------------------------------------------------
# big q-Jacobi orthogonality engine (extended-precision Jackson integral)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _bqj_weight_node(x, a, b, c, q, dps: int):
    with mp.workdps(dps):
        qm = mpf(q)
        tol = -(dps + 2)
        num = _pinf_mp(x / a, qm, tol) * _pinf_mp(x / c, qm, tol)
        den = _pinf_mp(x, qm, tol) * _pinf_mp(b * x / c, qm, tol)
        return num / den


@lru_cache(maxsize=None)
def _bqj_poly_node(n: int, x, a, b, c, q, dps: int):
    with mp.workdps(dps):
        p = BigQJacobiParams(a, b, c, Base(complex(q)))
        return big_qjacobi_poly(n, p, x)


def _bqj_rhs(n: int, a, b, c, q, tp: TruncationPolicy) -> complex:
    # Prefactor carries (c/a, qa/c; q)_inf: the Al-Salam--Verma specialisation
    # of the n = 0 integral fixes this orientation of the theta-pair.
    pref = (
        a * q * (1 - q)
        * _P([q, a * b * q * q, c / a, q * a / c], q, tp)
        / _P([a * q, b * q, c * q, a * b * q / c], q, tp)
    )
    num = (1 - a * b * q) * poch_finite(q, q, n) * poch_finite(q * b, q, n) * poch_finite(
        a * b * q / c, q, n
    )
    den = (
        (1 - a * b * q ** (2 * n + 1))
        * poch_finite(a * q, q, n)
        * poch_finite(a * b * q, q, n)
        * poch_finite(c * q, q, n)
    )
    return complex(pref * num / den * (-a * c * q * q) ** n * q ** (n * (n - 1) // 2))


def _bqj_deficit(k: int, a, b, c, q) -> float:
    if k == 0:
        return 0.0
    ratio = _bqj_rhs(k, a, b, c, q, DEFAULT_TRUNCATION) / _bqj_rhs(
        0, a, b, c, q, DEFAULT_TRUNCATION
    )
    return max(0.0, -math.log10(abs(ratio)))


def _bqj_dps(n: int, m: int, a, b, c, q) -> int:
    deficit = 0.5 * (_bqj_deficit(n, a, b, c, q) + _bqj_deficit(m, a, b, c, q))
    return _quantize_dps(34 + deficit + n + m)


def _bqj_integral(n, m, a, b, c, q, dps: int) -> complex:
    with mp.workdps(dps):
        qm = mpf(q)

        def f(x):
            w = _bqj_weight_node(x, a, b, c, q, dps)
            pn = _bqj_poly_node(n, x, a, b, c, q, dps)
            pm = pn if m == n else _bqj_poly_node(m, x, a, b, c, q, dps)
            return w * pn * pm

        pol = TruncationPolicy(tol=10.0 ** (-(dps - 12)), max_terms=100_000)
        return complex(qcalculus.q_integral(f, c * qm, a * qm, qm, pol))


def clear_caches() -> None:
    """Drop memoised quadrature nodes (mainly for tests)."""
    _qhahn_K_node.cache_clear()
    _qhahn_H_node.cache_clear()
    _bqj_weight_node.cache_clear()
    _bqj_poly_node.cache_clear()


# ---------------------------------------------------------------------------
# memoised test functions for the expansion identities
# ---------------------------------------------------------------------------


def _memo_poch_factor(beta, q, inverse: bool = False):
    cache: dict = {}

    def f(x):
        key = (x, mp.dps)
        v = cache.get(key)
        if v is None:
            v = poch_infinite(beta * x, q)
            if inverse:
                v = 1 / v
            cache[key] = v
        return v

    return f


# ---------------------------------------------------------------------------
# recipes (one per registry entry; each computes lhs and rhs independently)
# ---------------------------------------------------------------------------


def _make_liu_master(m: int):
    def recipe(prm: dict, pol: PolicyBundle) -> CheckValues:
        q, al, a, b = prm["q"], prm["alpha"], prm["a"], prm["b"]
        bs = [prm[f"b{j}"] for j in range(1, m + 1)]
        cs = [prm[f"c{j}"] for j in range(1, m + 1)]
        tp = pol.truncation
        lhs = _P([al * q, al * a * b / q], q, tp) / _P([al * a, al * b], q, tp)
        for bj, cj in zip(bs, cs):
            lhs *= _P([al * a * bj / q, al * cj], q, tp) / _P(
                [al * a * cj / q, al * bj], q, tp
            )

        def inner(order: int) -> complex:
            def build():
                qm = mp_scalar(q)
                alm = mp_scalar(al)
                nums = [qm ** (-order), alm * qm**order] + [alm * mp_scalar(cj) for cj in cs]
                dens = [alm * mp_scalar(b)] + [alm * mp_scalar(bj) for bj in bs]
                return nums, dens, qm, qm

            value, _ = phi_terminating_core(build, order)
            return complex(value)

        total = 0j
        R = 1 + 0j
        small = 0
        used = 0
        for n in range(300):
            w = (1 - al * q ** (2 * n)) / (1 - al) * R
            t = w * inner(n)
            total += t
            used = n + 1
            if abs(t) < tp.tol * max(1.0, abs(total)):
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
            R *= (1 - al * q**n) * (1 - q ** (n + 1) / a) * (a / q) / (
                (1 - q ** (n + 1)) * (1 - al * a * q**n)
            )
        else:
            raise TruncationExceeded("master summation outer series did not converge")
        return CheckValues(lhs, total, {"outer_terms": used})

    return recipe


def _sample_liu_master(m: int):
    def sampler(rng) -> dict:
        def build(rng):
            prm = {
                "q": _pick_q(rng, (0.5, 0.7)),
                "alpha": _u(rng, 0.1, 0.5),
                "a": _u(rng, 0.05, 0.3),
                "b": _u(rng, 0.05, 0.5),
            }
            for j in range(1, m + 1):
                prm[f"b{j}"] = _u(rng, 0.05, 0.5)
                prm[f"c{j}"] = _u(rng, 0.05, 0.5)
            return prm

        return _rejection(rng, build)

    return sampler


def _recipe_rogers(prm, pol) -> CheckValues:
    q, al, a, b, c = prm["q"], prm["alpha"], prm["a"], prm["b"], prm["c"]
    tp = pol.truncation
    z = al * a * b * c / q**2
    res = eval_w(al, [q / a, q / b, q / c], q, z, tp)
    rhs = _P([al * q, al * a * b / q, al * a * c / q, al * b * c / q], q, tp) / _P(
        [al * a, al * b, al * c, z], q, tp
    )
    return CheckValues(res.value, rhs, {"terms": res.terms_used})


def _sample_rogers(rng) -> dict:
    def build(rng):
        return {
            "q": _pick_q(rng),
            "alpha": _u(rng, 0.1, 0.5),
            "a": _u(rng, 0.2, 1.2),
            "b": _u(rng, 0.2, 1.2),
            "c": _u(rng, 0.2, 1.2),
        }

    def ok(prm):
        q, al = prm["q"], prm["alpha"]
        z = al * prm["a"] * prm["b"] * prm["c"] / q**2
        if abs(z) > 0.9:
            return False
        return all(abs(al * prm[k]) <= 0.85 for k in ("a", "b", "c"))

    return _rejection(rng, build, ok)


def _recipe_qhahn_genfun(prm, pol, swapped: bool = False) -> CheckValues:
    q = prm["q"]
    a, b = prm["a"], prm["b"]
    c, d = prm["c"], prm["d"]
    s = prm["r"] if swapped else prm["s"]
    z = cmath.exp(1j * prm["theta"])
    tp = pol.truncation
    p = QHahnParams(a, b, c, d, 1.0, Base(complex(q)))
    if swapped:
        a_role, b_role = b, a
    else:
        a_role, b_role = a, b
    abcd = a * b * c * d
    total = 0j
    T = 1 + 0j
    small = 0
    used = 0
    for n in range(250):
        t = T * qhahn_A(n, a_role, b_role, p) * qhahn_poly(n, p, z)
        total += t
        used = n + 1
        if abs(t) < 1e-14:
            small += 1
            if small >= 5:
                break
        else:
            small = 0
        T *= (s - q**n) / (1 - abcd * s * q**n)
    else:
        raise TruncationExceeded("generating function series did not converge")
    rhs = _P([abcd, a_role * c * s, a_role * d * s, a_role * z], q, tp) / _P(
        [abcd * s, a_role * c, a_role * d, a_role * s * z], q, tp
    )
    return CheckValues(total, rhs, {"terms": used})


def _sample_qhahn_genfun(swapped: bool):
    key = "r" if swapped else "s"

    def sampler(rng) -> dict:
        def build(rng):
            return {
                "q": _pick_q(rng),
                "a": _u(rng, 0.05, 0.6),
                "b": _u(rng, 0.05, 0.6),
                "c": _u(rng, 0.05, 0.6),
                "d": _u(rng, 0.05, 0.6),
                key: _u(rng, 0.1, 0.6),
                "theta": _u(rng, 0.3, 2.8),
            }

        return _rejection(rng, build)

    return sampler


def _recipe_q_dougall_c0(prm, pol) -> CheckValues:
    q, al, s, r = prm["q"], prm["alpha"], prm["s"], prm["r"]
    tp = pol.truncation
    series = eval_wp_limit(
        al, (al, 1 / s, 1 / r), (q * al * s, q * al * r), q, -al * r * s, +1, tp
    )
    rhs = _P([q * al, q * al * r * s], q, tp) / _P([q * al * s, q * al * r], q, tp)
    return CheckValues(series.value, rhs, {"terms": series.terms_used})


def _sample_q_dougall_c0(rng) -> dict:
    return {
        "q": _pick_q(rng),
        "alpha": _u(rng, 0.05, 0.6),
        "s": _u(rng, 0.05, 0.6),
        "r": _u(rng, 0.05, 0.6),
    }


def _recipe_askey_roy(prm, pol) -> CheckValues:
    a, b, c, d, rho, q = (prm[k] for k in ("a", "b", "c", "d", "rho", "q"))
    dps = _quantize_dps(32)
    lhs = _qhahn_integral(0, 0, a, b, c, d, rho, q, dps, pol.quadrature)
    rhs = qi.askey_roy_rhs(a, b, c, d, rho, q, pol.truncation)
    return CheckValues(lhs, rhs, {"dps": dps})


def _sample_askey_roy(rng) -> dict:
    return {
        "q": _pick_q(rng),
        "a": _u(rng, 0.05, 0.6),
        "b": _u(rng, 0.05, 0.6),
        "c": _u(rng, 0.05, 0.6),
        "d": _u(rng, 0.05, 0.6),
        "rho": _u(rng, 0.3, 1.4),
    }


_QHAHN_FIXED = {"a": 0.3, "b": 0.2, "c": 0.4, "d": 0.1, "rho": 0.6, "q": 0.5}


def _recipe_qhahn_orthogonality(prm, pol) -> CheckValues:
    n, m = int(prm["n"]), int(prm["m"])
    a, b, c, d, rho, q = (prm[k] for k in ("a", "b", "c", "d", "rho", "q"))
    p = QHahnParams(a, b, c, d, rho, Base(complex(q)))
    dps = _qhahn_dps(n, m, a, b, c, d, q)
    lhs = _qhahn_integral(n, m, a, b, c, d, rho, q, dps, pol.quadrature)
    L0 = qhahn_L0(p, pol.truncation)
    rhs = qhahn_L(n, p, pol.truncation) if n == m else 0j
    scale = abs(L0)
    imag_ok = abs(lhs.imag) <= 1e-9 * scale
    return CheckValues(
        lhs,
        rhs,
        {"dps": dps, "imag_over_L0": lhs.imag / scale},
        scale=scale,
        metric="rel" if n == m else "abs_scaled",
        ok_extra=imag_ok,
    )


def _recipe_qhahn_rho_agreement(prm, pol) -> CheckValues:
    # The raw integral carries the auxiliary rho only through the L_0 factor,
    # so the rho-free statement is agreement of I(rho) / L_0(rho).
    n, m = int(prm["n"]), int(prm["m"])
    a, b, c, d, q = (prm[k] for k in ("a", "b", "c", "d", "q"))
    dps = _qhahn_dps(n, m, a, b, c, d, q)

    def normalised(rho):
        I = _qhahn_integral(n, m, a, b, c, d, rho, q, dps, pol.quadrature)
        p = QHahnParams(a, b, c, d, rho, Base(complex(q)))
        return I / qhahn_L0(p, pol.truncation)

    lhs = normalised(prm["rho"])
    rhs = normalised(prm["rho2"])
    return CheckValues(
        lhs, rhs, {"dps": dps},
        metric="rel" if n == m else "abs_scaled",
    )


def _sample_qhahn_orthogonality(rng) -> dict:
    def build(rng):
        return {
            "n": int(rng.integers(0, 7)),
            "m": int(rng.integers(0, 7)),
            "q": _pick_q(rng),
            "a": _u(rng, 0.05, 0.55),
            "b": _u(rng, 0.05, 0.55),
            "c": _u(rng, 0.05, 0.55),
            "d": _u(rng, 0.05, 0.55),
            "rho": _u(rng, 0.35, 1.3),
        }

    def ok(prm):
        return _off_lattice(prm["a"] * prm["b"] * prm["c"] * prm["d"] / prm["q"], prm["q"])

    return _rejection(rng, build, ok)


def _recipe_bww_transform(prm, pol) -> CheckValues:
    q, al, a, b, c, d = (prm[k] for k in ("q", "alpha", "a", "b", "c", "d"))
    tp = pol.truncation
    lam = q * al * al / (b * c * d)
    lhs = eval_phi(
        SeriesSpec(
            numerator=(c, d, al * q / (a * b)),
            denominator=(al * q / a, al * q / b),
            base=Base(complex(q)),
            argument=q * al / (c * d),
        ),
        tp,
    ).value
    series = eval_wp_limit(
        lam,
        (lam, a, lam * b / al, lam * c / al, lam * d / al),
        (q * lam / a, q * al / b, q * al / c, q * al / d),
        q,
        -q * al / a,
        -1,
        tp,
    )
    rhs = (
        _P([q * al / c, q * al / d, q * lam / a], q, tp)
        / _P([al * q / a, q * al / (c * d), q * lam], q, tp)
        * series.value
    )
    return CheckValues(lhs, rhs, {"terms": series.terms_used})


def _sample_bww_transform(rng) -> dict:
    def build(rng):
        return {
            "q": _pick_q(rng, (0.3, 0.5)),
            "alpha": _u(rng, 0.05, 0.3),
            "a": _u(rng, 0.1, 0.6),
            "b": _u(rng, 0.1, 0.6),
            "c": _u(rng, 0.35, 0.7),
            "d": _u(rng, 0.35, 0.7),
        }

    def ok(prm):
        q, al, a, b, c, d = (prm[k] for k in ("q", "alpha", "a", "b", "c", "d"))
        if abs(q * al / (c * d)) > 0.75:
            return False
        lam = q * al * al / (b * c * d)
        checks = (al * q / a, al * q / b, q * lam, q * lam / a)
        return all(_off_lattice(x, q) for x in checks)

    return _rejection(rng, build, ok)


def _recipe_watson_whipple(prm, pol) -> CheckValues:
    n = int(prm["n"])
    q, al, a, b, c, d = (prm[k] for k in ("q", "alpha", "a", "b", "c", "d"))

    def build_87():
        qm, alm = mp_scalar(q), mp_scalar(al)
        am, bm, cm, dm = (mp_scalar(x) for x in (a, b, c, d))
        rt = mp.sqrt(alm)
        nums = [alm, qm * rt, -qm * rt, am, bm, cm, dm, qm ** (-n)]
        dens = [rt, -rt, qm * alm / am, qm * alm / bm, qm * alm / cm, qm * alm / dm,
                alm * qm ** (n + 1)]
        z = alm * alm * qm ** (2 + n) / (am * bm * cm * dm)
        return nums, dens, z, qm

    lhs, _ = phi_terminating_core(build_87, n)

    def build_43():
        qm, alm = mp_scalar(q), mp_scalar(al)
        am, bm, cm, dm = (mp_scalar(x) for x in (a, b, c, d))
        nums = [qm ** (-n), cm, dm, qm * alm / (am * bm)]
        dens = [qm * alm / am, qm * alm / bm, cm * dm * qm ** (-n) / alm]
        return nums, dens, qm, qm

    phi43, _ = phi_terminating_core(build_43, n)
    ratio = (
        poch_finite(q * al, q, n)
        * poch_finite(q * al / (c * d), q, n)
        / (poch_finite(q * al / c, q, n) * poch_finite(q * al / d, q, n))
    )
    return CheckValues(complex(lhs), ratio * complex(phi43), {"order": n})


def _sample_watson_whipple(rng) -> dict:
    def build(rng):
        return {
            "n": int(rng.integers(0, 13)),
            "q": _pick_q(rng),
            "alpha": _u(rng, 0.1, 0.6),
            "a": _u(rng, 0.1, 0.6),
            "b": _u(rng, 0.1, 0.6),
            "c": _u(rng, 0.1, 0.6),
            "d": _u(rng, 0.1, 0.6),
        }

    def ok(prm):
        q, al = prm["q"], prm["alpha"]
        n = prm["n"]
        checks = [q * al / prm[k] for k in ("a", "b", "c", "d")]
        checks.append(prm["c"] * prm["d"] * q ** (-n) / al)
        return all(_off_lattice(x, q) for x in checks)

    return _rejection(rng, build, ok)


def _recipe_lbww(prm, pol) -> CheckValues:
    u, v, h, r, s, t, q = (prm[k] for k in ("u", "v", "h", "r", "s", "t", "q"))
    tp = pol.truncation
    lhs = qi.lbww_lhs(u, v, h, r, s, t, q, tp)
    rhs = qi.lbww_rhs(u, v, h, r, s, t, q, tp)
    return CheckValues(lhs, rhs)


def _sample_lbww(rng) -> dict:
    def build(rng):
        return {
            "q": _pick_q(rng),
            "u": _u(rng, 0.2, 0.6),
            "v": _u(rng, 0.2, 0.6),
            "h": _u(rng, 0.05, 0.6),
            "r": _u(rng, 0.05, 0.6),
            "s": _u(rng, 0.05, 0.6),
            "t": _u(rng, 0.05, 0.6),
        }

    def ok(prm):
        return abs(prm["u"] - prm["v"]) >= 0.08

    return _rejection(rng, build, ok)


def _recipe_bqj_genfun(prm, pol) -> CheckValues:
    a, b, c, t, x, q = (prm[k] for k in ("a", "b", "c", "t", "x", "q"))
    tp = pol.truncation
    p = BigQJacobiParams(a, b, c, Base(complex(q)))
    total = 0j
    B = 1 + 0j
    small = 0
    used = 0
    for n in range(250):
        coeff = (1 - a * b * q ** (2 * n + 1)) * B
        term = coeff * big_qjacobi_poly(n, p, x)
        total += term
        used = n + 1
        if abs(term) < 1e-14:
            small += 1
            if small >= 5:
                break
        else:
            small = 0
        B *= (1 - q * a * b * q**n) * (t - q**n) / (
            (1 - q ** (n + 1)) * (1 - q * q * a * b * t * q**n)
        )
    else:
        raise TruncationExceeded("generating function series did not converge")
    rhs = _P([q * a * b, q * a * t, q * c * t, x], q, tp) / _P(
        [q * q * a * b * t, q * a, q * c, t * x], q, tp
    )
    return CheckValues(total, rhs, {"terms": used})


def _sample_bqj_genfun(rng) -> dict:
    return {
        "q": _pick_q(rng),
        "a": _u(rng, 0.05, 0.6),
        "b": _u(rng, 0.05, 0.6),
        "c": -_u(rng, 0.05, 0.6),
        "t": _u(rng, 0.1, 0.6),
        "x": _u(rng, 0.05, 0.6),
    }


_BQJ_FIXED = {"a": 0.3, "b": 0.4, "c": -0.2, "q": 0.5}


def _recipe_bqj_orthogonality(prm, pol) -> CheckValues:
    n, m = int(prm["n"]), int(prm["m"])
    a, b, c, q = (prm[k] for k in ("a", "b", "c", "q"))
    dps = _bqj_dps(n, m, a, b, c, q)
    lhs = _bqj_integral(n, m, a, b, c, q, dps)
    rhs = _bqj_rhs(n, a, b, c, q, pol.truncation) if n == m else 0j
    scale = abs(_bqj_rhs(0, a, b, c, q, pol.truncation))
    return CheckValues(
        lhs,
        rhs,
        {"dps": dps},
        scale=scale,
        metric="rel" if n == m else "abs_scaled",
    )


def _sample_bqj_orthogonality(rng) -> dict:
    def build(rng):
        return {
            "n": int(rng.integers(0, 7)),
            "m": int(rng.integers(0, 7)),
            "q": _pick_q(rng),
            "a": _u(rng, 0.1, 0.6),
            "b": _u(rng, 0.1, 0.6),
            "c": -_u(rng, 0.1, 0.6),
        }

    def ok(prm):
        a, b, c, q = prm["a"], prm["b"], prm["c"], prm["q"]
        return _off_lattice(a * b * q, q) and abs(a * b * q / c) < 3.0

    return _rejection(rng, build, ok)


def _recipe_aw_integral(prm, pol) -> CheckValues:
    a, b, c, d, q = (prm[k] for k in ("a", "b", "c", "d", "q"))
    lhs = qi.askey_wilson_lhs(a, b, c, d, q, pol.quadrature, pol.truncation)
    rhs = qi.askey_wilson_rhs(a, b, c, d, q, pol.truncation)
    return CheckValues(lhs, rhs)


def _sample_aw_integral(rng) -> dict:
    return {
        "q": _pick_q(rng),
        "a": _u(rng, 0.05, 0.6),
        "b": _u(rng, 0.05, 0.6),
        "c": _u(rng, 0.05, 0.6),
        "d": _u(rng, 0.05, 0.6),
    }


def _recipe_aw_genfun(prm, pol) -> CheckValues:
    from .polyfamilies import AWParams, askey_wilson_poly

    a, b, c, d, s, q, theta = (prm[k] for k in ("a", "b", "c", "d", "s", "q", "theta"))
    tp = pol.truncation
    p = AWParams(a, b, c, d, Base(complex(q)))
    abcd = a * b * c * d
    lead = 1 - abcd / q
    total = 0j
    B = 1 + 0j
    small = 0
    used = 0
    for n in range(250):
        coeff = (1 - abcd * q ** (2 * n - 1)) / lead * B
        term = coeff * askey_wilson_poly(n, p, theta)
        total += term
        used = n + 1
        if abs(term) < 1e-14:
            small += 1
            if small >= 5:
                break
        else:
            small = 0
        B *= (1 - abcd / q * q**n) * (s - q**n) * a / (
            (1 - q ** (n + 1)) * (1 - a * b * q**n) * (1 - a * c * q**n)
            * (1 - a * d * q**n) * (1 - abcd * s * q**n)
        )
    else:
        raise TruncationExceeded("generating function series did not converge")
    e = cmath.exp(1j * theta)
    rhs = _P([abcd, a * b * s, a * c * s, a * d * s, a * e, a / e], q, tp) / _P(
        [abcd * s, a * b, a * c, a * d, s * a * e, s * a / e], q, tp
    )
    return CheckValues(total, rhs, {"terms": used})


def _sample_aw_genfun(rng) -> dict:
    return {
        "q": _pick_q(rng),
        "a": _u(rng, 0.05, 0.6),
        "b": _u(rng, 0.05, 0.6),
        "c": _u(rng, 0.05, 0.6),
        "d": _u(rng, 0.05, 0.6),
        "s": _u(rng, 0.1, 0.6),
        "theta": _u(rng, 0.3, 2.8),
    }


def _recipe_nr(prm, pol) -> CheckValues:
    a, b, c, d, s, r, q = (prm[k] for k in ("a", "b", "c", "d", "s", "r", "q"))
    lhs = qi.nr_trig_lhs(a, b, c, d, s, r, q, pol.quadrature, pol.truncation)
    rhs = qi.nassrallah_rahman_rhs(a, b, c, d, s, r, q, pol.truncation)
    return CheckValues(lhs, rhs)


def _recipe_nr_reduction_product(prm, pol) -> CheckValues:
    a, b, c, d, s = (prm[k] for k in ("a", "b", "c", "d", "s"))
    q = prm["q"]
    r = a * b * c * d * s
    lhs = qi.nassrallah_rahman_rhs(a, b, c, d, s, r, q, pol.truncation)
    rhs = qi.nr_product_rhs(a, b, c, d, s, q, pol.truncation)
    return CheckValues(lhs, rhs)


def _sample_nr(rng) -> dict:
    def build(rng):
        s = _u(rng, 0.15, 0.55)
        return {
            "q": _pick_q(rng),
            "a": _u(rng, 0.1, 0.55),
            "b": _u(rng, 0.1, 0.55),
            "c": _u(rng, 0.1, 0.55),
            "d": _u(rng, 0.1, 0.55),
            "s": s,
            "r": _u(rng, 0.05, 0.8 * s),
        }

    return _rejection(rng, build)


def _recipe_nr_intermediate(prm, pol) -> CheckValues:
    a, b, c, d, s, r, q = (prm[k] for k in ("a", "b", "c", "d", "s", "r", "q"))
    lhs = qi.nassrallah_rahman_rhs(a, b, c, d, s, r, q, pol.truncation)
    rhs = qi.nr_intermediate_rhs(a, b, c, d, s, r, q, pol.truncation)
    return CheckValues(lhs, rhs)


def _recipe_nr_r0(prm, pol) -> CheckValues:
    a, b, c, d, s, q = (prm[k] for k in ("a", "b", "c", "d", "s", "q"))
    lhs = qi.nr_trig_lhs(a, b, c, d, s, 0.0, q, pol.quadrature, pol.truncation)
    rhs = qi.liu_r0_rhs(a, b, c, d, s, q, pol.truncation)
    return CheckValues(lhs, rhs)


def _sample_nr_nos(rng) -> dict:
    return {
        "q": _pick_q(rng),
        "a": _u(rng, 0.1, 0.55),
        "b": _u(rng, 0.1, 0.55),
        "c": _u(rng, 0.1, 0.55),
        "d": _u(rng, 0.1, 0.55),
        "s": _u(rng, 0.1, 0.55),
    }


def _recipe_pfaff(prm, pol) -> CheckValues:
    n = int(prm["n"])
    a, b, c, d, r, q = (prm[k] for k in ("a", "b", "c", "d", "r", "q"))

    def build():
        qm = mp_scalar(q)
        am, bm, cm, dm, rm = (mp_scalar(x) for x in (a, b, c, d, r))
        nums = [qm ** (-n), rm * bm * cm * dm * qm ** (n - 1), am * dm]
        dens = [am * bm * cm * dm, rm * dm]
        return nums, dens, qm, qm

    lhs, _ = phi_terminating_core(build, n)
    rhs = (
        poch_finite(b * c, q, n)
        * poch_finite(r / a, q, n)
        * (a * d) ** n
        / (poch_finite(r * d, q, n) * poch_finite(a * b * c * d, q, n))
    )
    return CheckValues(complex(lhs), rhs, {"order": n})


def _sample_pfaff(rng) -> dict:
    def build(rng):
        return {
            "n": int(rng.integers(0, 13)),
            "q": _pick_q(rng),
            "a": _u(rng, 0.1, 0.6),
            "b": _u(rng, 0.1, 0.6),
            "c": _u(rng, 0.1, 0.6),
            "d": _u(rng, 0.1, 0.6),
            "r": _u(rng, 0.1, 0.6),
        }

    def ok(prm):
        return _off_lattice(prm["r"] / prm["a"], prm["q"])

    return _rejection(rng, build, ok)


def _recipe_alsalam_verma(prm, pol) -> CheckValues:
    a, b, c, d, s, q = (prm[k] for k in ("a", "b", "c", "d", "s", "q"))
    tp = pol.truncation
    lhs = qi.alsalam_verma_lhs(a, b, c, d, s, q, tp)
    rhs = qi.alsalam_verma_rhs(a, b, c, d, s, q, tp)
    return CheckValues(lhs, rhs)


def _sample_alsalam_verma(rng) -> dict:
    def build(rng):
        return {
            "q": _pick_q(rng),
            "a": _u(rng, 0.05, 0.5),
            "b": _u(rng, 0.05, 0.5),
            "c": _u(rng, 0.05, 0.5),
            "d": _u(rng, 0.15, 0.6),
            "s": _u(rng, 0.15, 0.6),
        }

    def ok(prm):
        return abs(prm["d"] - prm["s"]) >= 0.05

    return _rejection(rng, build, ok)


def _recipe_qbailey(prm, pol) -> CheckValues:
    a, b, c, d, s, r, q = (prm[k] for k in ("a", "b", "c", "d", "s", "r", "q"))
    tp = pol.truncation
    lhs = qi.qbailey_lhs(a, b, c, d, s, r, q, tp)
    rhs = qi.qbailey_rhs(a, b, c, d, s, r, q, tp)
    return CheckValues(lhs, rhs)


def _recipe_qbailey_bridge(prm, pol) -> CheckValues:
    a, b, c, d, s, r, q = (prm[k] for k in ("a", "b", "c", "d", "s", "r", "q"))
    tp = pol.truncation
    lhs = qi.qbailey_lhs(a, b, c, d, s, r, q, tp)
    trig = qi.nr_trig_lhs(a, b, c, d, s, r, q, pol.quadrature, tp)
    pref = (
        (1 - q)
        * s
        * _P([q, q, a * b, a * c, b * c, d / s, q * s / d, d * s], q, tp)
        / (2 * math.pi * _P([r / d, r / s], q, tp))
    )
    return CheckValues(lhs, pref * trig, {})


def _sample_qbailey(rng) -> dict:
    def build(rng):
        d = _u(rng, 0.2, 0.6)
        s = _u(rng, 0.2, 0.6)
        return {
            "q": _pick_q(rng),
            "a": _u(rng, 0.05, 0.5),
            "b": _u(rng, 0.05, 0.5),
            "c": _u(rng, 0.05, 0.5),
            "d": d,
            "s": s,
            "r": _u(rng, 0.05, 0.8 * min(d, s)),
        }

    def ok(prm):
        return abs(prm["d"] - prm["s"]) >= 0.05

    return _rejection(rng, build, ok)


def _recipe_nr_product(prm, pol) -> CheckValues:
    a, b, c, d, s, q = (prm[k] for k in ("a", "b", "c", "d", "s", "q"))
    r = a * b * c * d * s
    lhs = qi.nr_trig_lhs(a, b, c, d, s, r, q, pol.quadrature, pol.truncation)
    rhs = qi.nr_product_rhs(a, b, c, d, s, q, pol.truncation)
    return CheckValues(lhs, rhs)


def _recipe_nr_product_s0(prm, pol) -> CheckValues:
    a, b, c, d = (prm[k] for k in ("a", "b", "c", "d"))
    q = prm["q"]
    lhs = qi.nr_product_rhs(a, b, c, d, 0.0, q, pol.truncation)
    rhs = qi.askey_wilson_rhs(a, b, c, d, q, pol.truncation)
    return CheckValues(lhs, rhs)


def _recipe_q_dougall_6w5(prm, pol) -> CheckValues:
    a, b, c, d, s, r, q, theta = (
        prm[k] for k in ("a", "b", "c", "d", "s", "r", "q", "theta")
    )
    tp = pol.truncation
    e = cmath.exp(1j * theta)
    alpha = a * b * c * d * s * s / q
    res = eval_w(alpha, [a * b * c * d * s / r, s * e, s / e], q, r / s, tp)
    habcds = _P([a * b * c * d * s * e, a * b * c * d * s / e], q, tp)
    hr = _P([r * e, r / e], q, tp)
    rhs = (
        _P([a * b * c * d * s * s, a * b * c * d], q, tp)
        * hr
        / (_P([r * s, r / s], q, tp) * habcds)
    )
    return CheckValues(res.value, rhs, {"terms": res.terms_used})


def _sample_q_dougall_6w5(rng) -> dict:
    prm = _sample_nr(rng)
    prm["theta"] = _u(rng, 0.3, 2.8)
    return prm


def _recipe_liu_3phi2(prm, pol) -> CheckValues:
    q, al, x, y, u, v = (prm[k] for k in ("q", "alpha", "x", "y", "u", "v"))
    tp = pol.truncation
    lhs = _P([al * q, al * x * y / q], q, tp) / _P([al * x, al * y], q, tp) * eval_phi(
        SeriesSpec(
            numerator=(q / x, q / y, al * u * v / q),
            denominator=(al * u, al * v),
            base=Base(complex(q)),
            argument=al * x * y / q,
        ),
        tp,
    ).value
    series = eval_wp_limit(
        al,
        (al, q / x, q / y, q / u, q / v),
        (al * x, al * y, al * u, al * v),
        q,
        -al * al * x * y * u * v / q**2,
        -1,
        tp,
    )
    return CheckValues(lhs, series.value, {"terms": series.terms_used})


def _sample_liu_3phi2(rng) -> dict:
    def build(rng):
        return {
            "q": _pick_q(rng),
            "alpha": _u(rng, 0.05, 0.35),
            "x": _u(rng, 0.3, 1.2),
            "y": _u(rng, 0.3, 1.2),
            "u": _u(rng, 0.3, 1.2),
            "v": _u(rng, 0.3, 1.2),
        }

    def ok(prm):
        q, al = prm["q"], prm["alpha"]
        if abs(al * prm["x"] * prm["y"] / q) > 0.75:
            return False
        return all(abs(al * prm[k]) <= 0.85 for k in ("x", "y", "u", "v"))

    return _rejection(rng, build, ok)


def _recipe_liu_qbeta(prm, pol) -> CheckValues:
    a, b, c, d, s, u, v, q = (prm[k] for k in ("a", "b", "c", "d", "s", "u", "v", "q"))
    lhs = qi.liu_qbeta_lhs(a, b, c, d, s, u, v, q, pol.quadrature, pol.truncation)
    rhs = qi.liu_qbeta_rhs(a, b, c, d, s, u, v, q, pol.truncation)
    return CheckValues(lhs, rhs)


def _recipe_liu_qbeta_s0(prm, pol) -> CheckValues:
    a, b, c, d = (prm[k] for k in ("a", "b", "c", "d"))
    q, u, v = prm["q"], prm["u"], prm["v"]
    lhs = qi.liu_qbeta_rhs(a, b, c, d, 0.0, u, v, q, pol.truncation)
    rhs = qi.askey_wilson_rhs(a, b, c, d, q, pol.truncation)
    return CheckValues(lhs, rhs)


def _sample_liu_qbeta(rng) -> dict:
    return {
        "q": _pick_q(rng),
        "a": _u(rng, 0.1, 0.55),
        "b": _u(rng, 0.1, 0.55),
        "c": _u(rng, 0.1, 0.55),
        "d": _u(rng, 0.1, 0.55),
        "s": _u(rng, 0.1, 0.55),
        "u": _u(rng, 0.3, 1.3),
        "v": _u(rng, 0.3, 1.3),
    }


def _recipe_liu_qbeta_u_eq_q(prm, pol) -> CheckValues:
    # At u = q the integrand's 3phi2 factor is Gauss-summable, so the
    # quadrature must match the product-form value divided by the
    # absorbed (q alpha, bcds; q)_inf factors.
    a, b, c, d, s, v, q = (prm[k] for k in ("a", "b", "c", "d", "s", "v", "q"))
    tp = pol.truncation
    alpha = a * a * b * c * d * s / q
    lhs = qi.liu_qbeta_lhs(a, b, c, d, s, q, v, q, pol.quadrature, tp)
    rhs = qi.nr_product_rhs(a, b, c, d, s, q, tp) / _P(
        [q * alpha, b * c * d * s], q, tp
    )
    return CheckValues(lhs, rhs)


def _sample_liu_qbeta_u_eq_q(rng) -> dict:
    prm = _sample_liu_qbeta(rng)
    prm.pop("u")
    return prm


def _recipe_liu_qbeta_v_limit(prm, pol) -> CheckValues:
    # Confluent limit of the extended q-beta integral: the extra series
    # factor collapses to a single h(cos t; alpha u / a) weight, evaluated
    # here by quadrature against the alpha-based 8W7 closed form.
    a, b, c, d, s, u, q = (prm[k] for k in ("a", "b", "c", "d", "s", "u", "q"))
    tp = pol.truncation
    alpha = a * a * b * c * d * s / q
    r_eff = alpha * u / a
    lhs = qi.nr_trig_lhs(a, b, c, d, s, r_eff, q, pol.quadrature, tp)
    num = _P(
        [a * b * c * d, a * b * c * s, a * b * d * s, a * c * d * s, alpha * u,
         alpha * u / (a * a)],
        q, tp,
    )
    den = _P(
        [q, a * b, a * c, a * d, a * s, b * c, b * d, b * s, c * d, c * s, d * s,
         q * alpha],
        q, tp,
    )
    w8 = eval_w(
        alpha, [q / u, a * b, a * c, a * d, a * s], q, alpha * u / (a * a), tp
    ).value
    rhs = 2 * math.pi * num / den * w8
    return CheckValues(lhs, rhs)


def _sample_liu_qbeta_v_limit(rng) -> dict:
    prm = _sample_liu_qbeta(rng)
    prm.pop("v")
    return prm


def _recipe_q_gauss(prm, pol) -> CheckValues:
    a, b, c, q = (prm[k] for k in ("a", "b", "c", "q"))
    tp = pol.truncation
    res = eval_phi(
        SeriesSpec(
            numerator=(q / a, q / b),
            denominator=(c,),
            base=Base(complex(q)),
            argument=a * b * c / q**2,
        ),
        tp,
    )
    rhs = _P([c * a / q, c * b / q], q, tp) / _P([c, a * b * c / q**2], q, tp)
    return CheckValues(res.value, rhs, {"terms": res.terms_used})


def _sample_q_gauss(rng) -> dict:
    def build(rng):
        return {
            "q": _pick_q(rng),
            "a": _u(rng, 0.1, 0.8),
            "b": _u(rng, 0.1, 0.8),
            "c": _u(rng, 0.1, 0.8),
        }

    def ok(prm):
        return abs(prm["a"] * prm["b"] * prm["c"] / prm["q"] ** 2) <= 0.8

    return _rejection(rng, build, ok)


def _recipe_andrews_cube(prm, pol) -> CheckValues:
    beta, p = prm["beta"], prm["p"]
    n = int(prm["n"])

    def build():
        pm, bm = mp_scalar(p), mp_scalar(beta)
        qm = pm**3
        alm = bm**3
        rt_bp = mp.sqrt(bm * pm)
        half = rt_bp**3  # (beta p)^{3/2} = alpha^{1/2} q^{1/2}
        rt_b = mp.sqrt(bm)
        halfq = rt_b**3 * qm  # alpha^{1/2} q
        nums = [qm ** (-n), alm * qm**n, bm * pm, bm * pm**2, bm * pm**3]
        dens = [halfq, -halfq, half, -half]
        return nums, dens, qm, qm

    lhs, _ = phi_terminating_core(build, n)
    q = p**3
    alpha = beta**3
    rhs = (
        (1 - alpha)
        * (1 - beta * p ** (2 * n))
        * poch_finite(q, q, n)
        * poch_finite(beta, p, n)
        * (p * beta) ** n
        / (
            (1 - beta)
            * (1 - alpha * q ** (2 * n))
            * poch_finite(alpha, q, n)
            * poch_finite(p, p, n)
        )
    )
    return CheckValues(complex(lhs), rhs, {"order": n})


def _sample_andrews_cube(rng) -> dict:
    return {
        "n": int(rng.integers(0, 13)),
        "p": _pick_q(rng) ** (1.0 / 3.0),
        "beta": _u(rng, 0.3, 0.85),
    }


def _recipe_cube_product(prm, pol) -> CheckValues:
    beta, p, a = prm["beta"], prm["p"], prm["a"]
    tp = pol.truncation
    q = p**3
    alpha = beta**3
    lhs = (
        poch_infinite(alpha * a * a / q, q, tp)
        * poch_infinite(beta * p, p, tp)
        / (poch_infinite(alpha * a, q, tp) * poch_infinite(beta * a / p**2, p, tp))
    )
    omega = cmath.exp(2j * math.pi / 3)
    cbrt = a ** (1.0 / 3.0)
    res = eval_w(
        beta,
        [p / cbrt, p / (cbrt * omega), p / (cbrt * omega**2)],
        p,
        beta * a / p**2,
        tp,
    )
    return CheckValues(lhs, res.value, {"terms": res.terms_used})


def _sample_cube_product(rng) -> dict:
    def build(rng):
        return {
            "p": _pick_q(rng) ** (1.0 / 3.0),
            "beta": _u(rng, 0.3, 0.85),
            "a": _u(rng, 0.1, 0.6),
        }

    def ok(prm):
        return abs(prm["beta"] * prm["a"] / prm["p"] ** 2) <= 0.72

    return _rejection(rng, build, ok)


def _recipe_theta_product(prm, pol) -> CheckValues:
    q = prm["q"]
    tp = pol.truncation
    q3 = q**3
    lhs = (
        poch_infinite(q, q, tp)
        * poch_infinite(q3, q3, tp)
        / (poch_infinite(-q, q, tp) * poch_infinite(-q3, q3, tp))
    )
    total = 1.0
    n = 1
    while True:
        term = 2.0 * (-1) ** n * q**n * (1 + q**n) / (1 + q ** (3 * n))
        total += term
        if abs(term) < 1e-18:
            break
        n += 1
        if n > 10_000:
            raise TruncationExceeded("theta series did not converge")
    return CheckValues(complex(lhs), complex(total), {"terms": n})


def _sample_theta_product(rng) -> dict:
    return {"q": _u(rng, 0.02, 0.25)}


def _recipe_andrews_mod3(prm, pol) -> CheckValues:
    al = prm["alpha"]
    q = prm["q"]
    n = int(prm["n"])

    def build():
        qm, alm = mp_scalar(q), mp_scalar(al)
        third = mp.cbrt(alm)
        omega = mp.expjpi(mpf(2) / 3)
        rt = mp.sqrt(alm)
        rtq = mp.sqrt(qm * alm)
        nums = [qm ** (-n), alm * qm**n, third, third * omega, third * omega**2]
        dens = [rt, -rt, rtq, -rtq]
        return nums, dens, qm, qm

    lhs, max_log = phi_terminating_core(build, n)
    scale = float(10.0 ** min(max_log, 300.0))
    if n % 3:
        return CheckValues(complex(lhs), 0j, {"order": n}, scale=scale, metric="abs_scaled")
    l = n // 3
    q3 = q**3
    rhs = (
        poch_finite(al, q3, l)
        * poch_finite(q, q, 3 * l)
        * al**l
        / (poch_finite(al, q, 3 * l) * poch_finite(q3, q3, l))
    )
    return CheckValues(complex(lhs), rhs, {"order": n})


def _sample_andrews_mod3(rng) -> dict:
    return {
        "n": int(rng.integers(0, 13)),
        "q": _pick_q(rng),
        "alpha": _u(rng, 0.1, 0.8),
    }


def _recipe_q_watson(prm, pol) -> CheckValues:
    al, lam, q = prm["alpha"], prm["lambda"], prm["q"]
    n = int(prm["n"])

    def build():
        qm, alm, lm = mp_scalar(q), mp_scalar(al), mp_scalar(lam)
        rt_l = mp.sqrt(lm)
        rt_qa = mp.sqrt(qm * alm)
        nums = [qm ** (-n), alm * qm**n, rt_l, -rt_l]
        dens = [rt_qa, -rt_qa, lm]
        return nums, dens, qm, qm

    lhs, max_log = phi_terminating_core(build, n)
    scale = float(10.0 ** min(max_log, 300.0))
    if n % 2:
        return CheckValues(complex(lhs), 0j, {"order": n}, scale=scale, metric="abs_scaled")
    half = n // 2
    q2 = q**2
    rhs = (
        poch_finite(q, q2, half)
        * poch_finite(al * q / lam, q2, half)
        * lam**half
        / (poch_finite(q * al, q2, half) * poch_finite(q * lam, q2, half))
    )
    return CheckValues(complex(lhs), rhs, {"order": n})


def _sample_q_watson(rng) -> dict:
    def build(rng):
        return {
            "n": int(rng.integers(0, 13)),
            "q": _pick_q(rng),
            "alpha": _u(rng, 0.1, 0.8),
            "lambda": _u(rng, 0.1, 0.8),
        }

    def ok(prm):
        q = prm["q"]
        return _off_lattice(prm["alpha"] * q / prm["lambda"], q * q)

    return _rejection(rng, build, ok)


def _recipe_verma_jain(prm, pol) -> CheckValues:
    al, lam, q = prm["alpha"], prm["lambda"], prm["q"]
    n = int(prm["n"])

    def build():
        qm, alm, lm = mp_scalar(q), mp_scalar(al), mp_scalar(lam)
        Q = qm * qm
        nums = [Q ** (-n), alm * alm * qm ** (2 * n), lm, qm * lm]
        dens = [qm * alm, qm * qm * alm, lm * lm]
        return nums, dens, Q, Q

    lhs, _ = phi_terminating_core(build, n)
    rhs = (
        lam**n
        * poch_finite(-q, q, n)
        * poch_finite(q * al / lam, q, n)
        * (1 - al)
        / (poch_finite(al, q, n) * poch_finite(-lam, q, n) * (1 - al * q ** (2 * n)))
    )
    return CheckValues(complex(lhs), rhs, {"order": n})


def _sample_verma_jain(rng) -> dict:
    def build(rng):
        return {
            "n": int(rng.integers(0, 13)),
            "q": _pick_q(rng),
            "alpha": _u(rng, 0.1, 0.8),
            "lambda": _u(rng, 0.1, 0.8),
        }

    def ok(prm):
        q = prm["q"]
        return _off_lattice(prm["alpha"] * q / prm["lambda"], q)

    return _rejection(rng, build, ok)


_EXPANSION_ORDER = 40


def _recipe_liu_expansion(prm, pol, inverse: bool = False) -> CheckValues:
    beta, a, al, q = prm["beta"], prm["a"], prm["alpha"], prm["q"]
    f = _memo_poch_factor(beta, q, inverse=inverse)
    lhs = qcalculus.liu_reconstruct(f, a, al, q, _EXPANSION_ORDER)
    target = poch_infinite(beta * a, q, pol.truncation)
    rhs = 1 / target if inverse else target
    return CheckValues(lhs, complex(rhs), {"order": _EXPANSION_ORDER})


def _recipe_liu_expansion_inverse(prm, pol) -> CheckValues:
    return _recipe_liu_expansion(prm, pol, inverse=True)


def _recipe_jackson_consistency(prm, pol) -> CheckValues:
    n = int(prm["n"])
    x, q, beta = prm["x"], prm["q"], prm["beta"]
    f = _memo_poch_factor(beta, q)
    lhs = qcalculus.q_derivative_n(f, x, q, n)
    g = f
    for _ in range(n):
        g = (lambda gg: (lambda t: (gg(t) - gg(q * t)) / t))(g)
    work = 30 + int(math.ceil(n * (n - 1) / 2 * math.log10(1 / q))) + 10
    with mp.workdps(work):
        rhs = complex(g(mp_scalar(x)))
    return CheckValues(lhs, rhs, {"order": n})


def _sample_liu_expansion(rng) -> dict:
    return {
        "q": _pick_q(rng),
        "beta": _u(rng, 0.1, 0.5),
        "a": _u(rng, 0.05, 0.3),
        "alpha": _u(rng, 0.1, 0.5),
    }


_DOUBLE_ORDER = 30


def _recipe_liu_double(prm, pol) -> CheckValues:
    b1, b2 = prm["beta1"], prm["beta2"]
    a, b, al, be, q = prm["a"], prm["b"], prm["alpha"], prm["beta"], prm["q"]
    g1 = _memo_poch_factor(b1, q)
    g2 = _memo_poch_factor(b2, q)
    f = lambda x, y: g1(x) * g2(y)
    lhs = qcalculus.liu_double_reconstruct(f, a, b, al, be, q, _DOUBLE_ORDER, _DOUBLE_ORDER)
    rhs = poch_infinite(b1 * a, q, pol.truncation) * poch_infinite(b2 * b, q, pol.truncation)
    return CheckValues(lhs, complex(rhs), {"order": _DOUBLE_ORDER})


def _recipe_liu_double_nonseparable(prm, pol) -> CheckValues:
    b1, b2, b3, b4 = prm["beta1"], prm["beta2"], prm["beta3"], prm["beta4"]
    a, b, al, be, q = prm["a"], prm["b"], prm["alpha"], prm["beta"], prm["q"]
    gs = [_memo_poch_factor(x, q) for x in (b1, b2, b3, b4)]
    f = lambda x, y: gs[0](x) * gs[1](y) + gs[2](x) * gs[3](y) / 2
    lhs = qcalculus.liu_double_reconstruct(f, a, b, al, be, q, _DOUBLE_ORDER, _DOUBLE_ORDER)
    tp = pol.truncation
    rhs = (
        poch_infinite(b1 * a, q, tp) * poch_infinite(b2 * b, q, tp)
        + poch_infinite(b3 * a, q, tp) * poch_infinite(b4 * b, q, tp) / 2
    )
    return CheckValues(lhs, complex(rhs), {"order": _DOUBLE_ORDER})


def _sample_liu_double(rng) -> dict:
    return {
        "q": _pick_q(rng, (0.5, 0.7)),
        "beta1": _u(rng, 0.1, 0.5),
        "beta2": _u(rng, 0.1, 0.5),
        "a": _u(rng, 0.05, 0.3),
        "b": _u(rng, 0.05, 0.3),
        "alpha": _u(rng, 0.1, 0.5),
        "beta": _u(rng, 0.1, 0.5),
    }


# ---------------------------------------------------------------------------
# the registry
# ---------------------------------------------------------------------------


def _sweep(params: dict, n_max: int = 12, threshold: float | None = None) -> tuple:
    return tuple(
        PinnedCase(f"n{k}", {**params, "n": k}, threshold=threshold)
        for k in range(n_max + 1)
    )


def _build_registry() -> dict[str, IdentityDef]:
    defs = []

    for m in (1, 2, 3):
        names = ("q", "alpha", "a", "b") + tuple(
            x for j in range(1, m + 1) for x in (f"b{j}", f"c{j}")
        )
        pinned_params = {"q": 0.5, "alpha": 0.3, "a": 0.2, "b": 0.35}
        for j in range(1, m + 1):
            pinned_params[f"b{j}"] = 0.25 + 0.1 * j
            pinned_params[f"c{j}"] = 0.4 - 0.05 * j
        defs.append(
            IdentityDef(
                id=f"liu_master_m{m}",
                description=(
                    f"Master q-summation with {m} Pochhammer-ratio factor pair"
                    f"{'s' if m > 1 else ''}: infinite-product side against the"
                    " well-poised sum of terminating inner series"
                ),
                param_names=names,
                threshold=1e-9,
                recipe=_make_liu_master(m),
                sampler=_sample_liu_master(m),
                pinned=(PinnedCase("example", pinned_params),),
            )
        )

    defs.append(
        IdentityDef(
            id="rogers_6phi5",
            description="Rogers' very-well-poised 6phi5 summation",
            param_names=("q", "alpha", "a", "b", "c"),
            threshold=1e-10,
            recipe=_recipe_rogers,
            sampler=_sample_rogers,
            pinned=(
                PinnedCase("example", {"alpha": 0.3, "a": 0.7, "b": 0.9, "c": 1.1, "q": 0.5}),
            ),
        )
    )

    defs.append(
        IdentityDef(
            id="qhahn_genfun",
            description="Generating function of the q-Hahn polynomials",
            param_names=("q", "a", "b", "c", "d", "s", "theta"),
            threshold=1e-10,
            recipe=lambda prm, pol: _recipe_qhahn_genfun(prm, pol, swapped=False),
            sampler=_sample_qhahn_genfun(False),
            pinned=(
                PinnedCase(
                    "example",
                    {"q": 0.5, "a": 0.3, "b": 0.2, "c": 0.4, "d": 0.1, "s": 0.45,
                     "theta": 1.1},
                ),
            ),
        )
    )
    defs.append(
        IdentityDef(
            id="qhahn_genfun_swapped",
            description="q-Hahn generating function with the symmetric roles swapped",
            param_names=("q", "a", "b", "c", "d", "r", "theta"),
            threshold=1e-10,
            recipe=lambda prm, pol: _recipe_qhahn_genfun(prm, pol, swapped=True),
            sampler=_sample_qhahn_genfun(True),
        )
    )

    defs.append(
        IdentityDef(
            id="q_dougall_c0",
            description="q-Dougall sum specialised at vanishing third parameter",
            param_names=("q", "alpha", "s", "r"),
            threshold=1e-10,
            recipe=_recipe_q_dougall_c0,
            sampler=_sample_q_dougall_c0,
        )
    )

    defs.append(
        IdentityDef(
            id="askey_roy",
            description="Askey-Roy trigonometric beta integral",
            param_names=("q", "a", "b", "c", "d", "rho"),
            threshold=1e-9,
            recipe=_recipe_askey_roy,
            sampler=_sample_askey_roy,
            pinned=(
                PinnedCase("example", {**{k: v for k, v in _QHAHN_FIXED.items()}}),
            ),
        )
    )

    orth_pins = [
        PinnedCase(f"pair_{n}_{m}", {**_QHAHN_FIXED, "n": n, "m": m})
        for n in range(7)
        for m in range(7)
    ]
    orth_pins.append(
        PinnedCase(
            "rho_diag",
            {**{k: v for k, v in _QHAHN_FIXED.items()}, "n": 2, "m": 2, "rho2": 1.3},
            threshold=1e-9,
            recipe=_recipe_qhahn_rho_agreement,
        )
    )
    orth_pins.append(
        PinnedCase(
            "rho_offdiag",
            {**{k: v for k, v in _QHAHN_FIXED.items()}, "n": 2, "m": 5, "rho2": 1.3},
            threshold=1e-9,
            recipe=_recipe_qhahn_rho_agreement,
        )
    )
    defs.append(
        IdentityDef(
            id="qhahn_orthogonality",
            description="Orthogonality of the q-Hahn polynomials on the unit circle",
            param_names=("n", "m", "q", "a", "b", "c", "d", "rho"),
            threshold=1e-7,
            recipe=_recipe_qhahn_orthogonality,
            sampler=_sample_qhahn_orthogonality,
            pinned=tuple(orth_pins),
            int_params=("n", "m"),
        )
    )

    defs.append(
        IdentityDef(
            id="bww_transform",
            description="3phi2 to well-poised-series transformation",
            param_names=("q", "alpha", "a", "b", "c", "d"),
            threshold=1e-9,
            recipe=_recipe_bww_transform,
            sampler=_sample_bww_transform,
        )
    )

    defs.append(
        IdentityDef(
            id="watson_q_whipple",
            description="Watson's q-analogue of Whipple's theorem (terminating 8phi7 to 4phi3)",
            param_names=("n", "q", "alpha", "a", "b", "c", "d"),
            threshold=1e-10,
            recipe=_recipe_watson_whipple,
            sampler=_sample_watson_whipple,
            pinned=_sweep({"q": 0.5, "alpha": 0.4, "a": 0.3, "b": 0.5, "c": 0.45, "d": 0.25}),
            int_params=("n",),
        )
    )

    defs.append(
        IdentityDef(
            id="lbww_qintegral",
            description="Jackson q-integral of a triple Pochhammer ratio in well-poised form",
            param_names=("q", "u", "v", "h", "r", "s", "t"),
            threshold=1e-8,
            recipe=_recipe_lbww,
            sampler=_sample_lbww,
            pinned=(
                PinnedCase(
                    "t_zero",
                    {"q": 0.5, "u": 0.3, "v": 0.5, "h": 0.35, "r": 0.2, "s": 0.25,
                     "t": 0.0},
                ),
            ),
        )
    )

    defs.append(
        IdentityDef(
            id="bigqjacobi_genfun",
            description="Generating function of the big q-Jacobi polynomials",
            param_names=("q", "a", "b", "c", "t", "x"),
            threshold=1e-10,
            recipe=_recipe_bqj_genfun,
            sampler=_sample_bqj_genfun,
        )
    )

    bqj_pins = [
        PinnedCase(f"pair_{n}_{m}", {**_BQJ_FIXED, "n": n, "m": m})
        for n in range(7)
        for m in range(7)
    ]
    defs.append(
        IdentityDef(
            id="bigqjacobi_orthogonality",
            description="Orthogonality of the big q-Jacobi polynomials (Jackson integral)",
            param_names=("n", "m", "q", "a", "b", "c"),
            threshold=1e-8,
            recipe=_recipe_bqj_orthogonality,
            sampler=_sample_bqj_orthogonality,
            pinned=tuple(bqj_pins),
            int_params=("n", "m"),
        )
    )

    defs.append(
        IdentityDef(
            id="aw_integral",
            description="Askey-Wilson trigonometric beta integral",
            param_names=("q", "a", "b", "c", "d"),
            threshold=1e-10,
            recipe=_recipe_aw_integral,
            sampler=_sample_aw_integral,
            pinned=(
                PinnedCase("all_zero", {"q": 0.5, "a": 0.0, "b": 0.0, "c": 0.0, "d": 0.0}),
                PinnedCase("example", {"q": 0.5, "a": 0.3, "b": 0.4, "c": 0.2, "d": 0.1}),
            ),
        )
    )

    defs.append(
        IdentityDef(
            id="aw_genfun",
            description="Generating function of the Askey-Wilson polynomials",
            param_names=("q", "a", "b", "c", "d", "s", "theta"),
            threshold=1e-10,
            recipe=_recipe_aw_genfun,
            sampler=_sample_aw_genfun,
        )
    )

    defs.append(
        IdentityDef(
            id="nassrallah_rahman",
            description="Nassrallah-Rahman q-beta integral (8W7 closed form)",
            param_names=("q", "a", "b", "c", "d", "s", "r"),
            threshold=1e-8,
            recipe=_recipe_nr,
            sampler=_sample_nr,
            pinned=(
                PinnedCase(
                    "example",
                    {"q": 0.5, "a": 0.3, "b": 0.4, "c": 0.2, "d": 0.25, "s": 0.5,
                     "r": 0.35},
                ),
                PinnedCase(
                    "reduction_r_abcds",
                    {"q": 0.5, "a": 0.3, "b": 0.4, "c": 0.2, "d": 0.25, "s": 0.5},
                    threshold=1e-9,
                    recipe=_recipe_nr_reduction_product,
                ),
            ),
        )
    )

    defs.append(
        IdentityDef(
            id="nr_intermediate",
            description="Equality of the two 8W7 closed forms of the Nassrallah-Rahman integral",
            param_names=("q", "a", "b", "c", "d", "s", "r"),
            threshold=1e-9,
            recipe=_recipe_nr_intermediate,
            sampler=_sample_nr,
        )
    )

    defs.append(
        IdentityDef(
            id="nr_r0_3phi2",
            description="Five-parameter trigonometric integral in 3phi2 form (vanishing numerator parameter)",
            param_names=("q", "a", "b", "c", "d", "s"),
            threshold=1e-8,
            recipe=_recipe_nr_r0,
            sampler=_sample_nr_nos,
        )
    )

    defs.append(
        IdentityDef(
            id="pfaff_saalschutz_instance",
            description="q-Pfaff-Saalschuetz summation (balanced terminating 3phi2)",
            param_names=("n", "q", "a", "b", "c", "d", "r"),
            threshold=1e-10,
            recipe=_recipe_pfaff,
            sampler=_sample_pfaff,
            pinned=_sweep({"q": 0.5, "a": 0.3, "b": 0.25, "c": 0.4, "d": 0.2, "r": 0.35}),
            int_params=("n",),
        )
    )

    defs.append(
        IdentityDef(
            id="alsalam_verma",
            description="Al-Salam--Verma q-integral evaluation",
            param_names=("q", "a", "b", "c", "d", "s"),
            threshold=1e-8,
            recipe=_recipe_alsalam_verma,
            sampler=_sample_alsalam_verma,
            pinned=(
                PinnedCase(
                    "abc_zero",
                    {"q": 0.5, "a": 0.0, "b": 0.0, "c": 0.0, "d": 0.2, "s": 0.55},
                    threshold=1e-9,
                ),
            ),
        )
    )

    defs.append(
        IdentityDef(
            id="qbailey_8w7",
            description="q-integral with 8W7 closed form (Bailey-type evaluation)",
            param_names=("q", "a", "b", "c", "d", "s", "r"),
            threshold=1e-8,
            recipe=_recipe_qbailey,
            sampler=_sample_qbailey,
        )
    )

    defs.append(
        IdentityDef(
            id="qbailey_bridge",
            description="Bridge between the Bailey q-integral and the trigonometric integral",
            param_names=("q", "a", "b", "c", "d", "s", "r"),
            threshold=1e-8,
            recipe=_recipe_qbailey_bridge,
            sampler=_sample_qbailey,
        )
    )

    defs.append(
        IdentityDef(
            id="nr_product",
            description="Product-form five-parameter trigonometric integral",
            param_names=("q", "a", "b", "c", "d", "s"),
            threshold=1e-8,
            recipe=_recipe_nr_product,
            sampler=_sample_nr_nos,
            pinned=(
                PinnedCase(
                    "reduction_s0",
                    {"q": 0.5, "a": 0.3, "b": 0.4, "c": 0.2, "d": 0.1},
                    threshold=1e-9,
                    recipe=_recipe_nr_product_s0,
                ),
            ),
        )
    )

    defs.append(
        IdentityDef(
            id="q_dougall_6w5",
            description="q-Dougall 6W5 summation with conjugate circle parameters",
            param_names=("q", "a", "b", "c", "d", "s", "r", "theta"),
            threshold=1e-9,
            recipe=_recipe_q_dougall_6w5,
            sampler=_sample_q_dougall_6w5,
            pinned=(
                PinnedCase(
                    "example",
                    {"q": 0.5, "a": 0.3, "b": 0.4, "c": 0.2, "d": 0.25, "s": 0.5,
                     "r": 0.35, "theta": 1.0},
                ),
            ),
        )
    )

    defs.append(
        IdentityDef(
            id="liu_3phi2_transform",
            description="Nonterminating 3phi2 against its well-poised limit series",
            param_names=("q", "alpha", "x", "y", "u", "v"),
            threshold=1e-9,
            recipe=_recipe_liu_3phi2,
            sampler=_sample_liu_3phi2,
        )
    )

    defs.append(
        IdentityDef(
            id="liu_qbeta",
            description="Extended q-beta integral with 3phi2 integrand factor",
            param_names=("q", "a", "b", "c", "d", "s", "u", "v"),
            threshold=1e-8,
            recipe=_recipe_liu_qbeta,
            sampler=_sample_liu_qbeta,
            pinned=(
                PinnedCase(
                    "example",
                    {"q": 0.5, "a": 0.3, "b": 0.4, "c": 0.2, "d": 0.25, "s": 0.5,
                     "u": 0.8, "v": 1.1},
                ),
                PinnedCase(
                    "reduction_s0",
                    {"q": 0.5, "a": 0.3, "b": 0.4, "c": 0.2, "d": 0.25, "u": 0.8,
                     "v": 1.1},
                    threshold=1e-9,
                    recipe=_recipe_liu_qbeta_s0,
                ),
            ),
        )
    )

    defs.append(
        IdentityDef(
            id="liu_qbeta_u_eq_q",
            description="Reduction of the extended q-beta integral at u = q to the product form",
            param_names=("q", "a", "b", "c", "d", "s", "v"),
            threshold=1e-9,
            recipe=_recipe_liu_qbeta_u_eq_q,
            sampler=_sample_liu_qbeta_u_eq_q,
        )
    )

    defs.append(
        IdentityDef(
            id="liu_qbeta_v_limit",
            description="Confluent limit of the extended q-beta integral against the 8W7 form",
            param_names=("q", "a", "b", "c", "d", "s", "u"),
            threshold=1e-9,
            recipe=_recipe_liu_qbeta_v_limit,
            sampler=_sample_liu_qbeta_v_limit,
        )
    )

    defs.append(
        IdentityDef(
            id="q_gauss",
            description="q-Gauss summation of a 2phi1 (reciprocal-parameter form)",
            param_names=("q", "a", "b", "c"),
            threshold=1e-11,
            recipe=_recipe_q_gauss,
            sampler=_sample_q_gauss,
            pinned=(
                PinnedCase("example", {"a": 0.2, "b": 0.3, "c": 0.71, "q": 0.5}),
            ),
        )
    )

    defs.append(
        IdentityDef(
            id="andrews_cube_5phi4",
            description="Andrews' cube-root terminating 5phi4 evaluation",
            param_names=("n", "p", "beta"),
            threshold=1e-10,
            recipe=_recipe_andrews_cube,
            sampler=_sample_andrews_cube,
            pinned=_sweep({"p": 0.5 ** (1.0 / 3.0), "beta": 0.6}),
            int_params=("n",),
        )
    )

    defs.append(
        IdentityDef(
            id="cube_product_expansion",
            description="Mixed-base product expansion via cube roots of unity",
            param_names=("p", "beta", "a"),
            threshold=1e-10,
            recipe=_recipe_cube_product,
            sampler=_sample_cube_product,
        )
    )

    defs.append(
        IdentityDef(
            id="theta_phi_product",
            description="Theta product phi(-q) phi(-q^3) as a rational q-series",
            param_names=("q",),
            threshold=1e-12,
            recipe=_recipe_theta_product,
            sampler=_sample_theta_product,
            pinned=(
                PinnedCase("q005", {"q": 0.05}),
                PinnedCase("q01", {"q": 0.1}),
                PinnedCase("q02", {"q": 0.2}),
            ),
        )
    )

    defs.append(
        IdentityDef(
            id="andrews_mod3_5phi4",
            description="Andrews' terminating 5phi4 with mod-3 vanishing structure",
            param_names=("n", "q", "alpha"),
            threshold=1e-10,
            recipe=_recipe_andrews_mod3,
            sampler=_sample_andrews_mod3,
            pinned=_sweep({"q": 0.5, "alpha": 0.45}),
            int_params=("n",),
        )
    )

    defs.append(
        IdentityDef(
            id="q_watson_4phi3",
            description="q-Watson terminating 4phi3 with odd-order vanishing",
            param_names=("n", "q", "alpha", "lambda"),
            threshold=1e-10,
            recipe=_recipe_q_watson,
            sampler=_sample_q_watson,
            pinned=_sweep({"q": 0.5, "alpha": 0.5, "lambda": 0.35}),
            int_params=("n",),
        )
    )

    defs.append(
        IdentityDef(
            id="verma_jain_4phi3",
            description="Verma-Jain quadratic-base terminating 4phi3 summation",
            param_names=("n", "q", "alpha", "lambda"),
            threshold=1e-10,
            recipe=_recipe_verma_jain,
            sampler=_sample_verma_jain,
            pinned=_sweep({"q": 0.5, "alpha": 0.4, "lambda": 0.55}),
            int_params=("n",),
        )
    )

    jackson_pins = tuple(
        PinnedCase(
            f"jackson_n{k}",
            {"q": 0.5, "beta": 0.4, "x": 0.4, "n": k},
            threshold=1e-11,
            recipe=_recipe_jackson_consistency,
        )
        for k in range(1, 7)
    )
    defs.append(
        IdentityDef(
            id="liu_expansion",
            description="Analytic expansion in the Pochhammer kernel: reconstruction matches the function",
            param_names=("q", "beta", "a", "alpha"),
            threshold=1e-9,
            recipe=_recipe_liu_expansion,
            sampler=_sample_liu_expansion,
            pinned=(
                PinnedCase(
                    "poch_factor",
                    {"q": 0.5, "beta": 0.4, "a": 0.25, "alpha": 0.3},
                    threshold=1e-10,
                ),
                PinnedCase(
                    "inverse_poch_factor",
                    {"q": 0.5, "beta": 0.4, "a": 0.25, "alpha": 0.3},
                    threshold=1e-9,
                    recipe=_recipe_liu_expansion_inverse,
                ),
            )
            + jackson_pins,
        )
    )

    defs.append(
        IdentityDef(
            id="liu_double_expansion",
            description="Two-variable analytic expansion: double reconstruction matches the function",
            param_names=("q", "beta1", "beta2", "a", "b", "alpha", "beta"),
            threshold=1e-8,
            recipe=_recipe_liu_double,
            sampler=_sample_liu_double,
            pinned=(
                PinnedCase(
                    "separable",
                    {"q": 0.5, "beta1": 0.3, "beta2": 0.2, "a": 0.2, "b": 0.15,
                     "alpha": 0.3, "beta": 0.25},
                    threshold=1e-9,
                ),
                PinnedCase(
                    "nonseparable",
                    {"q": 0.5, "beta1": 0.3, "beta2": 0.2, "beta3": 0.45,
                     "beta4": 0.35, "a": 0.2, "b": 0.15, "alpha": 0.3, "beta": 0.25},
                    threshold=1e-8,
                    recipe=_recipe_liu_double_nonseparable,
                ),
            ),
        )
    )

    return {d.id: d for d in defs}


REGISTRY: dict[str, IdentityDef] = _build_registry()


# ---------------------------------------------------------------------------
# harness operations
# ---------------------------------------------------------------------------


def identity_ids() -> list[str]:
    return list(REGISTRY)


def sample_params(ident: str, seed: int) -> dict:
    """Deterministic parameter draw inside the entry's domain."""
    if ident not in REGISTRY:
        raise UnknownIdentity(ident)
    return REGISTRY[ident].sampler(_rng(seed, ident))


def _finalise_report(
    ident: str,
    label: str,
    params: dict,
    values: CheckValues,
    threshold: float,
    metric: str,
) -> IdentityReport:
    lhs, rhs = complex(values.lhs), complex(values.rhs)
    abs_err = abs(lhs - rhs)
    rel_err = abs_err / max(1e-300, max(abs(lhs), abs(rhs)))
    metric = values.metric or metric
    scale = values.scale if values.scale > 0 else 1.0
    if metric == "abs_scaled":
        ok = abs_err / scale <= threshold
    else:
        ok = rel_err <= threshold
    status = "pass" if (ok and values.ok_extra) else "fail"
    return IdentityReport(
        id=ident,
        label=label,
        params=dict(params),
        lhs=lhs,
        rhs=rhs,
        abs_err=abs_err,
        rel_err=rel_err,
        status=status,
        metric=metric,
        threshold=threshold,
        scale=scale,
        diagnostics=values.diagnostics,
    )


def _skip_report(ident, label, params, reason, threshold, metric) -> IdentityReport:
    return IdentityReport(
        id=ident,
        label=label,
        params=dict(params),
        lhs=0j,
        rhs=0j,
        abs_err=math.nan,
        rel_err=math.nan,
        status="skipped",
        metric=metric,
        threshold=threshold,
        scale=1.0,
        diagnostics={},
        reason=reason,
    )


def check_identity(
    ident: str,
    params: dict,
    thresholds: dict | None = None,
    policies: PolicyBundle = DEFAULT_POLICIES,
    label: str = "adhoc",
    _case: PinnedCase | None = None,
) -> IdentityReport:
    """Evaluate both sides of one identity and report residuals.

    Unknown ids raise; domain violations inside the recipe surface as
    status="skipped" with a reason.
    """
    if ident not in REGISTRY:
        raise UnknownIdentity(ident)
    entry = REGISTRY[ident]
    recipe = entry.recipe
    threshold = entry.threshold
    metric = entry.metric
    if _case is not None:
        if _case.recipe is not None:
            recipe = _case.recipe
        if _case.threshold is not None:
            threshold = _case.threshold
        if _case.metric is not None:
            metric = _case.metric
    if thresholds and ident in thresholds:
        threshold = thresholds[ident]
    try:
        values = recipe(params, policies)
    except (DomainError, PoleInDenominator, TruncationExceeded, QuadratureNotConverged) as exc:
        return _skip_report(ident, label, params, f"{type(exc).__name__}: {exc}", threshold, metric)
    return _finalise_report(ident, label, params, values, threshold, metric)


def check_orthogonality_qhahn(
    n: int,
    m: int,
    p: QHahnParams,
    policies: PolicyBundle = DEFAULT_POLICIES,
) -> IdentityReport:
    """Quadrature of the q-Hahn orthogonality pair (n, m) against L_n delta."""
    params = {
        "n": n, "m": m, "a": p.a, "b": p.b, "c": p.c, "d": p.d, "rho": p.rho,
        "q": complex(p.q.q).real if complex(p.q.q).imag == 0 else p.q.q,
    }
    return check_identity("qhahn_orthogonality", params, policies=policies,
                          label=f"pair:{n},{m}")


def check_orthogonality_big_qjacobi(
    n: int,
    m: int,
    p: BigQJacobiParams,
    policies: PolicyBundle = DEFAULT_POLICIES,
) -> IdentityReport:
    """Jackson integral of the big q-Jacobi pair (n, m) against its norm."""
    params = {
        "n": n, "m": m, "a": p.a, "b": p.b, "c": p.c,
        "q": complex(p.q.q).real if complex(p.q.q).imag == 0 else p.q.q,
    }
    return check_identity("bigqjacobi_orthogonality", params, policies=policies,
                          label=f"pair:{n},{m}")


def run_suite(
    ids="all",
    draws_per_id: int = 5,
    seed: int = 42,
    thresholds: dict | None = None,
    policies: PolicyBundle = DEFAULT_POLICIES,
) -> list[IdentityReport]:
    """Run pinned cases plus seeded draws for the requested identities."""
    if ids == "all":
        selected = list(REGISTRY)
    else:
        selected = list(ids)
        for ident in selected:
            if ident not in REGISTRY:
                raise UnknownIdentity(ident)
    reports: list[IdentityReport] = []
    for ident in selected:
        entry = REGISTRY[ident]
        for case in entry.pinned:
            reports.append(
                check_identity(
                    ident, case.params, thresholds, policies,
                    label=f"pinned:{case.label}", _case=case,
                )
            )
        for k in range(draws_per_id):
            params = entry.sampler(_rng(seed, ident, k))
            reports.append(
                check_identity(ident, params, thresholds, policies, label=f"draw:{k}")
            )
    return reports


def summarize(reports: Sequence[IdentityReport]) -> dict:
    out = {"pass": 0, "fail": 0, "skipped": 0}
    for r in reports:
        out[r.status] += 1
    return out
