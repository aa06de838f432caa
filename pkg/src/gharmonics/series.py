r"""Series kernels: generalised Pochhammer symbols and the P-series family.

The central object is

.. math::
    G(a, b \mid c, d; z) = \sum_{k \ge 0} \frac{(a, b)_k}{(c, d)_k} \frac{z^k}{k!},

with :math:`(x, y)_k = x (x + y) \cdots (x + (k-1) y)`.  The P-series used
for generalised harmonic modes is ``G(r + s m, s + t | m + 1, 1; z)``; the
Kummer function and the Bessel-type Theta series are special cases.

All evaluators accept a scalar or an array of arguments ``z``.  Summation
stops at the first index ``K`` whose *certified* tail bound drops below
``cfg.tol`` (see :func:`tail_bound`).
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .config import DEFAULT_CONFIG, EvalConfig, Params
from .errors import DenominatorPole, NoConvergence

__all__ = [
    "PochArgs",
    "GSeriesArgs",
    "poch",
    "ratio_sup",
    "tail_bound",
    "eval_G",
    "eval_P",
    "eval_kummer",
    "eval_theta",
    "eval_bessel_I",
    "deriv_G",
    "growth_bound",
    "asymptotic_gap",
    "disc_grid",
]


class PochArgs(NamedTuple):
    x: complex
    y: complex
    n: int


class GSeriesArgs(NamedTuple):
    a: complex
    b: complex
    c: complex
    d: complex


def poch(x, y, n: int) -> complex:
    """Generalised Pochhammer symbol ``x (x+y) ... (x+(n-1)y)``; 1 when ``n == 0``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = 1 + 0j
    for k in range(n):
        out *= x + k * y
    return out


def _scalar_or_array(z):
    arr = np.asarray(z, dtype=complex)
    return arr, arr.ndim == 0


def ratio_sup(a: complex, b: complex, c: complex, d: complex, K: float) -> float:
    r"""Return :math:`\sup_{k \ge K} |a + k b| / |c + k d|` over real ``k``.

    Both squared moduli are real quadratics in ``k`` so the supremum is
    attained at ``k = K``, at a stationary point, or in the limit
    ``k -> inf``.  Returns ``inf`` when the denominator vanishes on
    ``[K, inf)``.
    """
    a, b, c, d = complex(a), complex(b), complex(c), complex(d)
    A2, A1, A0 = abs(b) ** 2, 2 * (a * b.conjugate()).real, abs(a) ** 2
    B2, B1, B0 = abs(d) ** 2, 2 * (c * d.conjugate()).real, abs(c) ** 2

    if B2 == 0.0:
        if B0 == 0.0 or A2 > 0.0:
            return math.inf
    else:
        w = -c / d
        if abs(w.imag) <= 1e-14 * max(1.0, abs(w)) and w.real >= K:
            return math.inf

    def g(k):
        den = (B2 * k + B1) * k + B0
        return ((A2 * k + A1) * k + A0) / den if den > 0 else math.inf

    best = g(K)
    if B2 > 0.0:
        best = max(best, A2 / B2)
    # stationary points of g: alpha k^2 + 2 beta k + gamma = 0
    alpha = A2 * B1 - A1 * B2
    beta = A2 * B0 - A0 * B2
    gamma = A1 * B0 - A0 * B1
    if alpha != 0.0:
        disc = beta * beta - alpha * gamma
        if disc >= 0.0:
            sq = math.sqrt(disc)
            roots = ((-beta + sq) / alpha, (-beta - sq) / alpha)
        else:
            roots = ()
    elif beta != 0.0:
        roots = (-gamma / (2 * beta),)
    else:
        roots = ()
    for k in roots:
        if k > K:
            best = max(best, g(k))
    # a few ulps of slack for the floating-point quadratics
    return math.sqrt(best) * (1 + 1e-12)


def tail_bound(a, b, c, d, K: int, abs_term: float, abs_z: float) -> float:
    r"""Upper bound on :math:`\sum_{j \ge 1} |t_{K+j}|` given ``|t_K|``.

    With ``C = ratio_sup(a, b, c, d, K)`` and ``d != 0`` every later term
    ratio is at most ``C |z| / (k + 1)``, so the tail is bounded by
    ``|t_K| x exp(C |z|)`` with ``x = C |z| / (K + 1)``, and by the
    geometric ``|t_K| x / (1 - x)`` when ``x < 1``; the smaller is used.
    For ``d == 0`` the ratio ``|a + k b| |z| / (|c| (k + 1))`` is bounded
    directly and only the geometric form applies.
    """
    if abs_term == 0.0:
        return 0.0
    if d == 0:
        q = ratio_sup(a, b, c, c, K) * abs_z
        return abs_term * q / (1 - q) if q < 1 else math.inf
    cz = ratio_sup(a, b, c, d, K) * abs_z
    if math.isinf(cz):
        return math.inf
    x = cz / (K + 1)
    bound = abs_term * x * math.exp(cz) if cz < 700 else math.inf
    if x < 1:
        bound = min(bound, abs_term * x / (1 - x))
    return bound


def eval_G(a, b, c, d, z, cfg: EvalConfig | None = None):
    """Sum ``G(a, b | c, d; z)`` by the term-ratio recurrence.

    Parameters
    ----------
    a, b, c, d : complex
        Numerator base/step and denominator base/step.
    z : complex or array_like
        Argument(s).
    cfg : EvalConfig, optional

    Returns
    -------
    complex or ndarray

    Raises
    ------
    DenominatorPole
        If ``c + n d == 0`` for an index reached by the summation.
    NoConvergence
        If ``cfg.max_terms`` terms do not bring the tail bound below ``cfg.tol``.
    """
    cfg = cfg or DEFAULT_CONFIG
    a, b, c, d = complex(a), complex(b), complex(c), complex(d)
    zz, scalar = _scalar_or_array(z)
    abs_z = float(np.max(np.abs(zz))) if zz.size else 0.0

    term = np.ones_like(zz)
    total = term.copy()
    for k in range(cfg.max_terms):
        den = c + k * d
        if den == 0:
            raise DenominatorPole(f"c + {k}*d vanishes (c={c}, d={d})")
        term = term * ((a + k * b) / (den * (k + 1))) * zz
        total += term
        abs_term = float(np.max(np.abs(term))) if zz.size else 0.0
        if tail_bound(a, b, c, d, k + 1, abs_term, abs_z) < cfg.tol:
            return complex(total) if scalar else total
    raise NoConvergence(
        f"G({a}, {b} | {c}, {d}) not converged after {cfg.max_terms} terms at |z|={abs_z:g}"
    )


def eval_P(params: Params, m: int, z, cfg: EvalConfig | None = None):
    """Radial factor ``P(r + s m, s + t | m + 1; z)`` of the order-``m`` mode."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return eval_G(params.r + params.s * m, params.s + params.t, m + 1, 1, z, cfg)


def eval_kummer(a, b, z, cfg: EvalConfig | None = None):
    """Confluent hypergeometric function ``Phi(a, b, z) = 1F1(a; b; z)``."""
    b = complex(b)
    if b.imag == 0 and b.real <= 0 and b.real == int(b.real):
        raise DenominatorPole(f"Kummer function undefined for b={b.real:g}")
    return eval_G(a, 1, b, 1, z, cfg)


def eval_theta(m: int, z, cfg: EvalConfig | None = None):
    """Theta series ``sum_k z^k / ((m+1)_k k!)``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return eval_G(1, 0, m + 1, 1, z, cfg)


def eval_bessel_I(n: int, z, cfg: EvalConfig | None = None):
    """Modified Bessel function of the first kind ``I_n(z)`` for integer ``n >= 0``.

    Direct power series ``(z/2)^n / n! * sum_k (z/2)^(2k) / (k! (n+1)_k)``.
    The leading ``1 / n!`` is an exact integer factorial, and the tail
    tolerance applies to the bracketed sum so tiny values keep their
    relative accuracy.
    """
    cfg = cfg or DEFAULT_CONFIG
    if n < 0:
        raise ValueError("n must be nonnegative")
    zz, scalar = _scalar_or_array(z)
    half = zz / 2
    w = half * half
    abs_w = float(np.max(np.abs(w))) if zz.size else 0.0

    term = np.ones_like(zz)
    total = term.copy()
    for k in range(cfg.max_terms):
        term = term * w / ((k + 1) * (n + k + 1))
        total += term
        abs_term = float(np.max(np.abs(term))) if zz.size else 0.0
        q = abs_w / ((k + 2) * (n + k + 2))
        if abs_term == 0.0 or (q < 1 and abs_term * q / (1 - q) < cfg.tol):
            out = total * (half**n / math.factorial(n))
            return complex(out) if scalar else out
    raise NoConvergence(f"I_{n} not converged after {cfg.max_terms} terms")


def deriv_G(a, b, c, d, n: int, z, cfg: EvalConfig | None = None):
    """n-th derivative ``(a,b)_n / (c,d)_n * G(a + n b, b | c + n d, d; z)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    den = poch(c, d, n)
    if den == 0:
        raise DenominatorPole(f"(c, d)_{n} vanishes (c={c}, d={d})")
    factor = poch(a, b, n) / den
    return factor * eval_G(a + n * b, b, c + n * d, d, z, cfg)


def growth_bound(params: Params, abs_z: float) -> float:
    """Bound on ``|P(r + s m, s + t | m + 1; z)|`` for ``|z| = abs_z``, uniform in ``m``."""
    if abs_z < 0:
        raise ValueError("abs_z must be nonnegative")
    rate = abs(params.r) + abs(params.s) + abs(params.s + params.t)
    return math.exp(rate * abs_z)


def disc_grid(radius: float, n: int, exclude: float = 0.0) -> np.ndarray:
    """Points of the ``n x n`` grid on ``[-radius, radius]^2`` with ``exclude <= |z| <= radius``."""
    xs = np.linspace(-radius, radius, n)
    zz = (xs[None, :] + 1j * xs[:, None]).ravel()
    keep = (np.abs(zz) <= radius * (1 + 1e-12)) & (np.abs(zz) >= exclude)
    return zz[keep]


def asymptotic_gap(
    params: Params, m: int, radius: float, n_grid: int, cfg: EvalConfig | None = None
) -> float:
    """``max |P(r + s m, s + t | m + 1; z) - exp(s z)|`` over a grid of ``|z| <= radius``."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    zz = disc_grid(radius, n_grid)
    diff = eval_P(params, m, zz, cfg) - np.exp(params.s * zz)
    return float(np.max(np.abs(diff)))
