"""Independent checks: finite-difference PDE residuals, ODE recurrences, Wronskians.

Nothing in here reuses the series evaluators to judge themselves.  The PDE
residual goes through central-difference Wirtinger stencils, the ODE check
builds coefficients from Pochhammer products, and the Wronskian check
integrates the radial ODE with fixed-step RK4.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .algebra import OperatorElement, equivalent, from_params
from .config import Params
from .errors import NotEquivalent, StepTooCoarse
from .series import disc_grid, poch


@dataclass(frozen=True)
class GridSpec:
    """``n x n`` Cartesian grid over ``[-radius, radius]^2``, clipped to an annulus.

    ``exclude_origin_radius=None`` means ``2 h`` for whatever step is used.
    """

    radius: float = 0.8
    n: int = 41
    exclude_origin_radius: float | None = None

    def __post_init__(self):
        if not 0 < self.radius < 1:
            raise ValueError("grid radius must lie in (0, 1)")
        if self.n < 1:
            raise ValueError("n must be positive")

    def points(self, h: float = 0.0) -> np.ndarray:
        excl = 2 * h if self.exclude_origin_radius is None else self.exclude_origin_radius
        return disc_grid(self.radius, self.n, excl)


@dataclass(frozen=True)
class ResidualReport:
    max_abs: float
    argmax_point: complex
    points_checked: int
    fd_step: float

    def to_dict(self) -> dict:
        return {
            "max_abs": self.max_abs,
            "argmax_point": [self.argmax_point.real, self.argmax_point.imag],
            "points_checked": self.points_checked,
            "fd_step": self.fd_step,
        }


def _eval(sampler: Callable, zz: np.ndarray) -> np.ndarray:
    out = np.asarray(sampler(zz), dtype=complex)
    if out.shape != zz.shape:
        out = np.array([complex(sampler(complex(z))) for z in zz.ravel()]).reshape(zz.shape)
    return out


def wirtinger_fd(sampler: Callable, z, h: float):
    """Second-order central stencils for ``(d u, dbar u, d dbar u)`` at ``z``.

    ``d = (d_x - i d_y) / 2``, ``dbar = (d_x + i d_y) / 2`` and
    ``d dbar`` is a quarter of the five-point Laplacian.  Works on arrays.
    """
    zz = np.asarray(z, dtype=complex)
    stack = np.stack([zz, zz + h, zz - h, zz + 1j * h, zz - 1j * h])
    u0, uxp, uxm, uyp, uym = _eval(sampler, stack)
    ux = (uxp - uxm) / (2 * h)
    uy = (uyp - uym) / (2 * h)
    lap = (uxp + uxm + uyp + uym - 4 * u0) / (h * h)
    d = (ux - 1j * uy) / 2
    dbar = (ux + 1j * uy) / 2
    ddbar = lap / 4
    if zz.ndim == 0:
        return complex(d), complex(dbar), complex(ddbar)
    return d, dbar, ddbar


def operator_action(D: OperatorElement, sampler: Callable, z, h: float):
    """``(a1 + a2 z d + a3 zbar dbar + a4 d dbar) u`` at ``z`` by finite differences."""
    zz = np.asarray(z, dtype=complex)
    d, dbar, ddbar = wirtinger_fd(sampler, zz, h)
    u = _eval(sampler, zz)
    return D.a1 * u + D.a2 * zz * d + D.a3 * zz.conj() * dbar + D.a4 * ddbar


def _report(values: np.ndarray, points: np.ndarray, h: float) -> ResidualReport:
    mags = np.abs(values)
    i = int(np.argmax(mags))
    return ResidualReport(float(mags[i]), complex(points[i]), int(points.size), float(h))


def residual_M(params: Params, sampler: Callable, grid: GridSpec, h: float) -> ResidualReport:
    """Max of ``|d dbar u - s z d u - t zbar dbar u - r u|`` over the grid."""
    pts = grid.points(h)
    return _report(operator_action(from_params(params), sampler, pts, h), pts, h)


def refinement_slope(errors: Sequence[float], steps: Sequence[float]) -> float:
    """Least-squares slope of ``log(error)`` against ``log(step)``."""
    return float(np.polyfit(np.log(steps), np.log(errors), 1)[0])


def p_coefficients(params: Params, m: int, K: int) -> list:
    """Taylor coefficients ``f_0 .. f_K`` of ``P(r + s m, s + t | m + 1; x)`` from Pochhammer products."""
    a, b = params.r + params.s * m, params.s + params.t
    return [poch(a, b, k) / (poch(m + 1, 1, k) * math.factorial(k)) for k in range(K + 1)]


def ode_recurrence_residual(params: Params, m: int, coeffs: Sequence[complex]) -> float:
    """Max over ``k`` of ``|(k+1)(k+m+1) f_{k+1} - (r + s m + k (s+t)) f_k|``.

    This is the coefficient of ``x^k`` after substituting ``sum f_k x^k``
    into ``x y'' + (m + 1 - (s+t) x) y' - (r + s m) y``.
    """
    if not len(coeffs):
        raise ValueError("coeffs must be nonempty")
    a, b = params.r + params.s * m, params.s + params.t
    worst = 0.0
    for k in range(len(coeffs) - 1):
        res = (k + 1) * (k + m + 1) * coeffs[k + 1] - (a + k * b) * coeffs[k]
        worst = max(worst, abs(res))
    return worst


def _rk4_wronskian_deviation(params: Params, m: int, x0: float, x1: float, steps: int, ics) -> float:
    a = params.r + params.s * m
    b = params.s + params.t
    c = m + 1

    def rhs(x, y, yp):
        return yp, (a * y - (c - b * x) * yp) / x

    (y1, p1), (y2, p2) = ((complex(u), complex(v)) for u, v in ics)
    h = (x1 - x0) / steps

    def weighted(x, y1, p1, y2, p2):
        return (y1 * p2 - y2 * p1) * x**c * cmath.exp(-b * x)

    q0 = weighted(x0, y1, p1, y2, p2)
    if q0 == 0:
        return 0.0
    worst = 0.0
    x = x0
    for i in range(steps):
        state = []
        for y, p in ((y1, p1), (y2, p2)):
            k1y, k1p = rhs(x, y, p)
            k2y, k2p = rhs(x + h / 2, y + h / 2 * k1y, p + h / 2 * k1p)
            k3y, k3p = rhs(x + h / 2, y + h / 2 * k2y, p + h / 2 * k2p)
            k4y, k4p = rhs(x + h, y + h * k3y, p + h * k3p)
            state.append(
                (y + h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y), p + h / 6 * (k1p + 2 * k2p + 2 * k3p + k4p))
            )
        (y1, p1), (y2, p2) = state
        x = x0 + (i + 1) * h
        worst = max(worst, abs(weighted(x, y1, p1, y2, p2) - q0))
    return worst / abs(q0)


def wronskian_check(
    params: Params,
    m: int,
    x0: float,
    x1: float,
    steps: int,
    ics=((1, 0), (0, 1)),
    floor: float = 1e-8,
) -> float:
    """Max relative drift of ``W(x) x^(m+1) exp(-(s+t) x)`` along an RK4 solution pair.

    The same integration is repeated with ``2 * steps``; if the drift is
    above ``floor`` and does not shrink, :class:`StepTooCoarse` is raised.
    Below ``floor`` rounding in ``y1 y2' - y2 y1'`` can dominate, so no
    refinement check is made there.
    Proportional initial data give ``W == 0`` and a drift of 0.
    """
    if not 0 < x0 < x1:
        raise ValueError("need 0 < x0 < x1")
    dev = _rk4_wronskian_deviation(params, m, x0, x1, steps, ics)
    if dev > floor:
        finer = _rk4_wronskian_deviation(params, m, x0, x1, 2 * steps, ics)
        if finer >= dev:
            raise StepTooCoarse(f"Wronskian drift {dev:.3g} did not shrink ({finer:.3g}) on halving")
    return dev


def homogeneous_sampler(m: int, f_poly: Sequence[complex]) -> Callable:
    """``z -> z**m * f(|z|^2)`` for a polynomial ``f`` with coefficients low to high."""
    coeffs = np.asarray(f_poly, dtype=complex)[::-1]

    def u(z):
        z = np.asarray(z, dtype=complex)
        return z**m * np.polyval(coeffs, (z * z.conj()).real)

    return u


def equivalence_action_check(
    v: OperatorElement,
    w: OperatorElement,
    m: int,
    f_poly: Sequence[complex],
    grid: GridSpec,
    h: float,
    check: bool = True,
) -> float:
    """Max over the grid of ``|(M_v - M_w)(z**m f(|z|^2))|`` by finite differences.

    With ``check=False`` the equivalence precondition is skipped, which is
    how negative controls are run.
    """
    if check:
        scale = max(1.0, *(abs(x) for x in v.as_tuple() + w.as_tuple()))
        if not equivalent(v, w, m, atol=1e-12 * scale).equivalent:
            raise NotEquivalent(f"{v} and {w} are not equivalent at m={m}")
    pts = grid.points(h)
    action = operator_action(v - w, homogeneous_sampler(m, f_poly), pts, h)
    return float(np.max(np.abs(action)))


def helmholtz_double_sum(r: complex, d_plus: Sequence[complex], d_minus: Sequence[complex], z, n_terms: int = 80):
    """Double-series form of a solution of ``d dbar u = r u`` from its Taylor data at 0.

    ``d_plus[m] = d^m u(0)`` for ``m >= 0``; ``d_minus[m-1] = dbar^m u(0)``.
    Every term is built from factorials directly.
    """
    z = complex(z)
    x = abs(z) ** 2
    total = 0j
    for m in range(max(len(d_plus), len(d_minus) + 1)):
        dp = d_plus[m] if m < len(d_plus) else 0
        dm = d_minus[m - 1] if 1 <= m <= len(d_minus) else 0
        top = z**m * dp + (z.conjugate() ** m * dm if m else 0)
        for n in range(n_terms):
            total += top / math.factorial(m + n) * (r**n * x**n) / math.factorial(n)
    return total
