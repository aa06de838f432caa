"""Generalised harmonic functions as finite sums of homogeneous modes.

A mode of order ``m >= 0`` is ``k * P(r + s m, s + t | m + 1; |z|^2) * z**m``;
for ``m < 0`` it is ``k * P(r + t|m|, s + t | |m| + 1; |z|^2) * zbar**|m|``.
Mode ``m = 0`` is counted once, with the nonnegative indices.

Decomposition goes the other way: the Fourier coefficient of ``u`` on the
circle ``|z| = rho`` is ``c_m(rho) = k_m P(...; rho^2) rho^|m|`` for every
solution, so one radius suffices to recover ``k_m`` from a finite mode sum.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

import numpy as np

from .config import DEFAULT_CONFIG, EvalConfig, Params
from .errors import AliasWarning, BadSampleCount, DivisorNearZero
from .series import eval_P

DIVISOR_FLOOR = 1e-300


@dataclass(frozen=True)
class ModeCoefficient:
    m: int
    k: complex

    def __post_init__(self):
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "k", complex(self.k))

    def within_bound(self, B: float, rho0: float = 1.0) -> bool:
        """Finite surrogate for the root condition: ``|k| <= B * rho0**(-|m|)``."""
        if not 0 < rho0 <= 1:
            raise ValueError("rho0 must lie in (0, 1]")
        return abs(self.k) <= B * rho0 ** (-abs(self.m))


@dataclass(frozen=True)
class SolutionSeries:
    params: Params
    modes: tuple = ()
    cfg: EvalConfig = field(default=DEFAULT_CONFIG)

    def __post_init__(self):
        modes = tuple(
            mc if isinstance(mc, ModeCoefficient) else ModeCoefficient(*mc) for mc in self.modes
        )
        indices = [mc.m for mc in modes]
        if len(set(indices)) != len(indices):
            raise ValueError(f"duplicate mode indices in {indices}")
        object.__setattr__(self, "modes", modes)

    def coefficients(self) -> dict:
        return {mc.m: mc.k for mc in self.modes}

    def check_bounds(self, B: float, rho0: float = 1.0) -> None:
        bad = [mc.m for mc in self.modes if not mc.within_bound(B, rho0)]
        if bad:
            raise ValueError(f"modes {bad} exceed the declared bound B={B}, rho0={rho0}")

    def __add__(self, other: "SolutionSeries") -> "SolutionSeries":
        if other.params != self.params:
            raise ValueError("cannot add solutions with different parameters")
        merged = self.coefficients()
        for m, k in other.coefficients().items():
            merged[m] = merged.get(m, 0j) + k
        return SolutionSeries(self.params, tuple(sorted(merged.items())), self.cfg)


def _radial_params(params: Params, m: int) -> Params:
    return params if m >= 0 else params.swapped()


def mode_value(params: Params, m: int, k: complex, z, cfg: EvalConfig | None = None):
    """Value of the single mode ``(m, k)`` at ``z`` (scalar or array)."""
    zz = np.asarray(z, dtype=complex)
    n = abs(m)
    radial = eval_P(_radial_params(params, m), n, zz * zz.conj(), cfg)
    angular = zz**n if m >= 0 else zz.conj() ** n
    out = k * radial * angular
    return complex(out) if zz.ndim == 0 else out


def eval_solution(sol: SolutionSeries, z):
    zz = np.asarray(z, dtype=complex)
    total = np.zeros_like(zz)
    for mc in sol.modes:
        total = total + mode_value(sol.params, mc.m, mc.k, zz, sol.cfg)
    return complex(total) if zz.ndim == 0 else total


def modes_from_taylor(
    params: Params,
    d_plus: Iterable[complex],
    d_minus: Iterable[complex] = (),
    cfg: EvalConfig | None = None,
) -> SolutionSeries:
    """Solution with ``k_m = d^m u(0) / m!`` and ``k_{-m} = dbar^m u(0) / m!``.

    ``d_plus`` lists ``d^m u(0)`` for ``m = 0, 1, ...``; ``d_minus`` lists
    ``dbar^m u(0)`` for ``m = 1, 2, ...``.
    """
    modes = [ModeCoefficient(m, complex(v) / math.factorial(m)) for m, v in enumerate(d_plus)]
    modes += [
        ModeCoefficient(-m, complex(v) / math.factorial(m)) for m, v in enumerate(d_minus, start=1)
    ]
    return SolutionSeries(params, tuple(modes), cfg or DEFAULT_CONFIG)


def _is_pow2(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


@dataclass(frozen=True)
class CircleSamples:
    """Samples ``u(rho * exp(2 pi i j / N))`` for ``j = 0 .. N-1``."""

    rho: float
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex).ravel()
        if not _is_pow2(values.size):
            raise BadSampleCount(f"sample count must be a power of two, got {values.size}")
        if not 0 < self.rho < 1:
            raise ValueError("rho must lie strictly inside (0, 1)")
        object.__setattr__(self, "values", values)

    @property
    def N(self) -> int:
        return self.values.size

    def points(self) -> np.ndarray:
        return circle_points(self.rho, self.N)


def circle_points(rho: float, N: int) -> np.ndarray:
    return rho * np.exp(2j * np.pi * np.arange(N) / N)


def _call_sampler(sampler: Callable, zz: np.ndarray) -> np.ndarray:
    try:
        out = np.asarray(sampler(zz), dtype=complex)
    except (TypeError, ValueError):
        out = None
    if out is None or out.shape != zz.shape:
        out = np.array([complex(sampler(complex(z))) for z in zz.ravel()]).reshape(zz.shape)
    return out


def sample_circle(sampler: Callable, rho: float, N: int) -> CircleSamples:
    if not _is_pow2(N):
        raise BadSampleCount(f"sample count must be a power of two, got {N}")
    return CircleSamples(rho, _call_sampler(sampler, circle_points(rho, N)))


def _fourier(values: np.ndarray) -> np.ndarray:
    # e^{-i m theta} kernel, 1/N normalisation: trapezoid rule for (1/2pi) int ... dtheta
    return np.fft.fft(values) / values.size


def decompose_circle(samples: CircleSamples) -> dict:
    """Fourier coefficients ``c_m(rho)`` for ``|m| < N/2``."""
    c = _fourier(samples.values)
    N = samples.N
    half = N // 2
    return {m: complex(c[m % N]) for m in range(-half + 1, half)}


def mode_divisor(params: Params, m: int, rho: float, cfg: EvalConfig | None = None) -> complex:
    """``P(...; rho^2) * rho^|m|``, the map from ``k_m`` to ``c_m(rho)``."""
    n = abs(m)
    return eval_P(_radial_params(params, m), n, rho * rho, cfg) * rho**n


def extract_coefficients(
    sampler: Callable,
    params: Params,
    m_range: Iterable[int],
    rho: float = 0.5,
    N: int = 256,
    cfg: EvalConfig | None = None,
) -> list:
    """Recover ``k_m`` for each ``m`` in ``m_range`` from samples on ``|z| = rho``.

    Exact for finite mode sums up to aliasing from ``|m| >= N/2``.  The
    divisor shrinks like ``rho**|m|``, so absolute accuracy for large ``|m|``
    degrades as ``eps * max|u| / rho**|m|``; choose a larger ``rho`` for
    high modes.
    """
    samples = sample_circle(sampler, rho, N)
    return coefficients_from_samples(samples, params, m_range, cfg)


def coefficients_from_samples(
    samples: CircleSamples, params: Params, m_range: Iterable[int], cfg: EvalConfig | None = None
) -> list:
    c = _fourier(samples.values)
    N = samples.N
    out = []
    for m in m_range:
        if abs(m) >= N // 2:
            warnings.warn(f"mode {m} aliases with N={N} samples", AliasWarning, stacklevel=2)
        div = mode_divisor(params, m, samples.rho, cfg)
        if abs(div) < DIVISOR_FLOOR:
            raise DivisorNearZero(f"|P * rho^|m|| = {abs(div):.3g} for m={m}")
        out.append(ModeCoefficient(m, c[m % N] / div))
    return out


def fejer_reconstruct(samples_by_radius: Callable, N: int, z: complex) -> complex:
    """Fejer mean ``sum_{|m| <= N} (1 - |m|/(N+1)) u_m(z)``.

    ``samples_by_radius(rho, theta)`` must accept an array of angles.  The
    homogeneous parts are the circle Fourier coefficients at ``rho = |z|``
    times ``exp(i m arg z)``.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    z = complex(z)
    rho, theta = abs(z), math.atan2(z.imag, z.real)
    n_samples = 1 << max(1, (2 * N + 2 - 1).bit_length())
    angles = 2 * np.pi * np.arange(n_samples) / n_samples
    values = np.asarray(samples_by_radius(rho, angles), dtype=complex)
    if values.shape != angles.shape:
        values = np.array([complex(samples_by_radius(rho, a)) for a in angles])
    c = _fourier(values)
    ms = np.arange(-N, N + 1)
    weights = 1 - np.abs(ms) / (N + 1)
    return complex(np.sum(weights * c[ms % n_samples] * np.exp(1j * ms * theta)))
