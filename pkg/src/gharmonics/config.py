"""Parameter and configuration records shared by every module."""

from __future__ import annotations

import cmath
from dataclasses import dataclass


@dataclass(frozen=True)
class Params:
    """Coefficients ``(s, t, r)`` of ``ddbar u - s z du - t zbar dbar u - r u``."""

    s: complex = 0j
    t: complex = 0j
    r: complex = 0j

    def __post_init__(self):
        for name in ("s", "t", "r"):
            value = complex(getattr(self, name))
            if not cmath.isfinite(value):
                raise ValueError(f"parameter {name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)

    def conjugate(self) -> "Params":
        return Params(self.s.conjugate(), self.t.conjugate(), self.r.conjugate())

    def swapped(self) -> "Params":
        """Parameters with ``s`` and ``t`` interchanged (action on ``zbar**m`` modes)."""
        return Params(self.t, self.s, self.r)


@dataclass(frozen=True)
class EvalConfig:
    """Numerical controls.

    Attributes
    ----------
    tol : float
        Absolute bound on the certified series tail.
    max_terms : int
        Hard cap on the number of series terms.
    fd_step : float
        Default finite-difference step ``h``.
    """

    tol: float = 1e-16
    max_terms: int = 10_000
    fd_step: float = 1e-3

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if int(self.max_terms) < 1:
            raise ValueError("max_terms must be >= 1")
        if not self.fd_step > 0:
            raise ValueError("fd_step must be positive")
        object.__setattr__(self, "max_terms", int(self.max_terms))


DEFAULT_CONFIG = EvalConfig()
