"""Operators in the span of ``1, z d, zbar dbar, d dbar`` and their radial images.

Coordinates are always ordered ``(a1, a2, a3, a4)`` for the basis
``(1, z*d, zbar*dbar, d*dbar)``.  The only nonzero brackets among basis
elements are ``[d dbar, z d] = [d dbar, zbar dbar] = d dbar``.

``lambda_map`` is derived from the action on ``z**m f(|z|^2)``::

    z d      -> z**m (m f + x f')
    zbar dbar-> z**m (x f')
    d dbar   -> z**m (x f'' + (m + 1) f')

with ``x = |z|^2``.  In these coordinates the kernel of ``Lambda_m`` is the
line through ``A - m = (-m, 1, -1, 0)``, ``A = z d - zbar dbar`` being the
angular derivative.  This is the same line as ``(0, 1, -1, -m)`` written
with the identity coefficient last.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .config import Params


@dataclass(frozen=True)
class OperatorElement:
    a1: complex = 0j
    a2: complex = 0j
    a3: complex = 0j
    a4: complex = 0j

    def as_tuple(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4)

    def __add__(self, other: "OperatorElement") -> "OperatorElement":
        return OperatorElement(*(x + y for x, y in zip(self.as_tuple(), other.as_tuple())))

    def __sub__(self, other: "OperatorElement") -> "OperatorElement":
        return OperatorElement(*(x - y for x, y in zip(self.as_tuple(), other.as_tuple())))

    def __mul__(self, alpha) -> "OperatorElement":
        return OperatorElement(*(alpha * x for x in self.as_tuple()))

    __rmul__ = __mul__

    def __neg__(self) -> "OperatorElement":
        return self * -1

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.as_tuple())


@dataclass(frozen=True)
class ODEOperator:
    """``q2 x y'' + (q1c + q1l x) y' + q0 y``."""

    q2: complex = 0j
    q1c: complex = 0j
    q1l: complex = 0j
    q0: complex = 0j

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.as_tuple())


@dataclass(frozen=True)
class EquivalenceWitness:
    equivalent: bool
    mu: complex = 0j


ZERO = OperatorElement()
IDENTITY = OperatorElement(1, 0, 0, 0)
Z_D = OperatorElement(0, 1, 0, 0)
ZBAR_DBAR = OperatorElement(0, 0, 1, 0)
D_DBAR = OperatorElement(0, 0, 0, 1)


def from_params(params: Params) -> OperatorElement:
    """Coordinates of ``M_{s,t,r} = d dbar - s z d - t zbar dbar - r``."""
    return OperatorElement(-params.r, -params.s, -params.t, 1)


def bracket(D1: OperatorElement, D2: OperatorElement) -> OperatorElement:
    """Commutator ``[D1, D2] = gamma * d dbar``."""
    gamma = D1.a4 * (D2.a2 + D2.a3) - D2.a4 * (D1.a2 + D1.a3)
    return OperatorElement(0, 0, 0, gamma)


def lambda_map(D: OperatorElement, m: int) -> ODEOperator:
    """The ODE operator ``T`` with ``D(z**m f(|z|^2)) = z**m (T f)(|z|^2)``."""
    if m < 0:
        raise ValueError("lambda_map is defined for m >= 0; use lambda_map_signed")
    return ODEOperator(q2=D.a4, q1c=D.a4 * (m + 1), q1l=D.a2 + D.a3, q0=D.a1 + D.a2 * m)


def lambda_map_signed(D: OperatorElement, m: int) -> ODEOperator:
    """``Lambda_m`` for any integer ``m``.

    For ``m < 0`` the input is ``zbar**|m| f(|z|^2)``; exchanging ``z`` and
    ``zbar`` swaps the roles of ``a2`` and ``a3``.
    """
    if m >= 0:
        return lambda_map(D, m)
    return lambda_map(OperatorElement(D.a1, D.a3, D.a2, D.a4), -m)


def kernel_basis(m: int) -> OperatorElement:
    """``A - m``, spanning the kernel of ``Lambda_m``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return OperatorElement(-m, 1, -1, 0)


def equivalent(v: OperatorElement, w: OperatorElement, m: int, atol: float = 0.0) -> EquivalenceWitness:
    """Decide whether ``v - w`` is a multiple ``mu * kernel_basis(m)``.

    ``mu`` is read from the ``a2`` coordinate (which is 1 in the kernel
    vector) and every coordinate is then checked, to ``atol``.
    """
    diff = v - w
    mu = diff.a2
    residual = diff - kernel_basis(m) * mu
    ok = all(abs(x) <= atol for x in residual.as_tuple())
    return EquivalenceWitness(ok, mu if ok else 0j)


def rescale_params(params: Params, rho: float) -> Params:
    """Parameters of ``v(z) = u(rho z)`` on the unit disc when ``u`` solves on ``|z| < rho``."""
    if not rho > 0:
        raise ValueError("rho must be positive")
    k = rho * rho
    return Params(k * params.s, k * params.t, k * params.r)
