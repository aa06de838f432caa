"""Generalised harmonic functions on the unit disc.

Solutions of ``d dbar u - s z d u - t zbar dbar u - r u = 0`` are finite or
convergent sums of modes ``k_m P(r + s m, s + t | m + 1; |z|^2) z**m`` (and
their ``zbar`` counterparts for negative ``m``).  This package evaluates the
P-series family, builds and decomposes such solutions, checks them against
finite-difference and ODE oracles, and models the four-dimensional operator
span those equations live in.
"""

from .algebra import (
    EquivalenceWitness,
    ODEOperator,
    OperatorElement,
    bracket,
    equivalent,
    from_params,
    kernel_basis,
    lambda_map,
    lambda_map_signed,
    rescale_params,
)
from .config import DEFAULT_CONFIG, EvalConfig, Params
from .errors import (
    AliasWarning,
    BadSampleCount,
    ConfigError,
    DenominatorPole,
    DivisorNearZero,
    GHarmonicsError,
    NoConvergence,
    NotEquivalent,
    StepTooCoarse,
)
from .series import (
    asymptotic_gap,
    deriv_G,
    eval_bessel_I,
    eval_G,
    eval_kummer,
    eval_P,
    eval_theta,
    growth_bound,
    poch,
)
from .solutions import (
    CircleSamples,
    ModeCoefficient,
    SolutionSeries,
    decompose_circle,
    eval_solution,
    extract_coefficients,
    fejer_reconstruct,
    mode_value,
    modes_from_taylor,
)
from .verification import (
    GridSpec,
    ResidualReport,
    equivalence_action_check,
    ode_recurrence_residual,
    residual_M,
    wirtinger_fd,
    wronskian_check,
)

__version__ = "0.1.0"
