"""Heat kernels of the Heisenberg-group operator family, with verification.

Closed-form evaluation of the transformed fundamental solutions (rho_hat,
rho_tilde and the twisted two-point kernel H), the Hermite eigenfunction
expansion that reconstructs rho_hat independently, and a set of numerical
oracles (finite-difference PDE residuals, DFT Gaussian inversion, semigroup
and initial-condition quadrature checks) that validate every identity used
in the derivation.
"""

from .hermite import (
    HermiteEval,
    ScaledHermiteParams,
    eval_hermite_batch,
    eval_scaled_hermite,
    gauss_hermite_nodes,
)
from .kernels import (
    CoefficientsAB,
    FieldSample,
    GridAxis,
    GridSpec,
    KernelParams,
    coefficients_ab,
    evaluate_on_grid,
    heat_kernel_h,
    rho_hat,
    rho_hat_product,
    rho_tilde,
    simplification_identities,
)
from .series import (
    SeriesConfig,
    UValue,
    coefficient_a_m,
    mehler_sum,
    rho_hat_series,
    u_series,
)

__version__ = "0.1.0"

__all__ = [
    "HermiteEval",
    "ScaledHermiteParams",
    "eval_hermite_batch",
    "eval_scaled_hermite",
    "gauss_hermite_nodes",
    "CoefficientsAB",
    "FieldSample",
    "GridAxis",
    "GridSpec",
    "KernelParams",
    "coefficients_ab",
    "evaluate_on_grid",
    "heat_kernel_h",
    "rho_hat",
    "rho_hat_product",
    "rho_tilde",
    "simplification_identities",
    "SeriesConfig",
    "UValue",
    "coefficient_a_m",
    "mehler_sum",
    "rho_hat_series",
    "u_series",
    "__version__",
]
