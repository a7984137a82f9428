"""Non-Hermitian transformed harmonic oscillator toolkit.

The coordinate/momentum mixing (x + i*lam*p, p + i*beta*x) keeps the
canonical commutator but produces a non-Hermitian quadratic Hamiltonian.
This package builds that operator over ladder polynomials, locates the two
frequencies at which it turns triangular in the number basis, generates the
perturbative and closed-form eigensystem on each branch, and cross-checks
every claimed identity numerically (Fock matrices, arbitrary-order
Rayleigh-Schrodinger recursion, Gauss-Hermite quadrature, closed-form
spectra of the general quadratic ladder Hamiltonian).
"""

from .hamiltonian import (
    BRANCH_U_ZERO,
    BRANCH_V_ZERO,
    BRANCH_VARIATIONAL,
    ModeDecomposition,
    TransformParams,
    branch_decomposition,
    build_hamiltonian,
    hamiltonian_polynomial,
    hermiticity_defect,
    omega_u_zero,
    omega_v_zero,
    omega_variational,
    transformed_momentum,
    transformed_position,
    verify_canonical_commutator,
)
from .ladder import LadderPolynomial
from .lie import (
    LieCoefficients,
    case_coefficients,
    decomposition_coefficients,
    lie_energy,
)
from .perturbation import (
    LOWERING,
    RAISING,
    PerturbationResult,
    WavefunctionSeries,
    build_series_lowering,
    build_series_raising,
    first_order,
    rs_corrections,
    series_by_recursion,
)
from .position_space import (
    GridFunction,
    HermiteBasisFunction,
    QuadratureRule,
    default_grid,
    eval_series_position,
    gauss_hermite,
    overlap,
)
from .spectral import (
    FockMatrix,
    classify_structure,
    commutator_defect,
    eigen_residual,
    expectation_consistency,
    triangular_spectrum,
)
from .verify import CheckResult, all_passed, run_verification

__version__ = "0.1.0"

__all__ = [
    "BRANCH_U_ZERO",
    "BRANCH_V_ZERO",
    "BRANCH_VARIATIONAL",
    "CheckResult",
    "FockMatrix",
    "GridFunction",
    "HermiteBasisFunction",
    "LadderPolynomial",
    "LieCoefficients",
    "LOWERING",
    "ModeDecomposition",
    "PerturbationResult",
    "QuadratureRule",
    "RAISING",
    "TransformParams",
    "WavefunctionSeries",
    "all_passed",
    "branch_decomposition",
    "build_hamiltonian",
    "build_series_lowering",
    "build_series_raising",
    "case_coefficients",
    "classify_structure",
    "commutator_defect",
    "decomposition_coefficients",
    "default_grid",
    "eigen_residual",
    "eval_series_position",
    "expectation_consistency",
    "first_order",
    "gauss_hermite",
    "hamiltonian_polynomial",
    "hermiticity_defect",
    "lie_energy",
    "omega_u_zero",
    "omega_v_zero",
    "omega_variational",
    "overlap",
    "rs_corrections",
    "run_verification",
    "series_by_recursion",
    "transformed_momentum",
    "transformed_position",
    "triangular_spectrum",
    "verify_canonical_commutator",
]
