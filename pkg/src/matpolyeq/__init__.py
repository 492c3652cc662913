"""Spectral solver for structured matrix polynomial equations.

Equations in one or several unknown matrices, with all unknowns on one
side of the coefficients, are solved through the determinant polynomial
of the associated polynomial matrix: its zeros carry the candidate
eigenvalues, null vectors there carry the shared eigenvectors, and an
invertible stack of those vectors reconstructs every unknown as
X_s = T F_s T^{-1}.  Planted instances provide ground truth for testing.
"""

from .errors import (
    ConvergenceFailure,
    DegreeZero,
    DimensionMismatch,
    DocumentError,
    FactorCheckFailed,
    IdenticallySingular,
    InsufficientRoots,
    MatPolyEqError,
    NoPointsFound,
    NonFiniteInput,
    NonIntegerInput,
    NotASolution,
    NotSimultaneouslyDiagonalizable,
    SingularMatrix,
    TransformSingular,
)
from .instances import PlantedInstance, plant_instance, scalar_oracle, symbolic_det_oracle
from .linalg import as_matrix, as_vector, eigen, frobenius, inverse, matmul, null_space
from .polymatrix import (
    MatrixPolynomial,
    ScalarPolynomial,
    VarietyPoint,
    det_poly_univariate,
    evaluate,
    fix_all_but,
    null_vectors_at,
    poly_roots,
    sample_variety,
    total_degree,
)
from .solver import (
    Diagnostic,
    Orientation,
    SandwichProbeReport,
    SandwichProbeRow,
    SolutionFamily,
    SolveResult,
    SolverConfig,
    StructuredEquation,
    commutation_check,
    dual_equation,
    eigen_candidates,
    enumerate_classes,
    equation_lhs,
    family_from_points,
    quotient_factor,
    sandwich_probe,
    solve_multivariate,
    solve_univariate,
    verify_residual,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceFailure",
    "DegreeZero",
    "Diagnostic",
    "DimensionMismatch",
    "DocumentError",
    "FactorCheckFailed",
    "IdenticallySingular",
    "InsufficientRoots",
    "MatPolyEqError",
    "MatrixPolynomial",
    "NoPointsFound",
    "NonFiniteInput",
    "NonIntegerInput",
    "NotASolution",
    "NotSimultaneouslyDiagonalizable",
    "Orientation",
    "PlantedInstance",
    "SandwichProbeReport",
    "SandwichProbeRow",
    "ScalarPolynomial",
    "SingularMatrix",
    "SolutionFamily",
    "SolveResult",
    "SolverConfig",
    "StructuredEquation",
    "TransformSingular",
    "VarietyPoint",
    "as_matrix",
    "as_vector",
    "commutation_check",
    "det_poly_univariate",
    "dual_equation",
    "eigen",
    "eigen_candidates",
    "enumerate_classes",
    "equation_lhs",
    "evaluate",
    "family_from_points",
    "fix_all_but",
    "frobenius",
    "inverse",
    "matmul",
    "null_space",
    "null_vectors_at",
    "plant_instance",
    "poly_roots",
    "quotient_factor",
    "sample_variety",
    "sandwich_probe",
    "scalar_oracle",
    "solve_multivariate",
    "solve_univariate",
    "symbolic_det_oracle",
    "total_degree",
    "verify_residual",
]
