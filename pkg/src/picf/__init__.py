"""Exact periodic integer continued fractions of quadratic surds and of the Z_2-tower generators."""

from .arith import Surd, is_square, isqrt, squarefree_decompose
from .cf import (
    PCF,
    ConvergenceReport,
    Mat2,
    convergence_check,
    convergents,
    dominant_eigenvalue,
    pcf_eigenvalue,
    pcf_matrix,
    pcf_value,
    unroll,
    word_matrix,
)
from .errors import (
    DegenerateValueError,
    DivergenceError,
    InvalidInputError,
    NonIntegralQuotientError,
    NotAUnitError,
    PicfError,
    VerificationError,
)
from .families import Family, FamilyExpansion, family_eval, family_picf, family_rpcf, family_witnesses
from .pell import (
    PellSolution,
    check_convergent_fundamentality,
    closed_form_solution,
    convergent_solution,
    fundamental_solution,
    is_fundamental,
    sqrt_rcf,
    unit_power,
)
from .tower import (
    TowerElem,
    TowerTriple,
    cos_poly,
    eta,
    minimal_poly,
    numeric_embed,
    relative_norm,
    tower_triple,
    unit_divide,
    verify_tower_pcf,
)
from .variety import VarietyPoint, brute_force_points, enumerate_points, variety_residuals

__version__ = "0.1.0"
