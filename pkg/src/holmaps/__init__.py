"""Rational homology of spaces of holomorphic maps from a Riemann surface to
projective space, computed by exact linear algebra."""

__version__ = "0.1.0"

from .algebra import BigradedTable, ExteriorElement, ExteriorMonomial, PoincarePolynomial, ext_mul
from .errors import (
    ConsistencyError,
    HolmapsError,
    ParameterError,
    ResourceLimitError,
    UnsupportedRegimeError,
)
from .extor import ext_vg_closed, minimal_resolution, mn_dims, tor_vanishing_check
from .jacobian import JacobianAlgebra, fg_mult_matrix, primitive_dim, vg_dims, w_homology, w_relative
from .linalg import RationalMatrix, kernel_basis, rank
from .specseq import (
    hol_poincare_genus1,
    hol_stable_survivors,
    injectivity_check,
    map_poincare,
    qe_E1,
    stable_d1_n1,
    tail_d1,
    vg_koszul_homology,
)
from .strata import CurveClass, assemble_le_e1, le_poincare, w_k_t
from .symprod import macdonald_small_check, sp_poincare, sp_susp_relative

__all__ = [
    "BigradedTable",
    "ConsistencyError",
    "CurveClass",
    "ExteriorElement",
    "ExteriorMonomial",
    "HolmapsError",
    "JacobianAlgebra",
    "ParameterError",
    "PoincarePolynomial",
    "RationalMatrix",
    "ResourceLimitError",
    "UnsupportedRegimeError",
    "assemble_le_e1",
    "ext_mul",
    "ext_vg_closed",
    "fg_mult_matrix",
    "hol_poincare_genus1",
    "hol_stable_survivors",
    "injectivity_check",
    "kernel_basis",
    "le_poincare",
    "macdonald_small_check",
    "map_poincare",
    "minimal_resolution",
    "mn_dims",
    "primitive_dim",
    "qe_E1",
    "rank",
    "sp_poincare",
    "sp_susp_relative",
    "stable_d1_n1",
    "tail_d1",
    "tor_vanishing_check",
    "vg_dims",
    "vg_koszul_homology",
    "w_homology",
    "w_k_t",
    "w_relative",
    "__version__",
]
