"""Exact computations with higher order Jacobian ideals, Milnor algebras,
apolar (Macaulay dual) algebras, mixed Hessians and Betti tables of
projective hypersurfaces."""

__version__ = "0.1.0"

from .qpoly import Poly, parse_poly, apply_op, diff, evaluate, monomials_of_degree
from .linalg import QMat, rank, rref, kernel_basis, in_column_space
from .apolar import ApolarAlgebra, ConeError, hilbert_A, catalecticant, ann_basis, is_cone, dual_basis
from .milnor import (
    jac_gens,
    ideal_dim,
    milnor_profile,
    is_artinian,
    tjurina_sum,
    hessian_membership,
    quotient_lefschetz,
    multiplicity_at,
)
from .hessian import (
    mixed_hessian,
    hess_k,
    generic_rank,
    lefschetz_matrix,
    check_lefschetz_hessian_identity,
    slp_report,
    polar_degeneracy,
)
from .betti import koszul_betti, betti_consistency
