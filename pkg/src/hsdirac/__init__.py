"""Exact higher spin Dirac operators: Clifford homomorphisms over su(2) and spectra on S^3."""

from .exact import ExactMatrix, ExactScalar, gram_adjoint, nullity, nullspace, rank, solve
from .su2 import GroupElement, LieVector, cg_decompose, gram_matrix, rep_group, rep_infinitesimal
from .clifford import (
    CliffordKind,
    cg_oracle_compare,
    clifford_map,
    symbol_det,
    torus_kernel_dims,
    verify_algebra,
    verify_group_equivariance,
)
from .sphere import (
    OperatorKind,
    block_gram,
    check_eigenvalue_bounds,
    coeff_basis,
    kernel_dimension,
    operator_block,
    spectrum_block,
    verify_adjoint_blocks,
    verify_s3_identities,
)

__version__ = "0.1.0"
