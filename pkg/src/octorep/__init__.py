"""Octonions, their pseudo real matrix representations, and linear equations over them."""

from .errors import (
    DegenerateInputError,
    DimensionError,
    NotCompletelyInvertibleError,
    NotHermitianError,
    NotSymmetricError,
    OctorepError,
    UnsupportedSizeError,
)
from .octonion import Octonion, associator, o_conj, o_im, o_inv, o_mul, o_norm, o_re
from .oeigen import EigenReport, hermitian_eigen, multiplicity_census, random_hermitian
from .olinsolve import (
    SimilarityCertificate,
    check_rep_similarity,
    solve_assoc,
    solve_commutator,
    solve_conj,
    solve_sim,
    solve_sylvester,
)
from .omatrix import (
    InverseOperator,
    MatrixEquation,
    OctonionMatrix,
    Side,
    apply_inverse_operator,
    block_kron_left,
    block_kron_right,
    cayley_hamilton_residuals,
    is_completely_invertible,
    left_adjoint,
    left_inverse,
    make_inverse_operator,
    mat_apply,
    mat_unvec,
    mat_vec,
    nested_left,
    nested_right,
    right_adjoint,
    right_inverse,
    solve_matrix_equation,
)
from .orep import RepKind, delta, delta_char_poly, delta_det_closed, mu, nu, o_unvec, o_vec, omega, rep_inverse
from .quaternion import Quaternion, phi, q_conj, q_inv, q_mul, q_norm, q_vec, tau
from .realmat import (
    SolutionSet,
    char_poly,
    determinant,
    mat_mul,
    pseudo_inverse,
    rank,
    solve_consistent,
    sym_eigen,
)
from .verify import VerifySuiteResult, run_suite

__version__ = "0.1.0"
