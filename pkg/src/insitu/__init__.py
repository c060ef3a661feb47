"""In situ orthonormalization solvers for linear systems.

Row mode orthonormalizes the rows of ``A`` inside the equation
(``M A x = M b``) and yields the minimum-norm solution; column mode
orthonormalizes the columns (``A M M^-1 x = b``) and yields a
least-squares solution. Both also give a generalized inverse, a
null-space projector, and a streaming formulation.
"""
from .errors import ArgumentError, ComputationError, ParseError, StateError
from .factorize import (
    GramSchmidtState,
    Orientation,
    QuasiOrthFactorization,
    col_orthonormalize,
    col_step,
    row_orthonormalize,
    row_step,
)
from .instrument import ComplexityReport, OpCounter, added_complexity, profile_col_solver, profile_row_solver
from .matcore import IndexSet, conj_transpose, index_matrix, inner, matmul
from .penrose import PenroseReport, classify_col_method, classify_row_method, penrose_check
from .solve_batch import (
    MatrixSolveResult,
    SolveResult,
    gen_inverse_col,
    gen_inverse_row,
    homogeneous_sample,
    null_projector,
    project_column_space,
    solve_col_lsq,
    solve_matrix_rhs,
    solve_row_minnorm,
)
from .solve_online import (
    OnlineColState,
    OnlineRowState,
    StepReport,
    col_finalize,
    col_push,
    row_finalize,
    row_push,
)

__version__ = "0.1.0"
