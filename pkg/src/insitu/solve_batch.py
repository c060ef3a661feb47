"""Batch solvers built on the quasi-orthonormal factorization.

Row mode (``M A = A'``) gives the minimum-norm solution
``x_p = A'^H (M b)``; column mode (``A M = A'``) gives a least-squares
solution ``x_p = M (A'^H b)``. In both, ``G`` is the generalized inverse
and ``P = 1 - G A`` projects onto the null space, so every solution is
``x_p + P y``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError
from .factorize import (
    Orientation,
    QuasiOrthFactorization,
    col_orthonormalize,
    row_orthonormalize,
)
from .matcore import DTYPE, as_matrix, as_vector, ensure_finite


def default_consistency_tol(b) -> float:
    return 1e-8 * max(1.0, float(np.linalg.norm(b)))


@dataclass(frozen=True)
class SolveResult:
    """Particular solution plus diagnostics.

    ``residual_norm`` is ``||A x_p - b||`` in row mode and
    ``||A x_p - b_c||`` in column mode, where ``b_c`` is the projection of
    ``b`` onto the column space. ``b_projected_norm`` (column mode only)
    is ``||b - b_c||``, the least-squares residual of the original system.
    """

    x_p: np.ndarray
    rank: int
    residual_norm: float
    mode: str
    tol: float
    consistency_tol: float
    inconsistent: bool = False
    g: np.ndarray | None = None
    p: np.ndarray | None = None
    b_projected_norm: float | None = None
    truncated: bool = False

    def homogeneous(self, y) -> np.ndarray:
        if self.p is None:
            raise ArgumentError("projector not computed; pass want_p=True")
        return homogeneous_sample(self.p, y)


@dataclass(frozen=True)
class MatrixSolveResult:
    x_p: np.ndarray
    g: np.ndarray
    p: np.ndarray
    rank: int
    mode: str
    residual_norms: np.ndarray


def _check_orientation(f: QuasiOrthFactorization, want: Orientation):
    if f.orientation is not want:
        raise ArgumentError(f"expected a {want.value}-form factorization, got {f.orientation.value}")


def _rhs(a, b):
    b = as_vector(b, "b")
    if b.shape[0] != a.shape[0]:
        raise ArgumentError(f"b has dimension {b.shape[0]}, A has {a.shape[0]} rows")
    return b


def row_particular(f: QuasiOrthFactorization, b) -> np.ndarray:
    """``A'^H (M b)`` without forming G."""
    _check_orientation(f, Orientation.ROW)
    b_prime = f.m_matrix @ b
    return ensure_finite(f.a_prime.conj().T @ b_prime, "particular solution")


def col_particular(f: QuasiOrthFactorization, b) -> np.ndarray:
    _check_orientation(f, Orientation.COLUMN)
    return ensure_finite(f.m_matrix @ (f.a_prime.conj().T @ b), "particular solution")


def project_column_space(f: QuasiOrthFactorization, b) -> np.ndarray:
    """``b_c = A' A'^H b``: orthogonal projection of b onto range(A)."""
    _check_orientation(f, Orientation.COLUMN)
    b = as_vector(b, "b")
    if b.shape[0] != f.a_prime.shape[0]:
        raise ArgumentError(f"b has dimension {b.shape[0]}, expected {f.a_prime.shape[0]}")
    return f.a_prime @ (f.a_prime.conj().T @ b)


def gen_inverse_row(f: QuasiOrthFactorization) -> np.ndarray:
    """``G = A'^H M`` (n x m); a {1,2,4}-inverse of A."""
    _check_orientation(f, Orientation.ROW)
    return ensure_finite(f.a_prime.conj().T @ f.m_matrix, "generalized inverse")


def gen_inverse_col(f: QuasiOrthFactorization) -> np.ndarray:
    """``G = M A'^H`` (n x m); a {1,2,3}-inverse of A."""
    _check_orientation(f, Orientation.COLUMN)
    return ensure_finite(f.m_matrix @ f.a_prime.conj().T, "generalized inverse")


def null_projector(g, a) -> np.ndarray:
    """``P = 1_n - G A``."""
    g = as_matrix(g, "G")
    a = as_matrix(a, "A")
    if g.shape != (a.shape[1], a.shape[0]):
        raise ArgumentError(f"G has shape {g.shape}, expected {(a.shape[1], a.shape[0])}")
    return np.eye(a.shape[1], dtype=DTYPE) - g @ a


def homogeneous_sample(p, y) -> np.ndarray:
    """``x_h = P y``: the null-space component selected by ``y``."""
    p = as_matrix(p, "P")
    y = as_vector(y, "y")
    if p.shape[1] != y.shape[0]:
        raise ArgumentError(f"y has dimension {y.shape[0]}, expected {p.shape[1]}")
    return p @ y


def _row_projector(f, g, a):
    if g is not None:
        return null_projector(g, a)
    # G not formed: P = 1 - A'^H A'
    n = f.a_prime.shape[1]
    return np.eye(n, dtype=DTYPE) - f.a_prime.conj().T @ f.a_prime


def solve_row_minnorm(a, b, tol=None, want_g=False, want_p=False, consistency_tol=None,
                      factorization=None) -> SolveResult:
    """Minimum-norm solution of ``A x = b``.

    If ``b`` is not in the range of A, the returned ``x_p`` solves only the
    consistent part; ``inconsistent`` is set and ``residual_norm`` shows
    by how much ``A x_p`` misses ``b``.
    """
    a = as_matrix(a, "A")
    b = _rhs(a, b)
    f = row_orthonormalize(a, tol) if factorization is None else factorization
    _check_orientation(f, Orientation.ROW)
    x_p = row_particular(f, b)
    g = gen_inverse_row(f) if want_g else None
    p = _row_projector(f, g, a) if want_p else None
    residual = float(np.linalg.norm(a @ x_p - b))
    ctol = default_consistency_tol(b) if consistency_tol is None else consistency_tol
    return SolveResult(
        x_p=x_p, rank=f.rank, residual_norm=residual, mode="row",
        tol=f.tol, consistency_tol=ctol, inconsistent=residual > ctol,
        g=g, p=p,
    )


def solve_col_lsq(a, b, tol=None, want_g=False, want_p=False, consistency_tol=None,
                  factorization=None) -> SolveResult:
    """Least-squares solution ``x_p = M A'^H b`` (solves ``A x = b_c``).

    ``inconsistent`` here means ``b`` had a component outside range(A),
    i.e. ``b_projected_norm`` exceeds the consistency tolerance.
    """
    a = as_matrix(a, "A")
    b = _rhs(a, b)
    f = col_orthonormalize(a, tol) if factorization is None else factorization
    _check_orientation(f, Orientation.COLUMN)
    x_p = col_particular(f, b)
    b_c = f.a_prime @ (f.a_prime.conj().T @ b)
    g = gen_inverse_col(f) if want_g or want_p else None
    p = null_projector(g, a) if want_p else None
    residual = float(np.linalg.norm(a @ x_p - b_c))
    lsq_residual = float(np.linalg.norm(b - b_c))
    ctol = default_consistency_tol(b) if consistency_tol is None else consistency_tol
    return SolveResult(
        x_p=x_p, rank=f.rank, residual_norm=residual, mode="col",
        tol=f.tol, consistency_tol=ctol, inconsistent=lsq_residual > ctol,
        g=g if want_g else None, p=p, b_projected_norm=lsq_residual,
    )


def solve_matrix_rhs(a, b_mat, mode: str = "row", tol=None) -> MatrixSolveResult:
    """Solve ``A X = B`` for all columns of B with one factorization.

    Each column of ``X_p`` is produced by the same kernel as the
    single-vector solver, so it matches a per-column solve exactly.
    """
    a = as_matrix(a, "A")
    b_mat = as_matrix(b_mat, "B")
    if b_mat.shape[0] != a.shape[0]:
        raise ArgumentError(f"B has {b_mat.shape[0]} rows, A has {a.shape[0]}")
    if mode == "row":
        f = row_orthonormalize(a, tol)
        particular, g = row_particular, gen_inverse_row(f)
        target = b_mat
    elif mode in ("col", "column"):
        f = col_orthonormalize(a, tol)
        particular, g = col_particular, gen_inverse_col(f)
        target = f.a_prime @ (f.a_prime.conj().T @ b_mat)
    else:
        raise ArgumentError(f"mode must be 'row' or 'col', got {mode!r}")
    x_p = np.empty((a.shape[1], b_mat.shape[1]), dtype=DTYPE)
    for k in range(b_mat.shape[1]):
        x_p[:, k] = particular(f, np.ascontiguousarray(b_mat[:, k]))
    residuals = np.linalg.norm(a @ x_p - target, axis=0)
    return MatrixSolveResult(
        x_p=x_p, g=g, p=null_projector(g, a), rank=f.rank,
        mode="row" if mode == "row" else "col", residual_norms=residuals,
    )
