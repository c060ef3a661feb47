"""Quasi-orthonormal factorization by modified Gram-Schmidt.

Row form produces ``M @ A == A'`` and column form ``A @ M == A'``, where
the vectors (rows or columns) of ``A'`` each have norm 1 or are exactly
zero, and the unit ones are mutually orthogonal. Dependent vectors are
not removed: they are zeroed in place and skipped by later projections.

Both forms share one incremental kernel, :class:`GramSchmidtState`,
which orthonormalizes a sequence of vectors in arrival order while
carrying the coefficient matrix alongside (the ``[A | 1] -> [A' | M]``
layout). The column form of ``A`` is exactly the row form of ``A.T``
transposed; no pivoting is done, so online and batch runs agree bit for
bit.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, StateError
from .matcore import DTYPE, IndexSet, as_matrix, as_vector, ensure_finite

# second MGS pass when a projection removes more than this fraction of the norm
REORTH_TRIGGER = 1e-3


class Orientation(enum.Enum):
    ROW = "row"
    COLUMN = "column"


def default_tol(m: int, n: int) -> float:
    return 1e-10 * max(m, n)


@dataclass(frozen=True)
class QuasiOrthFactorization:
    """The triple (A', M, S) plus the zero threshold that produced it.

    ``s_set`` lists (1-based) the rows of ``a_prime`` (row form) or its
    columns (column form) that are nonzero.
    """

    a_prime: np.ndarray
    m_matrix: np.ndarray
    s_set: IndexSet
    orientation: Orientation
    tol: float

    @property
    def rank(self) -> int:
        return len(self.s_set)

    @property
    def shape(self) -> tuple[int, int]:
        return self.a_prime.shape


class GramSchmidtState:
    """Incremental MGS over a stream of vectors of fixed length ``dim``.

    After ``k`` steps, ``basis[:k]`` holds the processed vectors (unit or
    zero) and ``coeffs[:k, :k]`` the lower-triangular matrix with
    ``coeffs @ V == basis`` for ``V`` the raw vectors stacked as rows.
    Rows ``0..k-1`` of both never change again.
    """

    def __init__(self, dim: int, tol: float, capacity: int = 8):
        if dim < 1:
            raise ArgumentError("vector dimension must be >= 1")
        if not tol > 0:
            raise ArgumentError("tol must be positive")
        self.dim = dim
        self.tol = float(tol)
        self.count = 0
        self.nonzero: list[int] = []
        cap = max(1, capacity)
        self._basis = np.zeros((cap, dim), dtype=DTYPE)
        self._coeffs = np.zeros((cap, cap), dtype=DTYPE)

    @property
    def basis(self) -> np.ndarray:
        return self._basis[: self.count]

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs[: self.count, : self.count]

    def vector(self, i: int) -> np.ndarray:
        """Processed vector ``i`` (0-based): unit norm or exactly zero."""
        return self._basis[i]

    def coeff_row(self, i: int) -> np.ndarray:
        """Nonzero part ``coeffs[i, :i+1]`` of coefficient row ``i`` (0-based)."""
        return self._coeffs[i, : i + 1]

    def _reserve(self, k):
        cap = self._basis.shape[0]
        if k <= cap:
            return
        new = max(k, 2 * cap)
        basis = np.zeros((new, self.dim), dtype=DTYPE)
        basis[:cap] = self._basis
        coeffs = np.zeros((new, new), dtype=DTYPE)
        coeffs[:cap, :cap] = self._coeffs
        self._basis, self._coeffs = basis, coeffs

    def _project(self, v, c, counter):
        for k in self.nonzero:
            q = self._basis[k]
            h = np.vdot(q, v)
            v -= h * q
            c[: k + 1] -= h * self._coeffs[k, : k + 1]
            if counter is not None:
                counter.mul_add(2 * self.dim)
                counter.aux_update(k + 1)

    def step(self, vec, index: int, counter=None) -> bool:
        """Process vector number ``index`` (1-based). Returns True if it was kept."""
        if index != self.count + 1:
            raise StateError(f"expected vector {self.count + 1}, got {index}")
        v = as_vector(vec).copy()
        if v.shape[0] != self.dim:
            raise ArgumentError(f"vector has dimension {v.shape[0]}, expected {self.dim}")
        i = self.count
        self._reserve(i + 1)
        c = np.zeros(i + 1, dtype=DTYPE)
        c[i] = 1.0

        original = np.linalg.norm(v)
        if counter is not None:
            counter.mul_add(self.dim)
            counter.sqrt()
        self._project(v, c, counter)
        residual = np.linalg.norm(v)
        if counter is not None:
            counter.mul_add(self.dim)
            counter.sqrt()
        threshold = self.tol * max(1.0, original)
        if self.nonzero and threshold < residual < REORTH_TRIGGER * original:
            self._project(v, c, counter)
            residual = np.linalg.norm(v)
            if counter is not None:
                counter.mul_add(self.dim)
                counter.sqrt()

        kept = residual > threshold
        if kept:
            v /= residual
            c /= residual
            if counter is not None:
                counter.div(self.dim)
                counter.aux_update(i + 1)
            self.nonzero.append(i)
        else:
            v[:] = 0.0
        ensure_finite(v, "orthonormalized vector")
        ensure_finite(c, "transformation coefficients")
        self._basis[i] = v
        self._coeffs[i, : i + 1] = c
        self.count += 1
        return kept

    def factorization(self, orientation: Orientation) -> QuasiOrthFactorization:
        if self.count == 0:
            raise StateError("no vectors processed yet")
        q = self.basis.copy()
        c = self.coeffs.copy()
        if orientation is Orientation.COLUMN:
            q, c = np.ascontiguousarray(q.T), np.ascontiguousarray(c.T)
        for arr in (q, c):
            arr.setflags(write=False)
        return QuasiOrthFactorization(
            a_prime=q,
            m_matrix=c,
            s_set=IndexSet.from_zero_based(self.count, self.nonzero),
            orientation=orientation,
            tol=self.tol,
        )


def row_step(state: GramSchmidtState, a_row, index: int, counter=None) -> bool:
    """Fold row ``index`` (1-based) into a partial row-form factorization."""
    return state.step(a_row, index, counter)


def col_step(state: GramSchmidtState, a_col, index: int, counter=None) -> bool:
    return state.step(a_col, index, counter)


def row_orthonormalize(a, tol: float | None = None) -> QuasiOrthFactorization:
    """Row form: returns (A', M, S) with ``M @ A == A'``.

    Parameters
    ----------
    a : array_like, shape (m, n)
    tol : float, optional
        Relative zero threshold; a row whose residual norm is at most
        ``tol * max(1, ||row||)`` is declared dependent and zeroed.
        Defaults to ``1e-10 * max(m, n)``.
    """
    a = as_matrix(a, "A")
    m, n = a.shape
    state = GramSchmidtState(n, default_tol(m, n) if tol is None else tol, capacity=m)
    for i in range(m):
        state.step(a[i], i + 1)
    return state.factorization(Orientation.ROW)


def col_orthonormalize(a, tol: float | None = None) -> QuasiOrthFactorization:
    """Column form: returns (A', M, S) with ``A @ M == A'``."""
    a = as_matrix(a, "A")
    m, n = a.shape
    state = GramSchmidtState(m, default_tol(m, n) if tol is None else tol, capacity=n)
    for j in range(n):
        state.step(a[:, j], j + 1)
    return state.factorization(Orientation.COLUMN)
