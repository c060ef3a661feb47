"""Streaming solvers.

Row mode ingests the equations of ``A x = b`` one at a time. Once row i
has been orthonormalized, rows 1..i of A' and M are final, so its share
of the solution ``conj(A'_i) * b'_i`` can be added right away. These
increments are mutually orthogonal, hence the running norm never drops.

Column mode knows all of ``b`` up front and ingests the columns of A;
column j contributes ``M[:, j] * <A'_j, b>``. The unknown count grows by
one with every pushed column.

Both feed the same Gram-Schmidt kernel as the batch factorization, so a
fully streamed system reproduces the batch factors exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, StateError
from .factorize import GramSchmidtState, Orientation, QuasiOrthFactorization, default_tol
from .instrument import OpCounter
from .matcore import DTYPE, as_vector
from .solve_batch import SolveResult, default_consistency_tol, null_projector


@dataclass(frozen=True)
class StepReport:
    index: int
    increment: np.ndarray
    was_dependent: bool
    ops_used: int
    running_norm: float
    inconsistent: bool = False


def _grow_cols(arr, k):
    if k <= arr.shape[1]:
        return arr
    out = np.zeros((arr.shape[0], max(k, 2 * arr.shape[1])), dtype=DTYPE)
    out[:, : arr.shape[1]] = arr
    return out


def _grow_rows(arr, k):
    if k <= arr.shape[0]:
        return arr
    out = np.zeros((max(k, 2 * arr.shape[0]), arr.shape[1]), dtype=DTYPE)
    out[: arr.shape[0]] = arr
    return out


class OnlineRowState:
    """Row-at-a-time solver for ``A x = b`` with ``n`` unknowns.

    Parameters
    ----------
    n : int
        Number of unknowns, fixed for the stream.
    tol : float, optional
        Zero threshold for the factorization. Defaults to
        ``1e-10 * max(expected_rows, n)``, matching the batch default when
        ``expected_rows`` is the final row count.
    accumulate_g : bool
        Also accumulate ``G = sum_i conj(A'_i)^T M_i`` (O(mn) memory).
    expected_rows : int, optional
        Announced stream length; finalizing earlier marks the result
        ``truncated``.
    """

    def __init__(self, n: int, tol: float | None = None, accumulate_g: bool = False,
                 expected_rows: int | None = None):
        if n < 1:
            raise ArgumentError("n must be >= 1")
        self.n = n
        self.expected_rows = expected_rows
        self.tol = default_tol(expected_rows or 1, n) if tol is None else float(tol)
        self._gs = GramSchmidtState(n, self.tol, capacity=expected_rows or 8)
        self.counter = OpCounter()
        self.x_p_acc = np.zeros(n, dtype=DTYPE)
        self.norm_history: list[float] = []
        self.increments: list[np.ndarray] = []
        self._rows = np.zeros((expected_rows or 8, n), dtype=DTYPE)
        self._b = np.zeros(expected_rows or 8, dtype=DTYPE)
        self.g_acc = np.zeros((n, expected_rows or 8), dtype=DTYPE) if accumulate_g else None
        self.flagged_inconsistent = False
        self.finalized = False

    @property
    def rows_seen(self) -> int:
        return self._gs.count

    @property
    def rank(self) -> int:
        return len(self._gs.nonzero)

    def push(self, a_row, b_i) -> StepReport:
        if self.finalized:
            raise StateError("stream already finalized")
        a_row = as_vector(a_row, "row")
        if a_row.shape[0] != self.n:
            raise ArgumentError(f"row has {a_row.shape[0]} entries, expected {self.n}")
        b_i = complex(b_i)
        if not np.isfinite(b_i):
            raise ArgumentError("b_i must be finite")

        i = self.rows_seen
        self._rows = _grow_rows(self._rows, i + 1)
        if i >= self._b.shape[0]:
            self._b = np.concatenate([self._b, np.zeros_like(self._b)])
        self._rows[i] = a_row
        self._b[i] = b_i

        self.counter.begin_step()
        kept = self._gs.step(a_row, i + 1, self.counter)
        m_row = self._gs.coeff_row(i)
        b_prime = complex(m_row @ self._b[: i + 1])
        self.counter.mul_add(i + 1)
        inconsistent = False
        if kept:
            increment = self._gs.vector(i).conj() * b_prime
            self.counter.mul_add(self.n)
            self.x_p_acc += increment
            if self.g_acc is not None:
                self.g_acc = _grow_cols(self.g_acc, i + 1)
                self.g_acc[:, : i + 1] += np.outer(self._gs.vector(i).conj(), m_row)
                self.counter.aux_update(self.n * (i + 1))
        else:
            increment = np.zeros(self.n, dtype=DTYPE)
            # a vanished row leaves b'_i as the equation's contradiction
            inconsistent = abs(b_prime) > default_consistency_tol(self._b[: i + 1])
            self.flagged_inconsistent |= inconsistent
        used = self.counter.end_step()

        running = float(np.linalg.norm(self.x_p_acc))
        self.norm_history.append(running)
        self.increments.append(increment)
        return StepReport(i + 1, increment, not kept, used, running, inconsistent)

    def factorization(self) -> QuasiOrthFactorization:
        return self._gs.factorization(Orientation.ROW)

    def finalize(self, want_p: bool = False) -> SolveResult:
        """Close the stream and return the accumulated solution.

        ``x_p`` (and ``G``) are the running accumulations themselves. ``P``
        is ``1 - G A`` when G was accumulated, else ``1 - A'^H A'``.
        """
        if self.rows_seen == 0:
            raise StateError("no rows pushed")
        self.finalized = True
        m = self.rows_seen
        a = self._rows[:m]
        b = self._b[:m]
        g = self.g_acc[:, :m].copy() if self.g_acc is not None else None
        p = None
        if want_p:
            if g is not None:
                p = null_projector(g, a)
            else:
                q = self._gs.basis
                p = np.eye(self.n, dtype=DTYPE) - q.conj().T @ q
        x_p = self.x_p_acc.copy()
        residual = float(np.linalg.norm(a @ x_p - b))
        ctol = default_consistency_tol(b)
        truncated = self.expected_rows is not None and m < self.expected_rows
        return SolveResult(
            x_p=x_p, rank=self.rank, residual_norm=residual, mode="row",
            tol=self.tol, consistency_tol=ctol,
            inconsistent=self.flagged_inconsistent or residual > ctol,
            g=g, p=p, truncated=truncated,
        )


class OnlineColState:
    """Column-at-a-time least-squares solver; ``b`` is given up front."""

    def __init__(self, b, tol: float | None = None, accumulate_g: bool = False,
                 expected_cols: int | None = None):
        self.b = as_vector(b, "b").copy()
        self.m = self.b.shape[0]
        self.expected_cols = expected_cols
        self.tol = default_tol(self.m, expected_cols or 1) if tol is None else float(tol)
        cap = expected_cols or 8
        self._gs = GramSchmidtState(self.m, self.tol, capacity=cap)
        self.counter = OpCounter()
        self._x = np.zeros(cap, dtype=DTYPE)
        self._cols = np.zeros((self.m, cap), dtype=DTYPE)
        self.g_acc = np.zeros((cap, self.m), dtype=DTYPE) if accumulate_g else None
        self.finalized = False

    @property
    def cols_seen(self) -> int:
        return self._gs.count

    @property
    def rank(self) -> int:
        return len(self._gs.nonzero)

    @property
    def x_p_acc(self) -> np.ndarray:
        return self._x[: self.cols_seen]

    def push(self, a_col) -> StepReport:
        if self.finalized:
            raise StateError("stream already finalized")
        a_col = as_vector(a_col, "column")
        if a_col.shape[0] != self.m:
            raise ArgumentError(f"column has {a_col.shape[0]} entries, expected {self.m}")
        j = self.cols_seen
        self._cols = _grow_cols(self._cols, j + 1)
        self._cols[:, j] = a_col
        if j >= self._x.shape[0]:
            self._x = np.concatenate([self._x, np.zeros(self._x.shape[0], dtype=DTYPE)])

        self.counter.begin_step()
        kept = self._gs.step(a_col, j + 1, self.counter)
        m_col = self._gs.coeff_row(j)
        if kept:
            q = self._gs.vector(j)
            weight = np.vdot(q, self.b)
            increment = m_col * weight
            self.counter.mul_add(self.m + j + 1)
            self._x[: j + 1] += increment
            if self.g_acc is not None:
                self.g_acc = _grow_rows(self.g_acc, j + 1)
                self.g_acc[: j + 1] += np.outer(m_col, q.conj())
                self.counter.aux_update(self.m * (j + 1))
        else:
            increment = np.zeros(j + 1, dtype=DTYPE)
        used = self.counter.end_step()
        running = float(np.linalg.norm(self.x_p_acc))
        return StepReport(j + 1, increment, not kept, used, running)

    def factorization(self) -> QuasiOrthFactorization:
        return self._gs.factorization(Orientation.COLUMN)

    def finalize(self, want_p: bool = False) -> SolveResult:
        if self.cols_seen == 0:
            raise StateError("no columns pushed")
        self.finalized = True
        n = self.cols_seen
        a = self._cols[:, :n]
        q = self._gs.basis            # rows are the columns of A'
        g = self.g_acc[:n].copy() if self.g_acc is not None else None
        p = None
        if want_p:
            g_full = g if g is not None else self._gs.coeffs.T @ q.conj()
            p = null_projector(g_full, a)
        x_p = self.x_p_acc.copy()
        b_c = q.T @ (q.conj() @ self.b)
        residual = float(np.linalg.norm(a @ x_p - b_c))
        lsq = float(np.linalg.norm(self.b - b_c))
        ctol = default_consistency_tol(self.b)
        truncated = self.expected_cols is not None and n < self.expected_cols
        return SolveResult(
            x_p=x_p, rank=self.rank, residual_norm=residual, mode="col",
            tol=self.tol, consistency_tol=ctol, inconsistent=lsq > ctol,
            g=g, p=p, b_projected_norm=lsq, truncated=truncated,
        )


def row_push(state: OnlineRowState, a_row, b_i) -> StepReport:
    return state.push(a_row, b_i)


def row_finalize(state: OnlineRowState, want_p: bool = False) -> SolveResult:
    return state.finalize(want_p)


def col_push(state: OnlineColState, a_col) -> StepReport:
    return state.push(a_col)


def col_finalize(state: OnlineColState, want_p: bool = False) -> SolveResult:
    return state.finalize(want_p)
