"""Penrose-condition checks for a candidate generalized inverse.

The four conditions on ``G`` for a matrix ``A``::

    (1) A G A = A        (3) A G = (A G)^H
    (2) G A G = G        (4) G A = (G A)^H

Each is measured as a relative Frobenius defect and compared with a
tolerance. The row-method inverse always meets {1,2,4}; the column-method
inverse always meets {1,2,3}; with full row (resp. column) rank the
missing condition holds too and G is the Moore-Penrose inverse.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, ComputationError
from .factorize import col_orthonormalize, row_orthonormalize
from .matcore import as_matrix
from .solve_batch import gen_inverse_col, gen_inverse_row


def default_penrose_tol(m: int, n: int) -> float:
    return 1e-8 * max(m, n)


@dataclass(frozen=True)
class PenroseReport:
    holds: tuple[bool, bool, bool, bool]
    defects: tuple[float, float, float, float]
    tol: float

    @property
    def class_label(self) -> str:
        return "{" + "".join(str(k + 1) for k, ok in enumerate(self.holds) if ok) + "}"

    def satisfies(self, conditions: str) -> bool:
        """``satisfies("124")`` is True when conditions 1, 2 and 4 all hold."""
        return all(self.holds[int(c) - 1] for c in conditions)

    def __str__(self):
        parts = " ".join(f"c{k + 1}={d:.3e}" for k, d in enumerate(self.defects))
        return f"{self.class_label} ({parts}, tol={self.tol:.1e})"


def _fro(x):
    return float(np.linalg.norm(x))


def penrose_check(a, g, tol: float | None = None) -> PenroseReport:
    a = as_matrix(a, "A")
    g = as_matrix(g, "G")
    m, n = a.shape
    if g.shape != (n, m):
        raise ArgumentError(f"G has shape {g.shape}, expected {(n, m)}")
    if tol is None:
        tol = default_penrose_tol(m, n)
    ag = a @ g
    ga = g @ a
    # pure relative defects for (1)-(2); a zero A or G divides by 1 instead
    defects = (
        _fro(ag @ a - a) / (_fro(a) or 1.0),
        _fro(ga @ g - g) / (_fro(g) or 1.0),
        _fro(ag - ag.conj().T) / max(1.0, _fro(ag)),
        _fro(ga - ga.conj().T) / max(1.0, _fro(ga)),
    )
    holds = tuple(bool(d <= tol) for d in defects)
    return PenroseReport(holds=holds, defects=defects, tol=float(tol))


def classify_row_method(a, tol: float | None = None, factor_tol: float | None = None) -> PenroseReport:
    """Factorize by rows, form ``G = A'^H M`` and classify it.

    Conditions 1, 2 and 4 are guaranteed; a failure of any of them means
    the factorization itself is broken, so it raises rather than report.
    """
    a = as_matrix(a, "A")
    report = penrose_check(a, gen_inverse_row(row_orthonormalize(a, factor_tol)), tol)
    if not report.satisfies("124"):
        raise ComputationError(f"row-method inverse is not a {{124}}-inverse: {report}")
    return report


def classify_col_method(a, tol: float | None = None, factor_tol: float | None = None) -> PenroseReport:
    """Column-method counterpart; conditions 1, 2 and 3 are guaranteed."""
    a = as_matrix(a, "A")
    report = penrose_check(a, gen_inverse_col(col_orthonormalize(a, factor_tol)), tol)
    if not report.satisfies("123"):
        raise ComputationError(f"column-method inverse is not a {{123}}-inverse: {report}")
    return report
