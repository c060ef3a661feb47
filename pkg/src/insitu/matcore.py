"""Dense complex matrix helpers.

Matrices and vectors are plain ``numpy`` arrays of dtype ``complex128``;
scalars are Python ``complex``. The inner product is conjugate-linear in
its FIRST argument, ``inner(u, v) = sum(conj(u) * v)``, so that
``inner(v, v) == ||v||**2`` and a Gram-Schmidt coefficient reads as
``inner(q, a)``. Norms are Euclidean (Frobenius for matrices).

Indices are 0-based in code and 1-based in anything shown to a user.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ArgumentError, ComputationError

DTYPE = np.complex128


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate ``a`` as an m x n complex matrix with m, n >= 1 and finite entries."""
    arr = np.asarray(a)
    if arr.ndim != 2:
        raise ArgumentError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ArgumentError(f"{name} must have at least one row and column")
    if not np.issubdtype(arr.dtype, np.number):
        raise ArgumentError(f"{name} must be numeric, got dtype {arr.dtype}")
    # contiguous so identical values always take the same BLAS path
    arr = np.ascontiguousarray(arr, dtype=DTYPE)
    if not np.all(np.isfinite(arr)):
        raise ArgumentError(f"{name} has non-finite entries")
    return arr


def as_vector(v, name: str = "vector") -> np.ndarray:
    arr = np.asarray(v)
    if arr.ndim != 1:
        raise ArgumentError(f"{name} must be 1-D, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise ArgumentError(f"{name} must have dimension >= 1")
    if not np.issubdtype(arr.dtype, np.number):
        raise ArgumentError(f"{name} must be numeric, got dtype {arr.dtype}")
    arr = np.ascontiguousarray(arr, dtype=DTYPE)
    if not np.all(np.isfinite(arr)):
        raise ArgumentError(f"{name} has non-finite entries")
    return arr


def ensure_finite(arr: np.ndarray, what: str) -> np.ndarray:
    if not np.all(np.isfinite(arr)):
        raise ComputationError(f"non-finite values produced while computing {what}")
    return arr


@dataclass(frozen=True)
class IndexSet:
    """Subset of ``{1, ..., universe}`` (1-based, sorted, no duplicates)."""

    universe: int
    members: tuple[int, ...] = ()

    def __post_init__(self):
        if self.universe < 0:
            raise ArgumentError("universe must be non-negative")
        members = tuple(sorted(int(i) for i in self.members))
        if len(set(members)) != len(members):
            raise ArgumentError(f"duplicate members in {members}")
        if members and (members[0] < 1 or members[-1] > self.universe):
            raise ArgumentError(f"members {members} not within 1..{self.universe}")
        object.__setattr__(self, "members", members)

    @classmethod
    def from_zero_based(cls, universe: int, indices: Iterable[int]) -> "IndexSet":
        return cls(universe, tuple(i + 1 for i in indices))

    @property
    def zero_based(self) -> np.ndarray:
        return np.array(self.members, dtype=int) - 1

    def __len__(self):
        return len(self.members)

    def __contains__(self, i):
        return i in self.members

    def __str__(self):
        return "{" + ",".join(str(i) for i in self.members) + "}"


def conj_transpose(a: np.ndarray) -> np.ndarray:
    a = as_matrix(a)
    return np.ascontiguousarray(a.conj().T)


def index_matrix(p: int, s: IndexSet) -> np.ndarray:
    """p x p diagonal 0/1 matrix with ones at the members of ``s``."""
    if s.universe != p:
        raise ArgumentError(f"index set universe {s.universe} != {p}")
    out = np.zeros((p, p), dtype=DTYPE)
    idx = s.zero_based
    out[idx, idx] = 1.0
    return out


def matmul(a: np.ndarray, b: np.ndarray, counter=None) -> np.ndarray:
    """Matrix product; charges m*k*n multiply-adds to ``counter`` if given."""
    a = as_matrix(a, "left operand")
    b = as_matrix(b, "right operand")
    if a.shape[1] != b.shape[0]:
        raise ArgumentError(f"cannot multiply {a.shape} by {b.shape}")
    if counter is not None:
        counter.mul_add(a.shape[0] * a.shape[1] * b.shape[1])
    return ensure_finite(a @ b, "matrix product")


def inner(u: np.ndarray, v: np.ndarray) -> complex:
    u = as_vector(u, "u")
    v = as_vector(v, "v")
    if u.shape != v.shape:
        raise ArgumentError(f"dimension mismatch: {u.shape[0]} vs {v.shape[0]}")
    return complex(np.vdot(u, v))


def norm(x: np.ndarray) -> float:
    return float(np.linalg.norm(x))
