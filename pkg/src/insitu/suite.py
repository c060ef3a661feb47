"""Randomized test systems shared by the test suite and the scripts."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

RANK_KINDS = ("full", "half", "one")


@dataclass(frozen=True)
class Case:
    name: str
    a: np.ndarray
    rank: int


def random_matrix(rng, m, n, rank=None, complex_=False):
    """m x n matrix with unit-scale entries and exact rank ``rank`` (generic)."""
    k = min(m, n) if rank is None else rank

    def gauss(*shape):
        x = rng.standard_normal(shape)
        if complex_:
            x = x + 1j * rng.standard_normal(shape)
        return x

    if k == min(m, n):
        return gauss(m, n)
    return gauss(m, k) @ gauss(k, n) / np.sqrt(k)


def rank_for(kind, m, n):
    full = min(m, n)
    return {"full": full, "half": max(1, full // 2), "one": 1}[kind]


def suite(seed=0, count=200, max_m=30, max_n=40, min_dim=2, deficient_rows=False):
    """Cycle through rank kinds and real/complex, with random sizes.

    With ``deficient_rows`` every case has rank < m, so a random right-hand
    side is almost surely outside the column space.
    """
    rng = np.random.default_rng(seed)
    for k in range(count):
        kind = RANK_KINDS[k % 3]
        complex_ = bool((k // 3) % 2)
        while True:
            m = int(rng.integers(min_dim, max_m + 1))
            n = int(rng.integers(min_dim, max_n + 1))
            r = rank_for(kind, m, n)
            if not deficient_rows or r < m:
                break
        a = random_matrix(rng, m, n, r, complex_)
        yield Case(f"{k}:{m}x{n}:{kind}:{'c' if complex_ else 'r'}", a, r)


def pinv_oracle(a, rtol=1e-10):
    """SVD pseudoinverse with a relative cutoff suited to constructed ranks."""
    return np.linalg.pinv(a, rcond=rtol)


def svd_rank(a, rtol=1e-10):
    s = np.linalg.svd(a, compute_uv=False)
    return int(np.sum(s > rtol * s[0])) if s.size and s[0] > 0 else 0


def duplicated_rows(rng, m, n, complex_=False):
    """Rank-deficient witness: a random matrix whose row 2 repeats row 1 scaled."""
    a = random_matrix(rng, m, n, None, complex_)
    a[1] = 2.0 * a[0]
    return a


def duplicated_cols(rng, m, n, complex_=False):
    a = random_matrix(rng, m, n, None, complex_)
    a[:, 1] = 2.0 * a[:, 0]
    return a
