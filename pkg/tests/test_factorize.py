import numpy as np
import pytest
from hypothesis import given

from helpers import complex_matrices
from insitu import (
    ArgumentError,
    GramSchmidtState,
    Orientation,
    StateError,
    col_orthonormalize,
    index_matrix,
    row_orthonormalize,
    row_step,
)
from insitu.factorize import REORTH_TRIGGER
from insitu.suite import random_matrix, svd_rank


def eq1_defect(f):
    a1 = f.a_prime
    return np.max(np.abs(a1 @ a1.conj().T - index_matrix(a1.shape[0], f.s_set)), initial=0.0)


def test_identity_is_fixed():
    for fn in (row_orthonormalize, col_orthonormalize):
        f = fn(np.eye(3), tol=1e-10)
        np.testing.assert_array_equal(f.a_prime, np.eye(3))
        np.testing.assert_array_equal(f.m_matrix, np.eye(3))
        assert f.s_set.members == (1, 2, 3)


def test_row_form_dependent_row_hand_computed():
    # row 1 (2,0) -> (1,0) with M row (1/2, 0); row 2 (4,0) projects to
    # zero with coefficient <q1, r2> = 4, so M row 2 = e2 - 4 * (1/2, 0)
    a = np.array([[2.0, 0.0], [4.0, 0.0]])
    f = row_orthonormalize(a, tol=1e-10)
    np.testing.assert_array_equal(f.a_prime, [[1, 0], [0, 0]])
    np.testing.assert_array_equal(f.m_matrix, [[0.5, 0], [-2, 1]])
    assert f.s_set.members == (1,)
    np.testing.assert_allclose(f.m_matrix @ a, f.a_prime, atol=1e-15)
    assert eq1_defect(f) == 0


def test_zero_matrix():
    f = row_orthonormalize(np.zeros((2, 2)))
    np.testing.assert_array_equal(f.a_prime, np.zeros((2, 2)))
    np.testing.assert_array_equal(f.m_matrix, np.eye(2))
    assert len(f.s_set) == 0


def test_col_form_dependent_column_hand_computed():
    a = np.array([[2.0, 4.0], [0.0, 0.0]])
    f = col_orthonormalize(a, tol=1e-10)
    assert f.orientation is Orientation.COLUMN
    np.testing.assert_array_equal(f.a_prime, [[1, 0], [0, 0]])
    np.testing.assert_array_equal(f.m_matrix, [[0.5, -2], [0, 1]])
    assert f.s_set.members == (1,)
    np.testing.assert_allclose(a @ f.m_matrix, f.a_prime, atol=1e-15)
    i_s = index_matrix(2, f.s_set)
    np.testing.assert_array_equal(f.a_prime @ i_s, f.a_prime)
    np.testing.assert_array_equal(i_s @ f.a_prime.conj().T, f.a_prime.conj().T)


@pytest.mark.parametrize("complex_", [False, True])
def test_column_form_is_transposed_row_form(rng, complex_):
    a = random_matrix(rng, 5, 7, complex_=complex_)
    fc = col_orthonormalize(a)
    fr = row_orthonormalize(a.T)
    np.testing.assert_array_equal(fc.a_prime, fr.a_prime.T)
    np.testing.assert_array_equal(fc.m_matrix, fr.m_matrix.T)
    assert fc.s_set == fr.s_set


def test_row_step_unit_row_and_duplicate():
    state = GramSchmidtState(3, tol=1e-10)
    assert row_step(state, [0.6, 0.8, 0.0], 1)
    np.testing.assert_array_equal(state.vector(0), [0.6, 0.8, 0.0])
    np.testing.assert_array_equal(state.coeff_row(0), [1.0])
    assert not row_step(state, [0.6, 0.8, 0.0], 2)
    np.testing.assert_array_equal(state.vector(1), np.zeros(3))
    assert state.nonzero == [0]
    # M row 2 = e2 - <q1, r2> * e1 with <q1, r2> = 1
    np.testing.assert_allclose(state.coeff_row(1), [-1.0, 1.0], atol=1e-15)


def test_row_step_rejects_out_of_order_and_bad_dims():
    state = GramSchmidtState(2, tol=1e-10)
    with pytest.raises(StateError):
        row_step(state, [1, 0], 2)
    with pytest.raises(ArgumentError):
        row_step(state, [1, 0, 0], 1)
    with pytest.raises(ArgumentError):
        GramSchmidtState(2, tol=0.0)


def test_steps_reproduce_batch_bitwise(rng):
    a = random_matrix(rng, 9, 6, rank=4, complex_=True)
    batch = row_orthonormalize(a, tol=1e-9)
    state = GramSchmidtState(6, tol=1e-9)
    for i, row in enumerate(a, start=1):
        row_step(state, row, i)
        # prefix stability: rows 1..i final and consistent with A
        m_i = state.coeffs
        np.testing.assert_array_less(
            np.abs(m_i @ a[:i] - state.basis).max(), 1e-10 * np.linalg.norm(a) + 1e-300
        )
    inc = state.factorization(Orientation.ROW)
    np.testing.assert_array_equal(inc.a_prime, batch.a_prime)
    np.testing.assert_array_equal(inc.m_matrix, batch.m_matrix)
    assert inc.s_set == batch.s_set


def _deficient_20x30(rng, complex_):
    a = random_matrix(rng, 20, 30, complex_=complex_)
    a[3] = a[0]
    a[7] = 2 * a[1] - 0.5j * a[2] if complex_ else 2 * a[1] - 0.5 * a[2]
    a[12:16] = random_matrix(rng, 4, 3, complex_=complex_) @ a[4:7]
    return a


@pytest.mark.parametrize("complex_", [False, True])
def test_row_identities_on_deficient_matrix(rng, complex_):
    a = _deficient_20x30(rng, complex_)
    f = row_orthonormalize(a)
    assert f.rank == svd_rank(a) == 14
    assert eq1_defect(f) <= 1e-8
    i_s = index_matrix(20, f.s_set)
    np.testing.assert_array_equal(i_s @ f.a_prime, f.a_prime)
    # rows outside S are exact zeros; rows inside are unit
    outside = np.setdiff1d(np.arange(20), f.s_set.zero_based)
    assert not np.any(f.a_prime[outside])
    np.testing.assert_allclose(np.linalg.norm(f.a_prime[f.s_set.zero_based], axis=1), 1.0, atol=1e-12)
    np.testing.assert_allclose(f.m_matrix @ a, f.a_prime, atol=1e-10 * np.linalg.norm(a))
    # M is triangular with a nonzero diagonal, hence invertible
    assert np.all(np.diag(f.m_matrix) != 0)
    np.testing.assert_array_equal(np.triu(f.m_matrix, 1), 0)


def test_null_spaces_agree(rng):
    a = _deficient_20x30(rng, True)
    f = row_orthonormalize(a)
    a1 = f.a_prime
    y = rng.standard_normal(30) + 1j * rng.standard_normal(30)
    y_null_a1 = y - a1.conj().T @ (a1 @ y)
    assert np.linalg.norm(a @ y_null_a1) <= 1e-8 * np.linalg.norm(a) * np.linalg.norm(y_null_a1)
    _, s, vh = np.linalg.svd(a)
    rank = int(np.sum(s > 1e-10 * s[0]))
    y_null_a = vh[rank:].conj().T @ rng.standard_normal(30 - rank)
    assert np.linalg.norm(a1 @ y_null_a) <= 1e-8 * np.linalg.norm(a1) * np.linalg.norm(y_null_a)


@pytest.mark.parametrize("seed", range(6))
def test_rank_matches_svd_with_gap(seed):
    rng = np.random.default_rng(seed)
    m, n = 12, 9
    s = np.array([1.0, 0.7, 0.2, 3e-2, 1e-3, 2e-4])[: 3 + seed % 4]
    u, _ = np.linalg.qr(rng.standard_normal((m, m)))
    v, _ = np.linalg.qr(rng.standard_normal((n, n)))
    a = (u[:, : s.size] * s) @ v[:, : s.size].T
    assert row_orthonormalize(a).rank == svd_rank(a, 1e-8) == s.size
    assert col_orthonormalize(a).rank == s.size


def test_reorthogonalization_keeps_nearly_dependent_row_orthogonal(rng):
    q = rng.standard_normal(8)
    p = rng.standard_normal(8)
    p -= (p @ q) / (q @ q) * q
    # residual ~1e-6 of the norm: well below the reorth trigger, above tol
    a = np.vstack([q, q + 1e-6 * np.linalg.norm(q) * p / np.linalg.norm(p)])
    assert 1e-6 < REORTH_TRIGGER
    f = row_orthonormalize(a)
    assert f.rank == 2
    assert abs(np.vdot(f.a_prime[0], f.a_prime[1])) <= 1e-12


def test_determinism(rng):
    a = random_matrix(rng, 10, 7, rank=5, complex_=True)
    f1, f2 = row_orthonormalize(a), row_orthonormalize(a.copy())
    assert f1.a_prime.tobytes() == f2.a_prime.tobytes()
    assert f1.m_matrix.tobytes() == f2.m_matrix.tobytes()


def test_factorization_is_read_only():
    f = row_orthonormalize(np.eye(2))
    with pytest.raises(ValueError):
        f.a_prime[0, 0] = 5


@given(complex_matrices(6, 6))
def test_row_and_column_invariants_property(a):
    for f, form in ((row_orthonormalize(a), "row"), (col_orthonormalize(a), "col")):
        # M A = A' is accurate relative to ||M|| ||A||, which blows up near dependence
        # and a vector zeroed below the threshold leaves a residual up to tol
        scale = max(1.0, np.linalg.norm(a)) * max(1.0, np.linalg.norm(f.m_matrix))
        atol = 1e-12 * scale + f.tol * max(1.0, np.linalg.norm(a))
        if form == "row":
            np.testing.assert_allclose(f.m_matrix @ a, f.a_prime, atol=atol)
            gram = f.a_prime @ f.a_prime.conj().T
        else:
            np.testing.assert_allclose(a @ f.m_matrix, f.a_prime, atol=atol)
            gram = f.a_prime.conj().T @ f.a_prime
        assert np.max(np.abs(gram - index_matrix(gram.shape[0], f.s_set))) <= 1e-8
