import numpy as np
import pytest

from octorep.errors import DimensionError, NotSymmetricError
from octorep.octonion import Octonion
from octorep.orep import delta, omega
from octorep.quaternion import Quaternion, phi
from octorep.realmat import (
    balance,
    char_poly,
    determinant,
    mat_mul,
    null_space_basis,
    pseudo_inverse,
    rank,
    singular_values,
    solve_consistent,
    sym_eigen,
)

from oracles import cofactor_det, naive_matmul, penrose_defects

E1, E2 = Octonion.basis(1), Octonion.basis(2)


def test_mat_mul_identity_and_oracle():
    rng = np.random.default_rng(3)
    m = rng.uniform(-1, 1, (8, 8))
    assert np.array_equal(mat_mul(np.eye(8), m), m)
    b = rng.uniform(-1, 1, (8, 8))
    assert np.abs(mat_mul(m, b) - naive_matmul(m, b)).max() < 1e-13


def test_mat_mul_phi_homomorphism():
    i, j, k = Quaternion(0, 1), Quaternion(0, 0, 1), Quaternion(0, 0, 0, 1)
    assert np.array_equal(mat_mul(phi(i), phi(j)), phi(k))


def test_mat_mul_dimension_mismatch():
    with pytest.raises(DimensionError):
        mat_mul(np.eye(2), np.eye(3))


def test_mat_mul_associative():
    rng = np.random.default_rng(4)
    for _ in range(50):
        a, b, c = (rng.uniform(-1, 1, (6, 6)) for _ in range(3))
        assert np.abs(mat_mul(mat_mul(a, b), c) - mat_mul(a, mat_mul(b, c))).max() < 1e-10 * 36


def test_determinant_examples():
    assert determinant(np.eye(8)) == 1.0
    assert abs(determinant(omega(Octonion.real(1.0) + E1)) - 16.0) < 1e-10
    rng = np.random.default_rng(5)
    for _ in range(20):
        a = rng.uniform(-1, 1, (4, 4))
        ref = cofactor_det(a)
        assert abs(determinant(a) - ref) <= 1e-10 * max(1.0, abs(ref))
    assert determinant(np.zeros((3, 3))) == 0.0
    with pytest.raises(DimensionError):
        determinant(np.ones((2, 3)))


def test_char_poly_examples():
    p = char_poly(np.eye(8)).coef
    expected = np.array([1, -8, 28, -56, 70, -56, 28, -8, 1], float)
    assert np.allclose(p, expected, atol=1e-12)
    # lambda^2 (lambda^2 + 4)^3
    assert np.allclose(char_poly(delta(E1, E1)).coef, [0, 0, 64, 0, 48, 0, 12, 0, 1], atol=1e-9)
    # (lambda^2 + 1)^4
    assert np.allclose(char_poly(omega(E1)).coef, [1, 0, 4, 0, 6, 0, 4, 0, 1], atol=1e-12)


def test_char_poly_trace_and_det():
    rng = np.random.default_rng(6)
    for n in (3, 8, 16, 24):
        a = rng.uniform(-1, 1, (n, n))
        c = char_poly(a).coef
        assert c[-1] == 1.0
        assert abs(c[-2] + np.trace(a)) <= 1e-8 * max(1.0, abs(np.trace(a)))
        d = determinant(a)
        assert abs(c[0] - (-1) ** n * d) <= 1e-8 * max(1.0, abs(d))


def test_char_poly_balanced_path_large_order():
    rng = np.random.default_rng(7)
    q, _ = np.linalg.qr(rng.normal(size=(32, 32)))
    eig = np.linspace(-1, 1, 32)
    a = q @ np.diag(eig) @ q.T
    c = char_poly(a).coef
    ref = np.polynomial.polynomial.polyfromroots(eig)
    assert np.abs(c - ref).max() < 1e-8
    with pytest.raises(DimensionError):
        char_poly(np.eye(65))


def test_balance_is_a_similarity():
    rng = np.random.default_rng(8)
    a = rng.uniform(-1, 1, (6, 6)) * np.logspace(-3, 3, 6)[:, None]
    b = balance(a)
    assert abs(np.trace(a) - np.trace(b)) < 1e-9 * np.abs(a).max()


def test_sym_eigen_examples():
    w, v = sym_eigen(np.diag([3.0, 1.0]))
    assert np.allclose(w, [1, 3])
    rng = np.random.default_rng(9)
    m = rng.uniform(-1, 1, (8, 8))
    s = m + m.T
    w, v = sym_eigen(s)
    assert np.abs(s @ v - v * w).max() <= 1e-9
    assert np.abs(v.T @ v - np.eye(8)).max() <= 1e-10
    assert np.all(np.diff(w) >= 0)
    with pytest.raises(NotSymmetricError):
        sym_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_sym_eigen_invariants_many():
    rng = np.random.default_rng(10)
    for n in (1, 2, 5, 17, 40):
        m = rng.uniform(-1, 1, (n, n))
        s = m + m.T
        w, v = sym_eigen(s)
        assert np.abs(v.T @ v - np.eye(n)).max() <= 1e-10
        assert np.abs(s @ v - v * w).max() <= 1e-9 * max(1.0, np.abs(s).sum(axis=1).max())
        assert np.abs(np.sort(np.linalg.eigvalsh(s)) - w).max() < 1e-12 * max(1, n)


def test_pseudo_inverse_examples():
    assert np.abs(pseudo_inverse(np.eye(8)) - np.eye(8)).max() < 1e-14
    d = delta(E1, E1)
    g = -0.25 * d
    assert np.abs(d @ g @ d - d).max() < 1e-12
    assert np.abs(pseudo_inverse(d) - g).max() < 1e-12
    assert np.array_equal(pseudo_inverse(np.zeros((3, 2))), np.zeros((2, 3)))


def test_pseudo_inverse_penrose_conditions():
    rng = np.random.default_rng(11)
    worst = 0.0
    for trial in range(200):
        r = int(rng.integers(1, 25))
        c = int(rng.integers(1, 25))
        k = int(rng.integers(1, min(r, c) + 1))
        a = rng.uniform(-1, 1, (r, k)) @ rng.uniform(-1, 1, (k, c))
        g = pseudo_inverse(a)
        scale = max(1.0, np.abs(a).max() * np.abs(g).max())
        worst = max(worst, max(penrose_defects(a, g)) / scale)
        assert rank(a) == k
    assert worst <= 1e-8


def test_rank_examples():
    assert rank(np.eye(8)) == 8
    assert rank(delta(E1, E2)) == 6
    assert rank(np.zeros((4, 4))) == 0
    assert np.allclose(singular_values(np.diag([3.0, -2.0, 0.0])), [3, 2, 0])


def test_null_space_basis_is_orthonormal_and_deterministic():
    d = delta(E1, E2)
    n1 = null_space_basis(d)
    n2 = null_space_basis(d)
    assert n1.shape == (8, 2)
    assert np.array_equal(n1, n2)
    assert np.abs(n1.T @ n1 - np.eye(2)).max() < 1e-12
    assert np.abs(d @ n1).max() < 1e-12


def test_solve_consistent_examples():
    v = np.arange(8.0)
    sol = solve_consistent(np.eye(8), v)
    assert sol.solvable and sol.unique
    assert np.allclose(sol.particular, v)

    sol = solve_consistent(delta(E1, E2), np.zeros(8))
    assert sol.solvable and sol.nullity == 2

    sol = solve_consistent(delta(E1, E1), E2.coeffs)
    assert sol.solvable
    assert np.linalg.norm(delta(E1, E1) @ sol.particular - E2.coeffs) <= 1e-9


def test_solve_consistent_inconsistent_is_flagged():
    # the real part of e1 x - x e1 is always zero
    sol = solve_consistent(delta(E1, E1), Octonion.real(1.0).coeffs)
    assert not sol.solvable
    assert sol.particular is None
    assert sol.residual > 0.5


def test_solve_consistent_dimension_mismatch():
    with pytest.raises(DimensionError):
        solve_consistent(np.eye(3), np.ones(4))


def test_non_finite_rejected():
    with pytest.raises(ValueError):
        determinant(np.array([[np.nan]]))
