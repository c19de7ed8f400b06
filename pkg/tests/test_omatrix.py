import json

import numpy as np
import pytest

from octorep.errors import DimensionError, NotCompletelyInvertibleError, UnsupportedSizeError
from octorep.octonion import Octonion, o_norm
from octorep.omatrix import (
    MatrixEquation,
    OctonionMatrix,
    Side,
    apply_inverse_operator,
    block_kron_left,
    block_kron_right,
    cayley_hamilton_residuals,
    coefficient_scale,
    equation_lhs,
    is_completely_invertible,
    k_matrix,
    left_adjoint,
    left_inverse,
    left_power,
    make_inverse_operator,
    mat_apply,
    mat_unvec,
    mat_vec,
    nested_left,
    nested_right,
    right_adjoint,
    right_inverse,
    right_power,
    scalar_right,
    solve_matrix_equation,
)
from octorep.orep import nu, omega
from octorep.realmat import char_poly
from octorep.verify import random_completely_invertible, unit_scaled

from oracles import explicit_inverse_sum

E = [Octonion.basis(i) for i in range(8)]


def rand_mat(rng, m, n):
    return OctonionMatrix(rng.uniform(-1, 1, (m, n, 8)))


def one_by_one(x: Octonion) -> OctonionMatrix:
    return OctonionMatrix.from_entries([[x]])


def dist(x: OctonionMatrix, y: OctonionMatrix) -> float:
    return (x - y).max_abs()


def test_adjoints_of_identity_and_conjugate_transpose():
    for m in (1, 2, 3):
        assert np.array_equal(left_adjoint(OctonionMatrix.identity(m)), np.eye(8 * m))
        assert np.array_equal(right_adjoint(OctonionMatrix.identity(m)), np.eye(8 * m))
    rng = np.random.default_rng(30)
    for _ in range(20):
        m, n = rng.integers(1, 4, 2)
        a = rand_mat(rng, m, n)
        assert np.array_equal(left_adjoint(a.H), left_adjoint(a).T)
        assert left_adjoint(a).shape == (8 * m, 8 * n)
        assert right_adjoint(a).shape == (8 * n, 8 * m)
        assert np.array_equal(right_adjoint(a), k_matrix(n) @ left_adjoint(a).T @ k_matrix(m))


def test_adjoint_linearity():
    rng = np.random.default_rng(31)
    a, b = rand_mat(rng, 2, 3), rand_mat(rng, 2, 3)
    assert np.allclose(left_adjoint(a + b), left_adjoint(a) + left_adjoint(b), atol=1e-15)
    assert np.allclose(right_adjoint(a * 2.5), 2.5 * right_adjoint(a), atol=0)


def test_vec_layout():
    assert np.array_equal(mat_vec(one_by_one(E[1])), np.eye(8)[1])
    a = OctonionMatrix.from_entries([[1, 2], [3, 4]])
    # column-major: a11, a21, a12, a22
    assert np.array_equal(mat_vec(a)[::8], [1, 3, 2, 4])
    rng = np.random.default_rng(32)
    x = rand_mat(rng, 2, 3)
    assert mat_unvec(mat_vec(x), 2, 3) == x
    with pytest.raises(DimensionError):
        mat_unvec(np.ones(9), 1, 1)


def test_block_kron_examples():
    rng = np.random.default_rng(33)
    m = rng.uniform(-1, 1, (8, 8))
    assert np.array_equal(block_kron_left(np.eye(8), m), m)
    assert np.array_equal(block_kron_right(np.eye(8), m), m)
    b = Octonion(rng.uniform(-1, 1, 8))
    layout = block_kron_left(nu(b), np.eye(16))
    assert np.array_equal(layout, np.kron(np.eye(2), nu(b)))
    x = rand_mat(rng, 2, 1)
    assert np.allclose(layout @ mat_vec(x), mat_vec(scalar_right(x, b)), atol=1e-15)
    with pytest.raises(DimensionError):
        block_kron_left(np.eye(7), np.eye(8))


def test_block_kron_block_layout():
    rng = np.random.default_rng(34)
    a = rng.uniform(-1, 1, (16, 24))
    b = rng.uniform(-1, 1, (8, 16))
    left = block_kron_left(a, b)
    right = block_kron_right(a, b)
    assert left.shape == right.shape == (16, 48)

    def blk(m, s, t):
        return m[8 * s:8 * s + 8, 8 * t:8 * t + 8]

    # left: outer index from A; right: outer index from B
    assert np.allclose(blk(left, 1 * 1 + 0, 2 * 2 + 1), blk(a, 1, 2) @ blk(b, 0, 1))
    assert np.allclose(blk(right, 0 * 2 + 1, 1 * 3 + 2), blk(a, 1, 2) @ blk(b, 0, 1))


def test_mat_apply_examples():
    rng = np.random.default_rng(35)
    x = rand_mat(rng, 3, 2)
    assert mat_apply(OctonionMatrix.identity(3), x) == x
    with pytest.raises(DimensionError):
        mat_apply(rand_mat(rng, 2, 2), x)


def test_vec_identities_random():
    rng = np.random.default_rng(36)
    for _ in range(100):
        m, n, p, q = (int(v) for v in rng.integers(1, 4, 4))
        a, x, b = rand_mat(rng, m, n), rand_mat(rng, n, p), rand_mat(rng, p, q)
        x_mn = rand_mat(rng, m, n)
        o = Octonion(rng.uniform(-1, 1, 8))
        wa, vb = left_adjoint(a), right_adjoint(b)
        vx = mat_vec(x)
        tol = 1e-10 * 27

        assert np.abs(mat_vec(a @ x) - block_kron_left(np.eye(8 * p), wa) @ vx).max() <= tol
        assert np.abs(mat_vec(x @ b) - block_kron_left(vb, np.eye(8 * n)) @ vx).max() <= tol
        assert np.abs(mat_vec((a @ x) @ b) - block_kron_left(vb, wa) @ vx).max() <= tol
        assert np.abs(mat_vec(a @ (x @ b)) - block_kron_right(wa, vb) @ vx).max() <= tol
        # scalar multiples
        oa = OctonionMatrix(np.broadcast_to(o.coeffs, (m, n, 8)))
        ox = OctonionMatrix(np.array([[ (o * Octonion(x_mn.data[s, t])).coeffs for t in range(n)] for s in range(m)]))
        assert np.abs(mat_vec(ox) - block_kron_left(np.eye(8 * n * m), omega(o))[: 8 * m * n, : 8 * m * n] @ mat_vec(x_mn)).max() <= tol
        assert np.abs(mat_vec(scalar_right(x_mn, o)) - block_kron_left(nu(o), np.eye(8 * m * n)) @ mat_vec(x_mn)).max() <= tol
        assert oa.shape == (m, n)


def test_nested_examples():
    a = one_by_one(E[1])
    x = one_by_one(E[0])
    assert nested_left(a, x, 1) == a @ x
    assert nested_left(a, x, 2) == one_by_one(-E[0])
    rng = np.random.default_rng(37)
    for _ in range(20):
        a, x = rand_mat(rng, 2, 2), rand_mat(rng, 2, 2)
        w3 = np.linalg.matrix_power(left_adjoint(a), 3)
        v3 = np.linalg.matrix_power(right_adjoint(a), 3)
        assert np.abs(mat_vec(nested_left(a, x, 3)) - block_kron_left(np.eye(16), w3) @ mat_vec(x)).max() <= 1e-9
        assert np.abs(mat_vec(nested_right(x, a, 3)) - block_kron_left(v3, np.eye(16)) @ mat_vec(x)).max() <= 1e-9
    with pytest.raises(ValueError):
        nested_left(a, x, 0)
    with pytest.raises(DimensionError):
        nested_left(rand_mat(rng, 2, 3), x, 1)


def test_powers():
    a = one_by_one(E[1])
    assert left_power(a, 0) == OctonionMatrix.identity(1)
    assert left_power(a, 4) == right_power(a, 4) == OctonionMatrix.identity(1)


@pytest.mark.parametrize("form", list(MatrixEquation))
def test_matrix_equation_round_trip(form):
    rng = np.random.default_rng(38)
    for _ in range(10):
        if form in (MatrixEquation.AX_XB_C, MatrixEquation.ASSOC):
            m = int(rng.integers(1, 3))
            a = rand_mat(rng, m, m)
            b = rand_mat(rng, m, m) if form is MatrixEquation.AX_XB_C else None
            xs = rand_mat(rng, m, m)
        else:
            m, n, p = (int(v) for v in rng.integers(1, 4, 3))
            a = rand_mat(rng, m, m)
            b = rand_mat(rng, p, p) if form.name.startswith("AXB") else None
            xs = rand_mat(rng, m, p) if form is not MatrixEquation.XA_B else rand_mat(rng, n, m)
        rhs = equation_lhs(form, a, b, xs)
        sol = solve_matrix_equation(form, a, rhs, b)
        assert sol.solvable
        assert sol.residual <= 1e-8
        for h in sol.null_basis:
            assert equation_lhs(form, a, b, h).max_abs() <= 1e-8


def test_matrix_equation_examples():
    rng = np.random.default_rng(39)
    a = random_completely_invertible(2, rng)
    xs = rand_mat(rng, 2, 3)
    sol = solve_matrix_equation("AX=B", a, a @ xs)
    assert sol.unique and dist(sol.particular, xs) <= 1e-8

    bm = rand_mat(rng, 2, 2)
    sol = solve_matrix_equation("XA=B", OctonionMatrix.identity(2), bm)
    assert sol.unique and dist(sol.particular, bm) <= 1e-12

    b = random_completely_invertible(2, rng)
    c = rand_mat(rng, 2, 2)
    sol = solve_matrix_equation("AXB=C-right", a, c, b)
    assert sol.unique
    expected = make_inverse_operator("right", b)(make_inverse_operator("left", a)(c))
    assert dist(sol.particular, expected) <= 1e-8

    sol = solve_matrix_equation("AX-XB=C", one_by_one(E[1]), OctonionMatrix.identity(1), one_by_one(E[1]))
    assert not sol.solvable and sol.particular is None


def test_matrix_equation_shape_errors():
    rng = np.random.default_rng(40)
    a = rand_mat(rng, 2, 2)
    with pytest.raises(DimensionError):
        solve_matrix_equation("AX=B", a, rand_mat(rng, 3, 1))
    with pytest.raises(DimensionError):
        solve_matrix_equation("AXB=C-left", a, rand_mat(rng, 2, 2))
    with pytest.raises(ValueError):
        solve_matrix_equation("AX=C", a, a)


def test_cancellation_for_completely_invertible():
    rng = np.random.default_rng(41)
    a = random_completely_invertible(2, rng)
    b1 = rand_mat(rng, 2, 2)
    sol = solve_matrix_equation("AX=B", a, a @ b1)
    assert sol.unique and dist(sol.particular, b1) <= 1e-8


def test_complete_invertibility_examples():
    assert is_completely_invertible(OctonionMatrix.identity(3))
    assert is_completely_invertible(one_by_one(E[1]))
    zero_row = OctonionMatrix.from_entries([[0, 0], [E[1], 1]])
    assert not is_completely_invertible(zero_row)
    assert not is_completely_invertible(OctonionMatrix.zeros(2, 2))
    with pytest.raises(DimensionError):
        is_completely_invertible(OctonionMatrix.zeros(2, 3))
    with pytest.raises(NotCompletelyInvertibleError):
        make_inverse_operator("left", zero_row)


def test_one_by_one_inverses():
    rng = np.random.default_rng(42)
    for _ in range(20):
        a = Octonion(rng.uniform(-1, 1, 8))
        expected = one_by_one(a.conj() / o_norm(a) ** 2)
        assert dist(left_inverse(one_by_one(a)), expected) <= 1e-12
        assert dist(right_inverse(one_by_one(a)), expected) <= 1e-12
    got = left_inverse(one_by_one(E[0] + E[1]))
    assert dist(got, one_by_one(0.5 * (E[0] - E[1]))) <= 1e-12


def test_inverse_examples():
    i3 = OctonionMatrix.identity(3)
    assert dist(left_inverse(i3), i3) <= 1e-12
    assert dist(right_inverse(i3), i3) <= 1e-12
    a = OctonionMatrix.from_entries([[1, E[1]], [0, 1]])
    i2 = OctonionMatrix.identity(2)
    assert dist(left_inverse(a) @ a, i2) <= 1e-8
    assert dist(a @ right_inverse(a), i2) <= 1e-8


def test_inverse_operator_laws():
    rng = np.random.default_rng(43)
    i2 = OctonionMatrix.identity(2)
    for _ in range(20):
        a = random_completely_invertible(2, rng)
        b, c = rand_mat(rng, 2, 3), rand_mat(rng, 3, 2)
        left = make_inverse_operator(Side.LEFT, a)
        right = make_inverse_operator(Side.RIGHT, a)
        assert dist(a @ left(b), b) <= 1e-8
        assert dist(left(a), i2) <= 1e-8
        assert dist(left(a @ b), b) <= 1e-8
        assert dist(right(c) @ a, c) <= 1e-8
        assert dist(right(a), i2) <= 1e-8
        assert dist(right(c @ a), c) <= 1e-8


def test_inverse_operator_dimension_checks():
    rng = np.random.default_rng(44)
    a = random_completely_invertible(2, rng)
    with pytest.raises(DimensionError):
        make_inverse_operator("left", a)(rand_mat(rng, 3, 2))
    with pytest.raises(DimensionError):
        make_inverse_operator("right", a)(rand_mat(rng, 2, 3))


def test_refinement_reduces_residual():
    rng = np.random.default_rng(45)
    worst_raw = worst_refined = 0.0
    for _ in range(20):
        a = random_completely_invertible(2, rng)
        b = rand_mat(rng, 2, 2)
        op = make_inverse_operator("left", a)
        worst_raw = max(worst_raw, dist(a @ apply_inverse_operator(op, b, refine=0), b))
        worst_refined = max(worst_refined, dist(a @ apply_inverse_operator(op, b), b))
    assert worst_refined <= worst_raw
    assert worst_refined <= 1e-12


def test_explicit_nested_power_sums():
    # the left-nested sum solves AY = I, the right-nested sum solves XA = I
    rng = np.random.default_rng(46)
    i2 = OctonionMatrix.identity(2)
    for _ in range(5):
        a = unit_scaled(2, rng)
        if not is_completely_invertible(a):
            continue
        coeffs = char_poly(left_adjoint(a)).coef
        y = explicit_inverse_sum(a, coeffs, "left")
        x = explicit_inverse_sum(a, coeffs, "right")
        assert dist(a @ y, i2) <= 1e-6
        assert dist(x @ a, i2) <= 1e-6
        assert dist(y, right_inverse(a)) <= 1e-6
        assert dist(x, left_inverse(a)) <= 1e-6


def test_cayley_hamilton_examples():
    assert max(cayley_hamilton_residuals(one_by_one(E[1]))) <= 1e-10
    assert np.allclose(char_poly(left_adjoint(one_by_one(E[1]))).coef, [1, 0, 4, 0, 6, 0, 4, 0, 1])
    assert cayley_hamilton_residuals(OctonionMatrix.identity(1)) == (0.0, 0.0)
    rng = np.random.default_rng(47)
    for m in (1, 2, 3):
        for _ in range(3):
            a = unit_scaled(m, rng)
            assert max(cayley_hamilton_residuals(a)) <= 1e-6 * coefficient_scale(a)
    with pytest.raises(UnsupportedSizeError):
        cayley_hamilton_residuals(OctonionMatrix.identity(4))


def test_json_round_trip():
    rng = np.random.default_rng(48)
    a = rand_mat(rng, 2, 3)
    text = a.to_json()
    assert OctonionMatrix.from_json(text) == a
    doc = json.loads(text)
    assert doc["rows"] == 2 and doc["cols"] == 3
    assert len(doc["entries"]) == 2 and len(doc["entries"][0]) == 3 and len(doc["entries"][0][0]) == 8
    small = OctonionMatrix.from_json('{"rows": 1, "cols": 1, "entries": [[[1, 0, 0, 0, 0, 0, 0, 2e-7]]]}')
    assert small[0, 0].coeffs[7] == 2e-7


def test_json_errors():
    with pytest.raises(ValueError):
        OctonionMatrix.from_json('{"rows": 1, "cols": 1}')
    with pytest.raises(ValueError):
        OctonionMatrix.from_json('{"rows": 2, "cols": 1, "entries": [[[0, 0, 0, 0, 0, 0, 0, 0]]]}')
    with pytest.raises(ValueError):
        OctonionMatrix.from_json("not json")


def test_matrix_basics():
    a = OctonionMatrix.from_entries([[1, E[1]], [E[2], 3]])
    assert a[0, 1] == E[1]
    assert a.T[1, 0] == E[1]
    assert a.H[1, 0] == -E[1]
    assert OctonionMatrix.real_diag([2, 5])[1, 1] == Octonion.real(5)
    with pytest.raises(DimensionError):
        OctonionMatrix(np.zeros((2, 2, 7)))
    with pytest.raises(DimensionError):
        _ = a + OctonionMatrix.zeros(1, 2)
