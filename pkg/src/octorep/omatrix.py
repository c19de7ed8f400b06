"""Matrices over the octonions and their real adjoints.

Octonion matrix products are not associative, so ``A @ (X @ B)`` and
``(A @ X) @ B`` are different things; every formula here spells out its
nesting. Linear maps in the unknown matrix ``X`` become real linear maps
on ``mat_vec(X)``:

* ``vec(A X)  = (I (x^) omega(A)) vec X``
* ``vec(X B)  = (nu(B) (x^) I) vec X``
* ``vec((A X) B) = (nu(B) (x^) omega(A)) vec X``
* ``vec(A (X B)) = (omega(A) (x~) nu(B)) vec X``

where ``(x^)``/``(x~)`` are the left/right block Kronecker products on
8x8 blocks and ``nu(B)`` is the right adjoint with its transposed block
layout.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from numpy.polynomial import Polynomial

from .errors import DimensionError, NotCompletelyInvertibleError, UnsupportedSizeError
from .octonion import Octonion, conj_coeffs, format_real, mul_coeffs
from .orep import K8, nu_coeffs, omega_coeffs
from .realmat import SolutionSet, char_poly, inf_norm, rank, solve_consistent


class OctonionMatrix:
    """Immutable ``rows x cols`` matrix of octonions backed by a ``(rows, cols, 8)`` array."""

    __slots__ = ("_d",)

    def __init__(self, data):
        d = np.array(data, dtype=float)
        if d.ndim != 3 or d.shape[2] != 8 or d.shape[0] == 0 or d.shape[1] == 0:
            raise DimensionError(f"octonion matrix data must have shape (m, n, 8), got {d.shape}")
        if not np.all(np.isfinite(d)):
            raise ValueError("octonion matrix has non-finite coefficients")
        d.flags.writeable = False
        self._d = d

    @classmethod
    def from_entries(cls, rows: Iterable[Iterable[Octonion | float]]) -> OctonionMatrix:
        data = []
        for row in rows:
            data.append([
                x.coeffs if isinstance(x, Octonion) else Octonion.real(float(x)).coeffs
                for x in row
            ])
        return cls(data)

    @classmethod
    def identity(cls, m: int) -> OctonionMatrix:
        d = np.zeros((m, m, 8))
        d[np.arange(m), np.arange(m), 0] = 1.0
        return cls(d)

    @classmethod
    def zeros(cls, m: int, n: int) -> OctonionMatrix:
        return cls(np.zeros((m, n, 8)))

    @classmethod
    def real_diag(cls, values) -> OctonionMatrix:
        values = list(values)
        d = np.zeros((len(values), len(values), 8))
        d[np.arange(len(values)), np.arange(len(values)), 0] = values
        return cls(d)

    @property
    def data(self) -> np.ndarray:
        return self._d

    @property
    def shape(self) -> tuple[int, int]:
        return self._d.shape[0], self._d.shape[1]

    @property
    def rows(self) -> int:
        return self._d.shape[0]

    @property
    def cols(self) -> int:
        return self._d.shape[1]

    def __getitem__(self, idx: tuple[int, int]) -> Octonion:
        s, t = idx
        return Octonion(self._d[s, t])

    def __add__(self, other: OctonionMatrix) -> OctonionMatrix:
        _same_shape(self, other)
        return OctonionMatrix(self._d + other._d)

    def __sub__(self, other: OctonionMatrix) -> OctonionMatrix:
        _same_shape(self, other)
        return OctonionMatrix(self._d - other._d)

    def __neg__(self) -> OctonionMatrix:
        return OctonionMatrix(-self._d)

    def __mul__(self, scalar: float) -> OctonionMatrix:
        return OctonionMatrix(self._d * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> OctonionMatrix:
        return OctonionMatrix(self._d / float(scalar))

    def __matmul__(self, other: OctonionMatrix) -> OctonionMatrix:
        return mat_apply(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, OctonionMatrix) and bool(np.array_equal(self._d, other._d))

    def __hash__(self) -> int:
        return hash((self._d.shape, self._d.tobytes()))

    def __repr__(self) -> str:
        return f"OctonionMatrix(shape={self.shape})"

    @property
    def T(self) -> OctonionMatrix:
        return OctonionMatrix(np.swapaxes(self._d, 0, 1))

    @property
    def H(self) -> OctonionMatrix:
        """Conjugate transpose."""
        return OctonionMatrix(conj_coeffs(np.swapaxes(self._d, 0, 1)))

    def max_abs(self) -> float:
        """Largest entry norm."""
        return float(np.linalg.norm(self._d, axis=2).max())

    def is_close(self, other: OctonionMatrix, tol: float) -> bool:
        _same_shape(self, other)
        return (self - other).max_abs() <= tol

    def to_json(self) -> str:
        entries = [
            [[_json_number(x) for x in self._d[s, t]] for t in range(self.cols)]
            for s in range(self.rows)
        ]
        body = json.dumps({"rows": self.rows, "cols": self.cols, "entries": entries})
        # numbers were pre-rendered as strings to control their digits
        return body.replace('"@', "").replace('@"', "")

    @classmethod
    def from_json(cls, text: str) -> OctonionMatrix:
        doc = json.loads(text)
        try:
            m, n, entries = int(doc["rows"]), int(doc["cols"]), doc["entries"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"octonion matrix document is missing a field: {exc}") from None
        d = np.array(entries, dtype=float)
        if d.shape != (m, n, 8):
            raise ValueError(f"entries have shape {d.shape}, header says ({m}, {n}, 8)")
        return cls(d)


def _json_number(x: float) -> str:
    return "@" + format_real(x) + "@"


def _same_shape(a: OctonionMatrix, b: OctonionMatrix) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")


def mat_apply(a: OctonionMatrix, x: OctonionMatrix) -> OctonionMatrix:
    """``(AX)_st = sum_k a_sk x_kt``, summed left to right."""
    if a.cols != x.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {x.shape}")
    prods = mul_coeffs(a.data[:, :, None, :], x.data[None, :, :, :])
    acc = prods[:, 0].copy()
    for k in range(1, a.cols):
        acc += prods[:, k]
    return OctonionMatrix(acc)


def scalar_right(x: OctonionMatrix, lam: Octonion) -> OctonionMatrix:
    """Entrywise ``x_st * lam``."""
    return OctonionMatrix(mul_coeffs(x.data, lam.coeffs))


def _blocks_to_matrix(blocks: np.ndarray) -> np.ndarray:
    """``(p, q, 8, 8)`` block array to an ``(8p, 8q)`` matrix."""
    p, q = blocks.shape[:2]
    return blocks.transpose(0, 2, 1, 3).reshape(8 * p, 8 * q)


def _matrix_to_blocks(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] % 8 or m.shape[1] % 8:
        raise DimensionError(f"block operand must have dimensions divisible by 8, got {m.shape}")
    p, q = m.shape[0] // 8, m.shape[1] // 8
    return m.reshape(p, 8, q, 8).transpose(0, 2, 1, 3)


def left_adjoint(a: OctonionMatrix) -> np.ndarray:
    """``omega(A)``: block ``(s, t)`` is ``omega(a_st)``; shape ``(8m, 8n)``."""
    return _blocks_to_matrix(omega_coeffs(a.data))


def right_adjoint(a: OctonionMatrix) -> np.ndarray:
    """``nu(A)``: block ``(s, t)`` is ``nu(a_ts)``; shape ``(8n, 8m)``."""
    return _blocks_to_matrix(nu_coeffs(np.swapaxes(a.data, 0, 1)))


def k_matrix(t: int) -> np.ndarray:
    """``diag(K8, ..., K8)`` with ``t`` blocks."""
    return np.kron(np.eye(t), K8)


def mat_vec(a: OctonionMatrix) -> np.ndarray:
    """Column-stacked coefficient vector: ``a_11, ..., a_m1, a_12, ...``, 8 reals each."""
    return np.swapaxes(a.data, 0, 1).reshape(-1).copy()


def mat_unvec(v, rows: int, cols: int) -> OctonionMatrix:
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.size != 8 * rows * cols:
        raise DimensionError(f"vector of size {v.size} cannot form a {rows}x{cols} octonion matrix")
    return OctonionMatrix(np.swapaxes(v.reshape(cols, rows, 8), 0, 1))


def block_kron_left(a, b) -> np.ndarray:
    """Left block Kronecker product: block ``(s, t)`` is ``[A_st B_uv]_uv``."""
    ab, bb = _matrix_to_blocks(a), _matrix_to_blocks(b)
    m, n = ab.shape[:2]
    p, q = bb.shape[:2]
    prod = np.einsum("stij,uvjk->sutvik", ab, bb)
    return prod.reshape(m * p, n * q, 8, 8).transpose(0, 2, 1, 3).reshape(8 * m * p, 8 * n * q)


def block_kron_right(a, b) -> np.ndarray:
    """Right block Kronecker product: block ``(u, v)`` is ``[A_st B_uv]_st``."""
    ab, bb = _matrix_to_blocks(a), _matrix_to_blocks(b)
    m, n = ab.shape[:2]
    p, q = bb.shape[:2]
    prod = np.einsum("stij,uvjk->usvtik", ab, bb)
    return prod.reshape(p * m, q * n, 8, 8).transpose(0, 2, 1, 3).reshape(8 * m * p, 8 * n * q)


def _require_square(a: OctonionMatrix) -> None:
    if a.rows != a.cols:
        raise DimensionError(f"square octonion matrix required, got {a.shape}")


def nested_left(a: OctonionMatrix, x: OctonionMatrix, k: int) -> OctonionMatrix:
    """``A(A(...(AX)...))`` with ``k`` factors of ``A``."""
    _require_square(a)
    if k < 1:
        raise ValueError("nesting depth must be at least 1")
    out = x
    for _ in range(k):
        out = a @ out
    return out


def nested_right(y: OctonionMatrix, a: OctonionMatrix, k: int) -> OctonionMatrix:
    """``((YA)A...)A`` with ``k`` factors of ``A``."""
    _require_square(a)
    if k < 1:
        raise ValueError("nesting depth must be at least 1")
    out = y
    for _ in range(k):
        out = out @ a
    return out


def left_power(a: OctonionMatrix, s: int) -> OctonionMatrix:
    """``A(A(...(AA)...))`` with ``s`` factors; ``s = 0`` gives the identity."""
    eye = OctonionMatrix.identity(a.rows)
    return eye if s == 0 else nested_left(a, eye, s)


def right_power(a: OctonionMatrix, s: int) -> OctonionMatrix:
    """``((AA)...A)A`` with ``s`` factors; ``s = 0`` gives the identity."""
    eye = OctonionMatrix.identity(a.rows)
    return eye if s == 0 else nested_right(eye, a, s)


class MatrixEquation(enum.Enum):
    AX_B = "AX=B"
    XA_B = "XA=B"
    AXB_C_LEFT = "AXB=C-left"  # (AX)B = C
    AXB_C_RIGHT = "AXB=C-right"  # A(XB) = C
    AX_XB_C = "AX-XB=C"
    ASSOC = "assoc"  # (AX)A - A(XA) = C


def _eye_blocks(t: int) -> np.ndarray:
    return np.eye(8 * t)


def equation_operator(form: MatrixEquation, a: OctonionMatrix, b: OctonionMatrix | None,
                      rhs_shape: tuple[int, int]) -> tuple[np.ndarray, tuple[int, int]]:
    """Real coefficient matrix of the map ``X -> lhs(X)`` and the shape of ``X``."""
    form = MatrixEquation(form)
    r, c = rhs_shape
    if form is MatrixEquation.AX_B:
        if a.rows != r:
            raise DimensionError("A and B must have the same number of rows")
        return block_kron_left(_eye_blocks(c), left_adjoint(a)), (a.cols, c)
    if form is MatrixEquation.XA_B:
        if a.cols != c:
            raise DimensionError("A and B must have the same number of columns")
        return block_kron_left(right_adjoint(a), _eye_blocks(r)), (r, a.rows)
    if form is MatrixEquation.ASSOC:
        _require_square(a)
        if (a.rows, a.rows) != (r, c):
            raise DimensionError("(AX)A - A(XA) = C needs square C matching A")
        wa, va = left_adjoint(a), right_adjoint(a)
        return block_kron_left(va, wa) - block_kron_right(wa, va), (r, c)
    if b is None:
        raise DimensionError(f"equation {form.value} needs a second coefficient matrix")
    if form in (MatrixEquation.AXB_C_LEFT, MatrixEquation.AXB_C_RIGHT):
        if a.rows != r or b.cols != c:
            raise DimensionError("shapes of A, B and C are not conformable")
        if form is MatrixEquation.AXB_C_LEFT:
            op = block_kron_left(right_adjoint(b), left_adjoint(a))
        else:
            op = block_kron_right(left_adjoint(a), right_adjoint(b))
        return op, (a.cols, b.rows)
    if form is MatrixEquation.AX_XB_C:
        _require_square(a)
        _require_square(b)
        if (a.rows, b.rows) != (r, c):
            raise DimensionError("AX - XB = C needs C of shape (rows of A, rows of B)")
        op = block_kron_left(_eye_blocks(c), left_adjoint(a)) - block_kron_left(right_adjoint(b), _eye_blocks(r))
        return op, (r, c)
    raise ValueError(f"unknown equation form {form}")


def equation_lhs(form: MatrixEquation, a: OctonionMatrix, b: OctonionMatrix | None, x: OctonionMatrix) -> OctonionMatrix:
    """Evaluate the left-hand side directly in octonion arithmetic."""
    form = MatrixEquation(form)
    if form is MatrixEquation.AX_B:
        return a @ x
    if form is MatrixEquation.XA_B:
        return x @ a
    if form is MatrixEquation.AXB_C_LEFT:
        return (a @ x) @ b
    if form is MatrixEquation.AXB_C_RIGHT:
        return a @ (x @ b)
    if form is MatrixEquation.AX_XB_C:
        return a @ x - x @ b
    return (a @ x) @ a - a @ (x @ a)


def _operand_scale(form: MatrixEquation, a: OctonionMatrix, b: OctonionMatrix | None) -> float:
    """Product of the coefficient adjoints' inf-norms, the absolute tolerance unit."""
    na = inf_norm(left_adjoint(a))
    nb = inf_norm(right_adjoint(b)) if b is not None else 1.0
    if form is MatrixEquation.ASSOC:
        return 2.0 * na * inf_norm(right_adjoint(a))
    if form is MatrixEquation.AX_XB_C:
        return na + nb
    return na * nb


def solve_matrix_equation(form: MatrixEquation | str, a: OctonionMatrix, rhs: OctonionMatrix,
                          b: OctonionMatrix | None = None) -> SolutionSet[OctonionMatrix]:
    """Solve a linear octonion matrix equation through its real adjoint system.

    Inconsistent systems come back with ``solvable=False``; no least-squares
    fallback is attempted. ``residual`` is the largest entry norm of
    ``lhs(X) - rhs`` evaluated in octonion arithmetic.
    """
    form = MatrixEquation(form)
    op, (xr, xc) = equation_operator(form, a, b, rhs.shape)
    real = solve_consistent(op, mat_vec(rhs), operand_scale=_operand_scale(form, a, b))
    if not real.solvable:
        return SolutionSet(False, None, (), real.residual)
    x = mat_unvec(real.particular, xr, xc)
    basis = tuple(mat_unvec(v, xr, xc) for v in real.null_basis)
    residual = (equation_lhs(form, a, b, x) - rhs).max_abs()
    return SolutionSet(True, x, basis, residual)


def is_completely_invertible(a: OctonionMatrix) -> bool:
    """``omega(A)`` has full rank under the rank-revealing cutoff."""
    _require_square(a)
    w = left_adjoint(a)
    if not np.any(w):
        return False
    return rank(w) == w.shape[0]


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class InverseOperator:
    """Polynomial inverse of ``X -> AX`` (``LEFT``) or ``X -> XA`` (``RIGHT``).

    ``poly`` is the characteristic polynomial of ``omega(A)``; it also
    annihilates the right-multiplication matrix ``nu(A)``, which is
    orthogonally similar to ``omega(A)^T``.
    """

    side: Side
    source: OctonionMatrix
    poly: Polynomial

    def __call__(self, b: OctonionMatrix) -> OctonionMatrix:
        return apply_inverse_operator(self, b)


def make_inverse_operator(side: Side | str, a: OctonionMatrix) -> InverseOperator:
    _require_square(a)
    if not is_completely_invertible(a):
        raise NotCompletelyInvertibleError("matrix is not completely invertible")
    poly = char_poly(left_adjoint(a))
    return InverseOperator(Side(side), a, poly)


def _apply_polynomial(op: InverseOperator, b: OctonionMatrix) -> OctonionMatrix:
    a = op.source
    r = op.poly.coef
    t = len(r) - 1
    step = (lambda z: a @ z) if op.side is Side.LEFT else (lambda z: z @ a)
    z = b
    for k in range(t - 1, 0, -1):
        z = step(z) + b * r[k]
    return z * (-1.0 / r[0])


def apply_inverse_operator(op: InverseOperator, b: OctonionMatrix, refine: int = 1) -> OctonionMatrix:
    """Horner evaluation of ``-(1/r0) [M^(t-1) + r_(t-1) M^(t-2) + ... + r1] B``.

    ``M`` is left multiplication by ``A`` for ``LEFT`` (nested ``A(A(...B))``)
    and right multiplication for ``RIGHT`` (nested ``((B A)...)A``). The
    polynomial terms cancel heavily, so ``refine`` rounds of iterative
    refinement follow: the same operator is applied to the residual
    ``B - AX`` (or ``B - XA``) and the correction added.
    """
    a = op.source
    if op.side is Side.LEFT and b.rows != a.rows:
        raise DimensionError(f"left inverse operator of a {a.shape} matrix cannot act on {b.shape}")
    if op.side is Side.RIGHT and b.cols != a.cols:
        raise DimensionError(f"right inverse operator of a {a.shape} matrix cannot act on {b.shape}")
    x = _apply_polynomial(op, b)
    for _ in range(refine):
        resid = b - (a @ x if op.side is Side.LEFT else x @ a)
        x = x + _apply_polynomial(op, resid)
    return x


def left_inverse(a: OctonionMatrix) -> OctonionMatrix:
    """The unique ``X`` with ``XA = I``: the right inverse operator applied to ``I``.

    Expands to ``-(1/r0) [A^|t-1) + r_(t-1) A^|t-2) + ... + r1 I]`` in
    right-nested powers ``((AA)...)A``.
    """
    op = make_inverse_operator(Side.RIGHT, a)
    return apply_inverse_operator(op, OctonionMatrix.identity(a.rows))


def right_inverse(a: OctonionMatrix) -> OctonionMatrix:
    """The unique ``Y`` with ``AY = I``: the left inverse operator applied to ``I``.

    Expands to ``-(1/r0) [A^(t-1| + r_(t-1) A^(t-2| + ... + r1 I]`` in
    left-nested powers ``A(A(...A))``.
    """
    op = make_inverse_operator(Side.LEFT, a)
    return apply_inverse_operator(op, OctonionMatrix.identity(a.rows))


CAYLEY_HAMILTON_MAX = 3


def cayley_hamilton_residuals(a: OctonionMatrix) -> tuple[float, float]:
    """Largest entry norms of ``p(A)`` with left-nested and with right-nested powers.

    ``p`` is the characteristic polynomial of ``omega(A)``; both residuals
    vanish in exact arithmetic.
    """
    _require_square(a)
    if a.rows > CAYLEY_HAMILTON_MAX:
        raise UnsupportedSizeError(f"Cayley-Hamilton check supports m <= {CAYLEY_HAMILTON_MAX}")
    r = char_poly(left_adjoint(a)).coef
    t = len(r) - 1
    eye = OctonionMatrix.identity(a.rows)
    left = eye
    right = eye
    for k in range(t - 1, -1, -1):
        left = a @ left + eye * r[k]
        right = right @ a + eye * r[k]
    return left.max_abs(), right.max_abs()


def coefficient_scale(a: OctonionMatrix) -> float:
    """``sum |r_i|`` over the characteristic polynomial of ``omega(A)``."""
    return float(np.abs(char_poly(left_adjoint(a)).coef).sum())
