"""Dense real linear algebra used by every representation and solver.

Matrices are plain ``numpy`` float64 arrays. The kernels that carry the
numerical contracts (elimination determinant, Faddeev-LeVerrier
characteristic polynomial, cyclic Jacobi eigensolver, Gram-based
pseudoinverse) are written out here rather than delegated to LAPACK so
that their tolerances are under our control.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Generic, TypeVar

import numpy as np
from numpy.polynomial import Polynomial

from .errors import DimensionError, NotSymmetricError

T = TypeVar("T")

# absolute tolerance, scaled by operand norms at each use site
ABS_TOL = 1e-9
# singular values <= RANK_TOL_FACTOR * max(rows, cols) * sigma_max count as zero
RANK_TOL_FACTOR = 1e-10
# Faddeev-LeVerrier runs unbalanced up to this order
FL_UNBALANCED_MAX = 24
FL_MAX_ORDER = 64


@dataclass(frozen=True)
class SolutionSet(Generic[T]):
    """Outcome of a linear solve: a particular solution plus homogeneous directions.

    ``particular`` is ``None`` exactly when ``solvable`` is false. ``residual``
    is the norm of ``lhs(particular) - rhs`` (or of the consistency defect when
    unsolvable).
    """

    solvable: bool
    particular: T | None
    null_basis: tuple[T, ...] = ()
    residual: float = 0.0
    diagnostics: tuple[str, ...] = field(default=())

    @property
    def nullity(self) -> int:
        return len(self.null_basis)

    @property
    def unique(self) -> bool:
        return self.solvable and not self.null_basis


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or 0 in m.shape:
        raise DimensionError(f"expected a non-empty 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def _require_square(a: np.ndarray) -> None:
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"square matrix required, got {a.shape}")


def mat_mul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    out = a @ b
    if not np.all(np.isfinite(out)):
        raise FloatingPointError("matrix product overflowed")
    return out


def inf_norm(a) -> float:
    a = np.atleast_2d(np.asarray(a, dtype=float))
    return float(np.abs(a).sum(axis=1).max())


def determinant(a) -> float:
    """Determinant by Gaussian elimination with partial pivoting."""
    u = as_matrix(a).copy()
    _require_square(u)
    n = u.shape[0]
    det = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(u[k:, k])))
        if u[p, k] == 0.0:
            return 0.0
        if p != k:
            u[[k, p]] = u[[p, k]]
            det = -det
        det *= u[k, k]
        if k + 1 < n:
            factors = u[k + 1:, k] / u[k, k]
            u[k + 1:, k:] -= np.outer(factors, u[k, k:])
    return float(det)


def balance(a) -> np.ndarray:
    """Diagonal similarity scaling by powers of two (Parlett-Reinsch).

    Returns ``D^-1 A D``; the spectrum and characteristic polynomial are
    unchanged in exact arithmetic and no rounding is introduced by the scaling.
    """
    b = as_matrix(a).copy()
    _require_square(b)
    n = b.shape[0]
    converged = False
    while not converged:
        converged = True
        for i in range(n):
            c = np.abs(b[:, i]).sum() - abs(b[i, i])
            r = np.abs(b[i, :]).sum() - abs(b[i, i])
            if c == 0.0 or r == 0.0:
                continue
            f = 1.0
            s = c + r
            while c < r / 2.0:
                c *= 2.0
                r /= 2.0
                f *= 2.0
            while c >= r * 2.0:
                c /= 2.0
                r *= 2.0
                f /= 2.0
            if (c + r) < 0.95 * s:
                converged = False
                b[:, i] *= f
                b[i, :] /= f
    return b


def char_poly(a) -> Polynomial:
    """Monic characteristic polynomial ``det(lambda*I - A)``, ascending coefficients.

    Faddeev-LeVerrier recursion; matrices above order 24 are balanced first.
    """
    m = as_matrix(a)
    _require_square(m)
    t = m.shape[0]
    if t > FL_MAX_ORDER:
        raise DimensionError(f"char_poly supports order <= {FL_MAX_ORDER}, got {t}")
    if t > FL_UNBALANCED_MAX:
        m = balance(m)
    coeffs = np.zeros(t + 1)
    coeffs[t] = 1.0
    eye = np.eye(t)
    mk = np.zeros_like(m)
    for k in range(1, t + 1):
        mk = m @ mk + coeffs[t - k + 1] * eye
        coeffs[t - k] = -np.trace(m @ mk) / k
    return Polynomial(coeffs)


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Disjoint (p, q) pair sets covering every pair once per sweep."""
    players = list(range(n)) + ([-1] if n % 2 else [])
    size = len(players)
    rounds = []
    for _ in range(size - 1):
        ps, qs = [], []
        for i in range(size // 2):
            p, q = players[i], players[size - 1 - i]
            if p < 0 or q < 0:
                continue
            ps.append(min(p, q))
            qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _offdiag_norm(a: np.ndarray) -> float:
    # summed directly; ||A||^2 - ||diag A||^2 cancels catastrophically
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def sym_eigen(a, *, max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Each sweep visits every off-diagonal pair once, in round-robin order so
    that the rotations of one round touch disjoint rows and can be applied
    together. Iterates until the off-diagonal Frobenius norm drops below
    ``1e-12 * ||A||_F``.

    Returns ``(w, V)`` with ascending eigenvalues ``w`` and orthonormal
    eigenvector columns ``V`` such that ``A V = V diag(w)``.
    """
    a = as_matrix(a)
    _require_square(a)
    scale = inf_norm(a)
    if np.abs(a - a.T).max() > 1e-12 * max(scale, np.finfo(float).tiny):
        raise NotSymmetricError("sym_eigen requires a symmetric matrix")
    n = a.shape[0]
    a = 0.5 * (a + a.T)
    v = np.eye(n)
    target = 1e-12 * np.linalg.norm(a)
    rounds = _round_robin(n)
    for _ in range(max_sweeps):
        if _offdiag_norm(a) <= target:
            break
        for p, q in rounds:
            if p.size == 0:
                continue
            apq = a[p, q]
            live = apq != 0.0
            if not np.any(live):
                continue
            with np.errstate(over="ignore", divide="ignore"):
                theta = np.where(live, (a[q, q] - a[p, p]) / (2.0 * np.where(live, apq, 1.0)), 0.0)
                # theta = inf for negligible apq gives t = 0, i.e. no rotation
                t = np.where(live, np.sign(theta) / (np.abs(theta) + np.hypot(1.0, theta)), 0.0)
            t = np.where(live & (theta == 0.0), 1.0, t)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            # A <- J^T A J, columns then rows
            ap, aq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * ap - s * aq
            a[:, q] = s * ap + c * aq
            ap, aq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * ap - s[:, None] * aq
            a[q, :] = s[:, None] * ap + c[:, None] * aq
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = c * vp - s * vq
            v[:, q] = s * vp + c * vq
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def _gram_svd(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin singular triplets of a tall-or-square ``a`` from the eigenvectors of ``a^T a``.

    The right vectors come from ``sym_eigen(a^T a)``; singular values are the
    column norms of ``a V`` (not square roots of the Gram eigenvalues, which
    would lose half the digits). A few one-sided Jacobi sweeps then restore
    orthogonality of ``a V`` lost to the squared conditioning of the Gram
    matrix.
    """
    _, v = sym_eigen(a.T @ a)
    b = a @ v
    n = b.shape[1]
    rounds = _round_robin(n)
    for _ in range(30):
        rotated = False
        for p, q in rounds:
            if p.size == 0:
                continue
            alpha = np.einsum("ij,ij->j", b[:, p], b[:, p])
            beta = np.einsum("ij,ij->j", b[:, q], b[:, q])
            gamma = np.einsum("ij,ij->j", b[:, p], b[:, q])
            live = np.abs(gamma) > 1e-15 * np.sqrt(alpha * beta)
            if not np.any(live):
                continue
            rotated = True
            with np.errstate(over="ignore", divide="ignore"):
                zeta = np.where(live, (beta - alpha) / (2.0 * np.where(live, gamma, 1.0)), 0.0)
                t = np.where(live, np.sign(zeta) / (np.abs(zeta) + np.hypot(1.0, zeta)), 0.0)
            t = np.where(live & (zeta == 0.0), 1.0, t)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            bp, bq = b[:, p].copy(), b[:, q].copy()
            b[:, p] = c * bp - s * bq
            b[:, q] = s * bp + c * bq
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = c * vp - s * vq
            v[:, q] = s * vp + c * vq
        if not rotated:
            break
    sigma = np.linalg.norm(b, axis=0)
    order = np.argsort(-sigma, kind="stable")
    return b[:, order], sigma[order], v[:, order]


def singular_values(a) -> np.ndarray:
    """Singular values in descending order."""
    a = as_matrix(a)
    if a.shape[0] < a.shape[1]:
        a = a.T
    return _gram_svd(a)[1]


def rank_tol(a) -> float:
    a = as_matrix(a)
    s = singular_values(a)
    return RANK_TOL_FACTOR * max(a.shape) * float(s[0])


def rank(a) -> int:
    a = as_matrix(a)
    s = singular_values(a)
    tol = RANK_TOL_FACTOR * max(a.shape) * float(s[0])
    return int(np.count_nonzero(s > tol)) if s[0] > 0.0 else 0


def _pinv_rank(a: np.ndarray) -> tuple[np.ndarray, int]:
    wide = a.shape[0] < a.shape[1]
    m = a.T if wide else a
    b, sigma, v = _gram_svd(m)
    tol = RANK_TOL_FACTOR * max(m.shape) * float(sigma[0])
    keep = sigma > tol
    if sigma[0] == 0.0 or not np.any(keep):
        return np.zeros((a.shape[1], a.shape[0])), 0
    u = b[:, keep] / sigma[keep]
    pinv = (v[:, keep] / sigma[keep]) @ u.T
    return (pinv.T if wide else pinv), int(np.count_nonzero(keep))


def pseudo_inverse(a) -> np.ndarray:
    """Moore-Penrose inverse from the Gram eigendecomposition of ``a^T a`` (or ``a a^T``)."""
    return _pinv_rank(as_matrix(a))[0]


def null_space_basis(a, pinv: np.ndarray | None = None, rank_a: int | None = None) -> np.ndarray:
    """Orthonormal null-space basis as columns, deterministic.

    Columns of the projector ``I - a^+ a`` are Gram-Schmidt orthonormalised
    in ascending index order; a column is kept when its remaining norm is
    significant. The basis size equals ``cols - rank(a)``.
    """
    a = as_matrix(a)
    n = a.shape[1]
    if pinv is None or rank_a is None:
        pinv, rank_a = _pinv_rank(a)
    nullity = n - rank_a
    if nullity == 0:
        return np.zeros((n, 0))
    proj = np.eye(n) - pinv @ a
    proj = 0.5 * (proj + proj.T)
    basis: list[np.ndarray] = []
    for j in range(n):
        col = proj[:, j].copy()
        for _ in range(2):
            for q in basis:
                col -= (q @ col) * q
        norm = np.linalg.norm(col)
        if norm > 1e-6:
            basis.append(col / norm)
            if len(basis) == nullity:
                break
    return np.column_stack(basis) if basis else np.zeros((n, 0))


def solve_consistent(a, b, *, tol: float = ABS_TOL, operand_scale: float = 0.0) -> SolutionSet[np.ndarray]:
    """Solve ``a x = b`` exactly when consistent, never by least squares.

    Consistency means ``||a a^+ b - b|| <= tol * (||b|| + ||a|| ||a^+ b|| + operand_scale)``.
    ``operand_scale`` is an absolute floor from the caller's operands, so a
    right-hand side made of rounding noise is accepted when ``a`` itself is
    zero up to rounding. On success the particular solution is ``a^+ b`` and ``null_basis`` holds
    an orthonormal basis of ``ker a``.
    """
    a = as_matrix(a)
    b = np.asarray(b, dtype=float).reshape(-1)
    if a.shape[0] != b.size:
        raise DimensionError(f"matrix has {a.shape[0]} rows but right-hand side has {b.size}")
    pinv, rank_a = _pinv_rank(a)
    x = pinv @ b
    defect = float(np.linalg.norm(a @ x - b))
    scale = float(np.linalg.norm(b)) + inf_norm(a) * float(np.linalg.norm(x)) + operand_scale
    if defect > tol * scale:
        return SolutionSet(False, None, (), defect)
    basis = null_space_basis(a, pinv, rank_a)
    return SolutionSet(True, x, tuple(basis.T.copy()), defect)
