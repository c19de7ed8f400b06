"""Linear equations in one octonion unknown.

Every equation is rewritten as a real 8x8 system through ``omega``/``nu``
and solved with :func:`octorep.realmat.solve_consistent`; that rank and
consistency check is always the authoritative answer. Where a closed form
exists it is evaluated alongside, and any disagreement with the real
system is reported in ``SolutionSet.diagnostics`` rather than hidden.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError
from .octonion import ZERO, Octonion, im_norm
from .orep import delta, mu
from .realmat import ABS_TOL, SolutionSet, solve_consistent

# forms of the associator equation, keyed by their left-hand side
ASSOC_FORMS = ("a(xb)-(ax)b", "(ab)x-a(bx)", "x(ab)-(xa)b")


@dataclass(frozen=True)
class SimilarityCertificate:
    similar: bool
    re_a: float
    re_b: float
    im_norm_a: float
    im_norm_b: float


def _scale(*xs: Octonion) -> float:
    return max(1.0, *(x.norm() for x in xs))


def similarity_certificate(a: Octonion, b: Octonion, tol: float = ABS_TOL) -> SimilarityCertificate:
    """Two octonions are similar iff real parts and imaginary norms agree."""
    t = tol * _scale(a, b)
    na, nb = im_norm(a), im_norm(b)
    similar = abs(a.re - b.re) <= t and abs(na - nb) <= t
    return SimilarityCertificate(similar, a.re, b.re, na, nb)


def check_rep_similarity(a: Octonion, b: Octonion, tol: float = ABS_TOL) -> bool:
    return similarity_certificate(a, b, tol).similar


def _orthonormal(vectors: list[np.ndarray], tol: float = 1e-9) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    for v in vectors:
        w = np.asarray(v, dtype=float).copy()
        for _ in range(2):
            for q in out:
                w -= (q @ w) * q
        n = np.linalg.norm(w)
        if n > tol:
            out.append(w / n)
    return out


def _to_octonions(sol: SolutionSet, lhs, rhs: Octonion, notes=()) -> SolutionSet[Octonion]:
    if not sol.solvable:
        return SolutionSet(False, None, (), sol.residual, tuple(notes))
    x = Octonion(sol.particular)
    basis = tuple(Octonion(v) for v in sol.null_basis)
    residual = (lhs(x) - rhs).norm()
    return SolutionSet(True, x, basis, residual, tuple(notes))


def same_span(u: list[np.ndarray], v: list[np.ndarray], tol: float = 1e-8) -> bool:
    """True when two lists of 8-vectors span the same subspace."""
    if len(u) != len(v):
        return False
    if not u:
        return True
    qu = np.column_stack(_orthonormal(u))
    qv = np.column_stack(_orthonormal(v))
    if qu.shape != qv.shape:
        return False
    return bool(np.linalg.norm(qv - qu @ (qu.T @ qv)) <= tol * max(1, qu.shape[1]))


def sim_closed_form_basis(a: Octonion, b: Octonion, tol: float = ABS_TOL) -> list[np.ndarray]:
    """Orthonormal basis of ``{x : ax = xb}`` from the explicit solution families.

    Not similar: only ``x = 0``. Similar with ``b != conj(a)``: span of
    ``Im a + Im b`` and ``|Im a||Im b| - (Im a)(Im b)``. With ``b == conj(a)``:
    pure imaginary ``x`` orthogonal to ``Im a``.
    """
    if not similarity_certificate(a, b, tol).similar:
        return []
    t = tol * _scale(a, b)
    ia, ib = a.im, b.im
    if im_norm(a) <= t and im_norm(b) <= t:
        # a and b are the same real number, everything commutes
        return list(np.eye(8))
    if (ia + ib).norm() > t:
        v1 = (ia + ib).coeffs
        v2 = (Octonion.real(im_norm(a) * im_norm(b)) - ia * ib).coeffs
        return _orthonormal([v1, v2])
    # b == conj(a): x = x1 e1 + ... + x7 e7 with sum a_i x_i = 0
    direction = ia.coeffs / np.linalg.norm(ia.coeffs)
    candidates = [np.eye(8)[i] - direction[i] * direction for i in range(1, 8)]
    return _orthonormal(candidates)


def solve_sim(a: Octonion, b: Octonion) -> SolutionSet[Octonion]:
    """Solve ``ax = xb``; the solution set is a linear subspace."""
    real = solve_consistent(delta(a, b), np.zeros(8))
    notes = []
    closed = sim_closed_form_basis(a, b)
    if not same_span(list(real.null_basis), closed):
        notes.append(
            f"closed-form solution space (dim {len(closed)}) differs from real system (dim {real.nullity})"
        )
    return _to_octonions(real, lambda x: a * x - x * b, ZERO, notes)


def _require_nonreal(a: Octonion) -> None:
    if im_norm(a) <= ABS_TOL * _scale(a):
        raise DegenerateInputError("coefficient must not be real for this equation")


def commutator_condition(a: Octonion, b: Octonion, tol: float = ABS_TOL) -> bool:
    """``ab == b conj(a)``, the closed solvability condition of ``ax - xa = b``."""
    return (a * b - b * a.conj()).norm() <= tol * _scale(a, b) ** 2


def commutator_particular(a: Octonion, b: Octonion) -> Octonion:
    """``(ba - ab) / (4 |Im a|^2)``."""
    return (b * a - a * b) / (4.0 * im_norm(a) ** 2)


def commutator_homogeneous(a: Octonion, p: Octonion) -> Octonion:
    """``p - (Im a) p (Im a) / |Im a|^2``; every such value solves ``ax = xa``."""
    ia = a.im
    return p - (ia * p) * ia / im_norm(a) ** 2


def solve_commutator(a: Octonion, b: Octonion) -> SolutionSet[Octonion]:
    """Solve ``ax - xa = b`` for non-real ``a``."""
    _require_nonreal(a)
    real = solve_consistent(delta(a, a), b.coeffs)
    notes = []
    closed = commutator_condition(a, b)
    if closed != real.solvable:
        notes.append(f"closed condition ab == b conj(a) gives {closed}, real system gives {real.solvable}")
    return _to_octonions(real, lambda x: a * x - x * a, b, notes)


def conj_condition(a: Octonion, b: Octonion, tol: float = ABS_TOL) -> tuple[bool, float]:
    """Whether ``Im b`` is a real multiple ``lam1`` of ``Im a``; returns ``(ok, lam1)``."""
    ia, ib = a.coeffs[1:], b.coeffs[1:]
    lam1 = float(ia @ ib / (ia @ ia))
    ok = np.linalg.norm(ib - lam1 * ia) <= tol * _scale(a, b) ** 2
    return bool(ok), lam1


def conj_particular(a: Octonion, b: Octonion) -> Octonion:
    """Minimum-norm solution of ``ax - x conj(a) = b`` when solvable.

    Real part ``lam1 / 2``; imaginary part along ``Im a`` fixed by
    ``sum a_i x_i = -Re(b) / 2``.
    """
    _, lam1 = conj_condition(a, b)
    ia = a.coeffs.copy()
    ia[0] = 0.0
    c = -0.5 * b.re * ia / (ia @ ia)
    c[0] = 0.5 * lam1
    return Octonion(c)


def solve_conj(a: Octonion, b: Octonion) -> SolutionSet[Octonion]:
    """Solve ``ax - x conj(a) = b`` for non-real ``a``."""
    _require_nonreal(a)
    abar = a.conj()
    real = solve_consistent(delta(a, abar), b.coeffs)
    notes = []
    closed, _ = conj_condition(a, b)
    if closed != real.solvable:
        notes.append(f"closed condition Im b = lam1 Im a gives {closed}, real system gives {real.solvable}")
    return _to_octonions(real, lambda x: a * x - x * abar, b, notes)


def solve_sylvester(a: Octonion, b: Octonion, c: Octonion) -> SolutionSet[Octonion]:
    """Solve ``ax - xb = c``; unique unless ``a`` and ``b`` are similar."""
    real = solve_consistent(delta(a, b), c.coeffs, operand_scale=a.norm() + b.norm())
    return _to_octonions(real, lambda x: a * x - x * b, c)


def assoc_lhs(form: str, a: Octonion, b: Octonion):
    if form == "a(xb)-(ax)b":
        return lambda x: a * (x * b) - (a * x) * b
    if form == "(ab)x-a(bx)":
        return lambda x: (a * b) * x - a * (b * x)
    if form == "x(ab)-(xa)b":
        return lambda x: x * (a * b) - (x * a) * b
    raise ValueError(f"unknown associator form {form!r}; expected one of {ASSOC_FORMS}")


def solve_assoc(a: Octonion, b: Octonion, c: Octonion, form: str = "a(xb)-(ax)b") -> SolutionSet[Octonion]:
    """Solve an associator equation in ``x``.

    ``a(xb) - (ax)b`` and ``(ab)x - a(bx)`` are the same map (both equal the
    associator ``(a, b, x)``) with matrix ``mu(a, b)``; ``x(ab) - (xa)b`` is
    its negative.
    """
    lhs = assoc_lhs(form, a, b)
    sign = -1.0 if form == "x(ab)-(xa)b" else 1.0
    real = solve_consistent(sign * mu(a, b), c.coeffs, operand_scale=2.0 * a.norm() * b.norm())
    return _to_octonions(real, lhs, c)
