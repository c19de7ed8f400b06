"""Seeded identity suites.

Each suite draws random inputs from a per-trial substream of the seed,
evaluates a list of named identities and records, for each identity, the
worst normalised residual and the number of trials that broke its
tolerance. Residuals are divided by a scale of at least 1 built from the
operand norms, so tolerances read as "relative, floored at 1".
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .octonion import Octonion, associator, im_norm, mul_coeffs, o_inv
from .oeigen import hermitian_eigen, is_hermitian, random_hermitian, trial_rng
from .olinsolve import (
    ASSOC_FORMS,
    assoc_lhs,
    commutator_condition,
    commutator_homogeneous,
    commutator_particular,
    conj_condition,
    conj_particular,
    same_span,
    sim_closed_form_basis,
    similarity_certificate,
    solve_assoc,
    solve_commutator,
    solve_conj,
    solve_sim,
    solve_sylvester,
)
from .omatrix import (
    MatrixEquation,
    OctonionMatrix,
    block_kron_left,
    block_kron_right,
    cayley_hamilton_residuals,
    equation_lhs,
    equation_operator,
    k_matrix,
    left_adjoint,
    left_inverse,
    make_inverse_operator,
    mat_vec,
    nested_left,
    nested_right,
    right_adjoint,
    right_inverse,
    is_completely_invertible,
)
from .orep import K8, delta, delta_char_poly, delta_det_closed, mu, nu, omega, rep_inverse, RepKind
from .quaternion import K4, Quaternion, phi, q_conj, q_norm, q_vec, tau, unitary_similarity
from .realmat import char_poly, determinant, rank

EXACT = 0.0
TIGHT = 1e-10


@dataclass
class IdentityStat:
    name: str
    tol: float
    worst: float = 0.0
    failures: int = 0
    checks: int = 0


@dataclass(frozen=True)
class VerifySuiteResult:
    suite: str
    trials: int
    failures: int
    worst_residual: float
    seed: int
    identities: tuple[IdentityStat, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def identity(self, name: str) -> IdentityStat:
        for stat in self.identities:
            if stat.name == name:
                return stat
        raise KeyError(name)


class Recorder:
    """Collects residuals per identity; ``tol_override`` replaces every tolerance."""

    def __init__(self, tol_override: float | None = None):
        self.stats: dict[str, IdentityStat] = {}
        self.failed_trials: set[int] = set()
        self.trial = 0
        self.tol_override = tol_override
        self.notes: list[str] = []

    def check(self, name: str, residual: float, tol: float) -> bool:
        tol = tol if self.tol_override is None else self.tol_override
        stat = self.stats.setdefault(name, IdentityStat(name, tol))
        residual = float(residual)
        stat.checks += 1
        stat.worst = max(stat.worst, residual) if np.isfinite(residual) else np.inf
        ok = bool(residual <= tol)
        if not ok:
            stat.failures += 1
            self.failed_trials.add(self.trial)
        return ok

    def flag(self, name: str, ok: bool) -> bool:
        """Boolean check, recorded with residual 0 (pass) or 1 (fail) and tolerance 0."""
        stat = self.stats.setdefault(name, IdentityStat(name, 0.0))
        stat.checks += 1
        if not ok:
            stat.failures += 1
            stat.worst = 1.0
            self.failed_trials.add(self.trial)
        return ok

    def result(self, suite: str, trials: int, seed: int) -> VerifySuiteResult:
        stats = tuple(self.stats.values())
        worst = max((s.worst for s in stats), default=0.0)
        return VerifySuiteResult(suite, trials, len(self.failed_trials), worst, seed, stats, tuple(self.notes))


def _rand_o(rng: np.random.Generator) -> Octonion:
    return Octonion(rng.uniform(-1.0, 1.0, 8))


def _rand_q(rng: np.random.Generator) -> Quaternion:
    return Quaternion.from_coeffs(rng.uniform(-1.0, 1.0, 4))


def _rand_mat(rng: np.random.Generator, m: int, n: int) -> OctonionMatrix:
    return OctonionMatrix(rng.uniform(-1.0, 1.0, (m, n, 8)))


def _similar_to(a: Octonion, rng: np.random.Generator) -> Octonion:
    """Same real part and imaginary norm as ``a``, random imaginary direction."""
    d = rng.normal(size=7)
    c = np.zeros(8)
    c[0] = a.re
    c[1:] = im_norm(a) * d / np.linalg.norm(d)
    return Octonion(c)


def _dist(x: Octonion, y: Octonion) -> float:
    return float(np.linalg.norm(x.coeffs - y.coeffs))


def _mdist(x, y) -> float:
    return float(np.abs(np.asarray(x) - np.asarray(y)).max())


def _scale(*norms: float) -> float:
    return max(1.0, float(np.prod(norms)))


def _span_residual(v: np.ndarray, basis) -> float:
    """Distance from ``v`` to the span of an orthonormal list of vectors."""
    v = np.asarray(v, dtype=float).copy()
    for q in basis:
        q = np.asarray(q, dtype=float).reshape(-1)
        v -= (q @ v) * q
    return float(np.linalg.norm(v))


# -- octonion laws ---------------------------------------------------------

def _octonion_laws(rec: Recorder, rng: np.random.Generator) -> None:
    a, b, x = _rand_o(rng), _rand_o(rng), _rand_o(rng)
    na, nb, nx = a.norm(), b.norm(), x.norm()
    s2, s3 = _scale(na, nb), _scale(na, nb, nx)
    s4 = _scale(na, na, nb, nx)
    rec.check("norm multiplicative |ab| = |a||b|", abs((a * b).norm() - na * nb) / s2, TIGHT)
    quad = a * a - a * (2.0 * a.re) + Octonion.real(na * na)
    rec.check("quadratic a^2 - 2Re(a)a + |a|^2 = 0", quad.norm() / _scale(na, na), TIGHT)
    rec.check("conj(ab) = conj(b)conj(a)", _dist((a * b).conj(), b.conj() * a.conj()) / s2, TIGHT)
    rec.check("Re(ab) = Re(ba)", abs((a * b).re - (b * a).re) / s2, TIGHT)
    rec.check("Re((ax)b) = Re(a(xb))", abs(((a * x) * b).re - (a * (x * b)).re) / s3, TIGHT)
    rec.check("inverse a a^-1 = 1", _dist(a * o_inv(a), Octonion.real(1.0)), TIGHT)
    rec.check("alternative (a,a,x) = 0", associator(a, a, x).norm() / _scale(na, na, nx), TIGHT)
    rec.check("alternative (x,a,a) = 0", associator(x, a, a).norm() / _scale(na, na, nx), TIGHT)
    rec.check("flexible (ab)a = a(ba)", _dist((a * b) * a, a * (b * a)) / _scale(na, na, nb), TIGHT)
    rec.check("Moufang (ab)(xa) = a(bx)a", _dist((a * b) * (x * a), (a * (b * x)) * a) / s4, TIGHT)
    rec.check("Moufang (bx)(ab) = b(xa)b",
              _dist((b * x) * (a * b), (b * (x * a)) * b) / _scale(nb, nb, na, nx), TIGHT)
    aba = (a * b) * a
    rec.check("(aba)x = a(b(ax))", _dist(aba * x, a * (b * (a * x))) / s4, TIGHT)
    rec.check("x(aba) = ((xa)b)a", _dist(x * aba, ((x * a) * b) * a) / s4, TIGHT)
    abx = associator(a, b, x)
    rec.check("(a,b,x) = -(a,x,b)", _dist(abx, -associator(a, x, b)) / s3, TIGHT)
    rec.check("(a,b,x) = (x,a,b)", _dist(abx, associator(x, a, b)) / s3, TIGHT)


# -- quaternion representations -------------------------------------------

def _quaternion_reps(rec: Recorder, rng: np.random.Generator) -> None:
    a, b, x = _rand_q(rng), _rand_q(rng), _rand_q(rng)
    na, nb, nx = q_norm(a), q_norm(b), q_norm(x)
    rec.check("phi(a+b) = phi(a)+phi(b)", _mdist(phi(a + b), phi(a) + phi(b)), EXACT)
    rec.check("phi(ab) = phi(a)phi(b)", _mdist(phi(a * b), phi(a) @ phi(b)) / _scale(na, nb), TIGHT)
    rec.check("phi(conj a) = phi(a)^T", _mdist(phi(q_conj(a)), phi(a).T), EXACT)
    rec.check("tau(ab) = tau(b)tau(a)", _mdist(tau(a * b), tau(b) @ tau(a)) / _scale(na, nb), TIGHT)
    rec.check("tau(a) = K phi(a)^T K", _mdist(tau(a), K4 @ phi(a).T @ K4), EXACT)
    rec.check("phi(a)tau(b) = tau(b)phi(a)", _mdist(phi(a) @ tau(b), tau(b) @ phi(a)) / _scale(na, nb), TIGHT)
    rec.check("vec(ax) = phi(a)vec(x)", _mdist(q_vec(a * x), phi(a) @ q_vec(x)) / _scale(na, nx), TIGHT)
    rec.check("vec(xb) = tau(b)vec(x)", _mdist(q_vec(x * b), tau(b) @ q_vec(x)) / _scale(nb, nx), TIGHT)
    rec.check("vec(axb) = phi(a)tau(b)vec(x)",
              _mdist(q_vec((a * x) * b), phi(a) @ tau(b) @ q_vec(x)) / _scale(na, nb, nx), TIGHT)
    n4 = max(1.0, na**4)
    rec.check("det phi(a) = |a|^4", abs(determinant(phi(a)) - na**4) / n4, 1e-12)
    rec.check("det tau(a) = |a|^4", abs(determinant(tau(a)) - na**4) / n4, 1e-12)
    sim = unitary_similarity(a)
    target = np.zeros((4, 4, 4))
    target[:, :, 0] = phi(a)
    rec.check("Q diag(a,a,a,a) Q* = phi(a)", _mdist(sim, target) / max(1.0, na), TIGHT)


# -- scalar representations -----------------------------------------------

# e_i conj(e_j) and f_i g_j as coefficient tables for the reconstruction identities
_BASIS = np.eye(8)
_E_EBAR = mul_coeffs(_BASIS[:, None, :], (_BASIS * np.r_[1.0, -np.ones(7)])[None, :, :])
_F_ROW = _BASIS * np.r_[1.0, -np.ones(7)][:, None]
_F_FSTAR = mul_coeffs(_F_ROW[:, None, :], _BASIS[None, :, :])


def reconstruct_from_omega(w: np.ndarray) -> np.ndarray:
    """``(1/8) E8 w E8*`` with ``E8 = [1, e1, ..., e7]``, ``E8* = [1, -e1, ..., -e7]^T``."""
    return np.einsum("ij,ijk->k", w, _E_EBAR) / 8.0


def reconstruct_from_nu(v: np.ndarray) -> np.ndarray:
    """``(1/8) F8 v^T F8*`` with ``F8 = [1, -e1, ..., -e7]``, ``F8* = [1, e1, ..., e7]^T``."""
    return np.einsum("ij,ijk->k", v.T, _F_FSTAR) / 8.0


def _rep_identities(rec: Recorder, rng: np.random.Generator) -> None:
    a, b, x = _rand_o(rng), _rand_o(rng), _rand_o(rng)
    na, nb, nx = a.norm(), b.norm(), x.norm()
    wa, wb, va, vb = omega(a), omega(b), nu(a), nu(b)
    s2 = _scale(na, nb)
    s3 = _scale(na, nb, na)
    rec.check("omega(conj a) = omega(a)^T", _mdist(omega(a.conj()), wa.T), EXACT)
    rec.check("nu(conj a) = nu(a)^T", _mdist(nu(a.conj()), va.T), EXACT)
    rec.check("nu(a) = K8 omega(a)^T K8", _mdist(va, K8 @ wa.T @ K8), EXACT)
    rec.check("omega(a+b) = omega(a)+omega(b)", _mdist(omega(a + b), wa + wb), EXACT)
    rec.check("vec(ax) = omega(a)vec(x)", _mdist((a * x).coeffs, wa @ x.coeffs) / _scale(na, nx), TIGHT)
    rec.check("vec(xa) = nu(a)vec(x)", _mdist((x * a).coeffs, va @ x.coeffs) / _scale(na, nx), TIGHT)
    rec.check("a = (1/8) E8 omega(a) E8*", _mdist(reconstruct_from_omega(wa), a.coeffs) / max(1, na), TIGHT)
    rec.check("a = (1/8) F8 nu(a)^T F8*", _mdist(reconstruct_from_nu(va), a.coeffs) / max(1, na), TIGHT)
    n8 = max(1.0, na**8)
    rec.check("det omega(a) = |a|^8", abs(determinant(wa) - na**8) / n8, 1e-8)
    rec.check("det nu(a) = |a|^8", abs(determinant(va) - na**8) / n8, 1e-8)
    a2 = a * a
    rec.check("omega(a^2) = omega(a)^2", _mdist(omega(a2), wa @ wa) / _scale(na, na), TIGHT)
    rec.check("nu(a^2) = nu(a)^2", _mdist(nu(a2), va @ va) / _scale(na, na), TIGHT)
    rec.check("omega(a)nu(a) = nu(a)omega(a)", _mdist(wa @ va, va @ wa) / _scale(na, na), TIGHT)
    rec.check("omega(a^-1) = omega(a)^-1", _mdist(rep_inverse(RepKind.LEFT, a) @ wa, np.eye(8)), TIGHT)
    rec.check("nu(a^-1) = nu(a)^-1", _mdist(rep_inverse(RepKind.RIGHT, a) @ va, np.eye(8)), TIGHT)
    aba = (a * b) * a
    rec.check("omega(aba) = omega(a)omega(b)omega(a)", _mdist(omega(aba), wa @ wb @ wa) / s3, TIGHT)
    rec.check("nu(aba) = nu(a)nu(b)nu(a)", _mdist(nu(aba), va @ vb @ va) / s3, TIGHT)
    ab, ba = a * b, b * a
    rec.check("omega(ab)+omega(ba) = omega(a)omega(b)+omega(b)omega(a)",
              _mdist(omega(ab) + omega(ba), wa @ wb + wb @ wa) / s2, TIGHT)
    rec.check("nu(ab)+nu(ba) = nu(a)nu(b)+nu(b)nu(a)",
              _mdist(nu(ab) + nu(ba), va @ vb + vb @ va) / s2, TIGHT)
    rec.check("omega(ab)+nu(ab) = omega(a)omega(b)+nu(b)nu(a)",
              _mdist(omega(ab) + nu(ab), wa @ wb + vb @ va) / s2, TIGHT)
    rec.check("omega(a)nu(b)+omega(b)nu(a) = nu(a)omega(b)+nu(b)omega(a)",
              _mdist(wa @ vb + wb @ va, va @ wb + vb @ wa) / s2, TIGHT)
    rec.check("omega(ab) = omega(a)omega(b)+omega(a)nu(b)-nu(b)omega(a)",
              _mdist(omega(ab), wa @ wb + wa @ vb - vb @ wa) / s2, TIGHT)
    rec.check("nu(ab) = nu(b)nu(a)+omega(b)nu(a)-nu(a)omega(b)",
              _mdist(nu(ab), vb @ va + wb @ va - va @ wb) / s2, TIGHT)
    rec.check("omega(ab)nu(a) = nu(a)omega(a)omega(b)",
              _mdist(omega(ab) @ va, va @ wa @ wb) / _scale(na, na, nb), TIGHT)
    rec.check("nu(ab)omega(b) = omega(b)nu(b)nu(a)",
              _mdist(nu(ab) @ wb, wb @ vb @ va) / _scale(na, nb, nb), TIGHT)
    rec.check("omega(ab) = nu(a)omega(a)omega(b)nu(a)^-1",
              _mdist(omega(ab), va @ wa @ wb @ nu(o_inv(a))) / _scale(na, nb), 1e-9)
    rec.check("nu(ab) = omega(b)nu(b)nu(a)omega(b)^-1",
              _mdist(nu(ab), wb @ vb @ va @ omega(o_inv(b))) / _scale(na, nb), 1e-9)
    d = delta(a, b)
    rec.check("delta(a,b) normal", _mdist(d @ d.T, d.T @ d) / _scale(na + nb, na + nb), TIGHT)
    rec.check("mu(a,b)vec(x) = vec((a,b,x))",
              _mdist(mu(a, b) @ x.coeffs, associator(a, b, x).coeffs) / _scale(na, nb, nx), TIGHT)


# -- delta formulas --------------------------------------------------------

def _delta_formulas(rec: Recorder, rng: np.random.Generator) -> None:
    a = _rand_o(rng)
    # alternate generic pairs with similar pairs so that zero determinants are exercised
    b = _rand_o(rng) if rec.trial % 2 == 0 else _similar_to(a, rng)
    d = delta(a, b)
    direct = determinant(d)
    first, second = delta_det_closed(a, b)
    den = max(1.0, abs(direct))
    rec.check("det delta = first closed form", abs(first - direct) / den, 1e-8)
    rec.check("det delta = second closed form", abs(second - direct) / den, 1e-8)
    rec.check("first closed form = second closed form", abs(first - second) / max(1.0, abs(first)), 1e-8)
    fl = char_poly(d).coef
    closed = delta_char_poly(a, b).coef
    rec.check("char poly of delta = closed form", np.abs(fl - closed).max() / max(1.0, np.abs(closed).max()), 1e-7)
    daa = delta(a, a)
    na2 = im_norm(a) ** 2
    cube = daa @ daa @ daa
    rec.check("delta(a,a)^3 = -4|Im a|^2 delta(a,a)",
              _mdist(cube, -4.0 * na2 * daa) / max(1.0, 8.0 * im_norm(a) ** 3), 1e-9)
    if im_norm(a) > 1e-6:
        g = -daa / (4.0 * na2)
        rec.check("delta g-inverse law", _mdist(daa @ g @ daa, daa) / max(1.0, 2.0 * im_norm(a)), 1e-9)


def _delta_fixed(rec: Recorder) -> None:
    e1, e2 = Octonion.basis(1), Octonion.basis(2)
    rec.flag("rank delta(e1,e2) = 6", rank(delta(e1, e2)) == 6)
    rec.check("det omega(1+e1) = 16", abs(determinant(omega(Octonion.real(1.0) + e1)) - 16.0), 1e-10)


# -- scalar solvers --------------------------------------------------------

def _solver_roundtrip(rec: Recorder, name: str, sol, x_star: Octonion, scale: float) -> None:
    if not rec.flag(f"{name}: manufactured instance solvable", sol.solvable):
        return
    rec.check(f"{name}: residual", sol.residual / scale, 1e-9)
    rec.check(f"{name}: x* - particular in null span",
              _span_residual((x_star - sol.particular).coeffs, [h.coeffs for h in sol.null_basis])
              / max(1.0, x_star.norm()), 1e-8)


def det_vanishes(a: Octonion, b: Octonion) -> bool:
    d = delta(a, b)
    return abs(determinant(d)) <= 1e-9 * max(1.0, float(np.abs(d).sum(axis=1).max())) ** 8


def _scalar_solvers(rec: Recorder, rng: np.random.Generator) -> None:
    a, b, x_star = _rand_o(rng), _rand_o(rng), _rand_o(rng)
    na, nb, nx = a.norm(), b.norm(), x_star.norm()

    c = a * x_star - x_star * b
    _solver_roundtrip(rec, "sylvester", solve_sylvester(a, b, c), x_star, _scale(na + nb, nx))

    similar = _similar_to(a, rng)
    for bb, label in ((b, "generic"), (similar, "similar"), (a.conj(), "conjugate")):
        sol = solve_sim(a, bb)
        closed = sim_closed_form_basis(a, bb)
        rec.flag(f"sim ({label}): closed-form span = real-system span",
                 same_span([h.coeffs for h in sol.null_basis], closed))
        worst = max((_dist(a * h, h * bb) for h in sol.null_basis), default=0.0)
        rec.check(f"sim ({label}): basis solves ax = xb", worst / _scale(na), 1e-9)
        worst = max((float(np.linalg.norm(omega(a) @ v - nu(bb) @ v)) for v in closed), default=0.0)
        rec.check(f"sim ({label}): closed-form basis solves ax = xb", worst / _scale(na), 1e-9)
        cert = similarity_certificate(a, bb).similar
        rec.flag("similarity condition <=> det delta(a,b) = 0", cert == det_vanishes(a, bb))
        rec.flag("similarity condition <=> nonzero solution", cert == (sol.nullity > 0))

    c = a * x_star - x_star * a
    sol = solve_commutator(a, c)
    _solver_roundtrip(rec, "commutator", sol, x_star, _scale(na, nx))
    rec.flag("commutator: closed condition agrees (solvable rhs)", commutator_condition(a, c) == sol.solvable)
    p = commutator_particular(a, c)
    rec.check("commutator: closed particular solves", _dist(a * p - p * a, c) / _scale(na, nx), 1e-9)
    h = commutator_homogeneous(a, _rand_o(rng))
    rec.check("commutator: closed homogeneous solves ax = xa", _dist(a * h, h * a) / _scale(na, na), 1e-9)
    sol_b = solve_commutator(a, b)
    rec.flag("commutator: closed condition agrees (random rhs)", commutator_condition(a, b) == sol_b.solvable)

    abar = a.conj()
    c = a * x_star - x_star * abar
    sol = solve_conj(a, c)
    _solver_roundtrip(rec, "conj", sol, x_star, _scale(na, nx))
    ok, _ = conj_condition(a, c)
    rec.flag("conj: closed condition agrees (solvable rhs)", ok == sol.solvable)
    p = conj_particular(a, c)
    rec.check("conj: closed particular solves", _dist(a * p - p * abar, c) / _scale(na, nx), 1e-9)
    sol_b = solve_conj(a, b)
    ok, _ = conj_condition(a, b)
    rec.flag("conj: closed condition agrees (random rhs)", ok == sol_b.solvable)

    for form in ASSOC_FORMS:
        lhs = assoc_lhs(form, a, b)
        c = lhs(x_star)
        sol = solve_assoc(a, b, c, form)
        _solver_roundtrip(rec, f"assoc {form}", sol, x_star, _scale(na, nb, nx))


# -- vec / Kronecker calculus ---------------------------------------------

def _vec_calculus(rec: Recorder, rng: np.random.Generator) -> None:
    m, n, p, q = (int(v) for v in rng.integers(1, 4, size=4))
    A = _rand_mat(rng, m, n)
    X = _rand_mat(rng, n, p)
    B = _rand_mat(rng, p, q)
    col = _rand_mat(rng, n, 1)
    row = _rand_mat(rng, 1, n)
    xs = _rand_mat(rng, 1, 1)
    a = Octonion(rng.uniform(-1.0, 1.0, 8))
    scale = _scale(A.max_abs(), X.max_abs(), B.max_abs(), 3.0, 3.0)
    tol = TIGHT

    wA, vB = left_adjoint(A), right_adjoint(B)
    rec.check("vec(Ax) = omega(A) vec x", _mdist(mat_vec(col @ xs), left_adjoint(col) @ mat_vec(xs)) / scale, tol)
    rec.check("vec(xB) = nu(B) vec x", _mdist(mat_vec(xs @ row), right_adjoint(row) @ mat_vec(xs)) / scale, tol)
    Xn1 = _rand_mat(rng, n, 1)
    rec.check("vec(AX) = omega(A) vec X (column X)", _mdist(mat_vec(A @ Xn1), wA @ mat_vec(Xn1)) / scale, tol)
    Xa = OctonionMatrix(mul_coeffs(Xn1.data, a.coeffs))
    rec.check("vec(Xa) = [nu(a) (x^) I] vec X",
              _mdist(mat_vec(Xa), block_kron_left(nu(a), np.eye(8 * n)) @ mat_vec(Xn1)) / scale, tol)
    Bp1 = _rand_mat(rng, p, 1)
    rec.check("vec(XB) = [nu(B) (x^) I] vec X (column B)",
              _mdist(mat_vec(X @ Bp1), block_kron_left(right_adjoint(Bp1), np.eye(8 * n)) @ mat_vec(X)) / scale, tol)
    rec.check("vec(AX) = [I (x^) omega(A)] vec X",
              _mdist(mat_vec(A @ X), block_kron_left(np.eye(8 * p), wA) @ mat_vec(X)) / scale, tol)
    rec.check("vec(XB) = [nu(B) (x^) I] vec X",
              _mdist(mat_vec(X @ B), block_kron_left(vB, np.eye(8 * n)) @ mat_vec(X)) / scale, tol)
    rec.check("vec((AX)B) = [nu(B) (x^) omega(A)] vec X",
              _mdist(mat_vec((A @ X) @ B), block_kron_left(vB, wA) @ mat_vec(X)) / scale, tol)
    rec.check("vec(A(XB)) = [omega(A) (x~) nu(B)] vec X",
              _mdist(mat_vec(A @ (X @ B)), block_kron_right(wA, vB) @ mat_vec(X)) / scale, tol)
    mixed = block_kron_left(np.eye(8 * q), wA) @ block_kron_left(vB, np.eye(8 * n))
    rec.check("[I (x^) omega(A)][nu(B) (x^) I] = omega(A) (x~) nu(B)",
              _mdist(mixed, block_kron_right(wA, vB)) / scale, tol)
    mixed = block_kron_left(vB, np.eye(8 * m)) @ block_kron_left(np.eye(8 * p), wA)
    rec.check("[nu(B) (x^) I][I (x^) omega(A)] = nu(B) (x^) omega(A)",
              _mdist(mixed, block_kron_left(vB, wA)) / scale, tol)

    S = _rand_mat(rng, n, n)
    Y = _rand_mat(rng, q, n)
    k = int(rng.integers(1, 4))
    wS, vS = left_adjoint(S), right_adjoint(S)
    sk = _scale(*(S.max_abs() * n for _ in range(k)), X.max_abs())
    rec.check("vec(A^(k| * X) = [I (x^) omega(A)^k] vec X",
              _mdist(mat_vec(nested_left(S, X, k)),
                     block_kron_left(np.eye(8 * p), np.linalg.matrix_power(wS, k)) @ mat_vec(X)) / sk, tol)
    rec.check("vec(Y * A^|k)) = [nu(A)^k (x^) I] vec Y",
              _mdist(mat_vec(nested_right(Y, S, k)),
                     block_kron_left(np.linalg.matrix_power(vS, k), np.eye(8 * q)) @ mat_vec(Y)) / sk, tol)

    A2 = _rand_mat(rng, m, n)
    lam = float(rng.uniform(-2.0, 2.0))
    rec.check("omega(A+B) = omega(A)+omega(B)", _mdist(left_adjoint(A + A2), wA + left_adjoint(A2)), EXACT)
    rec.check("nu(A+B) = nu(A)+nu(B)", _mdist(right_adjoint(A + A2), right_adjoint(A) + right_adjoint(A2)), EXACT)
    rec.check("omega(lam A) = lam omega(A)", _mdist(left_adjoint(A * lam), lam * wA), EXACT)
    rec.check("nu(lam A) = lam nu(A)", _mdist(right_adjoint(A * lam), lam * right_adjoint(A)), EXACT)
    rec.check("omega(I) = I", _mdist(left_adjoint(OctonionMatrix.identity(m)), np.eye(8 * m)), EXACT)
    rec.check("nu(I) = I", _mdist(right_adjoint(OctonionMatrix.identity(m)), np.eye(8 * m)), EXACT)
    rec.check("omega(A*) = omega(A)^T", _mdist(left_adjoint(A.H), wA.T), EXACT)
    rec.check("nu(A*) = nu(A)^T", _mdist(right_adjoint(A.H), right_adjoint(A).T), EXACT)
    rec.check("nu(A) = K omega(A)^T K", _mdist(right_adjoint(A), k_matrix(n) @ wA.T @ k_matrix(m)), EXACT)
    blocks = wA.reshape(m, 8, n, 8).transpose(0, 2, 1, 3)
    rebuilt = np.einsum("stij,ijk->stk", blocks, _E_EBAR) / 8.0
    rec.check("A = (1/8) E omega(A) E*", _mdist(rebuilt, A.data), TIGHT)

    # reduction of every listed matrix equation to its real system
    S2 = _rand_mat(rng, m, m)
    T2 = _rand_mat(rng, p, p)
    cases = [
        (MatrixEquation.AX_B, A, None, X),
        (MatrixEquation.XA_B, B, None, X),
        (MatrixEquation.AXB_C_LEFT, A, B, X),
        (MatrixEquation.AXB_C_RIGHT, A, B, X),
        (MatrixEquation.AX_XB_C, S2, T2, _rand_mat(rng, m, p)),
        (MatrixEquation.ASSOC, S2, None, _rand_mat(rng, m, m)),
    ]
    for form, a1, b1, x1 in cases:
        lhs = equation_lhs(form, a1, b1, x1)
        op, shape = equation_operator(form, a1, b1, lhs.shape)
        ok = shape == x1.shape
        rec.flag(f"{form.value}: unknown shape", ok)
        if ok:
            rec.check(f"{form.value}: operator reproduces lhs", _mdist(op @ mat_vec(x1), mat_vec(lhs)) / scale, tol)


# -- inverse operators -----------------------------------------------------

def random_completely_invertible(m: int, rng: np.random.Generator) -> OctonionMatrix:
    while True:
        a = _rand_mat(rng, m, m)
        if is_completely_invertible(a):
            return a


def _inverse_operators(rec: Recorder, rng: np.random.Generator) -> None:
    A = random_completely_invertible(2, rng)
    n = int(rng.integers(1, 4))
    B = _rand_mat(rng, 2, n)
    C = _rand_mat(rng, n, 2)
    I2 = OctonionMatrix.identity(2)
    L = make_inverse_operator("left", A)
    R = make_inverse_operator("right", A)
    tol = 1e-8
    rec.check("A(L^-1 o B) = B", (A @ L(B) - B).max_abs(), tol)
    rec.check("A(L^-1 o I) = I", (A @ L(I2) - I2).max_abs(), tol)
    rec.check("L^-1 o (AB) = B", (L(A @ B) - B).max_abs(), tol)
    rec.check("L^-1 o A = I", (L(A) - I2).max_abs(), tol)
    rec.check("(C o R^-1)A = C", (R(C) @ A - C).max_abs(), tol)
    rec.check("(I o R^-1)A = I", (R(I2) @ A - I2).max_abs(), tol)
    rec.check("(CA) o R^-1 = C", (R(C @ A) - C).max_abs(), tol)
    rec.check("A o R^-1 = I", (R(A) - I2).max_abs(), tol)
    a = _rand_o(rng)
    A1 = OctonionMatrix.from_entries([[a]])
    ref = a.conj() / (a.norm() ** 2)
    rec.check("1x1 left inverse = conj(a)/|a|^2", _dist(left_inverse(A1)[0, 0], ref), 1e-12)
    rec.check("1x1 right inverse = conj(a)/|a|^2", _dist(right_inverse(A1)[0, 0], ref), 1e-12)


# -- Cayley-Hamilton -------------------------------------------------------

def unit_scaled(m: int, rng: np.random.Generator) -> OctonionMatrix:
    """Random ``m x m`` matrix whose entries all have norm 1."""
    d = rng.normal(size=(m, m, 8))
    return OctonionMatrix(d / np.linalg.norm(d, axis=2, keepdims=True))


def _cayley_hamilton(rec: Recorder, rng: np.random.Generator) -> None:
    for m in (1, 2, 3):
        a = unit_scaled(m, rng)
        scale = float(np.abs(char_poly(left_adjoint(a)).coef).sum())
        left, right = cayley_hamilton_residuals(a)
        rec.check(f"m={m}: left-nested p(A) = 0 (relative to sum |r_i|)", left / scale, 1e-6)
        rec.check(f"m={m}: right-nested p(A) = 0 (relative to sum |r_i|)", right / scale, 1e-6)


# -- eigenvalue multiplicity -----------------------------------------------

EXPECTED_PATTERNS = {2: "2x8", 3: "6x4", 4: "16x2", 5: "20x2"}
CONJECTURE_SHARE = 0.95


def two_by_two_char_poly(a: OctonionMatrix) -> np.ndarray:
    """Coefficients of ``[(lam - a11)(lam - a22) - |a12|^2]^8``."""
    p, r = a[0, 0].re, a[1, 1].re
    b2 = a[0, 1].norm() ** 2
    quad = np.array([p * r - b2, -(p + r), 1.0])
    out = np.array([1.0])
    for _ in range(8):
        out = np.convolve(out, quad)
    return out


def _eig_trial(rec: Recorder, m: int, rng: np.random.Generator) -> str:
    a = random_hermitian(m, rng)
    rec.flag(f"m={m}: generated matrix is Hermitian", is_hermitian(a))
    w = left_adjoint(a)
    rec.check(f"m={m}: omega(A) symmetric", _mdist(w, w.T), EXACT)
    report = hermitian_eigen(a)
    norm_a = max(1.0, float(np.abs(w).sum(axis=1).max()))
    rec.check(f"m={m}: max residual <= 1e-8 |A|", report.max_residual / norm_a, 1e-8)
    trace = 8.0 * sum(a[s, s].re for s in range(m))
    rec.check(f"m={m}: sum of eigenvalues = 8 sum Re(a_ss)",
              abs(report.eigenvalues.sum() - trace) / max(1.0, abs(trace)), 1e-8)
    rec.flag(f"m={m}: multiplicities sum to 8m", sum(k for _, k in report.groups) == 8 * m)
    if m == 2:
        fl = char_poly(w).coef
        ref = two_by_two_char_poly(a)
        rec.check("m=2: char poly = [(lam-a)(lam-c)-|b|^2]^8", np.abs(fl - ref).max(), 1e-7)
    if m in (2, 3):
        rec.flag(f"m={m}: pattern {EXPECTED_PATTERNS[m]}", report.pattern == EXPECTED_PATTERNS[m])
    return report.pattern


def _eig_multiplicity(rec: Recorder, trials: int, seed: int) -> None:
    for m in (2, 3, 4, 5):
        counts: Counter[str] = Counter()
        for trial in range(trials):
            rec.trial = trial
            counts[_eig_trial(rec, m, trial_rng(seed + 1000 * m, trial))] += 1
        expected = EXPECTED_PATTERNS[m]
        share = counts[expected] / trials
        dominant, dom_count = max(counts.items(), key=lambda kv: (kv[1], kv[0]))
        table = ", ".join(f"{pat}: {cnt}/{trials}" for pat, cnt in sorted(counts.items()))
        rec.notes.append(f"m={m} patterns {table}; expected {expected} share {share:.2f}")
        if m in (4, 5):
            rec.trial = -m
            rec.flag(f"m={m}: conjectured pattern {expected} dominant (>= 95%)",
                     dominant == expected and share >= CONJECTURE_SHARE)


# -- driver ----------------------------------------------------------------

TrialFn = Callable[[Recorder, np.random.Generator], None]

_TRIAL_SUITES: dict[str, TrialFn] = {
    "octonion-laws": _octonion_laws,
    "quaternion-reps": _quaternion_reps,
    "rep-identities": _rep_identities,
    "delta-formulas": _delta_formulas,
    "scalar-solvers": _scalar_solvers,
    "vec-calculus": _vec_calculus,
    "inverse-operators": _inverse_operators,
    "cayley-hamilton": _cayley_hamilton,
}

SUITES = tuple(_TRIAL_SUITES) + ("eig-multiplicity",)


def run_suite(name: str, trials: int, seed: int = 0, tol: float | None = None) -> VerifySuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    if trials < 1:
        raise ValueError("trials must be positive")
    rec = Recorder(tol)
    if name == "eig-multiplicity":
        _eig_multiplicity(rec, trials, seed)
        return rec.result(name, trials, seed)
    if name == "delta-formulas":
        rec.trial = -1
        _delta_fixed(rec)
    fn = _TRIAL_SUITES[name]
    for trial in range(trials):
        rec.trial = trial
        fn(rec, trial_rng(seed, trial))
    return rec.result(name, trials, seed)


def run_all(trials: int, seed: int = 0, tol: float | None = None) -> list[VerifySuiteResult]:
    return [run_suite(name, trials, seed, tol) for name in SUITES]


def _fmt(x: float) -> str:
    return f"{x:.3e}"


def format_result(result: VerifySuiteResult) -> str:
    lines = [f"suite: {result.suite}", f"seed: {result.seed}", f"trials: {result.trials}"]
    width = max((len(s.name) for s in result.identities), default=0)
    for s in result.identities:
        status = "ok" if s.failures == 0 else "FAIL"
        lines.append(f"  {s.name:<{width}}  worst {_fmt(s.worst)}  tol {_fmt(s.tol)}  "
                     f"failures {s.failures}/{s.checks}  {status}")
    lines.extend(f"  note: {n}" for n in result.notes)
    lines.append(f"failures: {result.failures}")
    lines.append(f"worst_residual: {_fmt(result.worst_residual)}")
    return "\n".join(lines)
