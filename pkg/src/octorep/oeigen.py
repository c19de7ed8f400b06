"""Real eigenvalues of Hermitian octonion matrices.

For Hermitian ``A`` the left adjoint ``omega(A)`` is a real symmetric
``8m x 8m`` matrix whose eigenpairs are exactly the real eigenpairs of
``A``: ``omega(A) vec(Y) = lam vec(Y)`` iff ``A Y = Y lam``. The census
tallies how the ``8m`` eigenvalues cluster into groups of equal value.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import NotHermitianError
from .octonion import format_real
from .omatrix import OctonionMatrix, left_adjoint, mat_unvec, mat_vec
from .realmat import sym_eigen

HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class EigenReport:
    dimension: int
    eigenvalues: np.ndarray
    groups: tuple[tuple[float, int], ...]
    eigenvectors: tuple[OctonionMatrix, ...]
    max_residual: float

    @property
    def pattern(self) -> str:
        return multiplicity_pattern(self.groups)

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "groups": [{"value": float(v), "multiplicity": k} for v, k in self.groups],
            "eigenvectors": [
                [[float(c) for c in y.data[s, 0]] for s in range(y.rows)] for y in self.eigenvectors
            ],
            "max_residual": float(self.max_residual),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def multiplicity_pattern(groups) -> str:
    """``"6x4"`` when all groups share a multiplicity, else e.g. ``"2x4+1x8"``."""
    counts = Counter(k for _, k in groups)
    return "+".join(f"{n}x{k}" for k, n in sorted(counts.items(), key=lambda kv: (-kv[1], -kv[0])))


def is_hermitian(a: OctonionMatrix, tol: float = HERMITIAN_TOL) -> bool:
    if a.rows != a.cols:
        return False
    return (a - a.H).max_abs() <= tol * max(1.0, a.max_abs())


def default_group_tol(eigenvalues: np.ndarray) -> float:
    spread = float(eigenvalues[-1] - eigenvalues[0]) if len(eigenvalues) else 0.0
    return max(1e-7, 1e-9 * spread)


def group_eigenvalues(eigenvalues: np.ndarray, group_tol: float) -> tuple[tuple[float, int], ...]:
    """Split the sorted spectrum wherever consecutive values differ by more than ``group_tol``."""
    groups = []
    start = 0
    for i in range(1, len(eigenvalues) + 1):
        if i == len(eigenvalues) or eigenvalues[i] - eigenvalues[i - 1] > group_tol:
            chunk = eigenvalues[start:i]
            groups.append((float(np.mean(chunk)), int(len(chunk))))
            start = i
    return tuple(groups)


def hermitian_eigen(a: OctonionMatrix, group_tol: float | None = None) -> EigenReport:
    if not is_hermitian(a):
        raise NotHermitianError("matrix is not Hermitian (A* != A)")
    w, v = sym_eigen(left_adjoint(a))
    vectors = tuple(mat_unvec(v[:, j], a.rows, 1) for j in range(v.shape[1]))
    residual = 0.0
    for lam, y in zip(w, vectors):
        residual = max(residual, (a @ y - y * float(lam)).max_abs())
    tol = default_group_tol(w) if group_tol is None else group_tol
    return EigenReport(a.rows, w, group_eigenvalues(w, tol), vectors, residual)


def random_hermitian(m: int, rng: np.random.Generator) -> OctonionMatrix:
    """Uniform real diagonal in [-1, 1], uniform octonions above it, conjugates below."""
    d = np.zeros((m, m, 8))
    for s in range(m):
        d[s, s, 0] = rng.uniform(-1.0, 1.0)
        for t in range(s + 1, m):
            d[s, t] = rng.uniform(-1.0, 1.0, 8)
            d[t, s] = d[s, t] * np.r_[1.0, -np.ones(7)]
    return OctonionMatrix(d)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream per (seed, trial), so results do not depend on scheduling."""
    return np.random.default_rng([int(seed) & 0xFFFFFFFF, int(trial)])


@dataclass(frozen=True)
class CensusRow:
    m: int
    trial: int
    groups: int
    pattern: str
    max_residual: float

    def csv(self) -> str:
        return f"{self.m},{self.trial},{self.groups},{self.pattern},{format_real(self.max_residual)}"


@dataclass(frozen=True)
class Census:
    m: int
    trials: int
    seed: int
    rows: tuple[CensusRow, ...]
    frequencies: dict[str, int] = field(default_factory=dict)

    @property
    def dominant(self) -> tuple[str, float]:
        pattern, count = max(self.frequencies.items(), key=lambda kv: (kv[1], kv[0]))
        return pattern, count / self.trials

    def frequency(self, pattern: str) -> float:
        return self.frequencies.get(pattern, 0) / self.trials

    def csv_lines(self) -> list[str]:
        return [row.csv() for row in self.rows]


def multiplicity_census(m: int, trials: int, seed: int = 0) -> Census:
    if not 2 <= m <= 6:
        raise ValueError("census supports 2 <= m <= 6")
    if trials < 1:
        raise ValueError("trials must be positive")
    rows = []
    for trial in range(trials):
        a = random_hermitian(m, trial_rng(seed, trial))
        rep = hermitian_eigen(a)
        rows.append(CensusRow(m, trial, len(rep.groups), rep.pattern, rep.max_residual))
    freq = Counter(r.pattern for r in rows)
    return Census(m, trials, seed, tuple(rows), dict(sorted(freq.items())))


def eigvec_roundtrip_error(report: EigenReport, a: OctonionMatrix) -> float:
    """Max difference between ``mat_vec`` of each octonion eigenvector and the real eigenvector."""
    _, v = sym_eigen(left_adjoint(a))
    return max(float(np.abs(mat_vec(y) - v[:, j]).max()) for j, y in enumerate(report.eigenvectors))


def format_group_value(v: float) -> str:
    """Group representatives are only meaningful to the grouping tolerance; 12 digits."""
    text = format(v, ".12g")
    return "0" if text == "-0" else text


def format_groups(report: EigenReport) -> str:
    parts = ", ".join(f"{format_group_value(v)} (×{k})" for v, k in report.groups)
    return f"{len(report.groups)} groups: {parts}"
