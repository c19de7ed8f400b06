"""Real quaternions and their two 4x4 real matrix representations.

``phi(a)`` represents left multiplication and ``tau(b)`` right
multiplication on coefficient vectors::

    vec(a x) = phi(a) vec(x)        vec(x b) = tau(b) vec(x)

``phi`` is an algebra homomorphism, ``tau`` an anti-homomorphism, and the
two always commute.
"""

from __future__ import annotations

import numpy as np

_CONJ4 = np.array([1.0, -1.0, -1.0, -1.0])
K4 = np.diag(_CONJ4)


def hamilton(p, q) -> np.ndarray:
    """Hamilton product of coefficient arrays with trailing axis 4 (broadcasts)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    p0, p1, p2, p3 = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    q0, q1, q2, q3 = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    return np.stack(
        [
            p0 * q0 - p1 * q1 - p2 * q2 - p3 * q3,
            p0 * q1 + p1 * q0 + p2 * q3 - p3 * q2,
            p0 * q2 - p1 * q3 + p2 * q0 + p3 * q1,
            p0 * q3 + p1 * q2 - p2 * q1 + p3 * q0,
        ],
        axis=-1,
    )


def conj_coeffs(p) -> np.ndarray:
    return np.asarray(p, dtype=float) * _CONJ4


class Quaternion:
    """Immutable quaternion ``w + x i + y j + z k``."""

    __slots__ = ("_c",)

    def __init__(self, w=0.0, x=0.0, y=0.0, z=0.0):
        c = np.array([w, x, y, z], dtype=float)
        if not np.all(np.isfinite(c)):
            raise ValueError("quaternion coefficients must be finite")
        c.flags.writeable = False
        self._c = c

    @classmethod
    def from_coeffs(cls, c) -> Quaternion:
        c = np.asarray(c, dtype=float).reshape(-1)
        if c.size != 4:
            raise ValueError(f"expected 4 coefficients, got {c.size}")
        return cls(*c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    w = property(lambda self: float(self._c[0]))
    x = property(lambda self: float(self._c[1]))
    y = property(lambda self: float(self._c[2]))
    z = property(lambda self: float(self._c[3]))

    def __add__(self, other: Quaternion) -> Quaternion:
        return Quaternion.from_coeffs(self._c + other._c)

    def __sub__(self, other: Quaternion) -> Quaternion:
        return Quaternion.from_coeffs(self._c - other._c)

    def __neg__(self) -> Quaternion:
        return Quaternion.from_coeffs(-self._c)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return q_mul(self, other)
        return Quaternion.from_coeffs(self._c * float(other))

    def __rmul__(self, other):
        return Quaternion.from_coeffs(self._c * float(other))

    def __truediv__(self, other) -> Quaternion:
        return Quaternion.from_coeffs(self._c / float(other))

    def __eq__(self, other) -> bool:
        return isinstance(other, Quaternion) and bool(np.array_equal(self._c, other._c))

    def __hash__(self) -> int:
        return hash(self._c.tobytes())

    def __repr__(self) -> str:
        return "Quaternion({}, {}, {}, {})".format(*self._c.tolist())


def q_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    return Quaternion.from_coeffs(hamilton(a.coeffs, b.coeffs))


def q_conj(a: Quaternion) -> Quaternion:
    return Quaternion.from_coeffs(conj_coeffs(a.coeffs))


def q_norm(a: Quaternion) -> float:
    return float(np.linalg.norm(a.coeffs))


def q_inv(a: Quaternion) -> Quaternion:
    n2 = float(a.coeffs @ a.coeffs)
    if n2 == 0.0:
        raise ZeroDivisionError("zero quaternion has no inverse")
    return Quaternion.from_coeffs(conj_coeffs(a.coeffs) / n2)


def phi_coeffs(c) -> np.ndarray:
    """Left representation for coefficient arrays ``(..., 4) -> (..., 4, 4)``."""
    c = np.asarray(c, dtype=float)
    a0, a1, a2, a3 = c[..., 0], c[..., 1], c[..., 2], c[..., 3]
    rows = [
        [a0, -a1, -a2, -a3],
        [a1, a0, -a3, a2],
        [a2, a3, a0, -a1],
        [a3, -a2, a1, a0],
    ]
    return np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)


def tau_coeffs(c) -> np.ndarray:
    """Right representation for coefficient arrays ``(..., 4) -> (..., 4, 4)``."""
    c = np.asarray(c, dtype=float)
    a0, a1, a2, a3 = c[..., 0], c[..., 1], c[..., 2], c[..., 3]
    rows = [
        [a0, -a1, -a2, -a3],
        [a1, a0, a3, -a2],
        [a2, -a3, a0, a1],
        [a3, a2, -a1, a0],
    ]
    return np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)


def phi(a: Quaternion) -> np.ndarray:
    return phi_coeffs(a.coeffs)


def tau(a: Quaternion) -> np.ndarray:
    return tau_coeffs(a.coeffs)


def q_vec(x: Quaternion) -> np.ndarray:
    return x.coeffs.copy()


# Unitary factor Q with Q diag(a, a, a, a) Q* = phi(a). Each entry is a
# quaternion scaled by 1/2, stored as a (4, 4, 4) coefficient array.
def _q_factor() -> np.ndarray:
    one, i, j, k = np.eye(4)
    table = [
        [one, i, j, k],
        [-i, one, k, -j],
        [-j, -k, one, i],
        [-k, j, -i, one],
    ]
    return 0.5 * np.array(table)


Q_FACTOR = _q_factor()


def unitary_similarity(a: Quaternion) -> np.ndarray:
    """Evaluate ``Q diag(a, a, a, a) Q*`` in quaternion arithmetic.

    Returns the 4x4 array of quaternion coefficients ``(4, 4, 4)``; every
    entry should be real and match ``phi(a)``.
    """
    q = Q_FACTOR
    q_star = conj_coeffs(np.swapaxes(q, 0, 1))
    left = hamilton(q, a.coeffs)  # Q diag(a,...) scales column t by a on the right
    out = np.zeros((4, 4, 4))
    for s in range(4):
        for t in range(4):
            acc = np.zeros(4)
            for k in range(4):
                acc = acc + hamilton(left[s, k], q_star[k, t])
            out[s, t] = acc
    return out
