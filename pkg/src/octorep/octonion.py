"""The octonion division algebra.

An octonion is stored as 8 real coefficients on the basis
``1, e1, ..., e7``. The first four coefficients form the quaternion
``a'`` and the last four ``a''`` of the Cayley-Dickson pair
``a = a' + a'' e`` (``e4 = e``, ``e5 = ie``, ``e6 = je``, ``e7 = ke``).
Multiplication uses the Cayley-Dickson doubling formula::

    (a' + a'' e)(b' + b'' e) = (a'b' - conj(b'') a'') + (b'' a' + a'' conj(b')) e
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .quaternion import conj_coeffs as _qconj
from .quaternion import hamilton

_CONJ8 = np.array([1.0] + [-1.0] * 7)


def mul_coeffs(a, b) -> np.ndarray:
    """Octonion product of coefficient arrays with trailing axis 8 (broadcasts)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a1, a2 = a[..., :4], a[..., 4:]
    b1, b2 = b[..., :4], b[..., 4:]
    first = hamilton(a1, b1) - hamilton(_qconj(b2), a2)
    second = hamilton(b2, a1) + hamilton(a2, _qconj(b1))
    return np.concatenate([first, second], axis=-1)


def conj_coeffs(a) -> np.ndarray:
    return np.asarray(a, dtype=float) * _CONJ8


class Octonion:
    """Immutable octonion ``c0 + c1 e1 + ... + c7 e7``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[float] = (0.0,) * 8):
        c = np.array(coeffs, dtype=float).reshape(-1)
        if c.size != 8:
            raise ValueError(f"an octonion has 8 coefficients, got {c.size}")
        if not np.all(np.isfinite(c)):
            raise ValueError("octonion coefficients must be finite")
        c.flags.writeable = False
        self._c = c

    @classmethod
    def basis(cls, i: int) -> Octonion:
        """``1`` for ``i == 0``, otherwise ``e_i``."""
        if not 0 <= i < 8:
            raise ValueError(f"basis index must be in 0..7, got {i}")
        c = np.zeros(8)
        c[i] = 1.0
        return cls(c)

    @classmethod
    def real(cls, x: float) -> Octonion:
        c = np.zeros(8)
        c[0] = x
        return cls(c)

    @classmethod
    def parse(cls, text: str) -> Octonion:
        """Read a literal of 8 comma-separated reals, e.g. ``"0,1,0,0,0,0,0,0"``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 8:
            raise ValueError(f"octonion literal needs 8 comma-separated numbers, got {len(parts)}")
        try:
            values = [float(p) for p in parts]
        except ValueError as exc:
            raise ValueError(f"bad octonion literal {text!r}: {exc}") from None
        return cls(values)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    def literal(self) -> str:
        return ",".join(format_real(x) for x in self._c)

    def __add__(self, other):
        if isinstance(other, Octonion):
            return Octonion(self._c + other._c)
        return self + Octonion.real(float(other))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Octonion):
            return Octonion(self._c - other._c)
        return self - Octonion.real(float(other))

    def __rsub__(self, other):
        return Octonion.real(float(other)) - self

    def __neg__(self) -> Octonion:
        return Octonion(-self._c)

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return o_mul(self, other)
        return Octonion(self._c * float(other))

    def __rmul__(self, other):
        return Octonion(self._c * float(other))

    def __truediv__(self, other) -> Octonion:
        return Octonion(self._c / float(other))

    def __eq__(self, other) -> bool:
        return isinstance(other, Octonion) and bool(np.array_equal(self._c, other._c))

    def __hash__(self) -> int:
        return hash(self._c.tobytes())

    def __repr__(self) -> str:
        return f"Octonion([{', '.join(repr(float(x)) for x in self._c)}])"

    def conj(self) -> Octonion:
        return o_conj(self)

    @property
    def re(self) -> float:
        return o_re(self)

    @property
    def im(self) -> Octonion:
        return o_im(self)

    def norm(self) -> float:
        return o_norm(self)

    def inv(self) -> Octonion:
        return o_inv(self)

    def is_close(self, other: Octonion, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self._c - other._c)) <= tol)


ONE = Octonion.basis(0)
ZERO = Octonion()


def o_mul(a: Octonion, b: Octonion) -> Octonion:
    return Octonion(mul_coeffs(a.coeffs, b.coeffs))


def o_conj(a: Octonion) -> Octonion:
    return Octonion(conj_coeffs(a.coeffs))


def o_re(a: Octonion) -> float:
    return float(a.coeffs[0])


def o_im(a: Octonion) -> Octonion:
    c = a.coeffs.copy()
    c[0] = 0.0
    return Octonion(c)


def o_norm(a: Octonion) -> float:
    return float(np.linalg.norm(a.coeffs))


def im_norm(a: Octonion) -> float:
    return float(np.linalg.norm(a.coeffs[1:]))


def o_inv(a: Octonion) -> Octonion:
    n2 = float(a.coeffs @ a.coeffs)
    if n2 == 0.0:
        raise ZeroDivisionError("zero octonion has no inverse")
    return Octonion(conj_coeffs(a.coeffs) / n2)


def associator(a: Octonion, b: Octonion, x: Octonion) -> Octonion:
    """``(ab)x - a(bx)``."""
    return (a * b) * x - a * (b * x)


def sandwich(a: Octonion, b: Octonion) -> Octonion:
    """``aba``, evaluated as ``(ab)a`` (flexibility makes the grouping immaterial)."""
    return (a * b) * a


def format_real(x: float) -> str:
    """17 significant digits; lowercase scientific outside ``[1e-4, 1e6)``."""
    x = float(x)
    if x == 0.0:
        return "0"
    if 1e-4 <= abs(x) < 1e6:
        return format(x, ".17g")
    return format(x, ".16e")
