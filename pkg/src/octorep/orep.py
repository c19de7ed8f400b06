"""Left and right 8x8 real representations of octonions.

``omega(a)`` and ``nu(a)`` act on coefficient vectors as left and right
multiplication::

    o_vec(a * x) == omega(a) @ o_vec(x)
    o_vec(x * a) == nu(a) @ o_vec(x)

Neither map is multiplicative (octonions are not associative), but both
satisfy a family of identities inherited from alternativity and the
Moufang laws. ``delta(a, b)`` and ``mu(a, b)`` are the coefficient
matrices of ``x -> ax - xb`` and ``x -> a(xb) - (ax)b``.
"""

from __future__ import annotations

import enum

import numpy as np
from numpy.polynomial import Polynomial

from .errors import DimensionError
from .octonion import Octonion, im_norm, o_inv

# Entry (r, c) reads "<sign><k>", meaning sign * a_k.
_OMEGA_PATTERN = """
+0 -1 -2 -3 -4 -5 -6 -7
+1 +0 -3 +2 -5 +4 +7 -6
+2 +3 +0 -1 -6 -7 +4 +5
+3 -2 +1 +0 -7 +6 -5 +4
+4 +5 +6 +7 +0 -1 -2 -3
+5 -4 +7 -6 +1 +0 +3 -2
+6 -7 -4 +5 +2 -3 +0 +1
+7 +6 -5 -4 +3 +2 -1 +0
"""

_NU_PATTERN = """
+0 -1 -2 -3 -4 -5 -6 -7
+1 +0 +3 -2 +5 -4 -7 +6
+2 -3 +0 +1 +6 +7 -4 -5
+3 +2 -1 +0 +7 -6 +5 -4
+4 -5 -6 -7 +0 +1 +2 +3
+5 +4 -7 +6 -1 +0 -3 +2
+6 +7 +4 -5 -2 +3 +0 -1
+7 -6 +5 +4 -3 -2 +1 +0
"""


def _parse_pattern(text: str) -> tuple[np.ndarray, np.ndarray]:
    rows = [line.split() for line in text.strip().splitlines()]
    sign = np.array([[1.0 if tok[0] == "+" else -1.0 for tok in row] for row in rows])
    index = np.array([[int(tok[1:]) for tok in row] for row in rows])
    assert sign.shape == index.shape == (8, 8)
    return sign, index


_OMEGA_SIGN, _OMEGA_INDEX = _parse_pattern(_OMEGA_PATTERN)
_NU_SIGN, _NU_INDEX = _parse_pattern(_NU_PATTERN)

K8 = np.diag([1.0] + [-1.0] * 7)


class RepKind(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def omega_coeffs(c) -> np.ndarray:
    """Left representation of coefficient arrays ``(..., 8) -> (..., 8, 8)``."""
    c = np.asarray(c, dtype=float)
    return _OMEGA_SIGN * c[..., _OMEGA_INDEX]


def nu_coeffs(c) -> np.ndarray:
    """Right representation of coefficient arrays ``(..., 8) -> (..., 8, 8)``."""
    c = np.asarray(c, dtype=float)
    return _NU_SIGN * c[..., _NU_INDEX]


def omega(a: Octonion) -> np.ndarray:
    return omega_coeffs(a.coeffs)


def nu(a: Octonion) -> np.ndarray:
    return nu_coeffs(a.coeffs)


def rep(kind: RepKind, a: Octonion) -> np.ndarray:
    return omega(a) if RepKind(kind) is RepKind.LEFT else nu(a)


def o_vec(x: Octonion) -> np.ndarray:
    return x.coeffs.copy()


def o_unvec(v) -> Octonion:
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.size != 8:
        raise DimensionError(f"octonion vector must have 8 entries, got {v.size}")
    return Octonion(v)


def delta(a: Octonion, b: Octonion) -> np.ndarray:
    """Coefficient matrix of ``x -> ax - xb``."""
    return omega(a) - nu(b)


def mu(a: Octonion, b: Octonion) -> np.ndarray:
    """Coefficient matrix of ``x -> a(xb) - (ax)b``, i.e. ``omega(a) nu(b) - nu(b) omega(a)``."""
    wa, vb = omega(a), nu(b)
    return wa @ vb - vb @ wa


def _shift_and_norms(a: Octonion, b: Octonion) -> tuple[float, float, float, float]:
    s = a.re - b.re
    na, nb = im_norm(a), im_norm(b)
    n_sum = float(np.linalg.norm(a.coeffs[1:] + b.coeffs[1:]))
    return s, na, nb, n_sum


def delta_det_closed(a: Octonion, b: Octonion) -> tuple[float, float]:
    """Both closed forms of ``det delta(a, b)``.

    With ``s = Re a - Re b``::

        |a - conj(b)|^4 (s^2 + (|Im a| - |Im b|)^2)(s^2 + (|Im a| + |Im b|)^2)
        (s^2 + |Im a + Im b|^2)^2 (s^4 + 2 s^2 (|Im a|^2 + |Im b|^2) + (|Im a|^2 - |Im b|^2)^2)
    """
    s, na, nb, n_sum = _shift_and_norms(a, b)
    a_minus_bbar = float(np.linalg.norm((a - b.conj()).coeffs))
    first = a_minus_bbar**4 * (s * s + (na - nb) ** 2) * (s * s + (na + nb) ** 2)
    second = (s * s + n_sum**2) ** 2 * (
        s**4 + 2.0 * s * s * (na * na + nb * nb) + (na * na - nb * nb) ** 2
    )
    return first, second


def _shifted_quadratic(s: float, c: float) -> np.ndarray:
    """Ascending coefficients of ``(lambda - s)^2 + c^2``."""
    return np.array([s * s + c * c, -2.0 * s, 1.0])


def delta_char_poly(a: Octonion, b: Octonion) -> Polynomial:
    """Closed-form characteristic polynomial of ``delta(a, b)``, expanded by convolution."""
    s, na, nb, n_sum = _shift_and_norms(a, b)
    factors = [
        _shifted_quadratic(s, n_sum),
        _shifted_quadratic(s, n_sum),
        _shifted_quadratic(s, na - nb),
        _shifted_quadratic(s, na + nb),
    ]
    coeffs = np.array([1.0])
    for f in factors:
        coeffs = np.convolve(coeffs, f)
    return Polynomial(coeffs)


def rep_inverse(kind: RepKind, a: Octonion) -> np.ndarray:
    """Representation of ``a^-1``; equals the matrix inverse of ``rep(kind, a)``."""
    return rep(kind, o_inv(a))
