"""Transfer matrices, Floquet discriminants and the Lyapunov estimator.

The half-line transfer matrix uses a(0) = 1, so det Phi_n(E) = 1/a(n).  The
discriminant of a period-q operator is the trace of the monodromy matrix,
i.e. the same product with a(0) = a(q) taken from the periodic extension;
it has determinant 1 and satisfies

    Delta(E) = (a(1)...a(q))^{-1} det(E - J_q),

where J_q carries the corner entries -i a(q) (top right) and +i a(q)
(bottom left).
"""

from __future__ import annotations

import math

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import InvalidModelError, NumericalError, SizeLimitError
from .model import FinitePrefix, OperatorSpec
from .polynomial import Polynomial

MAX_POLY_PERIOD = 32


def one_step(a_prev: float, a_cur: float, b_cur: float, E: float) -> np.ndarray:
    """Maps (psi(n), psi(n-1)) to (psi(n+1), psi(n))."""
    if not a_cur > 0:
        raise InvalidModelError(f"a_cur must be positive, got {a_cur}")
    return np.array([[(E - b_cur) / a_cur, -a_prev / a_cur], [1.0, 0.0]])


def _product(a, b, E, a0):
    # left-multiplies [[x, -r], [1, 0]] onto [[m00, m01], [m10, m11]]; E may be an array
    m00, m01, m10, m11 = 1.0, 0.0, 0.0, 1.0
    a_prev = a0
    for a_cur, b_cur in zip(a, b):
        x = (E - b_cur) / a_cur
        r = a_prev / a_cur
        m00, m01, m10, m11 = x * m00 - r * m10, x * m01 - r * m11, m00, m01
        a_prev = a_cur
    return m00, m01, m10, m11


def transfer_matrix(prefix: FinitePrefix, E: float, a0: float = 1.0) -> np.ndarray:
    """Phi_n(E) = T_n(E) ... T_1(E), step n leftmost; a0 stands for a(0)."""
    m00, m01, m10, m11 = _product(prefix.a, prefix.b, E, a0)
    return np.array([[m00, m01], [m10, m11]])


def monodromy(spec: OperatorSpec, E: float) -> np.ndarray:
    return transfer_matrix(FinitePrefix(spec.period, spec.a, spec.b), E, a0=spec.a[-1])


def discriminant_eval(spec: OperatorSpec, E):
    """Delta(E) = tr of the monodromy; accepts a scalar or a numpy array of energies."""
    m00, _, _, m11 = _product(spec.a, spec.b, E, spec.a[-1])
    return m00 + m11


def discriminant_and_derivative(spec: OperatorSpec, E):
    """(Delta(E), Delta'(E)) by forward differentiation of the monodromy product."""
    m = [1.0, 0.0, 0.0, 1.0]
    d = [0.0, 0.0, 0.0, 0.0]
    a_prev = spec.a[-1]
    for a_cur, b_cur in zip(spec.a, spec.b):
        x = (E - b_cur) / a_cur
        dx = 1.0 / a_cur
        r = a_prev / a_cur
        d = [dx * m[0] + x * d[0] - r * d[2], dx * m[1] + x * d[1] - r * d[3], d[0], d[1]]
        m = [x * m[0] - r * m[2], x * m[1] - r * m[3], m[0], m[1]]
        a_prev = a_cur
    return m[0] + m[3], d[0] + d[3]


def discriminant_poly(spec: OperatorSpec) -> Polynomial:
    """Monomial coefficients of Delta via exact polynomial 2x2 products (q <= 32)."""
    q = spec.period
    if q > MAX_POLY_PERIOD:
        raise SizeLimitError(
            f"period {q} exceeds {MAX_POLY_PERIOD} for the coefficient form; use discriminant_eval instead")
    one, zero = np.array([1.0]), np.array([0.0])
    m00, m01, m10, m11 = one, zero, zero, one
    a_prev = spec.a[-1]
    for a_cur, b_cur in zip(spec.a, spec.b):
        x = np.array([-b_cur / a_cur, 1.0 / a_cur])
        r = a_prev / a_cur
        m00, m01, m10, m11 = (npoly.polysub(npoly.polymul(x, m00), r * m10),
                              npoly.polysub(npoly.polymul(x, m01), r * m11),
                              m00, m01)
        a_prev = a_cur
    return Polynomial(npoly.polyadd(m00, m11))


def corner_matrix(spec: OperatorSpec) -> np.ndarray:
    """Hermitian J_q: tridiagonal block plus corners -i a(q) (top right), +i a(q) (bottom left).

    For q = 2 the corner and off-diagonal positions coincide and the entries add.
    """
    q = spec.period
    J = np.zeros((q, q), dtype=complex)
    J[np.arange(q), np.arange(q)] = spec.b
    for j in range(q - 1):
        J[j, j + 1] += spec.a[j]
        J[j + 1, j] += spec.a[j]
    if q >= 2:
        J[0, q - 1] += -1j * spec.a[-1]
        J[q - 1, 0] += 1j * spec.a[-1]
    return J


def corner_det(spec: OperatorSpec, E: float) -> float:
    """det(E - J_q), real by hermiticity; for q = 1 this is E - b(1)."""
    if spec.period == 1:
        return E - spec.b[0]
    val = np.linalg.det(E * np.eye(spec.period) - corner_matrix(spec))
    if abs(val.imag) > 1e-9 * max(1.0, abs(val.real)):
        raise NumericalError(f"corner determinant has imaginary residue {val.imag:.3e}")
    return float(val.real)


def spectral_norm(m: np.ndarray) -> float:
    """Largest singular value of a real 2x2 matrix in closed form."""
    (p, q), (r, s) = m
    return 0.5 * (math.hypot(p + s, q - r) + math.hypot(p - s, q + r))


def lyapunov_estimate(prefix: FinitePrefix, E: float) -> float:
    """(1/n) ln ||Phi_n(E)|| with the spectral norm; the product is renormalized
    every step so large n does not overflow."""
    m00, m01, m10, m11 = 1.0, 0.0, 0.0, 1.0
    log_scale = 0.0
    a_prev = 1.0
    for a_cur, b_cur in zip(prefix.a, prefix.b):
        x = (E - b_cur) / a_cur
        r = a_prev / a_cur
        m00, m01, m10, m11 = x * m00 - r * m10, x * m01 - r * m11, m00, m01
        s = max(abs(m00), abs(m01), abs(m10), abs(m11))
        if s > 1e100 or s < 1e-100:
            m00, m01, m10, m11 = m00 / s, m01 / s, m10 / s, m11 / s
            log_scale += math.log(s)
        a_prev = a_cur
    return (log_scale + math.log(spectral_norm(np.array([[m00, m01], [m10, m11]])))) / prefix.n
