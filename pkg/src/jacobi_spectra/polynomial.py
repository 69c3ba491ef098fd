"""Dense real polynomials in the monomial basis and Sturm-chain root counting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

STRIP_RTOL = 1e-12


def _strip(coeffs: Sequence[float], rtol: float = STRIP_RTOL) -> tuple[float, ...]:
    c = [float(x) for x in coeffs]
    if not c:
        return (0.0,)
    scale = max(abs(x) for x in c)
    while len(c) > 1 and abs(c[-1]) <= rtol * scale:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Polynomial:
    """Ascending-degree coefficients; trailing coefficients below 1e-12 of the
    largest magnitude are dropped on construction."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> float:
        return self.coeffs[-1]

    def __call__(self, x):
        return npoly.polyval(x, self.coeffs)

    def deriv(self) -> "Polynomial":
        return Polynomial(npoly.polyder(self.coeffs)) if self.degree > 0 else Polynomial((0.0,))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(npoly.polyadd(self.coeffs, other.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(npoly.polysub(self.coeffs, other.coeffs))

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return Polynomial(npoly.polymul(self.coeffs, other.coeffs))
        return Polynomial(np.asarray(self.coeffs) * float(other))

    __rmul__ = __mul__

    def __neg__(self) -> "Polynomial":
        return self * -1.0

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=float)


def sturm_sequence(p: Polynomial, rtol: float = 1e-10) -> list[Polynomial]:
    """Sturm chain p, p', -rem(p, p'), ... with each member rescaled to unit max-norm.

    The chain stops once a remainder is negligible relative to the dividend;
    in floating point this is the usual compromise and is reliable only for
    well-separated roots at modest degree.
    """
    def normalized(c):
        c = np.asarray(c, dtype=float)
        return Polynomial(c / np.max(np.abs(c)))

    chain = [normalized(p.coeffs)]
    if p.degree == 0:
        return chain
    chain.append(normalized(p.deriv().coeffs))
    while chain[-1].degree > 0:
        _, rem = npoly.polydiv(chain[-2].coeffs, chain[-1].coeffs)
        if np.max(np.abs(rem)) <= rtol * np.max(np.abs(chain[-2].coeffs)):
            break
        chain.append(normalized(-rem))
    return chain


def sign_changes(chain: list[Polynomial], x: float) -> int:
    signs = [math.copysign(1.0, v) for v in (float(p(x)) for p in chain) if v != 0.0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_real_roots(p: Polynomial, lo: float, hi: float, chain: list[Polynomial] | None = None) -> int:
    """Number of distinct real roots in (lo, hi]."""
    chain = chain or sturm_sequence(p)
    return sign_changes(chain, lo) - sign_changes(chain, hi)


def root_bound(p: Polynomial) -> float:
    """Cauchy bound: every root has modulus below this value."""
    c = p.as_array()
    return 1.0 + float(np.max(np.abs(c[:-1] / c[-1]))) if p.degree > 0 else 0.0


def isolate_real_roots(p: Polynomial, tol: float = 1e-12, max_depth: int = 200) -> list[float]:
    """All distinct real roots of ``p``, isolated by Sturm counts and refined by bisection."""
    chain = sturm_sequence(p)
    R = root_bound(p)
    roots: list[float] = []
    stack = [(-R, R, count_real_roots(p, -R, R, chain), 0)]
    while stack:
        lo, hi, k, depth = stack.pop()
        if k == 0:
            continue
        if k == 1 or depth >= max_depth:
            roots.append(_refine(p, chain, lo, hi, tol))
            continue
        mid = 0.5 * (lo + hi)
        k_left = count_real_roots(p, lo, mid, chain)
        stack.append((mid, hi, k - k_left, depth + 1))
        stack.append((lo, mid, k_left, depth + 1))
    return sorted(roots)


def _refine(p, chain, lo, hi, tol):
    # a single root in (lo, hi]: shrink with Sturm counts, which tolerate even multiplicity
    while hi - lo > tol * (1.0 + abs(lo) + abs(hi)):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if count_real_roots(p, lo, mid, chain) == 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
