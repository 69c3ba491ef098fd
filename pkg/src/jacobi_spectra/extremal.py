"""Chebyshev polynomials, monic extremal polynomials on an interval, the
discriminant nesting identity, and the interpolation polynomial T(E; E_1..E_m)
together with the closed form of its derivative in a node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .bands import spectral_hull
from .errors import InvalidModelError, SizeLimitError
from .model import OperatorSpec, repeat_period
from .polynomial import Polynomial
from .transfer import MAX_POLY_PERIOD, discriminant_eval, discriminant_poly

MAX_NODES = 64


def chebyshev_T(n: int, x: float) -> float:
    """T_n(x): three-term recurrence on [-1, 1], cosh form outside."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if abs(x) > 1.0:
        value = math.cosh(n * math.acosh(abs(x)))
        return -value if (x < 0 and n % 2) else value
    t_prev, t = 1.0, x
    if n == 0:
        return 1.0
    for _ in range(n - 1):
        t_prev, t = t, 2.0 * x * t - t_prev
    return t


def compose_scaled_chebyshev(p: Polynomial, n: int) -> Polynomial:
    """2 T_n(p/2) as a polynomial, from P_{k+1} = p P_k - P_{k-1}, P_0 = 2, P_1 = p."""
    if n == 0:
        return Polynomial((2.0,))
    prev, cur = Polynomial((2.0,)), p
    for _ in range(n - 1):
        prev, cur = cur, p * cur - prev
    return cur


def monic_extremal_on_interval(interval: tuple[float, float], n: int) -> tuple[Polynomial, float]:
    """Monic degree-n polynomial of least sup-norm on [alpha, beta] and that norm 2((beta-alpha)/4)^n."""
    alpha, beta = interval
    if not alpha < beta:
        raise InvalidModelError("need alpha < beta")
    if n < 1:
        raise ValueError("n must be positive")
    L = 2.0 * ((beta - alpha) / 4.0) ** n
    T = np.polynomial.Chebyshev.basis(n, domain=[alpha, beta]).convert(kind=np.polynomial.Polynomial)
    return Polynomial(T.coef * L), L


def alternation_points(interval: tuple[float, float], n: int) -> list[float]:
    """E_1 > ... > E_{n+1} where the extremal polynomial equals (-1)^(k+1) L_n."""
    alpha, beta = interval
    mid, half = 0.5 * (alpha + beta), 0.5 * (beta - alpha)
    return [mid + half * math.cos(math.pi * k / n) for k in range(n + 1)]


@dataclass(frozen=True)
class NestingReport:
    n: int
    coefficient_error: float
    pointwise_error: float
    passed: bool


def verify_nesting(spec: OperatorSpec, n: int, coef_tol: float = 1e-6, point_tol: float = 1e-9,
                   samples: int = 50) -> NestingReport:
    """Discriminant of the operator viewed with period nq against 2 T_n(Delta_q/2).

    Coefficient error is max |difference| over max |coefficient|; pointwise
    error is |difference| / max(1, |value|) on ``samples`` evenly spaced
    energies across the spectral hull.
    """
    if n * spec.period > MAX_POLY_PERIOD:
        raise SizeLimitError(f"n q = {n * spec.period} exceeds {MAX_POLY_PERIOD}")
    long_spec = repeat_period(spec, n)
    direct = discriminant_poly(long_spec).as_array()
    composed = compose_scaled_chebyshev(discriminant_poly(spec), n).as_array()
    size = max(len(direct), len(composed))
    direct = np.pad(direct, (0, size - len(direct)))
    composed = np.pad(composed, (0, size - len(composed)))
    coef_err = float(np.max(np.abs(direct - composed)) / np.max(np.abs(composed)))

    lo, hi = spectral_hull(spec)
    point_err = 0.0
    for E in np.linspace(lo, hi, samples):
        lhs = discriminant_eval(long_spec, float(E))
        rhs = 2.0 * chebyshev_T(n, discriminant_eval(spec, float(E)) / 2.0)
        point_err = max(point_err, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return NestingReport(n, coef_err, point_err, coef_err <= coef_tol and point_err <= point_tol)


@dataclass(frozen=True)
class NodeSystem:
    """Nodes E_1 > ... > E_m with values s(E_i) != 0 and derivatives s'(E_i)."""

    nodes: tuple[float, ...]
    s_values: tuple[float, ...]
    s_derivatives: tuple[float, ...]

    def __post_init__(self):
        for name in ("nodes", "s_values", "s_derivatives"):
            object.__setattr__(self, name, tuple(float(x) for x in getattr(self, name)))
        m = len(self.nodes)
        if m < 1 or len(self.s_values) != m or len(self.s_derivatives) != m:
            raise InvalidModelError("nodes, s_values and s_derivatives need equal positive length")
        if m > MAX_NODES:
            raise SizeLimitError(f"at most {MAX_NODES} nodes")
        if any(not x > y for x, y in zip(self.nodes, self.nodes[1:])):
            raise InvalidModelError("nodes must be strictly decreasing (coincident nodes are not allowed)")
        if any(v == 0 for v in self.s_values):
            raise InvalidModelError("s must not vanish at the nodes")

    @classmethod
    def from_function(cls, nodes: Sequence[float], s: Callable[[float], float],
                      ds: Callable[[float], float]) -> "NodeSystem":
        return cls(tuple(nodes), tuple(s(x) for x in nodes), tuple(ds(x) for x in nodes))

    @classmethod
    def linear(cls, nodes: Sequence[float], c: float) -> "NodeSystem":
        """s(E) = c E, the case arising from a discriminant with a zero at the origin."""
        return cls.from_function(nodes, lambda x: c * x, lambda x: c)

    @classmethod
    def constant(cls, nodes: Sequence[float], c: float) -> "NodeSystem":
        return cls.from_function(nodes, lambda x: c, lambda x: 0.0)

    @property
    def m(self) -> int:
        return len(self.nodes)

    @property
    def targets(self) -> np.ndarray:
        """(-1)^i / s(E_i) for i = 1..m."""
        return np.array([(-1) ** i / s for i, s in enumerate(self.s_values, start=1)])

    @property
    def node_products(self) -> np.ndarray:
        """B_i = prod_{j != i} (E_i - E_j)."""
        x = np.asarray(self.nodes)
        diff = x[:, None] - x[None, :]
        np.fill_diagonal(diff, 1.0)
        return np.prod(diff, axis=1)


def interp_T(ns: NodeSystem, E: float) -> float:
    """Monic degree-m polynomial with T(E_i) = (-1)^i / s(E_i), barycentric form plus node product."""
    x = np.asarray(ns.nodes)
    y = ns.targets
    d = E - x
    hit = np.flatnonzero(d == 0)
    if hit.size:
        return float(y[hit[0]])
    w = 1.0 / ns.node_products
    return float(np.prod(d) * (1.0 + np.sum(w * y / d)))


def interp_T_derivative_at_node(ns: NodeSystem, k: int) -> float:
    """T'(E_k), k 1-based, from the Lagrange differentiation matrix and d/dE prod (E - E_i)."""
    x = np.asarray(ns.nodes)
    y = ns.targets
    B = ns.node_products
    i = k - 1
    others = np.arange(ns.m) != i
    # l_j'(E_k) = (B_k / B_j) / (E_k - E_j) for j != k;  l_k'(E_k) = sum_{j != k} 1/(E_k - E_j)
    diff = x[i] - x[others]
    lagrange = np.sum(y[others] * (B[i] / B[others]) / diff) + y[i] * np.sum(1.0 / diff)
    return float(lagrange + B[i])


def prop_formula_rhs(ns: NodeSystem, k: int, E_star: float) -> float:
    """-(B_k(E*) / (B_k s(E_k))) d/dE[T s](E_k), the derivative of T(E*) in the node E_k."""
    if not 1 <= k <= ns.m:
        raise IndexError(k)
    i = k - 1
    x = np.asarray(ns.nodes)
    B_star = float(np.prod(E_star - np.delete(x, i)))
    B_k = float(ns.node_products[i])
    s, ds = ns.s_values[i], ns.s_derivatives[i]
    T_k = (-1) ** k / s
    d_Ts = interp_T_derivative_at_node(ns, k) * s + T_k * ds
    return -(B_star / (B_k * s)) * d_Ts
