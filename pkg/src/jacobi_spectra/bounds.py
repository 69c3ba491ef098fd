"""Upper bounds on the size of the absolutely continuous spectrum, window by window.

For a prefix of length n and a window (E_L, E_R):

    A_n  = (a(1)...a(n))^(1/n),     M = max a(j),
    I_n  = {j : b(j) in (E_L - 2M - A_n, E_R + 2M + A_n)},
    D_n  = prod_{j not in I_n} (min(|b(j) - E_R|, |b(j) - E_L|) - 2M),
    bound = 4 (A_n^n / D_n)^(1/#I_n).

All products are accumulated as logarithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .bands import ac_measure, band_structure, spectral_hull
from .errors import InvalidModelError, NumericalError
from .model import FinitePrefix, OperatorSpec, Window, unroll
from .rng import XorShift64Star


def geometric_mean(a: Sequence[float]) -> float:
    if len(a) == 0:
        raise InvalidModelError("geometric mean of an empty sequence")
    if any(not x > 0 for x in a):
        raise InvalidModelError("geometric mean needs positive entries")
    return math.exp(math.fsum(math.log(x) for x in a) / len(a))


@dataclass(frozen=True)
class BoundReport:
    n: int
    A_n: float
    M: float
    I_n_size: int
    ln_D_n: float
    log_bound: float | None
    bound: float | None
    zero_measure: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "A_n": self.A_n,
            "M": self.M,
            "I_n_size": self.I_n_size,
            "ln_D_n": self.ln_D_n,
            "log_bound": self.log_bound,
            "bound": "zero-measure" if self.zero_measure else self.bound,
        }

    @property
    def value(self) -> float:
        """Numeric bound, 0 when the window carries no a.c. spectrum."""
        return 0.0 if self.zero_measure else self.bound


def _distance(b: float, edge: float) -> float:
    return math.inf if math.isinf(edge) else abs(b - edge)


def theorem1_bound(prefix: FinitePrefix, w: Window = Window()) -> BoundReport:
    n = prefix.n
    ln_A = math.fsum(math.log(x) for x in prefix.a) / n
    A = math.exp(ln_A)
    M = max(prefix.a)
    lo = w.E_L - 2 * M - A
    hi = w.E_R + 2 * M + A
    in_window = 0
    ln_factors = []
    for bj in prefix.b:
        if lo < bj < hi:
            in_window += 1
            continue
        factor = min(_distance(bj, w.E_R), _distance(bj, w.E_L)) - 2 * M
        if not factor > 0:
            raise NumericalError(f"non-positive D_n factor {factor} for b = {bj}")
        ln_factors.append(math.log(factor))
    ln_D = math.fsum(ln_factors)
    if in_window == 0:
        return BoundReport(n, A, M, 0, ln_D, None, None, True)
    log_bound = math.log(4.0) + (n * ln_A - ln_D) / in_window
    bound = math.exp(log_bound) if log_bound < 709.0 else math.inf
    return BoundReport(n, A, M, in_window, ln_D, log_bound, bound, False)


def bound_table(spec: OperatorSpec, w: Window, t: int) -> list[BoundReport]:
    """Reports for n = q, 2q, ..., tq; their minimum stands in for the liminf."""
    return [theorem1_bound(unroll(spec, k * spec.period), w) for k in range(1, t + 1)]


def two_value_closed_form(R: float, m: int, l: int) -> tuple[float, float]:
    """Bounds for the windows (-2, 2) and (R - 2, R + 2) of the two-value model."""
    return 4.0 / (R - 4.0) ** (l / m), 4.0 / (R - 4.0) ** (m / l)


def global_bound(prefix: FinitePrefix) -> float:
    return 4.0 * geometric_mean(prefix.a)


def polya_lower_bound(measure: float, n: int) -> tuple[float, float]:
    """(log value, value) of |K|^n / 2^(2n-1); value is inf when not representable."""
    if measure < 0:
        raise ValueError("measure must be nonnegative")
    if n < 1:
        raise ValueError("n must be positive")
    if measure == 0:
        return -math.inf, 0.0
    log_value = n * math.log(measure) - (2 * n - 1) * math.log(2.0)
    return log_value, (math.exp(log_value) if log_value < 709.0 else math.inf)


def random_window(rng: XorShift64Star, spec: OperatorSpec) -> Window:
    """Window with ends drawn around the spectral hull; one end is infinite 10% of the time each."""
    lo, hi = spectral_hull(spec)
    pad = 0.25 * (hi - lo)
    x, y = sorted((rng.uniform(lo - pad, hi + pad), rng.uniform(lo - pad, hi + pad)))
    if y - x < 1e-6:
        y = x + 1e-6
    if rng.random() < 0.1:
        x = -math.inf
    if rng.random() < 0.1:
        y = math.inf
    return Window(x, y)


@dataclass(frozen=True)
class WindowCheck:
    window: tuple[float, float]
    measure: float
    bound: float
    ok: bool


@dataclass(frozen=True)
class PolyaReport:
    total_measure: float
    global_bound: float
    global_ok: bool
    equality: bool
    windows: tuple[WindowCheck, ...]
    passed: bool
    worst_excess: float


def verify_polya_ac(spec: OperatorSpec, seed: int = 0, n_windows: int = 20,
                    multipliers: Sequence[int] = (1, 2, 4, 8), tol: float = 1e-9) -> PolyaReport:
    """|Sigma_ac| <= 4 A_q, and the window bound dominates the band measure on random windows."""
    bs = band_structure(spec)
    total = ac_measure(bs)
    g = 4.0 * spec.geometric_mean
    rng = XorShift64Star(seed)
    checks = []
    excess = [total - g]
    for _ in range(n_windows):
        w = random_window(rng, spec)
        measure = ac_measure(bs, w)
        for t in multipliers:
            rep = theorem1_bound(unroll(spec, t * spec.period), w)
            excess.append(measure - rep.value)
            checks.append(WindowCheck((w.E_L, w.E_R), measure, rep.value, measure <= rep.value + tol))
    global_ok = total <= g + tol
    return PolyaReport(total, g, global_ok, abs(total - g) <= tol, tuple(checks),
                       global_ok and all(c.ok for c in checks), max(excess))
