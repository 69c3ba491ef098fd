"""Integrated density of states of periodic operators and the Deift-Simon check.

Inside the j-th band (left to right) with left-edge value Delta(l_j) = 2 eps,

    k(E) = (j - 1)/q + arccos(eps Delta(E)/2) / (pi q),

and k = j/q throughout the gap after band j.  The truncation count k_N of the
top-left N x N block is kept as an independent check of this formula.

The arccos is evaluated as 2 atan2(sqrt(u), sqrt(v)) with u = 1 - eps Delta/2
and v = 1 + eps Delta/2 taken from the factorizations Delta -+ 2 =
A_q^{-q} prod (E - e) over the band edges; this keeps full relative accuracy
next to the edges, where 1 -+ Delta/2 computed directly cancels.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .bands import band_structure
from .errors import InvalidModelError
from .model import OperatorSpec, unroll
from .transfer import discriminant_eval
from .tridiag import k_n


# ulp-level edge errors perturb the lhs by about eps |E| / |band|; 1e8 eps keeps that under 1e-8
RESOLVABLE_BAND = 1e8 * np.finfo(float).eps


@functools.lru_cache(maxsize=512)
def _edge_levels(spec: OperatorSpec) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Roots of Delta - 2 and of Delta + 2, with closed gaps contributing double roots."""
    bs = band_structure(spec)
    plus, minus = [], []
    for (l, r), sgn in zip(bs.bands, bs.edge_signs):
        (plus if sgn > 0 else minus).append(l)
        (minus if sgn > 0 else plus).append(r)
    return tuple(plus), tuple(minus)


def _scaled_product(E: float, roots, A: float) -> float:
    p = 1.0
    for e in roots:
        p *= (E - e) / A
    return p


def band_angle(spec: OperatorSpec, E: float) -> tuple[str, int, float]:
    """('band', j, theta) with theta = arccos(eps Delta(E)/2) in [0, pi], or ('gap', j, nan)."""
    bs = band_structure(spec)
    kind, j = bs.locate(E)
    if kind == "gap":
        return kind, j, math.nan
    plus, minus = _edge_levels(spec)
    A = spec.geometric_mean
    half_gap_plus = -0.5 * _scaled_product(E, plus, A)   # (2 - Delta)/2
    half_gap_minus = 0.5 * _scaled_product(E, minus, A)  # (2 + Delta)/2
    u, v = (half_gap_plus, half_gap_minus) if bs.edge_signs[j - 1] > 0 else (half_gap_minus, half_gap_plus)
    return kind, j, 2.0 * math.atan2(math.sqrt(max(u, 0.0)), math.sqrt(max(v, 0.0)))


def ids_exact(spec: OperatorSpec, E: float) -> float:
    q = spec.period
    kind, j, theta = band_angle(spec, E)
    if kind == "gap":
        return j / q
    return (j - 1) / q + theta / (math.pi * q)


def ids_exact_direct(spec: OperatorSpec, E: float) -> float:
    """Same function through arccos of the evaluated discriminant (clamped); less accurate at edges."""
    bs = band_structure(spec)
    q = spec.period
    kind, j = bs.locate(E)
    if kind == "gap":
        return j / q
    eps = bs.edge_signs[j - 1] / 2
    x = min(1.0, max(-1.0, eps * discriminant_eval(spec, E) / 2))
    return (j - 1) / q + math.acos(x) / (math.pi * q)


def ids_truncation(spec: OperatorSpec, N: int, E):
    """k_N(E) for the top-left N x N block of the periodic operator (scalar or array E)."""
    if N < spec.period:
        raise InvalidModelError(f"N = {N} must be at least the period {spec.period}")
    return k_n(unroll(spec, N), E)


@dataclass(frozen=True)
class IdsProfile:
    grid: tuple[float, ...]
    values: tuple[float, ...]
    method: str

    def to_dict(self) -> dict:
        return {"method": self.method, "grid": list(self.grid), "values": list(self.values)}


def ids_profile(spec: OperatorSpec, grid, method: str = "exact-band", N: int | None = None) -> IdsProfile:
    grid = np.asarray(grid, dtype=float)
    if np.any(np.diff(grid) < 0):
        raise InvalidModelError("grid must be ascending")
    if method == "exact-band":
        values = [ids_exact(spec, float(E)) for E in grid]
        label = method
    elif method == "truncation":
        if N is None:
            raise InvalidModelError("truncation method needs N")
        values = [float(v) for v in np.atleast_1d(ids_truncation(spec, N, grid))]
        label = f"truncation({N})"
    else:
        raise InvalidModelError(f"unknown IDS method {method!r}")
    return IdsProfile(tuple(float(x) for x in grid), tuple(values), label)


def deift_simon_lhs(spec: OperatorSpec, E: float, h: float) -> float:
    """2 pi A_q sin(pi k(E)) k'(E), i.e. A_q d/dE[-2 cos(pi k(E))].

    The derivative is a central difference of -2 cos(pi k) with step h.  That
    function is smooth across closed gaps and at the outermost edges, where k
    itself has square-root behaviour.
    """
    if not h > 0:
        raise ValueError("h must be positive")
    bs = band_structure(spec)
    kind, j = bs.locate(E)
    if kind != "band":
        raise ValueError(f"E = {E} is not in a band")
    l, r = bs.bands[j - 1]
    if not (E - l > h and r - E > h):
        raise ValueError(f"E = {E} is within h of a band edge")

    def F(x):
        return -2.0 * math.cos(math.pi * ids_exact(spec, x))

    # divide by the step actually taken: E +- h are rounded
    up, down = E + h, E - h
    return spec.geometric_mean * (F(up) - F(down)) / (up - down)


@dataclass(frozen=True)
class DeiftSimonReport:
    passed: bool
    min_lhs: float
    max_lhs: float
    min_location: float
    points: int
    skipped_bands: tuple[int, ...]


def verify_deift_simon(spec: OperatorSpec, points_per_band: int = 20, h: float | None = None,
                       margin: float = 1e-6) -> DeiftSimonReport:
    """Evaluates the left-hand side on an interior grid of every band (5h away from edges).

    With h None the step is 1e-6 times the band length, per band.  Bands too
    short to hold the buffered grid, or shorter than RESOLVABLE_BAND relative
    to |E| (their edges carry ulp errors comparable to the margin), are listed
    in ``skipped_bands``.
    """
    if points_per_band < 1:
        raise ValueError("points_per_band must be >= 1")
    bs = band_structure(spec)
    values, where, skipped = [], [], []
    for j, (l, r) in enumerate(bs.bands, start=1):
        step = h if h is not None else 1e-6 * (r - l)
        if r - l <= 10 * step or r - l < RESOLVABLE_BAND * (1.0 + abs(l) + abs(r)):
            skipped.append(j)
            continue
        for E in np.linspace(l + 5 * step, r - 5 * step, points_per_band):
            values.append(deift_simon_lhs(spec, float(E), step))
            where.append(float(E))
    if not values:
        return DeiftSimonReport(False, math.nan, math.nan, math.nan, 0, tuple(skipped))
    i = int(np.argmin(values))
    return DeiftSimonReport(values[i] >= 1 - margin, values[i], max(values), where[i], len(values), tuple(skipped))
