"""Sturm-sequence eigenvalue counting and bisection for symmetric tridiagonal matrices."""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np

from .errors import InvalidModelError
from .model import FinitePrefix

PIVOT_FLOOR = 1e-300


@dataclass(frozen=True)
class Tridiag:
    """diag has n entries, offdiag n - 1 strictly positive entries."""

    diag: tuple[float, ...]
    offdiag: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "diag", tuple(float(x) for x in self.diag))
        object.__setattr__(self, "offdiag", tuple(float(x) for x in self.offdiag))
        if not self.diag:
            raise InvalidModelError("empty matrix")
        if len(self.offdiag) != len(self.diag) - 1:
            raise InvalidModelError("offdiag must have exactly n - 1 entries")
        if not all(x > 0 for x in self.offdiag):
            raise InvalidModelError("offdiag entries must be strictly positive")

    @property
    def n(self) -> int:
        return len(self.diag)

    @classmethod
    def from_prefix(cls, prefix: FinitePrefix) -> "Tridiag":
        """Top-left n x n block of J(a, b)."""
        return cls(prefix.b, prefix.a[:-1])

    def gershgorin(self) -> tuple[float, float]:
        d = np.asarray(self.diag)
        r = np.zeros(self.n)
        off = np.asarray(self.offdiag)
        r[:-1] += off
        r[1:] += off
        return float(np.min(d - r)), float(np.max(d + r))


def sturm_count(t: Tridiag, E):
    """Number of eigenvalues strictly below E (scalar or array of shifts).

    Counts negative pivots of the LDL^T factorization of t - E; a pivot that
    underflows is replaced by +-1e-300 with its sign kept (zero maps to +).
    """
    E = np.asarray(E, dtype=float)
    count = np.zeros(E.shape, dtype=np.int64)
    off_sq = np.square(np.asarray(t.offdiag))
    d = None
    for k, b in enumerate(t.diag):
        d = (b - E) if d is None else (b - E) - off_sq[k - 1] / d
        d = np.where(np.abs(d) < PIVOT_FLOOR, np.where(d < 0, -PIVOT_FLOOR, PIVOT_FLOOR), d)
        count += d < 0
    return int(count) if count.ndim == 0 else count


def eigenvalues(t: Tridiag, tol: float = 1e-12) -> np.ndarray:
    """All eigenvalues, ascending, each bisected on Sturm counts to width <= tol."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    glo, ghi = t.gershgorin()
    idx = np.arange(t.n)
    lo = np.full(t.n, glo - tol)
    hi = np.full(t.n, ghi + tol)
    while True:
        width = hi - lo
        if np.all(width <= tol):
            break
        mid = 0.5 * (lo + hi)
        stuck = (mid <= lo) | (mid >= hi)
        if np.all(stuck | (width <= tol)):
            break
        below = sturm_count(t, mid) > idx
        hi = np.where(below, mid, hi)
        lo = np.where(below, lo, mid)
    return 0.5 * (lo + hi)


def nudge(E):
    """Shift used to turn the strict Sturm count into the count of lambda <= E."""
    return E + 1e-14 * (1.0 + np.abs(E))


def k_n(prefix: FinitePrefix, E):
    """Finite-volume counting function (1/n) #{j : lambda_j <= E} of the top-left block."""
    t = Tridiag.from_prefix(prefix)
    return sturm_count(t, nudge(np.asarray(E, dtype=float))) / prefix.n

