"""Band structure of periodic Jacobi operators: the set {E : |Delta(E)| <= 2}.

Bands are stored left to right.  The alternative numbering B_1, ..., B_q runs
right to left, so B_j is ``bands[q - j]``.

Zeros of Delta are bracketed by the Dirichlet eigenvalues of the top-left
(q - 1) x (q - 1) block, one of which lies in the closure of every gap.
Critical points of Delta are bisected between consecutive zeros; a gap whose
peak |Delta| exceeds 2 by no more than the rounding level is treated as closed
and both edges are put at the critical point.  Everything runs on the
evaluation form of Delta, so no cap on q applies.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .model import OperatorSpec, Window
from .transfer import discriminant_and_derivative, discriminant_eval
from .tridiag import Tridiag, eigenvalues

DEFAULT_TOL = 1e-12
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class BandStructure:
    period: int
    bands: tuple[tuple[float, float], ...]
    edge_signs: tuple[int, ...]
    closed_gaps: tuple[bool, ...]

    @property
    def lengths(self) -> tuple[float, ...]:
        return tuple(r - l for l, r in self.bands)

    def rtl_index(self, j: int) -> int:
        """0-based position in ``bands`` of the j-th band counted from the right (j = 1..q)."""
        if not 1 <= j <= self.period:
            raise IndexError(j)
        return self.period - j

    def band_from_right(self, j: int) -> tuple[float, float]:
        return self.bands[self.rtl_index(j)]

    def locate(self, E: float) -> tuple[str, int]:
        """('band', j) or ('gap', j) with j the number of bands lying left of E's gap, 1-based band."""
        for j, (l, r) in enumerate(self.bands, start=1):
            if E < l:
                return "gap", j - 1
            if E <= r:
                return "band", j
        return "gap", self.period

    def to_dict(self) -> dict:
        return {
            "period": self.period,
            "bands": [list(b) for b in self.bands],
            "edge_signs": list(self.edge_signs),
            "closed_gaps": list(self.closed_gaps),
        }


def _abs_scale(spec: OperatorSpec, E: float) -> float:
    """Trace of the product of entrywise absolute one-step matrices: bounds the rounding amplification."""
    m00, m01, m10, m11 = 1.0, 0.0, 0.0, 1.0
    a_prev = spec.a[-1]
    for a_cur, b_cur in zip(spec.a, spec.b):
        x = abs(E - b_cur) / a_cur
        r = a_prev / a_cur
        m00, m01, m10, m11 = x * m00 + r * m10, x * m01 + r * m11, m00, m01
        a_prev = a_cur
    return m00 + m11


def _bisect(pred, lo: float, hi: float, tol: float, keep: str = "mid") -> float:
    """pred(lo) is False, pred(hi) is True (lo > hi allowed); returns the switch point.

    keep="mid" returns the bracket midpoint, "true"/"false" the end where pred holds/fails.
    """
    for _ in range(400):
        if abs(hi - lo) <= tol * (1.0 + abs(lo) + abs(hi)) * 0.5:
            break
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if pred(mid):
            hi = mid
        else:
            lo = mid
    if keep == "true":
        return float(hi)
    if keep == "false":
        return float(lo)
    return float(0.5 * (lo + hi))


def spectral_hull(spec: OperatorSpec) -> tuple[float, float]:
    """Interval strictly containing every band."""
    M = max(spec.a)
    return min(spec.b) - 2 * M - 1.0, max(spec.b) + 2 * M + 1.0


@functools.lru_cache(maxsize=512)
def band_structure(spec: OperatorSpec, tol: float = DEFAULT_TOL) -> BandStructure:
    q = spec.period
    lower, upper = spectral_hull(spec)
    delta = functools.partial(discriminant_eval, spec)

    if q >= 2:
        mu = [float(x) for x in eigenvalues(Tridiag(spec.b[:-1], spec.a[:-2]), tol=1e-15)]
    else:
        mu = []
    # Delta at mu_j (j = 1..q-1) has sign (-1)^(q-j) and modulus >= 2; when the
    # neighbouring band is narrower than an ulp, mu may round across it, so a few
    # ulps either side are tried
    for j, m in enumerate(mu, start=1):
        want = (-1) ** (q - j)
        for k in (0, 1, -1, 2, -2, 4, -4, 8, -8, 16, -16):
            x = m + k * np.spacing(m)
            v = delta(x)
            if math.copysign(1.0, v) == want and abs(v) >= 2 - 1e-6:
                mu[j - 1] = float(x)
                break
        else:
            raise NumericalError(f"Dirichlet eigenvalue {m} does not sit in a gap (Delta = {delta(m)})")
    brackets = [lower] + mu + [upper]

    zeros = []
    for j in range(1, q + 1):
        right_sign = (-1) ** (q - j)
        lo, hi = (brackets[j - 1], brackets[j]) if right_sign > 0 else (brackets[j], brackets[j - 1])
        zeros.append(_bisect(lambda E: delta(E) > 0, lo, hi, tol))
    if any(z2 <= z1 for z1, z2 in zip(zeros, zeros[1:])):
        raise NumericalError("zeros of the discriminant are not strictly increasing")

    def inside(E):
        return abs(delta(E)) <= 2.0

    def outside(E):
        return not inside(E)

    # edges are refined to ~eps and snapped to the inside end: on steep narrow bands
    # a width-tol bracket would leave |Delta(edge)| visibly above 2
    edge_tol = min(tol, _EPS)
    lefts = [_bisect(inside, lower, zeros[0], edge_tol, keep="true")]
    rights = []
    closed = []
    for j in range(1, q):
        # Delta' has sign (-1)^(q-j) at zeros[j-1] and the opposite sign at zeros[j]
        s = (-1) ** (q - j)
        c = _bisect(lambda E: s * discriminant_and_derivative(spec, E)[1] < 0, zeros[j - 1], zeros[j], tol)
        excess = abs(delta(c)) - 2.0
        noise = 64 * q * _EPS * _abs_scale(spec, c)
        if excess < -noise or math.copysign(1.0, delta(c)) != s:
            raise NumericalError(f"critical point {c} of the discriminant lies inside a band")
        if excess <= noise:
            rights.append(c)
            lefts.append(c)
            closed.append(True)
            continue
        r = _bisect(outside, zeros[j - 1], c, edge_tol, keep="false")
        l = _bisect(inside, c, zeros[j], edge_tol, keep="true")
        rights.append(r)
        lefts.append(l)
        closed.append(bool(l - r <= tol * (1.0 + abs(c))))
    rights.append(_bisect(outside, zeros[-1], upper, edge_tol, keep="false"))

    signs = tuple(-2 * (-1) ** (q - j) for j in range(1, q + 1))
    bands = []
    for l, r, sgn in zip(lefts, rights, signs):
        width = 4 * np.spacing(max(abs(l), abs(r)))
        if r - l <= width:
            # band narrower than double resolution: edge values are meaningless there
            if r < l - width:
                raise NumericalError(f"inverted band [{l}, {r}]")
            bands.append((l, r) if l <= r else (0.5 * (l + r),) * 2)
            continue
        if abs(delta(l) - sgn) > 1e-6 + 1e3 * q * _EPS * _abs_scale(spec, l):
            raise NumericalError(f"edge sign mismatch at {l}: Delta = {delta(l)}, expected {sgn}")
        bands.append((l, r))
    return BandStructure(q, tuple(bands), signs, tuple(closed))


def in_spectrum(spec: OperatorSpec, E):
    return np.abs(discriminant_eval(spec, E)) <= 2.0


def ac_measure(bs: BandStructure, w: Window = Window()) -> float:
    """Length of the union of bands intersected with the open window."""
    return math.fsum(max(0.0, min(r, w.E_R) - max(l, w.E_L)) for l, r in bs.bands)


def band_length_bounds(spec: OperatorSpec) -> list[float]:
    """2 A_q [cos(pi (j-1)/q) - cos(pi j/q)] for j = 1..q counted from the right."""
    q = spec.period
    A = spec.geometric_mean
    return [2 * A * (math.cos(math.pi * (j - 1) / q) - math.cos(math.pi * j / q)) for j in range(1, q + 1)]


@dataclass(frozen=True)
class BandCheck:
    rtl_index: int
    band: tuple[float, float]
    length: float
    bound: float
    ok: bool
    equality: bool


@dataclass(frozen=True)
class Theorem2Report:
    checks: tuple[BandCheck, ...]
    passed: bool
    all_equal: bool
    worst_slack: float


def verify_theorem2(spec: OperatorSpec, tol: float = 1e-9) -> Theorem2Report:
    """Each band length against its Chebyshev bound; equality flags mark |length - bound| <= tol."""
    bs = band_structure(spec)
    checks = []
    for j, bound in enumerate(band_length_bounds(spec), start=1):
        l, r = bs.band_from_right(j)
        length = r - l
        checks.append(BandCheck(j, (l, r), length, bound, bool(length <= bound + tol), bool(abs(length - bound) <= tol)))
    return Theorem2Report(
        tuple(checks),
        all(c.ok for c in checks),
        all(c.equality for c in checks),
        min(c.bound - c.length for c in checks),
    )
