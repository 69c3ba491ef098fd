"""Operator data: periodic Jacobi specifications, finite prefixes and windows.

Sequences are stored 0-based but documented 1-based, so ``spec.a[0]`` is
a(1).  The boundary convention for the half-line operator is a(0) = 1 and
psi(0) = 0 throughout the package.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidModelError


def _check_sequences(a: Sequence[float], b: Sequence[float], n: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    if n < 1:
        raise InvalidModelError(f"length must be a positive integer, got {n}")
    a = tuple(float(x) for x in a)
    b = tuple(float(x) for x in b)
    if len(a) != n or len(b) != n:
        raise InvalidModelError(f"expected {n} entries in a and b, got {len(a)} and {len(b)}")
    if not all(math.isfinite(x) for x in a + b):
        raise InvalidModelError("a and b must be finite")
    if not all(x > 0 for x in a):
        raise InvalidModelError("off-diagonal entries a(j) must be strictly positive")
    return a, b


@dataclass(frozen=True)
class OperatorSpec:
    """Periodic Jacobi operator J(a, b) with a(n + q) = a(n), b(n + q) = b(n)."""

    period: int
    a: tuple[float, ...]
    b: tuple[float, ...]
    label: str = ""

    def __post_init__(self):
        if not isinstance(self.period, int) or isinstance(self.period, bool):
            raise InvalidModelError(f"period must be an integer, got {self.period!r}")
        a, b = _check_sequences(self.a, self.b, self.period)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def geometric_mean(self) -> float:
        return math.exp(math.fsum(math.log(x) for x in self.a) / self.period)

    def to_dict(self) -> dict:
        return {"period": self.period, "a": list(self.a), "b": list(self.b), "label": self.label}

    @classmethod
    def from_dict(cls, data) -> "OperatorSpec":
        if not isinstance(data, dict):
            raise InvalidModelError("operator JSON must be an object")
        try:
            return cls(int(data["period"]), tuple(data["a"]), tuple(data["b"]), str(data.get("label", "")))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidModelError):
                raise
            raise InvalidModelError(f"malformed operator JSON: {exc}") from exc


@dataclass(frozen=True)
class FinitePrefix:
    """The first n entries a(1..n), b(1..n) of a (possibly non-periodic) operator."""

    n: int
    a: tuple[float, ...]
    b: tuple[float, ...]

    def __post_init__(self):
        a, b = _check_sequences(self.a, self.b, self.n)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


@dataclass(frozen=True)
class Window:
    """Open energy interval (E_L, E_R); either end may be infinite."""

    E_L: float = -math.inf
    E_R: float = math.inf

    def __post_init__(self):
        if math.isnan(self.E_L) or math.isnan(self.E_R) or not self.E_L < self.E_R:
            raise InvalidModelError(f"window needs E_L < E_R, got ({self.E_L}, {self.E_R})")


class RHypothesisWarning(UserWarning):
    """Two-value model built with R < 5, outside the range of the containment claim."""


def make_constant(a0: float, b0: float, q: int = 1) -> OperatorSpec:
    if not a0 > 0:
        raise InvalidModelError(f"a0 must be positive, got {a0}")
    return OperatorSpec(q, (a0,) * q, (b0,) * q, label=f"constant(a={a0:g}, b={b0:g}, q={q})")


def make_free(q: int = 1) -> OperatorSpec:
    spec = make_constant(1.0, 0.0, q)
    return OperatorSpec(q, spec.a, spec.b, label=f"free(q={q})")


def make_two_value(R: float, m: int, l: int) -> OperatorSpec:
    """a = 1 and b = (0 repeated m times, then R repeated l times), period m + l.

    R < 5 still yields a valid operator; a RHypothesisWarning is issued because
    the band containment in (-2, 2) and (R - 2, R + 2) needs R >= 5.
    """
    if m < 1 or l < 1:
        raise InvalidModelError(f"m and l must be positive, got m={m}, l={l}")
    if R < 5:
        warnings.warn(f"two-value model with R={R} < 5", RHypothesisWarning, stacklevel=2)
    q = m + l
    b = (0.0,) * m + (float(R),) * l
    return OperatorSpec(q, (1.0,) * q, b, label=f"two-value(R={R:g}, m={m}, l={l})")


def unroll(spec: OperatorSpec, n: int) -> FinitePrefix:
    """First n entries of the periodic extension of ``spec``."""
    q = spec.period
    return FinitePrefix(n, tuple(spec.a[j % q] for j in range(n)), tuple(spec.b[j % q] for j in range(n)))


def repeat_period(spec: OperatorSpec, times: int) -> OperatorSpec:
    """The same operator viewed as periodic with period ``times * q``."""
    if times < 1:
        raise InvalidModelError(f"times must be positive, got {times}")
    return OperatorSpec(spec.period * times, spec.a * times, spec.b * times, label=spec.label)


def as_prefix(spec: OperatorSpec) -> FinitePrefix:
    return unroll(spec, spec.period)
