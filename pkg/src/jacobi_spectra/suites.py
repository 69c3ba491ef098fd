"""Seeded verification suites shared by ``jacobi-spectra verify`` and the acceptance tests.

Each suite draws from its own generator, seeded from the user seed and the
suite name, so a suite gives the same numbers whether run alone or with the
others.  Every suite returns a plain dict with at least ``passed``,
``cases``, ``worst`` and ``tolerance``.
"""

from __future__ import annotations

import math
import zlib

import numpy as np

from .bands import band_length_bounds, band_structure, verify_theorem2
from .bounds import theorem1_bound, two_value_closed_form, verify_polya_ac
from .extremal import NodeSystem, interp_T, prop_formula_rhs, verify_nesting
from .ids import ids_exact, ids_truncation, verify_deift_simon
from .model import OperatorSpec, Window, make_constant, make_free, make_two_value, unroll
from .rng import XorShift64Star
from .transfer import corner_det, discriminant_eval

SUITES = ("bf", "theorem2", "polya", "deift-simon", "nesting", "ids", "prop2")


def suite_rng(seed: int, name: str) -> XorShift64Star:
    return XorShift64Star((seed << 32) ^ zlib.crc32(name.encode()))


def random_spec(rng: XorShift64Star, q_min: int = 3, q_max: int = 10,
                a_range=(0.5, 2.0), b_range=(-2.0, 2.0)) -> OperatorSpec:
    q = rng.randint(q_min, q_max)
    a = tuple(rng.uniform(*a_range) for _ in range(q))
    b = tuple(rng.uniform(*b_range) for _ in range(q))
    return OperatorSpec(q, a, b, label=f"random(q={q})")


def random_specs(seed: int, count: int, q_min: int = 3, q_max: int = 10) -> list[OperatorSpec]:
    rng = XorShift64Star(seed)
    return [random_spec(rng, q_min, q_max) for _ in range(count)]


def constant_specs() -> list[OperatorSpec]:
    return [make_constant(a0, b0, q) for q in range(1, 13) for a0, b0 in ((1.0, 0.0), (0.7, 1.3), (1.9, -0.4))]


def bf_identity(specs, seed: int, points: int = 50, tol: float = 1e-8) -> dict:
    """max |tr Phi_q(E) - A_q^{-q} det(E - J_q)| / (1 + |det|) over random E in [-6, 6]."""
    rng = suite_rng(seed, "bf-energies")
    worst = 0.0
    for spec in specs:
        lead = math.prod(spec.a)
        for _ in range(points):
            E = rng.uniform(-6.0, 6.0)
            det = corner_det(spec, E)
            worst = max(worst, abs(discriminant_eval(spec, E) - det / lead) / (1.0 + abs(det)))
    return {"passed": worst <= tol, "cases": len(specs) * points, "worst": worst, "tolerance": tol}


def theorem2(specs, equality_specs, tol: float = 1e-9) -> dict:
    worst_slack = math.inf
    failures = []
    for spec in specs:
        rep = verify_theorem2(spec, tol)
        worst_slack = min(worst_slack, rep.worst_slack)
        if not rep.passed:
            failures.append(spec.label)
    equality_error = 0.0
    for spec in equality_specs:
        bs = band_structure(spec)
        for j, bound in enumerate(band_length_bounds(spec), start=1):
            l, r = bs.band_from_right(j)
            equality_error = max(equality_error, abs((r - l) - bound))
    passed = not failures and equality_error <= tol
    return {"passed": passed, "cases": len(specs) + len(equality_specs), "worst": -worst_slack,
            "tolerance": tol, "equality_error": equality_error, "failures": failures}


def polya(specs, equality_specs, seed: int, tol: float = 1e-9) -> dict:
    worst = -math.inf
    failures = []
    for i, spec in enumerate(specs):
        rep = verify_polya_ac(spec, seed=seed * 1000 + i, tol=tol)
        worst = max(worst, rep.worst_excess)
        if not rep.passed:
            failures.append(spec.label)
    equality_error = max(abs(verify_polya_ac(s, n_windows=0).total_measure - 4 * s.geometric_mean)
                         for s in equality_specs)
    return {"passed": not failures and equality_error <= tol, "cases": len(specs) + len(equality_specs),
            "worst": worst, "tolerance": tol, "equality_error": equality_error, "failures": failures}


def two_value_bounds(tol: float = 1e-12) -> dict:
    """Window bounds of the two-value model against 4/(R-4)^(l/m) and 4/(R-4)^(m/l)."""
    worst = 0.0
    for R in (6.0, 8.0, 20.0):
        for m, l in ((1, 1), (2, 1), (1, 3)):
            spec = make_two_value(R, m, l)
            expected = two_value_closed_form(R, m, l)
            for w, want in zip((Window(-2, 2), Window(R - 2, R + 2)), expected):
                for t in (1, 3):
                    got = theorem1_bound(unroll(spec, t * spec.period), w).value
                    worst = max(worst, abs(got - want) / want)
    return {"passed": worst <= tol, "cases": 36, "worst": worst, "tolerance": tol}


def deift_simon(specs, points_per_band: int = 20, margin: float = 1e-6) -> dict:
    free_err = 0.0
    for q in range(1, 7):
        rep = verify_deift_simon(make_free(q), points_per_band, margin=margin)
        free_err = max(free_err, abs(rep.min_lhs - 1.0), abs(rep.max_lhs - 1.0))
    worst = math.inf
    failures = []
    for spec in specs:
        rep = verify_deift_simon(spec, points_per_band, margin=margin)
        worst = min(worst, rep.min_lhs)
        if not rep.passed:
            failures.append(spec.label)
    return {"passed": not failures and free_err <= margin, "cases": 6 + len(specs),
            "worst": 1.0 - worst, "tolerance": margin, "free_laplacian_error": free_err, "failures": failures}


def nesting(seed: int, count: int = 20, coef_tol: float = 1e-6, point_tol: float = 1e-9) -> dict:
    specs = random_specs(seed, count, q_min=1, q_max=6) + [make_free(1), make_two_value(8, 1, 1)]
    coef, point = 0.0, 0.0
    for spec in specs:
        for n in range(1, 5):
            rep = verify_nesting(spec, n, coef_tol, point_tol)
            coef, point = max(coef, rep.coefficient_error), max(point, rep.pointwise_error)
    return {"passed": coef <= coef_tol and point <= point_tol, "cases": 4 * len(specs),
            "worst": point, "tolerance": point_tol, "coefficient_error": coef, "coefficient_tolerance": coef_tol}


def ids_oracle(seed: int, grid_points: int = 200, tol: float = 2e-3) -> dict:
    specs = [make_free(1), make_two_value(8, 1, 1)] + [random_spec(suite_rng(seed, f"ids{q}"), q, q) for q in range(1, 9)]
    worst = 0.0
    for spec in specs:
        lo, hi = min(spec.b) - 2 * max(spec.a) - 0.5, max(spec.b) + 2 * max(spec.a) + 0.5
        grid = np.linspace(lo, hi, grid_points)
        exact = np.array([ids_exact(spec, float(E)) for E in grid])
        trunc = ids_truncation(spec, 2000 * spec.period, grid)
        worst = max(worst, float(np.max(np.abs(exact - trunc))))
    return {"passed": worst <= tol, "cases": len(specs), "worst": worst, "tolerance": tol}


def random_node_system(rng: XorShift64Star):
    """Nodes drawn from a 0.25-spaced lattice in [-6, 6] avoiding |E| < 0.5; s = cE or s = c."""
    m = rng.randint(1, 8)
    lattice = [x / 4 for x in range(-24, 25) if abs(x) >= 2]
    picked = set()
    while len(picked) < m:
        picked.add(lattice[rng.randint(0, len(lattice) - 1)])
    nodes = sorted(picked, reverse=True)
    c = rng.uniform(0.3, 2.0)
    if rng.random() < 0.5:
        s, ds = (lambda x: c * x), (lambda x: c)
    else:
        s, ds = (lambda x: c), (lambda x: 0.0)
    return nodes, s, ds


def prop2(seed: int, count: int = 100, delta: float = 1e-6, tol: float = 1e-5) -> dict:
    """Closed-form node derivative of T against central differences in the node."""
    rng = suite_rng(seed, "prop2")
    worst = 0.0
    for _ in range(count):
        nodes, s, ds = random_node_system(rng)
        k = rng.randint(1, len(nodes))
        E_star = rng.uniform(-6.0, 6.0)
        up, down = list(nodes), list(nodes)
        up[k - 1] += delta
        down[k - 1] -= delta
        fd = (interp_T(NodeSystem.from_function(up, s, ds), E_star)
              - interp_T(NodeSystem.from_function(down, s, ds), E_star)) / (2 * delta)
        rhs = prop_formula_rhs(NodeSystem.from_function(nodes, s, ds), k, E_star)
        worst = max(worst, abs(rhs - fd) / max(abs(fd), 1e-300))
    return {"passed": worst <= tol, "cases": count, "worst": worst, "tolerance": tol}


def run_suite(name: str, seed: int, count: int = 100, tol: float = 1e-9) -> dict:
    specs = random_specs(seed, count)
    if name == "bf":
        out = bf_identity(specs, seed)
    elif name == "theorem2":
        out = theorem2(specs, constant_specs(), tol)
    elif name == "polya":
        out = polya(specs, constant_specs(), seed, tol)
        out["two_value"] = two_value_bounds()
        out["passed"] = out["passed"] and out["two_value"]["passed"]
    elif name == "deift-simon":
        out = deift_simon(specs)
    elif name == "nesting":
        out = nesting(seed)
    elif name == "ids":
        out = ids_oracle(seed)
    elif name == "prop2":
        out = prop2(seed, count)
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return {"suite": name, **out}
