import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from jacobi_spectra.errors import InvalidModelError, SizeLimitError
from jacobi_spectra.extremal import (NodeSystem, alternation_points, chebyshev_T, compose_scaled_chebyshev,
                                     interp_T, interp_T_derivative_at_node, monic_extremal_on_interval,
                                     prop_formula_rhs, verify_nesting)
from jacobi_spectra.model import make_free, make_two_value
from jacobi_spectra.polynomial import Polynomial

from conftest import specs


def test_chebyshev_values():
    assert chebyshev_T(0, 0.3) == 1.0
    assert chebyshev_T(1, 0.3) == 0.3
    assert chebyshev_T(2, 0.3) == pytest.approx(2 * 0.09 - 1)
    assert chebyshev_T(4, 1.0) == pytest.approx(1.0)
    assert chebyshev_T(3, -2.0) == pytest.approx(4 * -8 - 3 * -2)
    with pytest.raises(ValueError):
        chebyshev_T(-1, 0.0)


@given(st.integers(0, 30), st.floats(-1, 1))
def test_chebyshev_cosine_form(n, x):
    assert chebyshev_T(n, x) == pytest.approx(math.cos(n * math.acos(x)), abs=1e-10)


def test_compose_gives_free_discriminant():
    E = Polynomial((0.0, 1.0))
    P = compose_scaled_chebyshev(E, 3)
    assert P.coeffs == pytest.approx((0.0, -3.0, 0.0, 1.0))
    assert compose_scaled_chebyshev(E, 0).coeffs == (2.0,)


def test_monic_extremal_standard_interval():
    p, L = monic_extremal_on_interval((-1.0, 1.0), 1)
    assert p.coeffs == pytest.approx((0.0, 1.0)) and L == pytest.approx(1.0)
    p, L = monic_extremal_on_interval((-2.0, 2.0), 3)
    assert p.coeffs == pytest.approx((0.0, -3.0, 0.0, 1.0), abs=1e-12)
    assert L == pytest.approx(2.0)


@pytest.mark.parametrize("interval,n", [((-1.0, 1.0), 4), ((0.5, 3.0), 5), ((-7.0, -2.0), 2)])
def test_monic_extremal_alternates(interval, n):
    p, L = monic_extremal_on_interval(interval, n)
    assert p.leading == pytest.approx(1.0)
    pts = alternation_points(interval, n)
    assert len(pts) == n + 1 and all(x > y for x, y in zip(pts, pts[1:]))
    for k, x in enumerate(pts, start=1):
        assert p(x) == pytest.approx((-1) ** (k + 1) * L, rel=1e-9, abs=1e-12)
    grid = np.linspace(*interval, 400)
    assert max(abs(p(x)) for x in grid) <= L * (1 + 1e-9)


def test_monic_extremal_validation():
    with pytest.raises(InvalidModelError):
        monic_extremal_on_interval((1.0, 1.0), 2)
    with pytest.raises(ValueError):
        monic_extremal_on_interval((0.0, 1.0), 0)


@settings(max_examples=30, deadline=None)
@given(specs(q_max=6), st.integers(1, 4))
def test_nesting(spec, n):
    rep = verify_nesting(spec, n)
    assert rep.passed, (rep.coefficient_error, rep.pointwise_error)


def test_nesting_size_cap():
    with pytest.raises(SizeLimitError):
        verify_nesting(make_free(9), 4)


def test_nesting_two_value():
    rep = verify_nesting(make_two_value(8, 1, 1), 3)
    assert rep.coefficient_error <= 1e-12 and rep.pointwise_error <= 1e-12


def test_node_system_validation():
    with pytest.raises(InvalidModelError):
        NodeSystem((1.0, 2.0), (1.0, 1.0), (0.0, 0.0))
    with pytest.raises(InvalidModelError):
        NodeSystem((2.0, 1.0), (1.0, 0.0), (0.0, 0.0))
    with pytest.raises(InvalidModelError):
        NodeSystem((), (), ())
    n = 65
    with pytest.raises(SizeLimitError):
        NodeSystem(tuple(range(n, 0, -1)), (1.0,) * n, (0.0,) * n)


def test_interp_conditions():
    ns = NodeSystem.linear((3.0, 1.5, -0.75, -2.0), 0.8)
    for i, x in enumerate(ns.nodes, start=1):
        assert interp_T(ns, x) == pytest.approx((-1) ** i / (0.8 * x))
        assert interp_T(ns, x + 1e-9) == pytest.approx((-1) ** i / (0.8 * x), rel=1e-6)


def test_interp_is_monic():
    # leading coefficient 1 means T(E) / E^m -> 1
    ns = NodeSystem.constant((2.0, 0.5, -1.0), 1.7)
    E = 1e5
    assert interp_T(ns, E) / E ** 3 == pytest.approx(1.0, rel=1e-4)


def test_interp_matches_polyfit():
    ns = NodeSystem.linear((2.5, 1.0, -0.5, -3.0), 1.1)
    # monic: fit T - prod(E - x_i) with a degree m - 1 polynomial
    x = np.asarray(ns.nodes)
    resid = ns.targets - np.array([np.prod(xi - x) for xi in x])
    coef = np.polyfit(x, resid, len(x) - 1)
    for E in (-4.0, 0.3, 5.0):
        want = np.prod(E - x) + np.polyval(coef, E)
        assert interp_T(ns, E) == pytest.approx(want, rel=1e-9)


def test_derivative_at_node_matches_difference():
    ns = NodeSystem.linear((2.5, 1.0, -0.5, -3.0), 1.1)
    h = 1e-6
    for k, x in enumerate(ns.nodes, start=1):
        fd = (interp_T(ns, x + h) - interp_T(ns, x - h)) / (2 * h)
        assert interp_T_derivative_at_node(ns, k) == pytest.approx(fd, rel=1e-6)


def test_single_node_formula():
    # m = 1: T(E) = E - E_1 - 1/s(E_1), so dT/dE_1 = -1 + s'(E_1)/s(E_1)^2
    ns = NodeSystem.constant((1.3,), 0.9)
    assert prop_formula_rhs(ns, 1, -2.0) == pytest.approx(-1.0)
    ns = NodeSystem.linear((1.3,), 0.9)
    assert prop_formula_rhs(ns, 1, 4.0) == pytest.approx(-1.0 + 1 / (0.9 * 1.3 ** 2))


def test_rhs_vanishes_at_other_nodes():
    ns = NodeSystem.linear((2.0, 1.0, -1.5), 1.2)
    for k in (1, 2, 3):
        for j, x in enumerate(ns.nodes, start=1):
            if j != k:
                assert prop_formula_rhs(ns, k, x) == pytest.approx(0.0, abs=1e-12)


def test_mirror_symmetry():
    # reflecting E -> -E with s -> -c (constant) maps node k to m + 1 - k
    nodes = (2.0, 0.75, -1.25, -2.5)
    m = len(nodes)
    c = 1.4
    ns = NodeSystem.constant(nodes, c)
    mirrored = NodeSystem.constant(tuple(-x for x in reversed(nodes)), -c)
    for k in range(1, m + 1):
        for E in (-3.0, 0.4, 1.1):
            assert prop_formula_rhs(mirrored, m + 1 - k, -E) == pytest.approx(
                (-1) ** (m + 1) * prop_formula_rhs(ns, k, E), rel=1e-10)


@settings(max_examples=60)
@given(st.lists(st.integers(-24, 24).filter(lambda x: abs(x) >= 2), min_size=1, max_size=8, unique=True),
       st.floats(0.3, 2.0), st.booleans(), st.floats(-6, 6), st.data())
def test_formula_matches_finite_difference(lattice, c, linear, E_star, data):
    nodes = sorted((x / 4 for x in lattice), reverse=True)
    make = NodeSystem.linear if linear else NodeSystem.constant
    k = data.draw(st.integers(1, len(nodes)))
    d = 1e-6
    up, down = list(nodes), list(nodes)
    up[k - 1] += d
    down[k - 1] -= d
    fd = (interp_T(make(up, c), E_star) - interp_T(make(down, c), E_star)) / (2 * d)
    rhs = prop_formula_rhs(make(nodes, c), k, E_star)
    assert rhs == pytest.approx(fd, rel=1e-5, abs=1e-7 * (1 + abs(interp_T(make(nodes, c), E_star))))
