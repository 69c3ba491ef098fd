import math

import pytest
from hypothesis import given, settings, strategies as st

from jacobi_spectra.bands import ac_measure, band_structure
from jacobi_spectra.bounds import (bound_table, geometric_mean, global_bound, polya_lower_bound, random_window,
                                   theorem1_bound, two_value_closed_form, verify_polya_ac)
from jacobi_spectra.errors import InvalidModelError
from jacobi_spectra.model import FinitePrefix, Window, make_constant, make_free, make_two_value, unroll
from jacobi_spectra.rng import XorShift64Star

from conftest import specs


def test_geometric_mean():
    assert geometric_mean([1, 1, 1, 1]) == 1.0
    assert geometric_mean([2, 8]) == pytest.approx(4.0, rel=1e-12)
    assert geometric_mean([0.5, 2]) == pytest.approx(1.0, rel=1e-12)
    assert geometric_mean([2, 2, 2]) == pytest.approx(2.0)
    assert geometric_mean([1e-200, 1e200]) == pytest.approx(1.0)
    with pytest.raises(InvalidModelError):
        geometric_mean([])
    with pytest.raises(InvalidModelError):
        geometric_mean([1.0, 0.0])


def test_two_value_closed_form_values():
    assert two_value_closed_form(8, 1, 1) == (1.0, 1.0)
    low, high = two_value_closed_form(20, 2, 1)
    assert low == pytest.approx(1.0) and high == pytest.approx(4 / 256)


@pytest.mark.parametrize("R", [6.0, 8.0, 20.0])
@pytest.mark.parametrize("m,l", [(1, 1), (2, 1), (1, 3)])
def test_two_value_bounds_match(R, m, l):
    spec = make_two_value(R, m, l)
    low, high = two_value_closed_form(R, m, l)
    for t in (1, 2, 5):
        prefix = unroll(spec, t * spec.period)
        assert theorem1_bound(prefix, Window(-2, 2)).bound == pytest.approx(low, rel=1e-12)
        assert theorem1_bound(prefix, Window(R - 2, R + 2)).bound == pytest.approx(high, rel=1e-12)


def test_two_value_bounds_decay_in_R():
    for m, l in ((1, 1), (2, 1), (1, 3)):
        values = [two_value_closed_form(R, m, l) for R in (20.0, 100.0, 1000.0)]
        for (a1, b1), (a2, b2) in zip(values, values[1:]):
            assert a2 < a1 and b2 < b1
        low, high = values[-1]
        exponent = min(l / m, m / l)
        assert max(low, high) <= 4 * 996.0 ** (-exponent) * (1 + 1e-12)


def test_whole_line_gives_four_A():
    prefix = FinitePrefix(3, (0.5, 2.0, 1.0), (0.0, 10.0, -3.0))
    rep = theorem1_bound(prefix, Window())
    assert rep.I_n_size == 3 and rep.ln_D_n == 0.0
    assert rep.bound == pytest.approx(4 * geometric_mean(prefix.a))
    assert rep.bound == pytest.approx(global_bound(prefix))


def test_global_bound_examples():
    assert global_bound(unroll(make_free(1), 10)) == pytest.approx(4.0)
    assert global_bound(FinitePrefix(3, (2.0, 2.0, 2.0), (0.0, 0.0, 0.0))) == pytest.approx(8.0)
    assert global_bound(FinitePrefix(4, (0.5, 2, 0.5, 2), (0, 0, 0, 0))) == pytest.approx(4.0)


def test_far_window_is_zero_measure():
    prefix = unroll(make_free(1), 4)
    rep = theorem1_bound(prefix, Window(100, 101))
    assert rep.zero_measure and rep.value == 0.0
    assert rep.to_dict()["bound"] == "zero-measure"


def test_infinite_side_distance_is_finite_side():
    prefix = FinitePrefix(2, (1.0, 1.0), (0.0, 20.0))
    rep = theorem1_bound(prefix, Window(-math.inf, 2.0))
    # b = 20 sits 18 from E_R: factor 18 - 2 = 16, bound 4 * 1 / 16
    assert rep.I_n_size == 1 and rep.bound == pytest.approx(0.25)


@given(specs(q_max=6), st.integers(1, 4), st.floats(-6, 6), st.floats(0.01, 8))
def test_D_n_lower_bound(spec, t, E_L, width):
    # every factor exceeds A_n, so D_n >= A_n^(n - #I)
    prefix = unroll(spec, t * spec.period)
    rep = theorem1_bound(prefix, Window(E_L, E_L + width))
    assert rep.ln_D_n >= (prefix.n - rep.I_n_size) * math.log(rep.A_n) - 1e-12


def test_polya_values():
    assert polya_lower_bound(4.0, 1)[1] == pytest.approx(2.0)
    assert polya_lower_bound(0.0, 3) == (-math.inf, 0.0)
    assert polya_lower_bound(2.0, 3)[1] == pytest.approx(0.25)
    assert polya_lower_bound(1e6, 200)[1] == math.inf
    with pytest.raises(ValueError):
        polya_lower_bound(-1.0, 1)


def test_bound_table_lengths():
    table = bound_table(make_two_value(8, 1, 1), Window(-2, 2), 4)
    assert [r.n for r in table] == [2, 4, 6, 8]
    assert all(r.bound == pytest.approx(1.0) for r in table)


def test_random_window_is_ordered():
    rng = XorShift64Star(3)
    spec = make_free(2)
    for _ in range(200):
        w = random_window(rng, spec)
        assert w.E_L < w.E_R


def test_polya_constant_equality():
    rep = verify_polya_ac(make_constant(1.3, 0.2, 4))
    assert rep.passed and rep.equality


@settings(max_examples=25, deadline=None)
@given(specs(q_max=8), st.integers(0, 10_000))
def test_window_bound_dominates(spec, seed):
    rep = verify_polya_ac(spec, seed=seed, n_windows=5)
    assert rep.passed, rep.worst_excess


@settings(max_examples=25, deadline=None)
@given(specs(q_max=8))
def test_total_measure_below_four_A(spec):
    assert ac_measure(band_structure(spec)) <= 4 * spec.geometric_mean + 1e-9
