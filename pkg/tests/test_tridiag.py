import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from jacobi_spectra.errors import InvalidModelError
from jacobi_spectra.model import make_free, unroll
from jacobi_spectra.tridiag import Tridiag, eigenvalues, k_n, sturm_count

from conftest import specs


def test_rejects_bad_shapes():
    with pytest.raises(InvalidModelError):
        Tridiag((), ())
    with pytest.raises(InvalidModelError):
        Tridiag((0.0, 0.0), ())
    with pytest.raises(InvalidModelError):
        Tridiag((0.0, 0.0), (0.0,))


def test_one_by_one():
    t = Tridiag((3.0,), ())
    assert sturm_count(t, 2.9) == 0
    assert sturm_count(t, 3.1) == 1
    assert eigenvalues(t)[0] == pytest.approx(3.0, abs=1e-12)


def test_three_by_three_free():
    t = Tridiag((0, 0, 0), (1, 1))
    assert np.allclose(eigenvalues(t), [-math.sqrt(2), 0.0, math.sqrt(2)], atol=1e-12)
    assert sturm_count(t, 0.0) == 1
    assert list(sturm_count(t, np.array([-2.0, -1.0, 1.0, 2.0]))) == [0, 1, 2, 3]


def test_free_block_eigenvalues():
    n = 100
    t = Tridiag.from_prefix(unroll(make_free(1), n))
    expected = np.sort(2 * np.cos(np.pi * np.arange(1, n + 1) / (n + 1)))
    assert np.max(np.abs(eigenvalues(t) - expected)) <= 1e-11


@settings(max_examples=40, deadline=None)
@given(specs(q_max=6), st.integers(1, 30))
def test_eigenvalues_match_lapack(spec, n):
    t = Tridiag.from_prefix(unroll(spec, n))
    dense = np.diag(t.diag) + np.diag(t.offdiag, 1) + np.diag(t.offdiag, -1)
    assert np.max(np.abs(eigenvalues(t) - np.linalg.eigvalsh(dense))) <= 1e-10


@given(specs(q_max=6), st.integers(1, 25), st.floats(-6, 6), st.floats(0, 3))
def test_sturm_count_monotone(spec, n, E, dE):
    t = Tridiag.from_prefix(unroll(spec, n))
    assert 0 <= sturm_count(t, E) <= sturm_count(t, E + dE) <= n


def test_gershgorin_contains_spectrum():
    t = Tridiag((1.0, -2.0, 0.5), (0.7, 1.3))
    lo, hi = t.gershgorin()
    ev = eigenvalues(t)
    assert lo <= ev[0] and ev[-1] <= hi


def test_counting_function_free():
    # 2 cos(pi j / 101) <= 1 exactly when j >= 101/3, i.e. 67 of 100 eigenvalues
    assert k_n(unroll(make_free(1), 100), 1.0) == pytest.approx(0.67)
    assert k_n(unroll(make_free(1), 100), -3.0) == 0.0
    assert k_n(unroll(make_free(1), 100), 3.0) == 1.0


def test_counting_includes_eigenvalue_itself():
    t_prefix = unroll(make_free(1), 2)  # eigenvalues -1 and 1
    assert k_n(t_prefix, 1.0) == 1.0
    assert k_n(t_prefix, -1.0) == 0.5


def test_spec_count_examples():
    assert sturm_count(Tridiag((0.0,), ()), 1.0) == 1
    assert sturm_count(Tridiag((0.0,), ()), -1.0) == 0
    assert sturm_count(Tridiag((0, 0, 0), (1, 1)), 0.5) == 2


@settings(max_examples=30, deadline=None)
@given(specs(q_max=5), st.integers(1, 20))
def test_count_agrees_with_eigenvalues_away_from_them(spec, n):
    t = Tridiag.from_prefix(unroll(spec, n))
    ev = eigenvalues(t)
    assert all(y > x for x, y in zip(ev, ev[1:]))
    for E in np.linspace(ev[0] - 1, ev[-1] + 1, 37):
        if np.min(np.abs(ev - E)) > 1e-8:
            assert sturm_count(t, E) == int(np.sum(ev < E))


@pytest.mark.parametrize("n", [2, 10, 64])
def test_free_counting_symmetric(n):
    assert k_n(unroll(make_free(1), n), 0.0) == 0.5


@given(specs(q_max=6), st.integers(1, 30))
def test_counting_extremes(spec, n):
    prefix = unroll(spec, n)
    M = max(prefix.a)
    assert k_n(prefix, min(prefix.b) - 2 * M - 1e-9) == 0.0
    assert k_n(prefix, max(prefix.b) + 2 * M + 1e-9) == 1.0


@settings(max_examples=20, deadline=None)
@given(specs(q_max=5), st.integers(4, 40))
def test_counting_converges_along_multiples(spec, n):
    q = spec.period
    grid = np.linspace(-6, 6, 41)
    k1 = k_n(unroll(spec, n * q), grid)
    k2 = k_n(unroll(spec, 2 * n * q), grid)
    assert np.max(np.abs(k1 - k2)) <= 2 * q / (n * q) + 1e-12
