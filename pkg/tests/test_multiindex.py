import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bergman.multiindex import (MultiIndex, alpha_matrix, d_tilde,
                                enumerate_indices, monomial_vector)


def brute_force(d, n):
    """Independent enumeration: all exponent tuples summing to n."""
    return {a for a in itertools.product(range(n + 1), repeat=d) if sum(a) == n}


def test_canonical_order_d2_n2():
    assert [a.entries for a in enumerate_indices(2, 2)] == [(2, 0), (1, 1), (0, 2)]
    assert d_tilde(2, 2) == math.comb(3, 1) == 3


def test_single_variable():
    assert [a.entries for a in enumerate_indices(1, 5)] == [(5,)]


def test_d3_n2_length_and_content():
    idx = enumerate_indices(3, 2)
    assert len(idx) == 6
    assert {a.entries for a in idx} == brute_force(3, 2)


def test_grevlex_comparator():
    # descending: the rightmost nonzero entry of the difference is negative
    idx = [a.entries for a in enumerate_indices(3, 3)]
    for a, b in zip(idx, idx[1:]):
        diff = [x - y for x, y in zip(a, b)]
        last = [v for v in diff if v != 0][-1]
        assert last < 0


@pytest.mark.parametrize("d", range(1, 7))
@pytest.mark.parametrize("n", range(1, 7))
def test_counts_match_brute_force(d, n):
    idx = enumerate_indices(d, n)
    assert len(idx) == len(brute_force(d, n)) == d_tilde(d, n)
    assert {a.entries for a in idx} == brute_force(d, n)


def test_enumeration_deterministic():
    assert enumerate_indices(4, 3) == enumerate_indices(4, 3)


def test_rejects_degenerate_and_out_of_range():
    for bad in [(0, 1), (1, 0), (17, 1), (1, 17)]:
        with pytest.raises(ValueError):
            enumerate_indices(*bad)
    with pytest.raises(ValueError):
        MultiIndex((1, -1))


def test_monomial_examples():
    np.testing.assert_allclose(monomial_vector([1.0, 0.0], 2), [1, 0, 0])
    np.testing.assert_allclose(
        monomial_vector([0.5, 0.5j], 2), [0.25, 0.25j, -0.25], atol=1e-15)


@pytest.mark.parametrize("d,n", [(2, 1), (3, 2), (4, 3)])
def test_balanced_point_components(d, n):
    zeta = np.full(d, d ** -0.5)
    np.testing.assert_allclose(
        monomial_vector(zeta, n), np.full(d_tilde(d, n), d ** (-n / 2.0)),
        rtol=1e-14)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2 ** 31 - 1))
def test_conjugation_commutes(d, n, seed):
    rng = np.random.default_rng(seed)
    zeta = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    np.testing.assert_allclose(
        monomial_vector(np.conj(zeta), n), np.conj(monomial_vector(zeta, n)),
        rtol=1e-12, atol=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2 ** 31 - 1))
def test_sphere_euclidean_norm_at_most_one(d, n, seed):
    rng = np.random.default_rng(seed)
    zeta = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    zeta /= np.linalg.norm(zeta)
    assert np.linalg.norm(monomial_vector(zeta, n)) <= 1.0 + 1e-12


def test_sphere_norm_equality_at_coordinate_vector():
    e1 = np.zeros(3, dtype=complex)
    e1[0] = 1.0
    assert np.linalg.norm(monomial_vector(e1, 4)) == pytest.approx(1.0, abs=1e-15)


def test_alpha_matrix_matches_enumeration():
    mat = alpha_matrix(3, 2)
    assert mat.shape == (6, 3)
    assert [tuple(r) for r in mat] == [a.entries for a in enumerate_indices(3, 2)]
