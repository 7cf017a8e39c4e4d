import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sqtrace.errors import LengthMismatch, NotMajorized
from sqtrace.functions import CONVEX_SET, SUPERQUADRATIC_SET, catalog, parse_function
from sqtrace.harness.generators import gen_hermitian, gen_majorized_pair
from sqtrace.majorization import (
    CORE_RELATIONS,
    correction_matrix,
    eigen_majorization,
    hlp_transfer,
    is_doubly_stochastic,
    lemma2_bound,
    majorization_slack,
    majorizes,
)

from .conftest import EX_A, EX_B


def test_majorizes_examples():
    assert majorizes([2, 0], [1, 1])
    assert not majorizes([1, 1], [2, 0])
    assert majorizes([3, 0], [1, 1], weak=True)
    assert not majorizes([3, 0], [1, 1])
    with pytest.raises(LengthMismatch):
        majorizes([1, 2], [1])


def test_random_doubly_stochastic_image_is_majorized():
    for seed in range(50):
        x, y = gen_majorized_pair(5, seed)
        assert majorizes(y, x)


def test_hlp_examples():
    assert np.array_equal(hlp_transfer([3, 1, 2], [3, 1, 2]), np.eye(3))
    assert np.allclose(hlp_transfer([1, 1], [2, 0]), 0.5)
    P = hlp_transfer([2, 1, 1], [3, 1, 0])
    assert np.allclose(P @ [3, 1, 0], [2, 1, 1])
    assert is_doubly_stochastic(P)


def _brute_t_transform_check(x, y):
    """Independent oracle: some product of two T-transforms maps y to x."""
    n = len(x)
    grid = np.linspace(0, 1, 201)
    for (j, k) in itertools.combinations(range(n), 2):
        for t in grid:
            T = np.eye(n)
            T[j, j] = T[k, k] = 1 - t
            T[j, k] = T[k, j] = t
            z = T @ y
            for (a, b) in itertools.combinations(range(n), 2):
                for s in grid:
                    S = np.eye(n)
                    S[a, a] = S[b, b] = 1 - s
                    S[a, b] = S[b, a] = s
                    if np.allclose(S @ z, x, atol=1e-9):
                        return True
    return False


def test_hlp_example_against_brute_force():
    assert _brute_t_transform_check(np.array([2.0, 1, 1]), np.array([3.0, 1, 0]))


def test_hlp_keeps_caller_order():
    x = np.array([1.0, 2.0, 1.0])
    y = np.array([0.0, 1.0, 3.0])
    P = hlp_transfer(x, y)
    assert np.allclose(P @ y, x)
    assert x.tolist() == [1.0, 2.0, 1.0]


def test_hlp_rejects_non_majorized():
    with pytest.raises(NotMajorized):
        hlp_transfer([2, 0], [1, 1])


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_hlp_property(n, seed):
    x, y = gen_majorized_pair(n, seed)
    P, steps = hlp_transfer(x, y, return_steps=True)
    assert steps <= max(n - 1, 0)
    assert is_doubly_stochastic(P)
    assert np.max(np.abs(P @ y - x)) <= 1e-9 * max(1.0, np.max(np.abs(y)))


@pytest.mark.parametrize("label", CONVEX_SET)
def test_convex_functions_respect_majorization(label):
    f = parse_function(label)
    for seed in range(200):
        x, y = gen_majorized_pair(4, seed)
        assert np.sum(f(x)) <= np.sum(f(y)) + 1e-9 * max(1.0, abs(np.sum(f(y))))


def test_lemma2_examples():
    sq, cube = catalog("power", 2), catalog("power", 3)
    r = lemma2_bound(cube, [1, 2, 3], [1, 2, 3])
    assert r.margin == 0
    r = lemma2_bound(sq, [1, 1], [2, 0])
    assert (r.lhs, r.rhs) == pytest.approx((2, 2))
    assert np.allclose(r.witnesses["F"], 1)
    r = lemma2_bound(cube, [1, 1], [2, 0])
    assert (r.lhs, r.rhs) == pytest.approx((2, 6))
    assert r.witnesses["correction"] == pytest.approx(2)


def test_correction_is_elementwise_sum():
    f = catalog("power", 3)
    x, y = gen_majorized_pair(4, 9)
    r = lemma2_bound(f, x, y)
    P, F = r.witnesses["P"], correction_matrix(f, x, y)
    assert F[1, 2] == f(abs(x[1] - y[2]))
    assert r.witnesses["correction"] == pytest.approx(sum(P[i, j] * F[i, j] for i in range(4) for j in range(4)))


@pytest.mark.parametrize("label", SUPERQUADRATIC_SET)
def test_lemma2_property(label):
    f = parse_function(label)
    for seed in range(1000):
        x, y = gen_majorized_pair(1 + seed % 6, seed)
        assert lemma2_bound(f, x, y).margin >= -1e-9


def test_eigen_majorization_trivial_b_zero():
    A = gen_hermitian(4, 1)
    rel = eigen_majorization(A, np.zeros((4, 4)))
    assert all(rel[k].holds for k in CORE_RELATIONS)


def test_eigen_majorization_example():
    rel = eigen_majorization(EX_A, EX_B)
    assert all(rel[k].holds for k in CORE_RELATIONS)
    assert rel["jg_reversed"].holds and rel["abs_reversed"].holds
    # |l(A-B)| = (1+sqrt2, sqrt2-1) is not weakly below |l(B)-l(A)| = (1, 1)
    assert not rel["abs_weak_as_printed"].holds
    assert not rel["jg_as_printed"].holds


def test_eigen_majorization_random():
    printed_weak = 0
    for seed in range(300):
        n = 2 + seed % 5
        rel = eigen_majorization(gen_hermitian(n, seed), gen_hermitian(n, seed + 10**6))
        for k in CORE_RELATIONS + ("jg_reversed", "abs_reversed"):
            assert rel[k].slack >= -1e-9, k
        printed_weak += rel["abs_weak_as_printed"].holds
    assert printed_weak < 300


def test_eigen_majorization_dimension_mismatch():
    with pytest.raises(LengthMismatch):
        eigen_majorization(np.eye(2), np.eye(3))


def test_slack_definition():
    assert majorization_slack([2, 0], [1, 1]) == 0.0
    assert majorization_slack([3, 0], [1, 1]) == -1.0
    assert majorization_slack([3, 0], [1, 1], weak=True) == 1.0
