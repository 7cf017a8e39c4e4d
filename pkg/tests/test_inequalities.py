import math

import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, settings
from hypothesis import strategies as st

from sqtrace.errors import (
    BadWeights,
    DimensionMismatch,
    DomainViolation,
    NotIsometry,
    NotIsometryFamily,
    NotOrthonormal,
    ParameterOutOfRange,
)
from sqtrace.functions import catalog, parse_function
from sqtrace.harness.generators import (
    gen_basis,
    gen_isometry,
    gen_kraus_family,
    gen_psd,
    gen_unit_vector,
    gen_unital_map,
    haar_unitary,
)
from sqtrace.inequalities import (
    conjecture_margin,
    hansen_pedersen_trace,
    isometry_jensen,
    jensen_map_state,
    jensen_scalar,
    jensen_vector_state,
    klein_convex,
    klein_superquadratic,
    klein_upper_bound,
    min_correction_trace_jensen,
    peierls,
    relative_entropy,
    trace_jensen_superquadratic,
    trace_pairing_bound,
)
from sqtrace.maps import State, UnitalMap

from .conftest import EX_A, EX_B

SQ = catalog("power", 2)
CUBE = catalog("power", 3)
P15 = catalog("power", 1.5)


def _tr_fun(f, M):
    """Oracle: trace of f(M) via LAPACK."""
    return float(np.sum(f(np.clip(np.linalg.eigvalsh(M), 0, None))))


# scalar and state Jensen

def test_jensen_scalar_examples():
    assert jensen_scalar(CUBE, [1.0], [5.0]).margin == 0
    r = jensen_scalar(SQ, [0.5, 0.5], [0, 2])
    assert (r.lhs, r.rhs, r.margin) == pytest.approx((1, 1, 0))
    r = jensen_scalar(CUBE, [0.5, 0.5], [0, 2])
    assert (r.lhs, r.rhs) == pytest.approx((1, 3))


def test_jensen_scalar_errors():
    with pytest.raises(BadWeights):
        jensen_scalar(CUBE, [0.5, 0.6], [1, 2])
    with pytest.raises(BadWeights):
        jensen_scalar(CUBE, [1.5, -0.5], [1, 2])
    with pytest.raises(BadWeights):
        jensen_scalar(CUBE, [0.5, 0.5], [1, 2, 3])


def test_jensen_vector_state_examples():
    r = jensen_vector_state(CUBE, 3 * np.eye(3), gen_unit_vector(3, 1))
    assert r.margin == pytest.approx(0, abs=1e-12)
    r = jensen_vector_state(CUBE, np.diag([0.0, 2.0]), np.array([1, 1]) / math.sqrt(2))
    assert (r.lhs, r.rhs, r.margin) == pytest.approx((1, 3, 2))
    assert r.witnesses["correction"] == pytest.approx(1)


def test_jensen_map_state_reductions():
    A = gen_psd(3, 4)
    u = gen_unit_vector(3, 5)
    direct = jensen_vector_state(CUBE, A, u)
    via_map = jensen_map_state(CUBE, A, UnitalMap.identity(3), State.vector(u))
    assert via_map.margin == pytest.approx(direct.margin, abs=1e-10)
    r = jensen_map_state(SQ, EX_A, UnitalMap.identity(2), State.normalized_trace(2))
    # tau(A) = 2, tau(f(A)) = 5, tau(f(|A - 2|)) = 1
    assert (r.lhs, r.rhs) == pytest.approx((4, 4))


# trace Jensen with doubly stochastic corrections

def test_trace_jensen_equal_arguments():
    A = gen_psd(3, 1)
    r = trace_jensen_superquadratic(CUBE, A, A)
    assert abs(r.margin) <= 1e-9
    assert all(abs(p.margin) <= 1e-9 for p in r.parts.values())


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
def test_trace_jensen_square_is_an_identity(alpha):
    for seed in range(30):
        A, B = gen_psd(4, seed), gen_psd(4, seed + 500)
        part = trace_jensen_superquadratic(SQ, A, B, alpha).parts["correction_free"]
        assert abs(part.margin) <= 1e-9 * max(1.0, part.rhs)


def test_trace_jensen_example():
    r = trace_jensen_superquadratic(CUBE, EX_A, EX_B)
    # eigenvalues of (A+B)/2 are (3 +- sqrt2)/2, |A-B| has eigenvalues sqrt2 +- 1
    xi = np.array([3 + math.sqrt(2), 3 - math.sqrt(2)]) / 2
    expected_lhs = np.sum(xi**3) + np.sum((np.array([math.sqrt(2) + 1, math.sqrt(2) - 1]) / 2) ** 3)
    assert r.lhs == pytest.approx(expected_lhs, abs=1e-10)
    assert r.parts["correction_free"].rhs == pytest.approx(18)
    assert r.passed and r.rhs == pytest.approx(16.121320343559642, abs=1e-9)


def test_trace_jensen_witnesses_are_doubly_stochastic():
    r = trace_jensen_superquadratic(CUBE, gen_psd(4, 2), gen_psd(4, 3), 0.3)
    for key in ("P", "P_complement", "Q"):
        M = r.witnesses[key]
        assert np.all(M >= -1e-12)
        assert np.allclose(M.sum(0), 1) and np.allclose(M.sum(1), 1)


def test_trace_jensen_alpha_range():
    with pytest.raises(ParameterOutOfRange):
        trace_jensen_superquadratic(CUBE, EX_A, EX_B, alpha=1.5)


def test_trace_jensen_chain_holds_on_random_inputs():
    for seed in range(60):
        r = trace_jensen_superquadratic(CUBE, gen_psd(3, seed), gen_psd(3, seed + 99), 0.5)
        assert r.parts["correction_free"].passed
        assert r.parts["spectral_chain"].passed


# Hansen-Pedersen family

def test_hpt_single_unitary():
    U = haar_unitary(3, 1)
    r = hansen_pedersen_trace(CUBE, [gen_psd(3, 2)], [U])
    assert abs(r.margin) <= 1e-9


def test_hpt_oracle():
    As = [gen_psd(3, s) for s in range(3)]
    Cs = gen_kraus_family(3, 3, 7)
    M = sum(C.conj().T @ A @ C for A, C in zip(As, Cs))
    rhs = sum(np.trace(C.conj().T @ sla.fractional_matrix_power(A, 3) @ C).real for A, C in zip(As, Cs))
    r = hansen_pedersen_trace(CUBE, As, Cs)
    assert r.lhs == pytest.approx(_tr_fun(CUBE, M), rel=1e-10)
    assert r.rhs == pytest.approx(rhs, rel=1e-8)
    assert r.passed


def test_hpt_family_error():
    with pytest.raises(NotIsometryFamily):
        hansen_pedersen_trace(CUBE, [np.eye(2)], [2 * np.eye(2)])


def test_conjecture_scalar_case():
    r = conjecture_margin(CUBE, [np.array([[3.0]])], [np.array([[1.0]])])
    assert r.margin == 0
    # with two terms the shift is the total, and scalar Jensen keeps the margin nonnegative
    r = conjecture_margin(CUBE, [np.array([[1.0]]), np.array([[4.0]])], [np.array([[0.6]]), np.array([[0.8]])])
    assert r.margin >= 0
    assert set(r.parts) == {"literal", "normalized"}
    assert "not a verdict" in r.witnesses["evidence"]


def test_conjecture_records_both_readings():
    As = [gen_psd(2, 1), gen_psd(2, 2)]
    Cs = gen_kraus_family(2, 2, 3)
    r = conjecture_margin(CUBE, As, Cs)
    shifts = r.witnesses["shifts"]
    assert shifts["normalized"] == pytest.approx(shifts["literal"] / 2)
    assert r.margin == r.parts["literal"].margin


def test_isometry_square_case():
    for seed in range(10):
        r = isometry_jensen(CUBE, gen_psd(3, seed), gen_isometry(3, 3, seed))
        assert abs(r.margin) <= 1e-8 and r.witnesses["correction"] == pytest.approx(0, abs=1e-12)


def test_isometry_example():
    r = isometry_jensen(CUBE, EX_A, np.array([[1.0], [0.0]]))
    assert (r.lhs, r.rhs) == pytest.approx((16, 26))
    assert r.witnesses["correction"] == pytest.approx(2)
    assert r.witnesses["block_identity_error"] <= 1e-9


def test_isometry_random_rectangular():
    for seed in range(100):
        r = isometry_jensen(CUBE, gen_psd(4, seed), gen_isometry(4, 2, seed), B=gen_psd(2, seed + 1))
        assert r.margin >= -1e-7


def test_isometry_errors():
    with pytest.raises(NotIsometry):
        isometry_jensen(CUBE, EX_A, np.array([[1.0], [1.0]]))
    with pytest.raises(DomainViolation):
        isometry_jensen(CUBE, np.diag([1.0, -1.0]), np.eye(2))


def test_min_correction_identity_diagonal():
    r = min_correction_trace_jensen(CUBE, np.diag([0.0, 2.0]), UnitalMap.identity(2))
    assert r.margin == pytest.approx(0, abs=1e-12)
    assert r.parts["eigenbasis"].witnesses["correction"] == pytest.approx(0, abs=1e-12)


def test_min_correction_pinching_example():
    phi = UnitalMap.pinching([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
    r = min_correction_trace_jensen(CUBE, EX_A, phi, num_sampled_bases=5, seed=3)
    assert (r.lhs, r.rhs) == pytest.approx((16, 26))
    assert r.parts["sampled_min"].rhs >= r.parts["eigenbasis"].rhs - 1e-12


def test_min_correction_sampling_is_seeded():
    phi = gen_unital_map("kraus:2", 3, 4)
    r1 = min_correction_trace_jensen(CUBE, gen_psd(3, 5), phi, 8, seed=11)
    r2 = min_correction_trace_jensen(CUBE, gen_psd(3, 5), phi, 8, seed=11)
    assert r1.parts["sampled_min"].margin == r2.parts["sampled_min"].margin


# Klein

def test_klein_convex_example_and_oracle():
    r = klein_convex(P15, EX_A, EX_B)
    # Tr A^1.5 - Tr B^1.5 - Tr (A - B) * 1.5 B^0.5
    expected = 3**1.5 + 1 - 2**1.5 - 1.5 * math.sqrt(2) * (2 - 2)
    assert r.rhs == pytest.approx(expected, abs=1e-10)
    assert r.rhs == pytest.approx(3.3677, abs=1e-4)


def test_klein_convex_equal_arguments():
    A = gen_psd(3, 1)
    assert abs(klein_convex(CUBE, A, A).margin) <= 1e-9


def test_relative_entropy():
    rho, sigma = gen_psd(3, 1, normalize=True), gen_psd(3, 2, normalize=True)
    expected = np.trace(rho @ (sla.logm(rho) - sla.logm(sigma))).real
    assert relative_entropy(rho, sigma) == pytest.approx(expected, abs=1e-9)
    assert relative_entropy(rho, rho) == pytest.approx(0, abs=1e-12)
    assert relative_entropy(np.diag([0.5, 0.5]), np.diag([1.0, 0.0])) == math.inf
    assert relative_entropy(np.diag([1.0, 0.0]), np.diag([0.5, 0.5])) == pytest.approx(math.log(2))


def test_trace_pairing_bound():
    for seed in range(50):
        X, Y = gen_psd(4, seed), gen_psd(4, seed + 7) - np.eye(4)
        assert trace_pairing_bound(X, Y).passed


def test_klein_superquadratic_example():
    r = klein_superquadratic(CUBE, EX_A, EX_B)
    assert r.rhs == pytest.approx(20, abs=1e-8)
    assert r.parts["nonnegative_form"].lhs == pytest.approx(10 * math.sqrt(2), abs=1e-8)
    assert r.witnesses["literal_reading"] <= r.parts["matching_form"].lhs + 1e-12


def test_klein_superquadratic_square_identity():
    for seed in range(30):
        A, B = gen_psd(3, seed), gen_psd(3, seed + 40)
        assert abs(klein_superquadratic(SQ, A, B).margin) <= 1e-9 * max(1.0, np.sum(np.abs(A - B)) ** 2)


def test_klein_upper_bound():
    A = gen_psd(3, 2)
    r = klein_upper_bound(P15, A, A)
    # the gap vanishes; the maximal matching is positive, only the identity pairing is zero
    assert abs(r.lhs) <= 1e-9 and r.margin >= 0
    assert r.witnesses["permutation"] != [0, 1, 2]
    r = klein_upper_bound(P15, EX_A, EX_B)
    assert r.lhs == pytest.approx(3.3677, abs=1e-4)
    assert r.rhs == pytest.approx(1 + 3 * math.sqrt(3), abs=1e-10)
    assert r.witnesses["literal_reading"] == pytest.approx(2 * 3**1.5)


def test_klein_upper_bound_linear_function():
    # f(t) = t makes the Klein gap vanish identically
    r = klein_upper_bound(catalog("power", 1), EX_A, EX_B)
    assert abs(r.lhs) <= 1e-12 and r.passed


def test_klein_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        klein_convex(CUBE, np.eye(2), np.eye(3))


# Peierls

def test_peierls_example():
    r = peierls(CUBE, EX_A, np.eye(2))
    assert (r.parts["classical"].lhs, r.parts["classical"].rhs) == pytest.approx((16, 28))
    assert r.parts["refined"].lhs == pytest.approx(18)
    assert not r.witnesses["eigenbasis"]


def test_peierls_eigenbasis_equality():
    for seed in range(20):
        A = gen_psd(4, seed)
        _, V = np.linalg.eigh(A)
        r = peierls(CUBE, A, V)
        assert r.witnesses["eigenbasis"]
        assert abs(r.parts["refined"].margin) <= 1e-9 * max(1.0, r.rhs)


def test_peierls_refines_classical():
    for seed in range(100):
        r = peierls(CUBE, gen_psd(3, seed), gen_basis(3, seed))
        assert r.parts["classical"].margin >= r.parts["refined"].margin >= -1e-9


def test_peierls_convex_only_function():
    r = peierls(parse_function("tlogt"), gen_psd(3, 1) + np.eye(3), gen_basis(3, 2))
    assert set(r.parts) == {"classical"} and r.passed


def test_peierls_rejects_bad_basis():
    with pytest.raises(NotOrthonormal):
        peierls(CUBE, EX_A, np.array([[1.0, 1.0], [0.0, 1.0]]))


# property tests

functions = st.sampled_from(["square", "pow:2.5", "pow:3", "pow:4"])
seeds = st.integers(0, 2**32 - 1)
dims = st.sampled_from([2, 3, 4])


@settings(max_examples=60, deadline=None)
@given(functions, dims, seeds)
def test_hpt_property(label, n, seed):
    f = parse_function(label)
    As = [gen_psd(n, seed), gen_psd(n, seed ^ 1)]
    assert hansen_pedersen_trace(f, As, gen_kraus_family(n, 2, seed)).margin >= -1e-7


@settings(max_examples=60, deadline=None)
@given(functions, dims, seeds)
def test_klein_superquadratic_property(label, n, seed):
    assert klein_superquadratic(parse_function(label), gen_psd(n, seed), gen_psd(n, seed ^ 5)).passed


@settings(max_examples=60, deadline=None)
@given(functions, dims, seeds, st.sampled_from(["identity", "pinch:2", "kraus:2"]))
def test_min_correction_property(label, n, seed, spec):
    phi = gen_unital_map(spec, n, seed)
    assert min_correction_trace_jensen(parse_function(label), gen_psd(n, seed), phi).passed
