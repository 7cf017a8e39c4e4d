import numpy as np
import pytest

from sqtrace.errors import BadDims, DimensionMismatch, InvalidMap, InvalidState
from sqtrace.harness.generators import gen_psd, gen_unital_map, haar_unitary
from sqtrace.hermitian import eigvals
from sqtrace.maps import State, UnitalMap, apply_map, state_eval

from .conftest import EX_A

MAP_SPECS = ["identity", "pinch:1", "pinch:2", "pinch:3", "kraus:1", "kraus:2", "kraus:4"]


def test_identity_map():
    A = gen_psd(3, 0)
    assert np.allclose(apply_map(UnitalMap.identity(3), A), A)


def test_coordinate_pinching_is_diagonal():
    A = gen_psd(3, 1)
    phi = UnitalMap.pinching([np.diag(e) for e in np.eye(3)])
    assert np.allclose(apply_map(phi, A), np.diag(np.diag(A)))


def test_single_unitary_kraus():
    U = haar_unitary(3, 2)
    A = gen_psd(3, 3)
    out = apply_map(UnitalMap.kraus([U]), A)
    assert np.allclose(out, U @ A @ U.conj().T)
    assert np.allclose(eigvals(out), eigvals(A))


@pytest.mark.parametrize("spec", MAP_SPECS)
def test_unital_and_positive(spec):
    for seed in range(5):
        m = 5 if spec in ("kraus:2", "kraus:4") else 3
        phi = gen_unital_map(spec, 3, seed, m=m)
        assert np.allclose(apply_map(phi, np.eye(3)), np.eye(phi.n_out), atol=1e-10)
        for k in range(40):
            assert eigvals(apply_map(phi, gen_psd(3, 1000 * seed + k)))[-1] >= -1e-9


def test_invalid_maps():
    with pytest.raises(InvalidMap):
        UnitalMap.kraus([np.eye(2) * 0.5])
    with pytest.raises(InvalidMap):
        UnitalMap.pinching([np.diag([1.0, 0.0])])
    with pytest.raises(InvalidMap):
        UnitalMap.pinching([np.diag([1.0, 1.0]), np.diag([1.0, 0.0])])
    with pytest.raises(DimensionMismatch):
        apply_map(UnitalMap.identity(2), np.eye(3))


def test_states():
    rho = gen_psd(2, 5, normalize=True)
    states = [State.density(rho), State.vector([1, 0]), State.normalized_trace(2)]
    for tau in states:
        assert state_eval(tau, np.eye(2)) == pytest.approx(1.0)
    assert state_eval(State.vector([1, 0]), np.diag([3.0, 1.0])) == 3.0
    assert state_eval(State.normalized_trace(2), EX_A) == 2.0
    X, Y = gen_psd(2, 6), gen_psd(2, 7)
    for tau in states:
        assert state_eval(tau, 2 * X - Y) == pytest.approx(2 * state_eval(tau, X) - state_eval(tau, Y))


def test_invalid_states():
    with pytest.raises(InvalidState):
        State.density(np.eye(2))
    with pytest.raises(InvalidState):
        State.density(np.diag([1.5, -0.5]))
    with pytest.raises(InvalidState):
        State.vector([1, 1])
    with pytest.raises(DimensionMismatch):
        state_eval(State.normalized_trace(2), np.eye(3))


def test_kraus_rank_too_small():
    with pytest.raises(BadDims):
        gen_unital_map("kraus:1", 3, 0, m=5)
