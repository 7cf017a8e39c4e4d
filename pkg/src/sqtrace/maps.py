"""Unital completely positive maps and states on matrix algebras.

A Kraus map sends an ``n x n`` matrix to ``m x m`` by
``X -> sum_i V_i X V_i*`` with ``V_i`` of shape ``(m, n)``; unitality
``sum_i V_i V_i* = I_m`` is enforced at construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidMap, InvalidState
from .hermitian import adjoint, as_matrix, check_hermitian, eig

UNITAL_TOL = 1e-10
STATE_TOL = 1e-10


@dataclass(frozen=True)
class UnitalMap:
    kind: str
    n_in: int
    n_out: int
    operators: tuple = ()

    @classmethod
    def identity(cls, n: int) -> "UnitalMap":
        return cls("identity", n, n)

    @classmethod
    def pinching(cls, projections) -> "UnitalMap":
        ps = tuple(as_matrix(P) for P in projections)
        if not ps:
            raise InvalidMap("pinching needs at least one projection")
        n = ps[0].shape[0]
        scale = max(1.0, np.sqrt(n))
        for P in ps:
            if P.shape != (n, n):
                raise DimensionMismatch("projections of different sizes")
            if np.linalg.norm(P @ P - P) > UNITAL_TOL * scale or np.linalg.norm(P - adjoint(P)) > UNITAL_TOL * scale:
                raise InvalidMap("pinching operator is not an orthogonal projection")
        for a in range(len(ps)):
            for b in range(a + 1, len(ps)):
                if np.linalg.norm(ps[a] @ ps[b]) > UNITAL_TOL * scale:
                    raise InvalidMap("pinching projections are not mutually orthogonal")
        if np.linalg.norm(sum(ps) - np.eye(n)) > UNITAL_TOL * scale:
            raise InvalidMap("pinching projections do not sum to the identity")
        return cls("pinching", n, n, ps)

    @classmethod
    def kraus(cls, operators) -> "UnitalMap":
        vs = tuple(as_matrix(V) for V in operators)
        if not vs:
            raise InvalidMap("Kraus map needs at least one operator")
        m, n = vs[0].shape
        if any(V.shape != (m, n) for V in vs):
            raise DimensionMismatch("Kraus operators of different shapes")
        defect = np.linalg.norm(sum(V @ adjoint(V) for V in vs) - np.eye(m))
        if defect > UNITAL_TOL * max(1.0, np.sqrt(m)):
            raise InvalidMap(f"sum V V* differs from I by {defect:.3e}")
        return cls("kraus", n, m, vs)


def apply_map(phi: UnitalMap, A) -> np.ndarray:
    X = as_matrix(A)
    if X.shape != (phi.n_in, phi.n_in):
        raise DimensionMismatch(f"map expects {phi.n_in}x{phi.n_in} input, got {X.shape}")
    if phi.kind == "identity":
        out = X.copy()
    elif phi.kind == "pinching":
        out = sum(P @ X @ P for P in phi.operators)
    else:
        out = sum(V @ X @ adjoint(V) for V in phi.operators)
    return (out + adjoint(out)) / 2


@dataclass(frozen=True)
class State:
    """``density`` (Tr rho X), ``vector`` (<X u, u>) or ``normalized_trace`` (Tr X / n)."""

    kind: str
    n: int
    data: np.ndarray | None = None

    @classmethod
    def density(cls, rho) -> "State":
        R = check_hermitian(rho)
        if abs(np.trace(R).real - 1) > STATE_TOL:
            raise InvalidState("density matrix must have unit trace")
        if eig(R).values[-1] < -STATE_TOL:
            raise InvalidState("density matrix must be positive semidefinite")
        return cls("density", R.shape[0], R)

    @classmethod
    def vector(cls, u) -> "State":
        v = np.asarray(u, dtype=complex).ravel()
        if abs(np.linalg.norm(v) - 1) > 1e-12:
            raise InvalidState("vector state needs a unit vector")
        return cls("vector", v.size, v)

    @classmethod
    def normalized_trace(cls, n: int) -> "State":
        return cls("normalized_trace", n)


def state_eval(tau: State, X) -> float:
    M = as_matrix(X)
    if M.shape != (tau.n, tau.n):
        raise DimensionMismatch(f"state on {tau.n}x{tau.n} applied to {M.shape}")
    if tau.kind == "density":
        return float(np.trace(tau.data @ M).real)
    if tau.kind == "vector":
        u = tau.data
        return float(np.vdot(u, M @ u).real)
    return float(np.trace(M).real / tau.n)
