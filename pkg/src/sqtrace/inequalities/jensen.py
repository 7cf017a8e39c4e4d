"""Jensen-type inequalities for superquadratic functions: scalar, vector
state and state composed with a unital map."""

from __future__ import annotations

import numpy as np

from ..errors import BadWeights, DimensionMismatch
from ..hermitian import as_matrix
from ..maps import State, UnitalMap, apply_map, state_eval
from ..report import DEFAULT_TOL, VerificationReport
from .common import compress, psd_spectrum, shifted_abs

WEIGHT_TOL = 1e-12


def jensen_scalar(f, weights, values, tol: float = DEFAULT_TOL) -> VerificationReport:
    """``f(sum w v) <= sum w [f(v) - f(|v - sum w v|)]``."""
    w = np.asarray(weights, dtype=float).ravel()
    v = np.asarray(values, dtype=float).ravel()
    if w.size != v.size or w.size == 0:
        raise BadWeights(f"{w.size} weights for {v.size} values")
    if np.any(w < 0) or abs(w.sum() - 1) > WEIGHT_TOL:
        raise BadWeights("weights must be nonnegative and sum to 1")
    mean = float(w @ v)
    lhs = float(f(mean))
    rhs = float(w @ (f(v) - f(np.abs(v - mean))))
    return VerificationReport("jensen_scalar", lhs, rhs, tol=tol, witnesses={"mean": mean})


def jensen_vector_state(f, A, u, tol: float = DEFAULT_TOL) -> VerificationReport:
    """``f(<A u, u>) <= <f(A) u, u> - <f(|A - <A u, u>|) u, u>`` for PSD ``A``."""
    spec = psd_spectrum(A)
    vec = np.asarray(u, dtype=complex).reshape(-1, 1)
    if vec.shape[0] != spec.n:
        raise DimensionMismatch(f"vector of length {vec.shape[0]} for a {spec.n}x{spec.n} matrix")
    vec = vec / np.linalg.norm(vec)
    s = float(compress(spec, lambda t: t, vec)[0])
    fa = float(compress(spec, f, vec)[0])
    correction = float(compress(spec, lambda t: f(np.abs(t - s)), vec)[0])
    return VerificationReport(
        "jensen_vector_state", float(f(s)), fa - correction, tol=tol,
        witnesses={"state_value": s, "correction": correction, "spectra": spec.values},
    )


def jensen_map_state(f, A, phi: UnitalMap, tau: State, tol: float = DEFAULT_TOL) -> VerificationReport:
    """``f(tau(Phi(A))) <= tau(Phi(f(A))) - tau(Phi(f(|A - tau(Phi(A))|)))``."""
    spec = psd_spectrum(as_matrix(A))
    s = state_eval(tau, apply_map(phi, spec.reconstruct()))
    base = state_eval(tau, apply_map(phi, spec.apply(f)))
    correction = state_eval(tau, apply_map(phi, shifted_abs(spec, f, s)))
    return VerificationReport(
        "jensen_map_state", float(f(s)), base - correction, tol=tol,
        witnesses={"state_value": s, "correction": correction, "map": phi.kind, "state": tau.kind},
    )
