"""Helpers shared by the verifiers."""

from __future__ import annotations

import numpy as np

from ..errors import DomainViolation
from ..hermitian import CLAMP_TOL, Spectrum, adjoint, eig


def psd_spectrum(A, clamp_tol: float = CLAMP_TOL) -> Spectrum:
    """Spectrum of a PSD matrix with roundoff negatives clamped to 0."""
    spec = A if isinstance(A, Spectrum) else eig(A)
    if spec.values[-1] < -clamp_tol:
        raise DomainViolation(f"matrix is not positive semidefinite (eigenvalue {spec.values[-1]:.3e})")
    return Spectrum(np.maximum(spec.values, 0.0), spec.basis, spec.sweeps)


def weights_in(spec: Spectrum, vectors: np.ndarray) -> np.ndarray:
    """``W[k, j] = |<e_k, u_j>|^2`` for eigenvectors ``e_k`` and columns ``u_j``."""
    return np.abs(adjoint(spec.basis) @ vectors) ** 2


def compress(spec: Spectrum, g, vectors: np.ndarray) -> np.ndarray:
    """``<g(A) u_j, u_j>`` for every column ``u_j`` of ``vectors``."""
    return np.asarray(g(spec.values), dtype=float) @ weights_in(spec, vectors)


def shifted_abs(spec: Spectrum, f, s: float) -> np.ndarray:
    """``f(|A - s I|)`` from the spectrum of ``A``."""
    return spec.apply(lambda w: f(np.abs(w - s)))
