"""Hermitian matrices, a complex cyclic Jacobi eigensolver and spectral
functional calculus.

Matrices are plain ``numpy`` complex arrays.  Every function that needs a
Hermitian input checks symmetry at ``HERMITIAN_TOL`` (Frobenius-relative)
and works on the exactly symmetrized copy ``(A + A*) / 2``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Union

import numpy as np

from .errors import DimensionMismatch, DomainViolation, NoConvergence, NotHermitian

HERMITIAN_TOL = 1e-12
EIG_TOL = 1e-14
MAX_SWEEPS = 100
CLAMP_TOL = 1e-10


def as_matrix(X) -> np.ndarray:
    """Return ``X`` as a 2-D complex array with positive dimensions."""
    M = np.array(X, dtype=complex)
    if M.ndim == 0:
        M = M.reshape(1, 1)
    if M.ndim != 2 or M.shape[0] < 1 or M.shape[1] < 1:
        raise DimensionMismatch(f"expected a non-empty 2-D matrix, got shape {M.shape}")
    return M


def adjoint(X: np.ndarray) -> np.ndarray:
    return np.conj(X).T


def check_hermitian(A, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate Hermitian symmetry and return the symmetrized matrix."""
    M = as_matrix(A)
    if M.shape[0] != M.shape[1]:
        raise NotHermitian(f"matrix is not square: {M.shape}")
    asym = np.linalg.norm(M - adjoint(M))
    if asym > tol * max(1.0, np.linalg.norm(M)):
        raise NotHermitian(f"||A - A*||_F = {asym:.3e} exceeds tolerance")
    return (M + adjoint(M)) / 2


def is_hermitian(A, tol: float = HERMITIAN_TOL) -> bool:
    try:
        check_hermitian(A, tol)
    except (NotHermitian, DimensionMismatch):
        return False
    return True


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in descending order with the matching orthonormal basis.

    ``basis[:, k]`` is the eigenvector for ``values[k]``.
    """

    values: np.ndarray
    basis: np.ndarray
    sweeps: int = 0

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def ascending(self) -> np.ndarray:
        return self.values[::-1].copy()

    def reconstruct(self) -> np.ndarray:
        return (self.basis * self.values) @ adjoint(self.basis)

    def apply(self, g: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        """``U diag(g(values)) U*`` without domain checks."""
        w = np.asarray(g(self.values), dtype=float)
        M = (self.basis * w) @ adjoint(self.basis)
        return (M + adjoint(M)) / 2


def _jacobi(a: np.ndarray, tol: float, max_sweeps: int):
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = float(np.linalg.norm(a))
    thresh = tol * scale
    # entries below this cannot keep the off-diagonal norm above thresh
    skip = thresh / (10.0 * n)
    for sweep in range(max_sweeps + 1):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= thresh:
            return a.diagonal().real.copy(), v, sweep
        if sweep == max_sweeps:
            raise NoConvergence(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off:.3e})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= skip:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                phase = apq / r
                theta = (aqq - app) / (2.0 * r)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # W = diag(1, conj(phase)) @ [[c, s], [-s, c]];  A <- W* A W
                sc = s * phase.conjugate()
                cc = c * phase.conjugate()
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - sc * col_q
                a[:, q] = s * col_p + cc * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * row_p + c * phase * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - sc * vq
                v[:, q] = s * vp + cc * vq
    raise AssertionError("unreachable")


def eig(A, tol: float = EIG_TOL, max_sweeps: int = MAX_SWEEPS) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Iterates until the off-diagonal Frobenius norm is at most ``tol * ||A||_F``.
    Raises ``NotHermitian`` for asymmetric input and ``NoConvergence`` when
    ``max_sweeps`` is exhausted.
    """
    H = check_hermitian(A)
    n = H.shape[0]
    if n == 1 or not np.any(H - np.diag(np.diag(H))):
        vals = H.diagonal().real.copy()
        vecs = np.eye(n, dtype=complex)
        sweeps = 0
    else:
        vals, vecs, sweeps = _jacobi(H.copy(), tol, max_sweeps)
    order = np.argsort(-vals, kind="stable")
    return Spectrum(values=vals[order], basis=vecs[:, order], sweeps=sweeps)


def eigvals(A) -> np.ndarray:
    """Descending eigenvalues."""
    return eig(A).values


def domain_values(f, values: np.ndarray, clamp_tol: float = CLAMP_TOL) -> np.ndarray:
    """Clamp tiny negative eigenvalues into the domain of ``f`` or raise."""
    lo = getattr(f, "domain_min", -math.inf)
    if lo == -math.inf:
        return values
    if np.any(values < lo - clamp_tol):
        raise DomainViolation(
            f"eigenvalue {values.min():.3e} below the domain [{lo}, inf) of {getattr(f, 'name', f)}"
        )
    return np.maximum(values, lo)


SpectralInput = Union[np.ndarray, Spectrum]


def _spectrum(A: SpectralInput) -> Spectrum:
    return A if isinstance(A, Spectrum) else eig(A)


def apply_function(f, A: SpectralInput, clamp_tol: float = CLAMP_TOL) -> np.ndarray:
    """``f(A) = U diag(f(lambda)) U*``.

    ``A`` may be a matrix or an already computed ``Spectrum``.  For functions
    on ``[0, inf)`` eigenvalues in ``[-clamp_tol, 0)`` are clamped to 0 and
    anything lower raises ``DomainViolation``.
    """
    spec = _spectrum(A)
    vals = domain_values(f, spec.values, clamp_tol)
    return Spectrum(vals, spec.basis).apply(f)


def trace_of(A) -> float:
    return float(np.trace(as_matrix(A)).real)


def trace_function(f, A: SpectralInput, clamp_tol: float = CLAMP_TOL) -> float:
    """``Tr f(A) = sum_j f(lambda_j(A))``."""
    spec = _spectrum(A)
    vals = domain_values(f, spec.values, clamp_tol)
    return float(np.sum(f(vals)))


def matrix_abs(X: SpectralInput) -> np.ndarray:
    """``|X|`` for Hermitian ``X``."""
    return _spectrum(X).apply(np.abs)


def matrix_sqrt(X: SpectralInput, clamp_tol: float = CLAMP_TOL) -> np.ndarray:
    spec = _spectrum(X)
    if spec.values[-1] < -clamp_tol:
        raise DomainViolation(f"matrix_sqrt of a matrix with eigenvalue {spec.values[-1]:.3e}")
    return spec.apply(lambda w: np.sqrt(np.maximum(w, 0.0)))


def inverse_sqrt(X: SpectralInput) -> np.ndarray:
    spec = _spectrum(X)
    if spec.values[-1] <= 0:
        raise DomainViolation("inverse square root of a singular or indefinite matrix")
    return spec.apply(lambda w: 1.0 / np.sqrt(w))


def polar_abs(X) -> np.ndarray:
    """``|X| = (X* X)^{1/2}`` for an arbitrary, possibly rectangular, matrix."""
    M = as_matrix(X)
    return matrix_sqrt(adjoint(M) @ M)


def is_psd(A, tol: float = CLAMP_TOL) -> bool:
    return bool(eig(A).values[-1] >= -tol)


def matrix_from_json(obj: dict) -> np.ndarray:
    """Decode ``{"n": int, "re": [...], "im": [...]}`` (row-major, ``im`` optional)."""
    try:
        n = int(obj["n"])
        re = np.asarray(obj["re"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise DimensionMismatch(f"malformed matrix object: {exc}") from exc
    im = np.asarray(obj.get("im", np.zeros(n * n)), dtype=float)
    if n < 1 or re.size != n * n or im.size != n * n:
        raise DimensionMismatch(f"matrix with n={n} needs {n * n} entries, got re={re.size}, im={im.size}")
    return (re + 1j * im).reshape(n, n)


def matrix_to_json(A) -> dict:
    M = as_matrix(A)
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatch("only square matrices have a file representation")
    return {
        "n": M.shape[0],
        "re": M.real.ravel().tolist(),
        "im": M.imag.ravel().tolist(),
    }


def load_matrix(path) -> np.ndarray:
    with open(Path(path)) as fh:
        return matrix_from_json(json.load(fh))
