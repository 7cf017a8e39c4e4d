"""Peierls inequality and its superquadratic refinement."""

from __future__ import annotations

import numpy as np

from ..errors import DimensionMismatch, NotOrthonormal
from ..hermitian import adjoint, as_matrix
from ..report import DEFAULT_TOL, VerificationReport, combine
from .common import compress, psd_spectrum

ORTHONORMAL_TOL = 1e-10
EIGENBASIS_TOL = 1e-9


def peierls(f, A, basis, tol: float = DEFAULT_TOL) -> VerificationReport:
    """For an orthonormal basis ``u_j`` (columns of ``basis``) and ``d_j = <A u_j, u_j>``:

    ``classical`` (convex ``f``):  ``sum f(d_j) <= Tr f(A)``
    ``refined`` (superquadratic ``f``):
    ``sum f(d_j) + sum <f(|A - d_j|) u_j, u_j> <= Tr f(A)``
    """
    spec = psd_spectrum(A)
    U = as_matrix(basis)
    if U.shape != (spec.n, spec.n):
        raise DimensionMismatch(f"basis of shape {U.shape} for a {spec.n}x{spec.n} matrix")
    if np.linalg.norm(adjoint(U) @ U - np.eye(spec.n)) > ORTHONORMAL_TOL * max(1.0, np.sqrt(spec.n)):
        raise NotOrthonormal("basis columns are not orthonormal")
    d = compress(spec, lambda t: t, U)
    total = float(np.sum(f(spec.values)))
    classical = float(np.sum(f(d)))
    parts = {}
    if f.convex:
        parts["classical"] = VerificationReport("classical", classical, total, tol=tol)
    if f.superquadratic:
        shifted = np.array([compress(spec, lambda t, s=s: f(np.abs(t - s)), U[:, [j]])[0] for j, s in enumerate(d)])
        parts["refined"] = VerificationReport(
            "refined", classical + float(shifted.sum()), total, tol=tol, witnesses={"correction": float(shifted.sum())}
        )
    Am = spec.reconstruct()
    residual = np.linalg.norm(Am @ U - U * d) / max(1.0, float(np.linalg.norm(Am)))
    return combine(
        "peierls", parts, ("refined", "classical"), tol=tol,
        basis=U, diagonal=d, spectra=spec.values, eigenbasis=bool(residual <= EIGENBASIS_TOL),
    )
