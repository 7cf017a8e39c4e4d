"""Trace Jensen inequalities for families ``C_i`` with ``sum C_i* C_i = I``:
the convex version, the conjectured superquadratic version, the isometry
variant and the basis-minimum variant for unital maps."""

from __future__ import annotations

import numpy as np

from ..errors import DimensionMismatch, NotIsometry, NotIsometryFamily
from ..hermitian import (
    adjoint,
    apply_function,
    as_matrix,
    check_hermitian,
    domain_values,
    eig,
    polar_abs,
)
from ..maps import UnitalMap, apply_map
from ..report import DEFAULT_TOL, VerificationReport, combine
from .common import compress, psd_spectrum, shifted_abs

FAMILY_TOL = 1e-10
BLOCK_TOL = 1e-9
DEFECT_ZERO = 1e-12


def _family(A_list, C_list):
    As = [check_hermitian(A) for A in A_list]
    Cs = [as_matrix(C) for C in C_list]
    if not As or len(As) != len(Cs):
        raise DimensionMismatch(f"{len(As)} matrices for {len(Cs)} coefficients")
    n = Cs[0].shape[1]
    for A, C in zip(As, Cs):
        if C.shape[1] != n or C.shape[0] != A.shape[0]:
            raise DimensionMismatch(f"C of shape {C.shape} does not fit A of shape {A.shape}")
    defect = np.linalg.norm(sum(adjoint(C) @ C for C in Cs) - np.eye(n))
    if defect > FAMILY_TOL * max(1.0, np.sqrt(n)):
        raise NotIsometryFamily(f"sum C_i* C_i differs from I by {defect:.3e}")
    return As, Cs, n


def _compressed_trace(C, M) -> float:
    return float(np.trace(adjoint(C) @ M @ C).real)


def hansen_pedersen_trace(f, A_list, C_list, tol: float = DEFAULT_TOL) -> VerificationReport:
    """``Tr f(sum C_i* A_i C_i) <= Tr sum C_i* f(A_i) C_i`` for convex ``f``."""
    As, Cs, _ = _family(A_list, C_list)
    M = sum(adjoint(C) @ A @ C for A, C in zip(As, Cs))
    lhs = float(np.sum(f(_values(f, M))))
    rhs = sum(_compressed_trace(C, apply_function(f, A)) for A, C in zip(As, Cs))
    return VerificationReport("hansen_pedersen_trace", lhs, rhs, tol=tol, witnesses={"k": len(As)})


def _values(f, M):
    return domain_values(f, eig(M).values)


def conjecture_margin(f, A_list, C_list, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Margin of the conjectured superquadratic refinement under two readings
    of the shift ``s``: the trace of ``sum C_i* A_i C_i`` (``literal``) and that
    trace divided by ``n`` (``normalized``).

    The headline is the literal reading.  The report is evidence only and
    says nothing about whether the conjecture is true.
    """
    As, Cs, n = _family(A_list, C_list)
    M = sum(adjoint(C) @ A @ C for A, C in zip(As, Cs))
    lhs = float(np.sum(f(_values(f, M))))
    spectra = [psd_spectrum(A) for A in As]
    base = sum(_compressed_trace(C, s.apply(f)) for s, C in zip(spectra, Cs))
    trace = float(np.trace(M).real)
    parts = {}
    for reading, shift in (("literal", trace), ("normalized", trace / n)):
        correction = sum(_compressed_trace(C, shifted_abs(s, f, shift)) for s, C in zip(spectra, Cs))
        parts[reading] = VerificationReport(
            reading, lhs, base - correction, tol=tol, witnesses={"shift": shift, "correction": correction}
        )
    return combine(
        "conjecture_margin", parts, ("literal",), tol=tol,
        evidence="search evidence only, not a verdict",
        shifts={"literal": trace, "normalized": trace / n},
    )


def _defect(C) -> np.ndarray:
    """``(I - C C*)^{1/2}``.  The argument is a projection, so eigenvalues
    within roundoff of 0 are set to 0 before taking roots."""
    n = C.shape[0]
    spec = eig(np.eye(n) - C @ adjoint(C))
    return spec.apply(lambda w: np.sqrt(np.where(w > DEFECT_ZERO, w, 0.0)))


def _block_unitaries(C, D):
    n, m = C.shape
    Cs = adjoint(C)
    Z = np.zeros((m, m), dtype=complex)
    U = np.block([[C, D], [Z, -Cs]])
    V = np.block([[C, -D], [Z, Cs]])
    return U, V


def isometry_jensen(f, A, C, B=None, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Isometry variant for nonnegative superquadratic ``f``.

    ``C`` is ``n x m`` with ``C* C = I_m`` and ``D = (I - C C*)^{1/2}``::

        Tr f(C*AC) + Tr f(DAD)
            <= Tr[C* f(A) C + D f(A) D] - Tr[f(|DAC|) + f(|C*AD|)]

    Before evaluating, the ``(n+m)``-dimensional block unitaries ``U, V`` are
    built with ``A~ = A (+) B`` and the block identities for
    ``(U*A~U +- V*A~V)/2`` are asserted.
    """
    spec = psd_spectrum(A)
    Am = spec.reconstruct()
    C = as_matrix(C)
    n, m = C.shape
    if n != spec.n or m > n:
        raise DimensionMismatch(f"isometry of shape {C.shape} for a {spec.n}x{spec.n} matrix")
    Cs = adjoint(C)
    if np.linalg.norm(Cs @ C - np.eye(m)) > FAMILY_TOL * max(1.0, np.sqrt(m)):
        raise NotIsometry("C* C differs from the identity")
    D = _defect(C)
    Bm = np.zeros((m, m), dtype=complex) if B is None else check_hermitian(B)
    block_error = _check_blocks(Am, Bm, C, D)

    fA = spec.apply(f)
    CAC, DAD = Cs @ Am @ C, D @ Am @ D
    lhs = float(np.sum(f(psd_spectrum(CAC).values)) + np.sum(f(psd_spectrum(DAD).values)))
    hpt_rhs = float(np.trace(Cs @ fA @ C).real + np.trace(D @ fA @ D).real)
    corr = sum(float(np.sum(f(psd_spectrum(polar_abs(X)).values))) for X in (D @ Am @ C, Cs @ Am @ D))
    return VerificationReport(
        "isometry_jensen", lhs, hpt_rhs - corr, tol=tol,
        witnesses={"correction": corr, "hpt_rhs": hpt_rhs, "block_identity_error": block_error, "dims": [n, m]},
    )


def _check_blocks(A, B, C, D) -> float:
    n, m = C.shape
    U, V = _block_unitaries(C, D)
    N = n + m
    eye = np.eye(N)
    errors = [np.linalg.norm(adjoint(U) @ U - eye), np.linalg.norm(adjoint(V) @ V - eye)]
    At = np.zeros((N, N), dtype=complex)
    At[:n, :n] = A
    At[n:, n:] = B
    X, Y = adjoint(U) @ At @ U, adjoint(V) @ At @ V
    Cs = adjoint(C)
    mean = np.zeros((N, N), dtype=complex)
    mean[:m, :m] = Cs @ A @ C
    mean[m:, m:] = D @ A @ D + C @ B @ Cs
    half = np.zeros((N, N), dtype=complex)
    half[:m, m:] = Cs @ A @ D
    half[m:, :m] = D @ A @ C
    # |W| is the positive root of W*W, so the absolute-value identity is
    # asserted on squares; roots of tiny eigenvalues would amplify roundoff.
    sq_half = np.zeros((N, N), dtype=complex)
    sq_half[:m, :m] = adjoint(D @ A @ C) @ (D @ A @ C)
    sq_half[m:, m:] = adjoint(Cs @ A @ D) @ (Cs @ A @ D)
    scale = max(1.0, float(np.linalg.norm(At)))
    W = (X - Y) / 2
    errors.append(np.linalg.norm((X + Y) / 2 - mean) / scale)
    errors.append(np.linalg.norm(W - half) / scale)
    errors.append(np.linalg.norm(adjoint(W) @ W - sq_half) / scale**2)
    worst = float(max(errors))
    if worst > BLOCK_TOL:
        raise AssertionError(f"block unitary identities fail by {worst:.3e}")
    return worst


def _basis_correction(spec, f, phi, Y, basis) -> float:
    s = np.real(np.einsum("ij,ij->j", basis.conj(), Y @ basis))
    total = 0.0
    for j in range(basis.shape[1]):
        Pj = apply_map(phi, shifted_abs(spec, f, s[j]))
        u = basis[:, j]
        total += float(np.vdot(u, Pj @ u).real)
    return total


def min_correction_trace_jensen(
    f, A, phi: UnitalMap, num_sampled_bases: int = 0, seed=None, tol: float = DEFAULT_TOL
) -> VerificationReport:
    """``Tr f(Phi(A)) <= Tr Phi(f(A)) - sum_j <Phi(f(|A - <Phi(A)u_j,u_j>|)) u_j, u_j>``.

    The required part uses the eigenbasis of ``Phi(A)``.  The ``sampled_min``
    part takes the smallest correction over that basis and
    ``num_sampled_bases`` Haar bases drawn from ``seed``.
    """
    spec = psd_spectrum(as_matrix(A))
    Y = apply_map(phi, spec.reconstruct())
    ys = eig(Y)
    lhs = float(np.sum(f(psd_spectrum(ys).values)))
    base = float(np.trace(apply_map(phi, spec.apply(f))).real)
    corr_eig = _basis_correction(spec, f, phi, Y, ys.basis)
    corrections = [corr_eig]
    if num_sampled_bases:
        from ..harness.generators import gen_basis
        from ..harness.rng import make_rng

        rng = make_rng(0 if seed is None else seed)
        for _ in range(num_sampled_bases):
            corrections.append(_basis_correction(spec, f, phi, Y, gen_basis(phi.n_out, rng)))
    best = int(np.argmin(corrections))
    parts = {
        "eigenbasis": VerificationReport("eigenbasis", lhs, base - corr_eig, tol=tol, witnesses={"correction": corr_eig}),
        "sampled_min": VerificationReport(
            "sampled_min", lhs, base - corrections[best], tol=tol,
            witnesses={"correction": corrections[best], "argmin": best, "bases": len(corrections)},
        ),
    }
    report = combine(
        "min_correction_trace_jensen", parts, ("eigenbasis",), tol=tol,
        map=phi.kind, basis=ys.basis, spectra=ys.values,
    )
    report.seed = seed
    return report
