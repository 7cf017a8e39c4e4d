"""Klein's inequality: the convex form, the superquadratic refinement and the
matching upper bound for functions whose negative is superquadratic."""

from __future__ import annotations

import numpy as np

from ..errors import DimensionMismatch, DomainViolation
from ..hermitian import Spectrum, check_hermitian, domain_values, eig
from ..matching import spectral_matching
from ..report import DEFAULT_TOL, VerificationReport, combine

PAIRING_TOL = 1e-9


def _spectrum_in_domain(f, A) -> Spectrum:
    spec = eig(A)
    return Spectrum(domain_values(f, spec.values), spec.basis, spec.sweeps)


def trace_pairing_bound(X, Y, tol: float = DEFAULT_TOL) -> VerificationReport:
    """``Tr XY <= <l(X), l(Y)>`` with both spectra in descending order."""
    X, Y = check_hermitian(X), check_hermitian(Y)
    lhs = float(np.trace(X @ Y).real)
    rhs = float(eig(X).values @ eig(Y).values)
    return VerificationReport("trace_pairing_bound", lhs, rhs, tol=tol)


def _klein_terms(f, A, B):
    """``Tr[f(A) - f(B) - (A - B) f'(B)]`` plus the pieces it is made of."""
    A, B = check_hermitian(A), check_hermitian(B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"dimensions {A.shape} and {B.shape} differ")
    sa, sb = _spectrum_in_domain(f, A), _spectrum_in_domain(f, B)
    with np.errstate(divide="ignore", invalid="ignore"):
        dvals = np.asarray(f.deriv(sb.values), dtype=float)
    if not np.all(np.isfinite(dvals)):
        raise DomainViolation("derivative of f is infinite on the spectrum of B")
    dB = sb.apply(lambda _: dvals)
    Am, Bm = sa.reconstruct(), sb.reconstruct()
    cross = float(np.trace((Am - Bm) @ dB).real)
    value = float(np.sum(f(sa.values)) - np.sum(f(sb.values))) - cross
    # the proof bounds Tr A f'(B) by pairing the spectra in descending order
    pairing = trace_pairing_bound(Am, dB)
    if pairing.margin < -PAIRING_TOL * max(1.0, abs(pairing.lhs)):
        raise AssertionError(f"trace pairing bound fails by {pairing.margin:.3e}")
    return value, sa, sb, dvals, Am, Bm


def klein_convex(f, A, B, tol: float = DEFAULT_TOL) -> VerificationReport:
    """``0 <= Tr[f(A) - f(B) - (A - B) f'(B)]`` for convex differentiable ``f``."""
    value, sa, sb, *_ = _klein_terms(f, A, B)
    return VerificationReport(
        "klein_convex", 0.0, value, tol=tol, witnesses={"spectra": {"A": sa.values, "B": sb.values}}
    )


def relative_entropy(rho, sigma) -> float:
    """``S(rho | sigma) = Tr rho (log rho - log sigma)``, with ``0 log 0 = 0``.

    Infinite when the support of ``rho`` is not inside that of ``sigma``.
    """
    sr, ss = eig(rho), eig(sigma)
    pr = np.clip(sr.values, 0.0, None)
    ps = np.clip(ss.values, 0.0, None)
    overlap = np.abs(ss.basis.conj().T @ sr.basis) ** 2  # [sigma eig k, rho eig j]
    with np.errstate(divide="ignore", invalid="ignore"):
        log_r = np.where(pr > 0, np.log(np.where(pr > 0, pr, 1.0)), 0.0)
        log_s = np.where(ps > 0, np.log(np.where(ps > 0, ps, 1.0)), -np.inf)
    if np.any((overlap * pr[None, :])[ps <= 0] > 1e-14):
        return float("inf")
    cross = np.where(ps[:, None] > 0, overlap * log_s[:, None], 0.0) @ pr
    return float(pr @ log_r - np.sum(cross))


def _derivative_order(f, mu: np.ndarray) -> np.ndarray:
    """Eigenvalues of ``B`` arranged so that ``f'(mu_1) >= ... >= f'(mu_n)``."""
    return mu[np.argsort(-np.asarray(f.deriv(mu), dtype=float), kind="stable")]


def klein_superquadratic(f, A, B, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Klein refinement for superquadratic ``f`` with ``f(0) = f'(0) = 0``.

    Parts sharing the right side ``Tr[f(A) - f(B) - (A - B) f'(B)]``:

    ``nonnegative_form`` (only for nonnegative ``f``): left side ``Tr f(|A - B|)``.
    ``matching_form``: left side ``min_pi sum_j f(|lambda_j - mu_pi(j)|)``.
    ``proof_pairing``: ``lambda`` descending against ``mu`` ordered by ``f'``.

    The literal reading ``n * min f(|x - y|)`` and the comparison of the
    matching minimum with ``Tr f(|A - B|)`` are recorded, not asserted.
    """
    value, sa, sb, _, Am, Bm = _klein_terms(f, A, B)
    lam, mu = sa.values, sb.values
    bound, literal, _ = spectral_matching(f, lam, mu, "min")
    paired = float(np.sum(f(np.abs(lam - _derivative_order(f, mu)))))
    abs_diff = np.abs(eig(Am - Bm).values)
    trace_abs = float(np.sum(f(abs_diff)))
    parts = {
        "matching_form": VerificationReport("matching_form", bound.value, value, tol=tol),
        "proof_pairing": VerificationReport("proof_pairing", paired, value, tol=tol),
    }
    if f.nonnegative:
        parts["nonnegative_form"] = VerificationReport("nonnegative_form", trace_abs, value, tol=tol)
    head = "nonnegative_form" if f.nonnegative else "matching_form"
    report = combine(
        "klein_superquadratic", parts, ("nonnegative_form", "matching_form", "proof_pairing"), tol=tol,
        spectra={"A": lam, "B": mu, "|A-B|": abs_diff},
        permutation=list(bound.permutation),
        literal_reading=literal,
        matching_min_below_trace_abs=bool(bound.value <= trace_abs + tol),
        stated_form=head,
    )
    return report


def klein_upper_bound(f, A, B, tol: float = DEFAULT_TOL) -> VerificationReport:
    """``Tr[f(A) - f(B) - (A - B) f'(B)] <= max_pi sum_j f(|lambda_j - mu_pi(j)|)``
    for convex ``f >= 0`` with ``-f`` superquadratic."""
    value, sa, sb, *_ = _klein_terms(f, A, B)
    bound, literal, _ = spectral_matching(f, sa.values, sb.values, "max")
    return VerificationReport(
        "klein_upper_bound", value, bound.value, tol=tol,
        witnesses={
            "spectra": {"A": sa.values, "B": sb.values},
            "permutation": list(bound.permutation),
            "literal_reading": literal,
        },
    )
