"""Trace Jensen inequality for superquadratic functions with doubly
stochastic corrections.

For PSD ``A, B`` with eigenvalues ``mu`` and ``nu`` (descending), and
``alpha`` in ``[0, 1]``, all parts share the left side

    Tr f(alpha A + (1 - alpha) B)
        + alpha Tr f((1 - alpha)|A - B|) + (1 - alpha) Tr f(alpha |A - B|)

and the base right side ``alpha Tr f(A) + (1 - alpha) Tr f(B)``.  At
``alpha = 1/2`` this is ``Tr f((A+B)/2) + Tr f(|A-B|/2) <= (Tr f(A) + Tr f(B))/2``.

Parts:

``correction_free``
    the base inequality with no correction.
``spectral_chain``
    the intermediate bound through the spectra: the ``|A - B|`` terms are
    replaced by ``|mu - nu|`` and ``Tr QF`` is subtracted, where ``Q``
    transports ``alpha mu + (1 - alpha) nu`` onto the eigenvalues ``xi`` of
    ``alpha A + (1 - alpha) B``.
``corrected``
    the base inequality minus ``(1-alpha) Tr P_a G_a + alpha Tr P_b G_b + Tr QF``
    with ``G_a = [f(alpha ||lambda_i| - |mu_j - nu_j||)]`` (``lambda`` the
    eigenvalues of ``A - B``) and ``G_b`` the same with ``1 - alpha``.
    ``P`` comes from the T-transform construction when ``|lambda|`` is
    majorized by ``|mu - nu|``; otherwise from the assignment minimizing
    ``Tr P G`` (the most favourable doubly stochastic choice).
``corrected_best_case``
    the same with ``Q`` also chosen by minimum assignment.  A failure here
    means no doubly stochastic ``P, Q`` can satisfy the corrected form.
"""

from __future__ import annotations

import numpy as np

from ..errors import ParameterOutOfRange
from ..majorization import correction_matrix, hlp_transfer, majorizes
from ..matching import optimal_matching
from ..report import DEFAULT_TOL, VerificationReport, combine
from .common import psd_spectrum
from ..hermitian import eigvals


def _permutation_matrix(perm) -> np.ndarray:
    n = len(perm)
    P = np.zeros((n, n))
    P[np.arange(n), list(perm)] = 1.0
    return P


def _assignment(G: np.ndarray) -> np.ndarray:
    return _permutation_matrix(optimal_matching(G, "min").permutation)


def _transfer(x, y, G):
    """T-transform ``P`` when ``x`` is majorized by ``y``, else minimum assignment."""
    if majorizes(y, x):
        return hlp_transfer(x, y), "hlp"
    return _assignment(G), "min_assignment"


def trace_jensen_superquadratic(f, A, B, alpha: float = 0.5, tol: float = DEFAULT_TOL) -> VerificationReport:
    if not 0.0 <= alpha <= 1.0:
        raise ParameterOutOfRange(f"alpha must lie in [0, 1], got {alpha}")
    sa, sb = psd_spectrum(A), psd_spectrum(B)
    Am, Bm = sa.reconstruct(), sb.reconstruct()
    a, b = alpha, 1.0 - alpha
    mu, nu = sa.values, sb.values
    lam = eigvals(Am - Bm)
    xi = psd_spectrum(a * Am + b * Bm).values

    def tr(g, v):
        return float(np.sum(g(v)))

    absdiff = np.abs(lam)
    lhs = tr(f, xi) + a * tr(f, b * absdiff) + b * tr(f, a * absdiff)
    base = a * tr(f, mu) + b * tr(f, nu)

    gap = np.abs(mu - nu)
    y = a * mu + b * nu
    Q = hlp_transfer(xi, y)
    F = correction_matrix(f, xi, y)
    qf = float(np.sum(Q * F))
    Q_best = _assignment(F)
    qf_best = float(np.sum(Q_best * F))

    spectral_rhs = float(np.sum(a * f(mu) + b * f(nu) - a * f(b * gap) - b * f(a * gap))) - qf

    G_a = correction_matrix(f, a * absdiff, a * gap)
    G_b = correction_matrix(f, b * absdiff, b * gap)
    P_a, source_a = _transfer(a * absdiff, a * gap, G_a)
    P_b, source_b = _transfer(b * absdiff, b * gap, G_b)
    pg = b * float(np.sum(P_a * G_a)) + a * float(np.sum(P_b * G_b))

    parts = {
        "correction_free": VerificationReport("correction_free", lhs, base, tol=tol),
        "spectral_chain": VerificationReport(
            "spectral_chain", tr(f, xi), spectral_rhs, tol=tol, witnesses={"QF": qf}
        ),
        "corrected": VerificationReport(
            "corrected", lhs, base - pg - qf, tol=tol,
            witnesses={"PG": pg, "QF": qf, "P_source": [source_a, source_b]},
        ),
        "corrected_best_case": VerificationReport(
            "corrected_best_case", lhs, base - pg - qf_best, tol=tol,
            witnesses={"PG": pg, "QF": qf_best},
        ),
    }
    return combine(
        "trace_jensen_superquadratic", parts, ("corrected",), tol=tol,
        alpha=alpha,
        spectra={"A": mu, "B": nu, "A-B": lam, "mix": xi},
        P=P_a, P_complement=P_b, Q=Q, G=G_a, F=F,
        abs_pair_majorized=bool(majorizes(gap, absdiff)),
        abs_pair_weakly_majorized=bool(majorizes(gap, absdiff, weak=True)),
    )
