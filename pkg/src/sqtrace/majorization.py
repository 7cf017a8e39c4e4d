"""Majorization predicates, the Hardy-Littlewood-Polya transfer and the
doubly stochastic correction bound for superquadratic functions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch, NotMajorized
from .hermitian import check_hermitian, eigvals
from .report import DEFAULT_TOL, VerificationReport

MAJORIZATION_TOL = 1e-9
STOCHASTIC_TOL = 1e-10


def _vectors(x, y):
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.size < 1 or x.size != y.size:
        raise LengthMismatch(f"vectors of lengths {x.size} and {y.size}")
    return x, y


def descending(x) -> np.ndarray:
    return np.sort(np.asarray(x, dtype=float).ravel())[::-1]


def majorization_slack(y, x, weak: bool = False) -> float:
    """Smallest partial-sum slack of ``x`` against ``y``; ``>= 0`` means ``x`` is
    (weakly) majorized by ``y``.

    For strong majorization the total-sum mismatch counts as negative slack.
    """
    x, y = _vectors(x, y)
    gaps = np.cumsum(descending(y)) - np.cumsum(descending(x))
    if weak:
        return float(gaps.min())
    head = gaps[:-1].min() if gaps.size > 1 else np.inf
    return float(min(head, -abs(gaps[-1])))


def _scale(x, y) -> float:
    return max(1.0, float(np.abs(x).sum()), float(np.abs(y).sum()))


def majorizes(y, x, weak: bool = False, tol: float = MAJORIZATION_TOL) -> bool:
    """True iff ``x`` is majorized by ``y`` (``x`` weakly majorized if ``weak``)."""
    x, y = _vectors(x, y)
    return majorization_slack(y, x, weak) >= -tol * _scale(x, y)


def is_doubly_stochastic(P, tol: float = STOCHASTIC_TOL) -> bool:
    P = np.asarray(P, dtype=float)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        return False
    return bool(
        P.min() >= -1e-12
        and np.all(np.abs(P.sum(axis=0) - 1) <= tol)
        and np.all(np.abs(P.sum(axis=1) - 1) <= tol)
    )


def _hlp_sorted(xs: np.ndarray, ys: np.ndarray, eps: float):
    n = xs.size
    w = ys.copy()
    P = np.eye(n)
    steps = 0
    while True:
        above = np.nonzero(w - xs > eps)[0]
        if above.size == 0:
            break
        j = above[-1]
        below = np.nonzero(xs[j + 1:] - w[j + 1:] > eps)[0]
        if below.size == 0:
            break
        k = j + 1 + below[0]
        pin_j = w[j] - xs[j] <= xs[k] - w[k]
        delta = min(w[j] - xs[j], xs[k] - w[k])
        t = delta / (w[j] - w[k])
        T = np.eye(n)
        T[j, j] = T[k, k] = 1 - t
        T[j, k] = T[k, j] = t
        P = T @ P
        wj, wk = w[j], w[k]
        w[j] = (1 - t) * wj + t * wk
        w[k] = t * wj + (1 - t) * wk
        # pin the coordinate this step was meant to equalize
        if pin_j:
            w[j] = xs[j]
        else:
            w[k] = xs[k]
        steps += 1
        if steps > n:
            raise AssertionError("T-transform schedule did not terminate")
    return P, steps


def hlp_transfer(x, y, tol: float = MAJORIZATION_TOL, return_steps: bool = False):
    """Doubly stochastic ``P`` with ``P @ y = x`` for ``x`` majorized by ``y``.

    ``P`` is a product of at most ``n - 1`` T-transforms.  Both vectors are
    sorted internally and the result is expressed in the caller's order.
    """
    x, y = _vectors(x, y)
    if not majorizes(y, x, tol=tol):
        raise NotMajorized(f"x is not majorized by y (slack {majorization_slack(y, x):.3e})")
    ix = np.argsort(-x, kind="stable")
    iy = np.argsort(-y, kind="stable")
    eps = tol * max(1.0, float(np.abs(y).max()))
    Ps, steps = _hlp_sorted(x[ix], y[iy], eps)
    P = np.empty_like(Ps)
    P[np.ix_(ix, iy)] = Ps
    return (P, steps) if return_steps else P


def correction_matrix(f, x, y) -> np.ndarray:
    """``F[i, j] = f(|x_i - y_j|)``."""
    x, y = _vectors(x, y)
    return np.asarray(f(np.abs(x[:, None] - y[None, :])), dtype=float)


def lemma2_bound(f, x, y, tol: float = DEFAULT_TOL) -> VerificationReport:
    """``sum f(x) <= sum f(y) - sum_ij p_ij f(|y_j - x_i|)`` with ``P = hlp_transfer(x, y)``."""
    x, y = _vectors(x, y)
    P = hlp_transfer(x, y)
    F = correction_matrix(f, x, y)
    correction = float(np.sum(P * F))
    lhs = float(np.sum(f(x)))
    rhs = float(np.sum(f(y))) - correction
    return VerificationReport(
        "lemma2_bound", lhs, rhs, tol=tol,
        witnesses={"x": x, "y": y, "P": P, "F": F, "correction": correction},
    )


@dataclass(frozen=True)
class Relation:
    smaller: np.ndarray
    larger: np.ndarray
    weak: bool
    slack: float
    holds: bool


def _relation(smaller, larger, weak=False, tol=MAJORIZATION_TOL) -> Relation:
    slack = majorization_slack(larger, smaller, weak)
    return Relation(np.asarray(smaller), np.asarray(larger), weak, slack, slack >= -tol)


# The four relations that bracket the spectra of A - B and A + B.
CORE_RELATIONS = ("diff_lower", "diff_upper", "sum_lower", "sum_upper")


def eigen_majorization(A, B, tol: float = MAJORIZATION_TOL) -> dict:
    """Majorization relations between spectra of ``A``, ``B``, ``A - B`` and ``A + B``.

    Core relations (always true for Hermitian pairs)::

        diff_lower   l(A) - l(B)      < l(A - B)
        diff_upper   l(A - B)         < l(A) - lasc(B)
        sum_lower    l(A) + lasc(B)   < l(A + B)
        sum_upper    l(A + B)         < l(A) + l(B)

    Derived relations for absolute values are reported in both directions:
    ``abs_reversed`` (``|l(B) - l(A)|`` weakly below ``|l(A - B)|``) holds,
    while the ``*_as_printed`` forms put the difference of spectra on the
    larger side and can fail.
    """
    A = check_hermitian(A)
    B = check_hermitian(B)
    if A.shape != B.shape:
        raise LengthMismatch(f"dimensions {A.shape} and {B.shape} differ")
    a, b = eigvals(A), eigvals(B)
    d, s = eigvals(A - B), eigvals(A + B)
    return {
        "diff_lower": _relation(a - b, d, tol=tol),
        "diff_upper": _relation(d, a - b[::-1], tol=tol),
        "sum_lower": _relation(a + b[::-1], s, tol=tol),
        "sum_upper": _relation(s, a + b, tol=tol),
        "jg_as_printed": _relation(-d, b - a, tol=tol),
        "jg_reversed": _relation(b - a, -d, tol=tol),
        "abs_weak_as_printed": _relation(np.abs(d), np.abs(b - a), weak=True, tol=tol),
        "abs_strong_as_printed": _relation(np.abs(d), np.abs(b - a), tol=tol),
        "abs_reversed": _relation(np.abs(b - a), np.abs(d), weak=True, tol=tol),
    }
