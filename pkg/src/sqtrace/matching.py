"""Optimal bijective matchings between two spectra."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch

ENUMERATION_LIMIT = 8


@dataclass(frozen=True)
class MatchingBound:
    """``value = sum_i cost[i, permutation[i]]``, optimal for ``mode``."""

    permutation: tuple
    value: float
    mode: str


def _check(cost, mode) -> np.ndarray:
    C = np.asarray(cost, dtype=float)
    if C.ndim != 2 or C.shape[0] != C.shape[1] or C.shape[0] < 1:
        raise DimensionMismatch(f"cost grid must be square and non-empty, got {C.shape}")
    if mode not in ("min", "max"):
        raise ValueError(f"mode must be 'min' or 'max', got {mode!r}")
    return C


@functools.lru_cache(maxsize=ENUMERATION_LIMIT)
def _permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp)


def _enumerate(C: np.ndarray, sign: float):
    perms = _permutations(C.shape[0])
    totals = sign * C[np.arange(C.shape[0]), perms].sum(axis=1)
    return tuple(perms[int(np.argmin(totals))])


def _hungarian(C: np.ndarray):
    """Minimum-cost assignment by shortest augmenting paths with potentials."""
    n = C.shape[0]
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    match = np.zeros(n + 1, dtype=int)  # match[col] = row, 1-based, 0 = free
    way = np.zeros(n + 1, dtype=int)
    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = match[j0]
            cur = C[i0 - 1, :] - u[i0] - v[1:]
            free = ~used[1:]
            better = free & (cur < minv[1:])
            minv[1:][better] = cur[better]
            way[1:][better] = j0
            cand = np.where(free, minv[1:], np.inf)
            j1 = int(np.argmin(cand)) + 1
            delta = cand[j1 - 1]
            u[match[used]] += delta
            v[used] -= delta
            minv[1:][free] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    perm = np.empty(n, dtype=int)
    for j in range(1, n + 1):
        perm[match[j] - 1] = j - 1
    return tuple(int(p) for p in perm)


def optimal_matching(cost, mode: str = "min", method: str = "auto") -> MatchingBound:
    """Optimal permutation for ``sum_i cost[i, pi(i)]``.

    ``method`` is ``"enumerate"``, ``"hungarian"`` or ``"auto"`` (enumeration
    up to n = 8).
    """
    C = _check(cost, mode)
    sign = 1.0 if mode == "min" else -1.0
    if method == "auto":
        method = "enumerate" if C.shape[0] <= ENUMERATION_LIMIT else "hungarian"
    if method == "enumerate":
        perm = _enumerate(C, sign)
    elif method == "hungarian":
        perm = _hungarian(sign * C)
    else:
        raise ValueError(f"unknown method {method!r}")
    value = float(C[np.arange(C.shape[0]), list(perm)].sum())
    return MatchingBound(tuple(int(p) for p in perm), value, mode)


def spectral_matching(f, x, y, mode: str = "min") -> tuple:
    """Matching bound of ``sum_j f(|x_j - y_pi(j)|)`` and the literal reading
    ``n * opt_{a, b} f(|a - b|)`` over all eigenvalue pairs."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    grid = np.asarray(f(np.abs(x[:, None] - y[None, :])), dtype=float)
    bound = optimal_matching(grid, mode)
    pick = grid.min() if mode == "min" else grid.max()
    return bound, float(x.size * pick), grid
