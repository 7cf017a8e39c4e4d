"""Random instance generators.  Each takes dimensions and a 64-bit seed (or an
existing ``Generator``) and is a pure function of them."""

from __future__ import annotations

import numpy as np

from ..errors import BadDims, ConfigError
from ..hermitian import adjoint, inverse_sqrt
from ..maps import State, UnitalMap
from .rng import make_rng


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else make_rng(seed)


def _dims(*dims):
    for d in dims:
        if int(d) != d or d < 1:
            raise BadDims(f"dimensions must be positive integers, got {dims}")


def ginibre(rows: int, cols: int, seed) -> np.ndarray:
    """Standard complex Gaussian matrix."""
    rng = _rng(seed)
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def gen_psd(n: int, seed, normalize: bool = False) -> np.ndarray:
    """``G G* / n`` (or with unit trace when ``normalize``)."""
    _dims(n)
    G = ginibre(n, n, seed)
    A = G @ adjoint(G)
    A = A / (np.trace(A).real if normalize else n)
    return (A + adjoint(A)) / 2


def gen_hermitian(n: int, seed) -> np.ndarray:
    _dims(n)
    G = ginibre(n, n, seed)
    return (G + adjoint(G)) / 2


def gen_isometry(n: int, m: int, seed) -> np.ndarray:
    """``n x m`` matrix with orthonormal columns, Haar distributed."""
    _dims(n, m)
    if m > n:
        raise BadDims(f"an isometry C^{m} -> C^{n} needs m <= n")
    Q, R = np.linalg.qr(ginibre(n, m, seed))
    d = np.diag(R)
    return Q * (d / np.abs(d))


def haar_unitary(n: int, seed) -> np.ndarray:
    return gen_isometry(n, n, seed)


def gen_basis(n: int, seed) -> np.ndarray:
    """Random orthonormal basis as the columns of a unitary."""
    return haar_unitary(n, seed)


def gen_density(n: int, seed) -> State:
    return State.density(gen_psd(n, seed, normalize=True))


def gen_unit_vector(n: int, seed) -> np.ndarray:
    _dims(n)
    v = ginibre(n, 1, seed).ravel()
    return v / np.linalg.norm(v)


def gen_kraus_family(n: int, k: int, seed, rows: int | None = None) -> list:
    """``C_i = G_i S^{-1/2}`` with ``S = sum G_j* G_j``, so ``sum C_i* C_i = I_n``."""
    rows = n if rows is None else rows
    _dims(n, k, rows)
    rng = _rng(seed)
    Gs = [ginibre(rows, n, rng) for _ in range(k)]
    W = inverse_sqrt(sum(adjoint(G) @ G for G in Gs))
    return [G @ W for G in Gs]


def gen_projections(n: int, k: int, seed) -> list:
    """``k`` mutually orthogonal projections summing to ``I_n`` in a random basis."""
    _dims(n, k)
    if k > n:
        raise BadDims(f"cannot split C^{n} into {k} nonzero blocks")
    rng = _rng(seed)
    U = haar_unitary(n, rng)
    cuts = np.sort(rng.choice(np.arange(1, n), size=k - 1, replace=False)) if k > 1 else []
    blocks = np.split(np.arange(n), cuts)
    return [U[:, b] @ adjoint(U[:, b]) for b in blocks]


def gen_unital_map(spec: str, n: int, seed, m: int | None = None) -> UnitalMap:
    """Map from its CLI spelling: ``identity``, ``pinch:k`` or ``kraus:r``.

    Kraus maps use ``V_i = S^{-1/2} G_i`` with ``S = sum G_j G_j*`` and
    ``V_i`` of shape ``(m, n)``.
    """
    kind, _, arg = spec.partition(":")
    try:
        count = int(arg) if arg else 1
    except ValueError:
        raise ConfigError(f"bad map spec {spec!r}") from None
    if kind == "identity":
        return UnitalMap.identity(n)
    if kind == "pinch":
        return UnitalMap.pinching(gen_projections(n, min(count, n), seed))
    if kind == "kraus":
        m = n if m is None else m
        _dims(n, m, count)
        if count * n < m:
            raise BadDims(f"{count} Kraus operators from C^{n} cannot be unital on C^{m}")
        rng = _rng(seed)
        Gs = [ginibre(m, n, rng) for _ in range(count)]
        W = inverse_sqrt(sum(G @ adjoint(G) for G in Gs))
        return UnitalMap.kraus([W @ G for G in Gs])
    raise ConfigError(f"unknown map kind {kind!r}")


def gen_majorized_pair(n: int, seed, terms: int = 4):
    """``(x, y)`` with nonnegative ``y`` and ``x = P y`` for a random doubly
    stochastic ``P`` (a convex combination of permutations)."""
    _dims(n)
    rng = _rng(seed)
    y = rng.exponential(size=n) * rng.choice([0.5, 1.0, 5.0])
    w = rng.dirichlet(np.ones(terms))
    P = sum(wi * np.eye(n)[rng.permutation(n)] for wi in w)
    return P @ y, y


def gen_weights(k: int, seed) -> np.ndarray:
    _dims(k)
    return _rng(seed).dirichlet(np.ones(k))
