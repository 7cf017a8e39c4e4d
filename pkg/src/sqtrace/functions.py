"""Catalog of scalar convex / superquadratic functions and grid checkers.

A function ``f`` on ``[0, inf)`` is superquadratic when for every ``s`` there
is a constant ``C_s`` with

    f(t) >= f(s) + C_s (t - s) + f(|t - s|)      for all t >= 0.

For the differentiable members here with ``f(0) = f'(0) = 0`` that constant
is ``f'(s)``; for members that are not differentiable at 0 the right
derivative is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ParameterOutOfRange, UnknownName


@dataclass(frozen=True)
class ScalarFunction:
    name: str
    param: Optional[float]
    value: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]
    superquadratic: bool
    convex: bool
    nonnegative: bool
    # -f is superquadratic
    subquadratic: bool = False
    domain_min: float = 0.0

    def __call__(self, t):
        return self.value(np.asarray(t, dtype=float))

    def deriv(self, t):
        return self.derivative(np.asarray(t, dtype=float))

    def subgradient_constant(self, s):
        return self.deriv(s)

    @property
    def label(self) -> str:
        """CLI spelling, e.g. ``pow:3``."""
        prefix = _LABELS[self.name]
        if self.param is None:
            return prefix
        return f"{prefix}:{_fmt(self.param)}"

    def __repr__(self) -> str:
        return f"ScalarFunction({self.label})"


def _fmt(p: float) -> str:
    return str(int(p)) if float(p).is_integer() else repr(float(p))


def _power(p: float) -> ScalarFunction:
    if not p >= 1:
        raise ParameterOutOfRange(f"power requires p >= 1, got {p}")
    return ScalarFunction(
        name="power",
        param=float(p),
        value=lambda t: np.power(t, p),
        derivative=lambda t: p * np.power(t, p - 1),
        superquadratic=p >= 2,
        convex=True,
        nonnegative=True,
        subquadratic=p <= 2,
    )


def _neg_power(p: float) -> ScalarFunction:
    if not 1 <= p <= 2:
        raise ParameterOutOfRange(f"neg_power requires 1 <= p <= 2, got {p}")
    return ScalarFunction(
        name="neg_power",
        param=float(p),
        value=lambda t: -np.power(t, p),
        derivative=lambda t: -p * np.power(t, p - 1),
        superquadratic=True,
        convex=p == 1,
        nonnegative=False,
        subquadratic=p == 2,
    )


def _abs_power(p: float) -> ScalarFunction:
    if not p >= 1:
        raise ParameterOutOfRange(f"abs_power requires p >= 1, got {p}")
    return ScalarFunction(
        name="abs_power",
        param=float(p),
        value=lambda t: np.power(np.abs(t), p),
        derivative=lambda t: p * np.sign(t) * np.power(np.abs(t), p - 1),
        superquadratic=p >= 2,
        convex=True,
        nonnegative=True,
        subquadratic=p <= 2,
        domain_min=-math.inf,
    )


def _square(_=None) -> ScalarFunction:
    return ScalarFunction(
        name="square",
        param=None,
        value=lambda t: t * t,
        derivative=lambda t: 2.0 * t,
        superquadratic=True,
        convex=True,
        nonnegative=True,
        subquadratic=True,
        domain_min=-math.inf,
    )


def _xlogx(t: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(t > 0, t * np.log(np.where(t > 0, t, 1.0)), 0.0)


def _xlogx_deriv(t: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(t) + 1.0


def _t_log_t(_=None) -> ScalarFunction:
    return ScalarFunction(
        name="t_log_t",
        param=None,
        value=_xlogx,
        derivative=_xlogx_deriv,
        superquadratic=False,
        convex=True,
        nonnegative=False,
    )


def _linear(_=None) -> ScalarFunction:
    return ScalarFunction(
        name="linear",
        param=None,
        value=lambda t: np.array(t, dtype=float),
        derivative=lambda t: np.ones_like(t, dtype=float),
        superquadratic=False,
        convex=True,
        nonnegative=True,
        subquadratic=True,
    )


_BUILDERS = {
    "power": (_power, True),
    "neg_power": (_neg_power, True),
    "abs_power": (_abs_power, True),
    "square": (_square, False),
    "t_log_t": (_t_log_t, False),
    "linear": (_linear, False),
}

_LABELS = {
    "power": "pow",
    "neg_power": "negpow",
    "abs_power": "abspow",
    "square": "square",
    "t_log_t": "tlogt",
    "linear": "linear",
}
_BY_LABEL = {v: k for k, v in _LABELS.items()}


def catalog(name: str, parameter: Optional[float] = None) -> ScalarFunction:
    """Build a catalog function.

    ``power`` (p >= 1; superquadratic only for p >= 2), ``neg_power``
    (-t^p, 1 <= p <= 2), ``abs_power`` (|t|^p on the real line), ``square``,
    ``t_log_t`` (convex only, 0 log 0 = 0) and ``linear``.
    """
    try:
        builder, needs_param = _BUILDERS[name]
    except KeyError:
        raise UnknownName(f"unknown function {name!r}; known: {sorted(_BUILDERS)}") from None
    if needs_param:
        if parameter is None:
            raise ParameterOutOfRange(f"{name} needs a parameter")
        return builder(float(parameter))
    if parameter is not None:
        raise ParameterOutOfRange(f"{name} takes no parameter")
    return builder()


def parse_function(spec: str) -> ScalarFunction:
    """Parse the CLI spelling: ``pow:3``, ``negpow:1.5``, ``tlogt``, ``square``..."""
    label, _, arg = spec.strip().partition(":")
    name = _BY_LABEL.get(label, label)
    if arg:
        try:
            value = float(arg)
        except ValueError:
            raise ParameterOutOfRange(f"bad parameter in {spec!r}") from None
        return catalog(name, value)
    return catalog(name)


def standard_grid() -> np.ndarray:
    """101 points on [0, 10]: 0, 50 geometric points and 50 linear points."""
    grid = np.concatenate(([0.0], np.geomspace(1e-3, 10.0, 50), np.linspace(0.2, 9.8, 50)))
    grid = np.unique(grid)
    assert grid.size == 101
    return grid


@dataclass(frozen=True)
class GridCheck:
    passed: bool
    worst_slack: float
    witness: Optional[tuple]
    tol: float


def _first_violation(bad: np.ndarray, a: np.ndarray, b: np.ndarray):
    if not bad.any():
        return None
    i, j = np.argwhere(bad)[0]
    return (float(a[i]), float(b[j]))


def check_superquadratic(f: ScalarFunction, grid=None, tol: float = 1e-9) -> GridCheck:
    """Test the superquadratic inequality on all pairs ``(s, t)`` of ``grid``.

    The witness is the first violating pair in row-major order (``s`` outer).
    """
    g = standard_grid() if grid is None else np.asarray(grid, dtype=float)
    s = g[:, None]
    t = g[None, :]
    fs, ft, fd = f(s), f(t), f(np.abs(t - s))
    cs = f.subgradient_constant(s) * (t - s)
    slack = ft - fs - cs - fd
    scale = 1.0 + np.abs(ft) + np.abs(fs) + np.abs(cs) + np.abs(fd)
    bad = slack < -tol * scale
    return GridCheck(not bad.any(), float(np.min(slack)), _first_violation(bad, g, g), tol)


def check_convex(f: ScalarFunction, grid=None, tol: float = 1e-9) -> GridCheck:
    """Midpoint convexity on all grid pairs."""
    g = standard_grid() if grid is None else np.asarray(grid, dtype=float)
    s = g[:, None]
    t = g[None, :]
    fs, ft, fm = f(s), f(t), f((s + t) / 2)
    slack = (fs + ft) / 2 - fm
    scale = 1.0 + np.abs(fs) + np.abs(ft)
    bad = slack < -tol * scale
    return GridCheck(not bad.any(), float(np.min(slack)), _first_violation(bad, g, g), tol)


SUPERQUADRATIC_SET = ("square", "pow:2.5", "pow:3", "pow:4", "negpow:1.5")
NONNEGATIVE_SUPERQUADRATIC_SET = ("square", "pow:2.5", "pow:3", "pow:4")
CONVEX_SET = ("square", "pow:2.5", "pow:3", "pow:4", "pow:1.5", "tlogt")
UPPER_BOUND_SET = ("pow:1.5", "pow:1.25", "square")
