"""The worked 2x2 examples: A = [[2, 1], [1, 2]], B = diag(2, 0)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..functions import catalog
from ..hermitian import eig
from ..inequalities import klein_superquadratic, klein_upper_bound

EXAMPLE_A = np.array([[2.0, 1.0], [1.0, 2.0]])
EXAMPLE_B = np.diag([2.0, 0.0])
EXACT_TOL = 1e-8
PRINTED_TOL = 0.01


@dataclass(frozen=True)
class ExampleRow:
    label: str
    computed: float
    target: float
    tol: float
    graded: bool = True

    @property
    def delta(self) -> float:
        return self.computed - self.target

    @property
    def passed(self) -> bool:
        return (not self.graded) or abs(self.delta) <= self.tol


@dataclass(frozen=True)
class ExampleTable:
    rows: tuple

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def lines(self) -> list:
        out = [f"{'quantity':42s} {'computed':>12s} {'target':>10s} {'delta':>11s}  status"]
        for r in self.rows:
            status = ("ok" if r.passed else "FAIL") if r.graded else "info"
            out.append(f"{r.label:42s} {r.computed:12.6f} {r.target:10.4f} {r.delta:11.3e}  {status}")
        return out

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "rows": [
                {"label": r.label, "computed": r.computed, "target": r.target, "delta": r.delta,
                 "tol": r.tol, "graded": r.graded, "passed": r.passed}
                for r in self.rows
            ],
        }


def reproduce_examples() -> ExampleTable:
    cube = klein_superquadratic(catalog("power", 3), EXAMPLE_A, EXAMPLE_B)
    gap3 = cube.parts["nonnegative_form"]
    upper = klein_upper_bound(catalog("power", 1.5), EXAMPLE_A, EXAMPLE_B)
    abs_cube = float(np.sum(np.abs(eig(EXAMPLE_A - EXAMPLE_B).values) ** 3))
    rows = (
        ExampleRow("Klein gap, f = t^3", gap3.rhs, 20.0, EXACT_TOL),
        ExampleRow("Tr|A-B|^3 against 10*sqrt(2)", abs_cube, 10 * math.sqrt(2), EXACT_TOL),
        ExampleRow("Tr|A-B|^3 against printed 14.15", gap3.lhs, 14.15, PRINTED_TOL),
        ExampleRow("Klein gap, f = t^1.5 (printed 3.36)", upper.lhs, 3.36, PRINTED_TOL),
        ExampleRow("matching max, f = t^1.5 (printed 6.19)", upper.rhs, 6.19, PRINTED_TOL),
        ExampleRow("literal n*max reading, f = t^1.5", upper.witnesses["literal_reading"], 6.19, PRINTED_TOL, graded=False),
    )
    return ExampleTable(rows)
