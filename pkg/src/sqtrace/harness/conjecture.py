"""Randomized search for counterexamples to the conjectured superquadratic
Hansen-Pedersen refinement.  Output is search evidence, never a verdict."""

from __future__ import annotations

from ..functions import SUPERQUADRATIC_SET
from ..report import DEFAULT_TOL
from .suite import InequalityStats, SuiteResult, instance_for, run_instance

LABEL = "search evidence, not a verdict"
READINGS = ("literal", "normalized")


def falsify_conjecture(
    trials: int,
    dims=(3,),
    functions=SUPERQUADRATIC_SET,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> SuiteResult:
    """Evaluate the conjecture margin under both readings of the shift on
    ``trials`` seeded instances and keep the smallest margin of each."""
    dims, functions = tuple(dims), tuple(functions)
    result = SuiteResult(
        config={"trials": trials, "dims": list(dims), "functions": list(functions), "seed": seed, "tol": tol},
        label=LABEL,
    )
    stats = {r: InequalityStats(f"conjecture_margin[{r}]", evidence_only=True) for r in READINGS}
    for t in range(trials):
        inst = instance_for("conjecture_margin", t, dims, functions, seed)
        report = run_instance(inst, tol)
        for r in READINGS:
            part = report.parts[r]
            stats[r].fold(inst, part.margin, part.passed)
    result.stats = {s.name: s for s in stats.values()}
    return result


def reproduce_witness(stats: InequalityStats, reading: str, tol: float = DEFAULT_TOL) -> float:
    """Margin of ``reading`` recomputed from the stored worst instance."""
    return run_instance(stats.worst, tol).parts[reading].margin
