"""Seeded property suites over random instances.

Trial ``t`` of inequality ``name`` draws everything from
``trial_seed(master, name, t)``, so each instance can be rebuilt on its own.
Dimension, function and variant (alpha, map, state) cycle with ``t``.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Optional

from .. import inequalities as iq
from ..errors import ConfigError, SqTraceError
from ..functions import (
    CONVEX_SET,
    NONNEGATIVE_SUPERQUADRATIC_SET,
    SUPERQUADRATIC_SET,
    UPPER_BOUND_SET,
    ScalarFunction,
    parse_function,
)
from ..majorization import lemma2_bound
from ..maps import State
from ..report import DEFAULT_TOL, VerificationReport, to_jsonable
from . import generators as gen
from .rng import make_rng, trial_seed

MAPS = ("identity", "pinch:2", "kraus:2")
STATES = ("density", "vector", "normalized_trace")
SCALES = (0.1, 1.0, 4.0)


@dataclass(frozen=True)
class Instance:
    kind: str
    n: int
    function: str
    params: dict
    seed: int
    trial: int

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "Instance":
        return cls(**data)


def _psd(n, rng):
    return gen.gen_psd(n, rng) * rng.choice(SCALES)


def _state(kind, m, rng) -> State:
    if kind == "density":
        return gen.gen_density(m, rng)
    if kind == "vector":
        return State.vector(gen.gen_unit_vector(m, rng))
    return State.normalized_trace(m)


def _map(spec, n, rng):
    m = n + 1 if spec.startswith("kraus") else n
    return gen.gen_unital_map(spec, n, rng, m=m)


def _jensen_scalar(f, n, rng, p):
    v = rng.exponential(size=n) * rng.choice(SCALES)
    return iq.jensen_scalar(f, gen.gen_weights(n, rng), v, tol=p["tol"])


def _jensen_vector_state(f, n, rng, p):
    return iq.jensen_vector_state(f, _psd(n, rng), gen.gen_unit_vector(n, rng), tol=p["tol"])


def _jensen_map_state(f, n, rng, p):
    A = _psd(n, rng)
    phi = _map(p["map"], n, rng)
    return iq.jensen_map_state(f, A, phi, _state(p["state"], phi.n_out, rng), tol=p["tol"])


def _trace_jensen(f, n, rng, p):
    return iq.trace_jensen_superquadratic(f, _psd(n, rng), _psd(n, rng), p["alpha"], tol=p["tol"])


def _lemma2(f, n, rng, p):
    x, y = gen.gen_majorized_pair(n, rng)
    return lemma2_bound(f, x, y, tol=p["tol"])


def _family(n, rng, k=2):
    return [_psd(n, rng) for _ in range(k)], gen.gen_kraus_family(n, k, rng)


def _hansen_pedersen(f, n, rng, p):
    As, Cs = _family(n, rng)
    return iq.hansen_pedersen_trace(f, As, Cs, tol=p["tol"])


def _conjecture(f, n, rng, p):
    As, Cs = _family(n, rng, p.get("k", 2))
    return iq.conjecture_margin(f, As, Cs, tol=p["tol"])


def _isometry(f, n, rng, p):
    m = int(rng.integers(1, n + 1))
    return iq.isometry_jensen(f, _psd(n, rng), gen.gen_isometry(n, m, rng), B=_psd(m, rng), tol=p["tol"])


def _min_correction(f, n, rng, p):
    A = _psd(n, rng)
    phi = _map(p["map"], n, rng)
    return iq.min_correction_trace_jensen(f, A, phi, num_sampled_bases=4, seed=int(rng.integers(2**63)), tol=p["tol"])


def _klein_convex(f, n, rng, p):
    return iq.klein_convex(f, _psd(n, rng), _psd(n, rng), tol=p["tol"])


def _klein_superquadratic(f, n, rng, p):
    return iq.klein_superquadratic(f, _psd(n, rng), _psd(n, rng), tol=p["tol"])


def _klein_upper(f, n, rng, p):
    return iq.klein_upper_bound(f, _psd(n, rng), _psd(n, rng), tol=p["tol"])


def _peierls(f, n, rng, p):
    return iq.peierls(f, _psd(n, rng), gen.gen_basis(n, rng), tol=p["tol"])


def _superquadratic_at_zero(f: ScalarFunction) -> bool:
    return f.superquadratic and float(f(0.0)) == 0.0 and float(f.deriv(0.0)) == 0.0


@dataclass(frozen=True)
class Spec:
    run: Callable
    functions: tuple
    applies: Callable[[ScalarFunction], bool]
    variants: tuple = ({},)
    evidence_only: bool = False


def _grid(**axes):
    keys = list(axes)
    out = [{}]
    for k in keys:
        out = [dict(d, **{k: v}) for v in axes[k] for d in out]
    return tuple(out)


REGISTRY = {
    "jensen_scalar": Spec(_jensen_scalar, SUPERQUADRATIC_SET, lambda f: f.superquadratic),
    "jensen_vector_state": Spec(_jensen_vector_state, SUPERQUADRATIC_SET, lambda f: f.superquadratic),
    "jensen_map_state": Spec(
        _jensen_map_state, SUPERQUADRATIC_SET, lambda f: f.superquadratic, _grid(map=MAPS, state=STATES)
    ),
    "trace_jensen_superquadratic": Spec(
        _trace_jensen, SUPERQUADRATIC_SET, lambda f: f.superquadratic, _grid(alpha=(0.3, 0.5, 0.7))
    ),
    "lemma2_bound": Spec(_lemma2, SUPERQUADRATIC_SET, lambda f: f.superquadratic),
    "hansen_pedersen_trace": Spec(_hansen_pedersen, CONVEX_SET, lambda f: f.convex),
    "isometry_jensen": Spec(
        _isometry, NONNEGATIVE_SUPERQUADRATIC_SET, lambda f: f.superquadratic and f.nonnegative
    ),
    "min_correction_trace_jensen": Spec(
        _min_correction, SUPERQUADRATIC_SET, lambda f: f.superquadratic, _grid(map=MAPS)
    ),
    "klein_convex": Spec(_klein_convex, CONVEX_SET, lambda f: f.convex),
    "klein_superquadratic": Spec(_klein_superquadratic, SUPERQUADRATIC_SET, _superquadratic_at_zero),
    "klein_upper_bound": Spec(
        _klein_upper, UPPER_BOUND_SET, lambda f: f.convex and f.nonnegative and f.subquadratic
    ),
    "peierls": Spec(
        _peierls, SUPERQUADRATIC_SET + ("pow:1.5", "tlogt"), lambda f: f.convex or f.superquadratic
    ),
    "conjecture_margin": Spec(_conjecture, SUPERQUADRATIC_SET, lambda f: f.superquadratic, evidence_only=True),
}

PROPERTY_INEQUALITIES = tuple(k for k, v in REGISTRY.items() if not v.evidence_only)


def run_instance(instance: Instance, tol: float = DEFAULT_TOL) -> VerificationReport:
    """Rebuild an instance from its seed and run its verifier."""
    spec = REGISTRY[instance.kind]
    f = parse_function(instance.function)
    params = dict(instance.params, tol=tol)
    report = spec.run(f, instance.n, make_rng(instance.seed), params)
    report.seed = instance.seed
    return report


@dataclass
class InequalityStats:
    name: str
    trials: int = 0
    passed: int = 0
    errors: int = 0
    min_margin: float = float("inf")
    worst: Optional[Instance] = None
    evidence_only: bool = False

    @property
    def failed(self) -> int:
        return self.trials - self.passed

    def fold(self, instance: Instance, margin: float, passed: bool) -> None:
        self.trials += 1
        self.passed += int(passed)
        if margin < self.min_margin:
            self.min_margin = margin
            self.worst = instance

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "passed": self.passed,
            "failed": self.failed,
            "errors": self.errors,
            "min_margin": self.min_margin,
            "worst": None if self.worst is None else self.worst.to_dict(),
            "evidence_only": self.evidence_only,
        }


@dataclass
class SuiteResult:
    stats: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    label: Optional[str] = None
    witness_file: Optional[str] = None

    @property
    def violations(self) -> list:
        return [k for k, s in self.stats.items() if not s.evidence_only and s.failed]

    @property
    def all_passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        out = {"config": self.config, "stats": {k: s.to_dict() for k, s in self.stats.items()}}
        if self.label:
            out["label"] = self.label
        return out

    def to_json(self) -> str:
        return json.dumps(to_jsonable(self.to_dict()), sort_keys=True, indent=2)

    def csv_lines(self) -> list:
        rows = ["inequality,trials,passed,failed,min_margin,worst_seed"]
        for k, s in self.stats.items():
            seed = "" if s.worst is None else str(s.worst.seed)
            rows.append(f"{k},{s.trials},{s.passed},{s.failed},{s.min_margin:.6e},{seed}")
        return rows


@dataclass
class SuiteConfig:
    inequalities: tuple = PROPERTY_INEQUALITIES
    dims: tuple = (2, 3, 4, 6)
    trials: int = 100
    functions: Optional[tuple] = None
    tol: float = DEFAULT_TOL
    seed: int = 0
    witness_dir: Optional[str] = None

    def validate(self) -> None:
        unknown = [k for k in self.inequalities if k not in REGISTRY]
        if unknown:
            raise ConfigError(f"unknown inequalities {unknown}; known: {sorted(REGISTRY)}")
        if self.trials < 0 or not self.dims or any(int(d) != d or d < 1 for d in self.dims):
            raise ConfigError("trials must be >= 0 and dims positive integers")
        if self.tol < 0:
            raise ConfigError("tol must be nonnegative")
        try:
            for label in self.functions or ():
                parse_function(label)
        except SqTraceError as exc:
            raise ConfigError(str(exc)) from exc

    def to_dict(self) -> dict:
        return {
            "inequalities": list(self.inequalities),
            "dims": list(self.dims),
            "trials": self.trials,
            "functions": None if self.functions is None else list(self.functions),
            "tol": self.tol,
            "seed": self.seed,
        }


def functions_for(name: str, functions=None) -> tuple:
    """Catalog labels used for ``name``: the explicit list filtered by
    applicability, or the default set."""
    spec = REGISTRY[name]
    if functions is None:
        return spec.functions
    return tuple(lab for lab in functions if spec.applies(parse_function(lab)))


def instance_for(name: str, trial: int, dims, functions, seed: int) -> Instance:
    spec = REGISTRY[name]
    t = trial
    n = dims[t % len(dims)]
    t //= len(dims)
    fn = functions[t % len(functions)]
    t //= len(functions)
    params = spec.variants[t % len(spec.variants)]
    return Instance(name, int(n), fn, dict(params), trial_seed(seed, name, trial), trial)


def iter_instances(name: str, config: SuiteConfig):
    funcs = functions_for(name, config.functions)
    if not funcs:
        return
    for t in range(config.trials):
        yield instance_for(name, t, config.dims, funcs, config.seed)


def run_suite(config: SuiteConfig) -> SuiteResult:
    """Run every listed verifier on ``config.trials`` fresh instances."""
    config.validate()
    result = SuiteResult(config=config.to_dict())
    failures = []
    for name in config.inequalities:
        stats = InequalityStats(name, evidence_only=REGISTRY[name].evidence_only)
        for inst in iter_instances(name, config):
            try:
                report = run_instance(inst, config.tol)
            except SqTraceError as exc:
                stats.errors += 1
                stats.fold(inst, float("-inf"), False)
                failures.append({"instance": inst.to_dict(), "error": repr(exc)})
                continue
            stats.fold(inst, report.margin, report.passed)
            if not report.passed and not stats.evidence_only:
                failures.append({"instance": inst.to_dict(), "report": report.to_dict()})
        result.stats[name] = stats
    if failures and config.witness_dir:
        result.witness_file = str(write_witnesses(failures, config.witness_dir, config.seed))
    return result


def write_witnesses(records, directory, seed: int) -> Path:
    """Newline-delimited JSON, one failing instance per line."""
    path = Path(directory)
    path.mkdir(parents=True, exist_ok=True)
    stamp = time.strftime("%Y%m%dT%H%M%S")
    out = path / f"witnesses-{stamp}-{seed}.ndjson"
    with open(out, "w") as fh:
        for rec in records:
            fh.write(json.dumps(to_jsonable(rec), sort_keys=True) + "\n")
    return out


def worst_margin_reproduces(stats: InequalityStats, tol: float = DEFAULT_TOL, eps: float = 1e-12) -> bool:
    """Re-run the worst instance and compare with the recorded minimum margin."""
    if stats.worst is None:
        return True
    margin = run_instance(stats.worst, tol).margin
    return bool(abs(margin - stats.min_margin) <= eps * max(1.0, abs(margin)))


__all__ = [
    "Instance",
    "InequalityStats",
    "PROPERTY_INEQUALITIES",
    "REGISTRY",
    "SuiteConfig",
    "SuiteResult",
    "functions_for",
    "instance_for",
    "run_instance",
    "run_suite",
    "worst_margin_reproduces",
]
