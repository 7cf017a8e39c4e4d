"""Verification reports and their JSON form.

JSON layout::

    {name, lhs, rhs, margin, scaled_margin, passed, tol, seed,
     witnesses: {spectra, permutation, P, Q, basis, ..., parts}}
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

DEFAULT_TOL = 1e-8


def to_jsonable(obj: Any) -> Any:
    """Recursively convert numpy values and reports into JSON-ready data.

    Complex arrays become ``{"re": ..., "im": ...}``.
    """
    if isinstance(obj, VerificationReport):
        return obj.to_dict()
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            if not np.any(obj.imag):
                return obj.real.tolist()
            return {"re": obj.real.tolist(), "im": obj.imag.tolist()}
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


@dataclass
class VerificationReport:
    """One inequality instance: ``lhs <= rhs`` passes iff ``rhs - lhs >= -tol``."""

    name: str
    lhs: float
    rhs: float
    tol: float = DEFAULT_TOL
    seed: Optional[int] = None
    witnesses: dict = field(default_factory=dict)
    parts: dict = field(default_factory=dict)
    margin: float = field(init=False)
    passed: bool = field(init=False)

    def __post_init__(self):
        self.lhs = float(self.lhs)
        self.rhs = float(self.rhs)
        self.margin = self.rhs - self.lhs
        self.passed = bool(self.margin >= -self.tol)

    @property
    def scaled_margin(self) -> float:
        return self.margin / max(1.0, abs(self.lhs), abs(self.rhs))

    def to_dict(self) -> dict:
        witnesses = dict(self.witnesses)
        if self.parts:
            witnesses["parts"] = {k: v.to_dict() for k, v in self.parts.items()}
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "scaled_margin": self.scaled_margin,
            "passed": self.passed,
            "tol": self.tol,
            "seed": self.seed,
            "witnesses": to_jsonable(witnesses),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kw)

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        witnesses = dict(data.get("witnesses", {}))
        parts = {k: cls.from_dict(v) for k, v in witnesses.pop("parts", {}).items()}
        return cls(
            name=data["name"],
            lhs=data["lhs"],
            rhs=data["rhs"],
            tol=data["tol"],
            seed=data.get("seed"),
            witnesses=witnesses,
            parts=parts,
        )


def check_serialized(data: dict) -> bool:
    """Re-verify a serialized report: margin, pass flag and parts are consistent."""
    margin = data["rhs"] - data["lhs"]
    ok = math.isclose(margin, data["margin"], rel_tol=0, abs_tol=1e-12 * max(1.0, abs(margin)))
    ok = ok and data["passed"] == (data["margin"] >= -data["tol"])
    for part in data.get("witnesses", {}).get("parts", {}).values():
        ok = ok and check_serialized(part)
    return ok


def combine(name: str, parts: dict, required, tol: float = DEFAULT_TOL, **witnesses) -> VerificationReport:
    """Headline report for a verifier with several sub-inequalities.

    The headline takes the sides of the required part with the smallest
    margin, so it passes exactly when every required part passes.
    """
    required = [k for k in required if k in parts]
    if not required:
        raise ValueError(f"{name}: no required part among {list(parts)}")
    binding = min(required, key=lambda k: parts[k].margin)
    head = parts[binding]
    witnesses = dict(witnesses)
    witnesses["binding_part"] = binding
    witnesses["required_parts"] = required
    return VerificationReport(name, head.lhs, head.rhs, tol=tol, witnesses=witnesses, parts=dict(parts))
