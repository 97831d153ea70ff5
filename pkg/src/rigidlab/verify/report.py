from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

PASS = "pass"
FAIL = "fail"
PROBABILISTIC_PASS = "probabilistic-pass"


def jsonable(x):
    """Recursively convert Fractions, tuples and sets into JSON values."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return [jsonable(v) for v in sorted(x)]
    if hasattr(x, "to_dict"):
        return jsonable(x.to_dict())
    return x


@dataclass
class CheckReport:
    name: str
    inputs: dict
    status: str
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status == FAIL and "witness" not in self.details:
            raise ValueError(f"failed check {self.name!r} reported without a witness")

    @property
    def ok(self) -> bool:
        return self.status in (PASS, PROBABILISTIC_PASS)

    def to_dict(self) -> dict:
        return {"name": self.name, "inputs": jsonable(self.inputs), "status": self.status,
                "details": jsonable(self.details)}


def conclude(name: str, inputs: dict, failures: list, probabilistic: bool = False,
             **details) -> CheckReport:
    """Pass unless ``failures`` is non-empty; the first failure is the witness."""
    if failures:
        details["witness"] = failures[0]
        details["failures"] = len(failures)
        return CheckReport(name, inputs, FAIL, details)
    return CheckReport(name, inputs, PROBABILISTIC_PASS if probabilistic else PASS, details)
