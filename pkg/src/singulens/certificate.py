"""Certificates: a theorem instance, its hypotheses with provenance, and a verdict.

A certificate is *issued* (conclusion present) when every hypothesis holds
and has status Exact or Assumed. A hypothesis that holds only by a numeric
check makes it *advisory*; any failing hypothesis makes it *refused*.
"""

import json
from dataclasses import dataclass, field
from enum import Enum


class Status(str, Enum):
    EXACT = "Exact"
    HEURISTIC = "HeuristicOnly"
    ASSUMED = "Assumed"

    def __str__(self):
        return self.value


class Theorem(str, Enum):
    ORD_LOJ = "OrdLoj"
    CLOSURE_CRITERION = "ClosureCriterion"
    JACOBIAN_EQUIV = "JacobianEquiv"
    JACOBIAN_CLOSURE = "JacobianClosure"
    SEMI_HOMOGENEOUS = "SemiHomogeneous"
    MULTIPLICITY_ZARISKI = "MultiplicityZariski"
    EULER_EQUALITY = "EulerEquality"
    POLAR_M1 = "PolarM1"
    MAXIMAL_POWER_CLOSURE = "MaximalPowerClosure"

    def __str__(self):
        return self.value


ISSUED, ADVISORY, REFUSED = "issued", "advisory", "refused"


@dataclass(frozen=True)
class Hypothesis:
    name: str
    status: Status
    holds: bool
    detail: str = ""

    def to_dict(self):
        return {
            "name": self.name,
            "status": str(self.status),
            "holds": self.holds,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class Check:
    """A derived comparison attached to a certificate (not a hypothesis)."""

    name: str
    holds: bool
    detail: str = ""

    def to_dict(self):
        return {"name": self.name, "holds": self.holds, "detail": self.detail}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


@dataclass
class Certificate:
    """Attributes:
        theorem: which result is being instantiated.
        anchor: the statement of that result, in formula form.
        claim: the conclusion that would follow, as text.
        hypotheses: ordered :class:`Hypothesis` list.
        payload: structured data backing the claim (values, polyhedra).
        checks: derived comparisons; a failing check is reported but only
            hypotheses decide the verdict.
        notes: free-form caveats.
    """

    theorem: Theorem
    anchor: str
    claim: str
    hypotheses: list = field(default_factory=list)
    payload: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, name, status, holds, detail=""):
        self.hypotheses.append(Hypothesis(name, Status(status), bool(holds), detail))
        return self

    def check(self, name, holds, detail=""):
        self.checks.append(Check(name, bool(holds), detail))
        return self

    @property
    def verdict(self):
        if any(not h.holds for h in self.hypotheses):
            return REFUSED
        if any(h.status is Status.HEURISTIC for h in self.hypotheses):
            return ADVISORY
        return ISSUED

    @property
    def issued(self):
        return self.verdict == ISSUED

    @property
    def conclusion(self):
        return self.claim if self.issued else None

    @property
    def failed(self):
        return [h for h in self.hypotheses if not h.holds]

    def status(self):
        """Weakest status among the hypotheses (Exact > Assumed > HeuristicOnly)."""
        kinds = {h.status for h in self.hypotheses}
        for s in (Status.HEURISTIC, Status.ASSUMED):
            if s in kinds:
                return s
        return Status.EXACT

    def to_dict(self):
        return {
            "theorem": str(self.theorem),
            "anchor": self.anchor,
            "verdict": self.verdict,
            "hypotheses": [h.to_dict() for h in self.hypotheses],
            "conclusion": (
                {"text": self.claim, "payload": _jsonable(self.payload)} if self.issued else None
            ),
            "claim": self.claim,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
        }

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)

    def summary(self):
        lines = [f"{self.theorem}: {self.verdict}", f"  claim: {self.claim}"]
        for h in self.hypotheses:
            mark = "ok" if h.holds else "FAILED"
            lines.append(f"  [{h.status}] {h.name}: {mark}" + (f" ({h.detail})" if h.detail else ""))
        for c in self.checks:
            mark = "ok" if c.holds else "differs"
            lines.append(f"  check {c.name}: {mark}" + (f" ({c.detail})" if c.detail else ""))
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)
