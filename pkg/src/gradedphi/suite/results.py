"""Law outcomes, aggregated law results and their deterministic JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

HOLDS = "holds"
VACUOUS = "vacuous"
VIOLATED = "violated"


@dataclass
class Outcome:
    """One checked implication: ``params`` identifies it, ``data`` explains a violation."""

    part: str
    params: dict
    status: str
    data: dict = field(default_factory=dict)

    def key(self) -> str:
        return json.dumps([self.part, self.params], sort_keys=True, ensure_ascii=False)


@dataclass(frozen=True)
class Skip:
    """A check that could not be made because a precondition failed."""

    reason: str


def implication(part: str, params: dict, hypothesis: bool, conclusion: bool,
                data: dict | None = None) -> Outcome:
    if not hypothesis:
        return Outcome(part, params, VACUOUS)
    if conclusion:
        return Outcome(part, params, HOLDS)
    return Outcome(part, params, VIOLATED, data or {})


def equivalence(part: str, params: dict, left: bool, right: bool,
                data: dict | None = None) -> Outcome:
    if left == right:
        return Outcome(part, params, HOLDS)
    return Outcome(part, params, VIOLATED, {"left": left, "right": right, **(data or {})})


def identity(part: str, params: dict, ok: bool, data: dict | None = None) -> Outcome:
    return Outcome(part, params, HOLDS if ok else VIOLATED, {} if ok else (data or {}))


@dataclass
class LawResult:
    law: str
    mutant: bool = False
    instances: int = 0
    checks: int = 0
    holds: int = 0
    vacuous: int = 0
    skipped: int = 0
    violations: int = 0
    counterexamples: list = field(default_factory=list)
    skip_log: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    runtime: float | None = None

    @property
    def verdict(self) -> str:
        return "counterexample" if self.violations else "pass"

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def add(self, item, instance, example_limit: int):
        if isinstance(item, Skip):
            self.skipped += 1
            self.skip_log[item.reason] = self.skip_log.get(item.reason, 0) + 1
            return
        self.checks += 1
        if item.status == HOLDS:
            self.holds += 1
        elif item.status == VACUOUS:
            self.vacuous += 1
        else:
            self.violations += 1
            if len(self.counterexamples) < example_limit:
                self.counterexamples.append({
                    "instance": instance.name,
                    "structure": instance.describe(),
                    "part": item.part,
                    "params": item.params,
                    "data": item.data,
                })

    def to_dict(self) -> dict:
        d = {
            "law": self.law,
            "mutant": self.mutant,
            "verdict": self.verdict,
            "instances": self.instances,
            "checks": self.checks,
            "holds": self.holds,
            "vacuous": self.vacuous,
            "skipped": self.skipped,
            "violations": self.violations,
            "counterexamples": self.counterexamples,
            "skip_log": dict(sorted(self.skip_log.items())),
            "notes": self.notes,
        }
        if self.runtime is not None:
            d["runtime"] = round(self.runtime, 3)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "LawResult":
        return cls(d["law"], d["mutant"], d["instances"], d["checks"], d["holds"], d["vacuous"],
                   d["skipped"], d["violations"], list(d["counterexamples"]), dict(d["skip_log"]),
                   list(d["notes"]), d.get("runtime"))

    def render(self) -> str:
        tag = " [mutant]" if self.mutant else ""
        head = (f"{self.law}{tag}: {self.verdict} — {self.instances} instances, "
                f"{self.checks} checks ({self.holds} hold, {self.vacuous} vacuous), "
                f"{self.skipped} skipped, {self.violations} counterexamples")
        lines = [head]
        if self.runtime is not None:
            lines.append(f"  runtime {self.runtime:.3f}s")
        for note in self.notes:
            lines.append(f"  note: {note}")
        for reason, n in sorted(self.skip_log.items()):
            lines.append(f"  skipped {n}x: {reason}")
        for cx in self.counterexamples:
            params = ", ".join(f"{k}={v}" for k, v in sorted(cx["params"].items()))
            lines.append(f"  counterexample in {cx['structure']} part {cx['part']}: {params}")
            if cx["data"]:
                lines.append(f"    {json.dumps(cx['data'], sort_keys=True, ensure_ascii=False)}")
        return "\n".join(lines)


@dataclass
class SuiteReport:
    corpus: str
    results: list[LawResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {"corpus": self.corpus,
                "verdict": "pass" if self.passed else "counterexample",
                "laws": [r.to_dict() for r in self.results]}

    @classmethod
    def from_dict(cls, d: dict) -> "SuiteReport":
        return cls(d["corpus"], [LawResult.from_dict(r) for r in d["laws"]])

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def render(self) -> str:
        verdict = "pass" if self.passed else "counterexample"
        body = "\n".join(r.render() for r in self.results)
        return f"corpus {self.corpus}\n{body}\nsuite verdict: {verdict}\n"
