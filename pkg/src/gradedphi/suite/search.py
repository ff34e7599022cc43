"""Search a corpus for a submodule satisfying one predicate but not another."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import NotMultiplicationModule, TableMiss
from ..phi import excluded_mask, parse_phi
from ..predicates import PredicateSpec, decide, violates
from .corpus import Corpus, Instance


@dataclass
class Separation:
    """K in ``instance`` satisfies ``a`` but not ``b``; ``witness`` breaks ``b``."""

    instance: str
    structure: str
    order: int
    submodule: list[str]
    witness: list[str]

    def to_dict(self) -> dict:
        return dict(vars(self))

    def render(self) -> str:
        return (f"{self.structure}: K = {{{', '.join(self.submodule)}}} "
                f"(witness {','.join(self.witness)})")


@dataclass
class SearchResult:
    a: str
    b: str
    max_order: int | None
    found: list[Separation] = field(default_factory=list)
    instances: int = 0
    submodules: int = 0
    skip_log: dict = field(default_factory=dict)

    @property
    def first(self) -> Separation | None:
        return self.found[0] if self.found else None

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "max_order": self.max_order,
                "status": "found" if self.found else "not-found",
                "found": [s.to_dict() for s in self.found],
                "instances": self.instances, "submodules": self.submodules,
                "skip_log": dict(sorted(self.skip_log.items()))}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def render(self) -> str:
        head = f"search {self.a} and not {self.b}"
        if self.max_order is not None:
            head += f" (|M| <= {self.max_order})"
        lines = [head]
        if not self.found:
            lines.append(f"not-found ({self.instances} instances, {self.submodules} submodules)")
        for s in self.found:
            lines.append(f"found: {s.render()}")
        for reason, n in sorted(self.skip_log.items()):
            lines.append(f"skipped {n}x: {reason}")
        return "\n".join(lines) + "\n"


def _witness_labels(inst: Instance, w) -> list[str]:
    R, M = inst.ring, inst.module
    return [R.labels[x] for x in w[:-1]] + [M.labels[w[-1]]]


def search_separating_example(a: PredicateSpec, b: PredicateSpec, corpus: Corpus, *,
                              max_order: int | None = None, find_all: bool = False,
                              instance: str | None = None) -> SearchResult:
    """Scan instances by (|M|, corpus position), submodules by member bitset.

    Returns the first separating submodule, or every one with ``find_all``.
    """
    result = SearchResult(str(a), str(b), max_order)
    order = sorted(corpus, key=lambda i: (i.order, i.index))
    for inst in order:
        if instance is not None and inst.name != instance:
            continue
        if max_order is not None and inst.order > max_order:
            continue
        result.instances += 1
        try:
            phi_a = parse_phi(a.phi, inst.module)
            phi_b = parse_phi(b.phi, inst.module)
            for K in inst.proper:
                result.submodules += 1
                va = decide(a.family, K, excluded_mask(phi_a, K))
                if not va.holds:
                    continue
                vb = decide(b.family, K, excluded_mask(phi_b, K))
                if vb.holds:
                    continue
                result.found.append(Separation(inst.name, inst.describe(), inst.order, K.labels,
                                               _witness_labels(inst, vb.witness)))
                if not find_all:
                    return result
        except (NotMultiplicationModule, TableMiss) as exc:
            reason = f"{inst.name}: {type(exc).__name__}"
            result.skip_log[reason] = result.skip_log.get(reason, 0) + 1
    return result


def verify_separation(a: PredicateSpec, b: PredicateSpec, corpus: Corpus, sep: Separation) -> bool:
    """Replay a separation: recompute both predicates and re-check the witness by table lookups."""
    inst = corpus.get(sep.instance)
    M, R = inst.module, inst.ring
    K = next((K for K in inst.proper if K.labels == sep.submodule), None)
    if K is None:
        return False
    if not a(K).holds:
        return False
    if b(K).holds:
        return False
    labels = sep.witness
    w = tuple(R.element(x) for x in labels[:-1]) + (M.element(labels[-1]),)
    return violates(b.family, K, excluded_mask(parse_phi(b.phi, M), K), w)
