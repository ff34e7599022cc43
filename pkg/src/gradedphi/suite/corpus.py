"""Corpora of finite graded modules that the law suite runs over.

A corpus is read from a structure file. Every declared module is an
instance, and so is the self-module of every declared ring (a ``module X =
self R`` line names that same instance rather than adding a second one).
"""

from __future__ import annotations

from functools import cached_property
from importlib import resources
from pathlib import Path

from ..cli.specfile import StructureSpec, load_spec, parse_spec
from ..constructions import MultiplicativeSet, multiplicative_sets
from ..core.lattice import DEFAULT_BOUND, enumerate_graded_submodules, is_multiplication_module
from ..core.structures import GradedModule, GradedRing
from ..errors import AxiomViolation
from ..phi import PhiFunction, default_phis, parse_phi

DEFAULT_MULSET_LIMIT = 128


class Instance:
    """One module of a corpus together with everything the laws need about it."""

    def __init__(self, index: int, name: str, module: GradedModule,
                 mulsets: list[MultiplicativeSet] | None = None):
        self.index = index
        self.name = name
        self.module = module
        self._mulsets = mulsets

    def __repr__(self) -> str:
        return f"Instance({self.index}, {self.name!r}, |M|={self.order})"

    @property
    def order(self) -> int:
        return self.module.order

    @property
    def ring(self) -> GradedRing:
        return self.module.ring

    @property
    def factors(self):
        return getattr(self.module, "factors", None)

    @cached_property
    def submodules(self):
        return enumerate_graded_submodules(self.module, DEFAULT_BOUND)

    @cached_property
    def proper(self):
        return [K for K in self.submodules if K.is_proper]

    @cached_property
    def multiplication(self) -> bool:
        return is_multiplication_module(self.module, DEFAULT_BOUND)[0]

    def default_phis(self) -> list[PhiFunction]:
        return default_phis(self.multiplication)

    def mulsets(self, limit: int | None = DEFAULT_MULSET_LIMIT) -> list[MultiplicativeSet]:
        if self._mulsets is not None:
            return self._mulsets
        return multiplicative_sets(self.ring, limit)

    def describe(self) -> str:
        return f"{self.name} (|M| = {self.order}, grading group {self.module.group.name})"


class Corpus:
    def __init__(self, name: str, instances: list[Instance], spec: StructureSpec | None = None,
                 phis: list[str] | None = None):
        self.name = name
        self.instances = instances
        self.spec = spec
        # phi names declared in the file; None means "use the per-instance default list"
        self.phis = phis

    def __len__(self) -> int:
        return len(self.instances)

    def __iter__(self):
        return iter(self.instances)

    def get(self, name: str) -> Instance:
        for inst in self.instances:
            if inst.name == name:
                return inst
        raise KeyError(name)

    def rings(self) -> list[tuple[str, GradedRing]]:
        if self.spec is None:
            return []
        return [(n, R) for n, R in self.spec.rings.items() if R is not None]

    def phi_list(self, inst: Instance, override: list[str] | None = None) -> list[PhiFunction]:
        names = override if override is not None else self.phis
        if names is None:
            return inst.default_phis()
        return [parse_phi(p, inst.module) for p in names]


def corpus_from_spec(spec: StructureSpec, name: str = "corpus") -> Corpus:
    if spec.failures:
        bad = next(iter(spec.failures.values()))
        raise AxiomViolation(bad)
    per_ring: dict[int, list[MultiplicativeSet]] = {}
    for S in spec.mulsets.values():
        per_ring.setdefault(id(S.ring), []).append(S)
    instances: list[Instance] = []
    seen: set[int] = set()
    for kind, obj_name, obj in spec.structures():
        if kind == "ring":
            M = obj.self_module
        elif kind == "module":
            M = obj
        else:
            continue
        if id(M) in seen:
            continue
        seen.add(id(M))
        instances.append(Instance(len(instances), obj_name, M, per_ring.get(id(M.ring))))
    phis = [spec.phis[n] for n in spec.phis] or None
    return Corpus(name, instances, spec, phis)


def load_corpus(path) -> Corpus:
    path = Path(path)
    return corpus_from_spec(load_spec(path), name=path.name)


def corpus_from_text(text: str, name: str = "inline") -> Corpus:
    return corpus_from_spec(parse_spec(text), name=name)


def data_path(filename: str) -> Path:
    return Path(str(resources.files("gradedphi") / "data" / filename))


def default_corpus() -> Corpus:
    c = load_corpus(data_path("default.spec"))
    c.name = "default"
    return c


def extended_corpus() -> Corpus:
    c = load_corpus(data_path("extended.spec"))
    c.name = "extended"
    return c
