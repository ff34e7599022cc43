"""Line-oriented structure definition files.

One declaration per line, ``#`` starts a comment, names are declared once
and may only refer to earlier declarations::

    group C2 = cyclic 2
    ring A = gaussian 2 over C2
    grading A = gaussian
    module M = self A
    submodule K = M generators 1+i
    hom p: M -> Q 1=[1]
    mulset S: A 1 i
    phi sq = n:2

The full grammar is in the README.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass, field
from pathlib import Path

from ..constructions import (
    GradedHom,
    MultiplicativeSet,
    direct_product,
    quotient_module,
    zero_module,
)
from ..core import builders
from ..core.group import FiniteGroup
from ..core.lattice import graded_closure, submodule
from ..core.structures import GradedModule, GradedRing
from ..errors import AxiomViolation, GradedPhiError, SpecParseError
from ..phi import parse_phi

GRADINGS = ("trivial", "gaussian", "degree", "components")


@dataclass
class _RingDecl:
    line: int
    family: str
    args: list
    group: FiniteGroup | None
    grading: tuple | None = None  # (kind, line, component spec)
    built: GradedRing | None = None


@dataclass
class StructureSpec:
    """Everything declared in a structure file, in declaration order."""

    path: Path | None = None
    order: list = field(default_factory=list)  # (kind, name, line)
    groups: dict = field(default_factory=dict)
    rings: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    submodules: dict = field(default_factory=dict)
    homs: dict = field(default_factory=dict)
    mulsets: dict = field(default_factory=dict)
    phis: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)  # name -> ValidationReport

    def structures(self):
        """(kind, name, object-or-None) for every declared group, ring and module."""
        table = {"group": self.groups, "ring": self.rings, "module": self.modules}
        for kind, name, _ in self.order:
            if kind in table:
                yield kind, name, table[kind].get(name)

    def module_of(self, name: str) -> GradedModule:
        if name in self.modules:
            return self.modules[name]
        if name in self.rings:
            return self.rings[name].self_module
        raise KeyError(name)


class _Builder:
    def __init__(self, path: Path | None):
        self.spec = StructureSpec(path=path)
        self.names: dict[str, str] = {}
        self.pending: dict[str, _RingDecl] = {}
        self.lineno = 0

    def error(self, msg: str):
        raise SpecParseError(msg, self.lineno)

    # -- name bookkeeping ------------------------------------------------

    def declare(self, kind: str, name: str):
        if not name.isidentifier() and not name.replace(".", "_").replace("-", "_").isidentifier():
            self.error(f"bad name {name!r}")
        if name in self.names:
            self.error(f"{name!r} already declared")
        self.names[name] = kind
        self.spec.order.append((kind, name, self.lineno))

    def lookup(self, name: str, *kinds):
        kind = self.names.get(name)
        if kind is None:
            self.error(f"undeclared name {name!r}")
        if kinds and kind not in kinds:
            self.error(f"{name!r} is a {kind}, expected {' or '.join(kinds)}")
        if name in self.spec.failures:
            self.error(f"{name!r} failed validation and cannot be used")
        return kind

    def group(self, name: str) -> FiniteGroup:
        self.lookup(name, "group")
        return self.spec.groups[name]

    def ring(self, name: str) -> GradedRing:
        self.lookup(name, "ring")
        decl = self.pending.get(name)
        if decl is not None and decl.built is None:
            self.materialize(name)
        if name in self.spec.failures:
            self.error(f"{name!r} failed validation and cannot be used")
        return self.spec.rings[name]

    def module(self, name: str) -> GradedModule:
        kind = self.lookup(name, "module", "ring")
        if kind == "ring":
            return self.ring(name).self_module
        return self.spec.modules[name]

    # -- rings -----------------------------------------------------------

    def materialize(self, name: str):
        decl = self.pending[name]
        saved, self.lineno = self.lineno, decl.line
        try:
            decl.built = self._build_ring(name, decl)
            self.spec.rings[name] = decl.built
        except AxiomViolation as exc:
            decl.built = False
            self.spec.failures[name] = exc.report
            self.spec.rings[name] = None
        finally:
            self.lineno = saved

    def _int(self, tok: str, what: str) -> int:
        try:
            return int(tok)
        except ValueError:
            self.error(f"{what} must be an integer, got {tok!r}")

    def _build_ring(self, name: str, d: _RingDecl) -> GradedRing:
        grading = d.grading[0] if d.grading else None
        group = d.group
        if d.family == "zn":
            (n,) = d.args
            n = self._int(n, "modulus")
            if n < 2:
                self.error("zn needs a modulus >= 2")
            if grading in (None, "trivial", "components"):
                R = builders.zn(n, group, name=name)
            else:
                self.error(f"grading {grading} does not apply to zn")
        elif d.family in ("gaussian", "poly"):
            if d.family == "gaussian":
                n = self._int(d.args[0], "modulus")
                k, c, var = 2, n - 1, "i"
            else:
                n, k, c = (self._int(a, "poly argument") for a in d.args)
                var = "x"
            kind = grading or ("degree" if d.family == "gaussian" else "trivial")
            kind = "degree" if kind == "gaussian" else kind
            if kind == "components":
                kind = "trivial"
            if group is None:
                group = FiniteGroup.cyclic(2) if kind == "degree" else builders.TRIVIAL_GROUP
            if kind == "degree":
                for j in range(group.order):
                    if str(j) not in group.labels:
                        self.error("degree grading needs a cyclic group with labels 0..d-1")
            R = builders.poly(n, k, c, group, grading=kind, var=var, name=name)
        elif d.family == "product":
            a, b = (self.ring(x) for x in d.args)
            if not a.group.same_as(b.group):
                self.error("product factors must share the grading group")
            R = builders.product_ring(a, b, name=name)
        else:  # pragma: no cover - rejected at parse time
            self.error(f"unknown ring family {d.family!r}")
        if grading == "components":
            R = self._regrade(R, name, d.grading[2])
        return R

    def _regrade(self, R: GradedRing, name: str, comp_spec: list) -> GradedRing:
        G = R.group
        comps = [[R.zero] for _ in range(G.order)]
        for item in comp_spec:
            g, _, elems = item.partition("=")
            try:
                gi = G.index(g)
                comps[gi] = [R.element(e) for e in elems.split(",") if e]
            except GradedPhiError as exc:
                self.error(str(exc))
        return GradedRing(R.labels, R.add_table, R.mul_table, R.zero, R.one, G, comps, name=name)

    # -- declarations ------------------------------------------------------

    def feed(self, lineno: int, raw: str):
        self.lineno = lineno
        text = raw.split("#", 1)[0].strip()
        if not text:
            return
        try:
            toks = shlex.split(text)
        except ValueError as exc:
            self.error(str(exc))
        head = toks[0]
        handler = getattr(self, f"do_{head}", None)
        if handler is None:
            self.error(f"unknown declaration {head!r}")
        try:
            handler(toks[1:])
        except KeyError as exc:
            # unknown element or degree labels
            self.error(str(exc.args[0]))

    def _named(self, toks, what: str):
        if len(toks) < 3 or toks[1] != "=":
            self.error(f"expected '{what} <name> = ...'")
        return toks[0], toks[2:]

    def do_group(self, toks):
        name, rest = self._named(toks, "group")
        if rest[0] == "cyclic" and len(rest) == 2:
            G = FiniteGroup.cyclic(self._int(rest[1], "order"), name=name)
        elif rest == ["trivial"]:
            G = FiniteGroup.trivial(name=name)
        else:
            self.error("groups are 'cyclic <n>' or 'trivial'")
        self.declare("group", name)
        self.spec.groups[name] = G

    def do_ring(self, toks):
        name, rest = self._named(toks, "ring")
        group = None
        if "over" in rest:
            i = rest.index("over")
            if i != len(rest) - 2:
                self.error("'over <group>' must end the ring declaration")
            group = self.group(rest[-1])
            rest = rest[:i]
        family, args = rest[0], rest[1:]
        arity = {"zn": 1, "gaussian": 1, "poly": 3, "product": 2}
        if family not in arity:
            self.error(f"unknown ring family {family!r}")
        if len(args) != arity[family]:
            self.error(f"ring family {family} takes {arity[family]} argument(s)")
        if family == "product":
            for a in args:
                self.lookup(a, "ring")
            if group is not None:
                self.error("a product ring inherits its group from its factors")
        self.declare("ring", name)
        self.pending[name] = _RingDecl(self.lineno, family, args, group)

    def do_grading(self, toks):
        name, rest = self._named(toks, "grading")
        self.lookup(name, "ring")
        decl = self.pending[name]
        if decl.built is not None:
            self.error(f"grading of {name!r} must precede its first use")
        if decl.grading is not None:
            self.error(f"{name!r} already has a grading")
        if rest[0] not in GRADINGS:
            self.error(f"unknown grading {rest[0]!r}")
        if (rest[0] == "components") != (len(rest) > 1):
            self.error("only 'components' takes arguments (g=e1,e2,...)")
        decl.grading = (rest[0], self.lineno, rest[1:])

    def do_module(self, toks):
        name, rest = self._named(toks, "module")
        form, args = rest[0], rest[1:]
        build = {
            "self": (1, lambda R: self.ring(R).self_module),
            "free": (2, lambda R, k: builders.free_module(self.ring(R), self._int(k, "rank"),
                                                          name=name)),
            "product": (2, lambda a, b: direct_product(self.module(a), self.module(b),
                                                       name=name)),
            "quotient": (2, lambda m, k: self._quotient(m, k, name)),
            "shift": (2, lambda m, g: self._shift(self.module(m), g, name)),
            "zero": (1, lambda R: zero_module(self.ring(R), name=name)),
        }
        if form not in build:
            self.error(f"unknown module form {form!r}")
        arity, fn = build[form]
        if len(args) != arity:
            self.error(f"module form {form} takes {arity} argument(s)")
        if name in self.names:
            self.error(f"{name!r} already declared")
        # build before declaring, so a module cannot refer to itself
        try:
            M = fn(*args)
        except AxiomViolation as exc:
            M = None
            failure = exc.report
        self.declare("module", name)
        if M is None:
            self.spec.failures[name] = failure
        self.spec.modules[name] = M

    def _quotient(self, m: str, k: str, name: str) -> GradedModule:
        M = self.module(m)
        self.lookup(k, "submodule")
        K = self.spec.submodules[k]
        if K.module is not M:
            self.error(f"{k!r} is not a submodule of {m!r}")
        Q, _ = quotient_module(M, K, name=name)
        return Q

    def _shift(self, M: GradedModule, g: str, name: str) -> GradedModule:
        G = M.group
        try:
            gi = G.index(g)
        except GradedPhiError as exc:
            self.error(str(exc))
        comps = [M.components[G.mul(G.inv(gi), h)] for h in range(G.order)]
        return GradedModule(M.ring, M.labels, M.add_table, M.act_table, M.zero, comps,
                            name=name)

    def do_submodule(self, toks):
        name, rest = self._named(toks, "submodule")
        if len(rest) < 2 or rest[1] not in ("generators", "elements"):
            self.error("expected 'submodule <name> = <module> generators|elements ...'")
        M = self.module(rest[0])
        self.declare("submodule", name)
        try:
            if rest[1] == "generators":
                K = graded_closure(rest[2:], M)
            else:
                K = submodule(M, rest[2:])
        except AxiomViolation as exc:
            self.spec.failures[name] = exc.report
            return
        except GradedPhiError as exc:
            self.error(str(exc))
        self.spec.submodules[name] = K

    def do_hom(self, toks):
        # hom f: M -> L  g1=i1 g2=i2 ...   or   hom f: M -> L projection
        if len(toks) < 4 or not toks[0].endswith(":") or toks[2] != "->":
            self.error("expected 'hom <name>: <source> -> <target> <gen>=<image> ...'")
        name = toks[0][:-1]
        M, L = self.module(toks[1]), self.module(toks[3])
        self.declare("hom", name)
        images = {}
        for item in toks[4:]:
            a, sep, b = item.partition("=")
            if not sep:
                self.error(f"generator image {item!r} must look like g=image")
            images[a] = b
        try:
            self.spec.homs[name] = GradedHom.from_generators(M, L, images, name=name)
        except AxiomViolation as exc:
            self.spec.failures[name] = exc.report
        except GradedPhiError as exc:
            self.error(str(exc))

    def do_mulset(self, toks):
        if len(toks) < 2 or not toks[0].endswith(":"):
            self.error("expected 'mulset <name>: <ring> <elements...>'")
        name = toks[0][:-1]
        R = self.ring(toks[1])
        self.declare("mulset", name)
        try:
            self.spec.mulsets[name] = MultiplicativeSet.generated(R, toks[2:])
        except GradedPhiError as exc:
            self.error(str(exc))

    def do_phi(self, toks):
        name, rest = self._named(toks, "phi")
        if len(rest) != 1:
            self.error("expected 'phi <name> = <phi>'")
        text = rest[0]
        if text.startswith("table:"):
            # table targets are resolved when applied to a module; keep the raw text
            rel = Path(text[6:])
            if self.spec.path is not None and not rel.is_absolute():
                rel = self.spec.path.parent / rel
            text = f"table:{rel}"
        else:
            try:
                parse_phi(text)
            except ValueError as exc:
                self.error(str(exc))
        self.declare("phi", name)
        self.spec.phis[name] = text

    def finish(self) -> StructureSpec:
        for name, decl in self.pending.items():
            if decl.built is None:
                try:
                    self.materialize(name)
                except KeyError as exc:
                    self.lineno = decl.line
                    self.error(str(exc.args[0]))
        return self.spec


def parse_spec(text: str, path: Path | None = None) -> StructureSpec:
    b = _Builder(path)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        b.feed(lineno, raw)
    return b.finish()


def load_spec(path) -> StructureSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_spec(text, path)
