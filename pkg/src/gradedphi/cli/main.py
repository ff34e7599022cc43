"""``gradedphi`` command line: validate, classify, radical, colon, laws, search, catalog.

Exit codes: 0 success, 1 validation failure (or nothing found by ``search``),
2 usage, parse or improper-submodule error, 3 law counterexample, 4 bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from ..core.lattice import (
    colon_ideal,
    graded_radical_ideal,
    graded_radical_submodule,
    ideal_times,
    is_multiplication_module,
    restricted_colon,
    ungraded_radical,
    whole,
)
from ..core.structures import validate
from ..errors import (
    AxiomViolation,
    BoundExceeded,
    GradedPhiError,
    ImproperSubmodule,
    SpecParseError,
)
from ..phi import default_phis, parse_phi
from ..predicates import PredicateSpec, classify
from ..suite.corpus import Corpus, Instance, default_corpus, load_corpus
from ..suite.laws import resolve_laws, run_law
from ..suite.results import SuiteReport
from ..suite.search import search_separating_example, verify_separation
from .specfile import StructureSpec, load_spec, parse_spec

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_COUNTEREXAMPLE, EXIT_BOUND = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _emit(args, text: str, data):
    out = _dump(data) if args.format == "json" else text
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    if getattr(args, "report", None):
        Path(args.report).write_text(_dump(data), encoding="utf-8")


def _phi_names(args) -> list[str] | None:
    if not getattr(args, "phi", None):
        return None
    return [p.strip() for p in args.phi.split(",") if p.strip()]


def _submodule(spec: StructureSpec, name: str):
    if name not in spec.submodules:
        if name in spec.failures:
            raise UsageError(f"submodule {name!r} failed validation: {spec.failures[name]}")
        raise UsageError(f"no submodule named {name!r}")
    return spec.submodules[name]


def _set(K) -> str:
    return "{" + ", ".join(K.labels) + "}"


# -- validate ----------------------------------------------------------------------------


def cmd_validate(args) -> int:
    spec = load_spec(args.file)
    rows = []
    for kind, name, line in spec.order:
        if name in spec.failures:
            rep = spec.failures[name]
        elif kind in ("group", "ring", "module"):
            table = {"group": spec.groups, "ring": spec.rings, "module": spec.modules}[kind]
            rep = validate(table[name])
        else:
            continue
        rows.append({"kind": kind, "name": name, "line": line, "ok": rep.ok,
                     "axiom": rep.axiom, "witness": list(rep.witness) if rep.witness else None})
    bad = [r for r in rows if not r["ok"]]
    lines = []
    for r in rows:
        if r["ok"]:
            lines.append(f"{r['kind']} {r['name']}: ok")
        else:
            lines.append(f"{r['kind']} {r['name']} (line {r['line']}): {r['axiom']} violated "
                         f"(witness {', '.join(r['witness'] or [])})")
    lines.append(f"{len(rows) - len(bad)}/{len(rows)} structures valid")
    _emit(args, "\n".join(lines), {"file": str(args.file), "structures": rows,
                                   "valid": not bad})
    return EXIT_INVALID if bad else EXIT_OK


# -- classify / radical / colon ------------------------------------------------------------


def cmd_classify(args) -> int:
    spec = load_spec(args.file)
    K = _submodule(spec, args.submodule)
    M = K.module
    names = _phi_names(args)
    if names is None:
        names = list(spec.phis.values()) or None
    if names is None:
        phis = [p for p in default_phis(is_multiplication_module(M)[0]) if str(p) not in
                ("empty", "zero")]
    else:
        phis = [parse_phi(p, M) for p in names]
    report = classify(K, phis, local=not args.no_local)
    _emit(args, report.render(), report.to_dict())
    return EXIT_OK


def cmd_radical(args) -> int:
    spec = load_spec(args.file)
    K = _submodule(spec, args.submodule)
    M = K.module
    col = colon_ideal(K)
    gcol = graded_radical_ideal(col)
    gm = graded_radical_submodule(K)
    data = {"module": M.name, "submodule": K.labels, "colon": col.labels,
            "Grad(colon)": gcol.labels, "Grad_M": gm.labels,
            "Grad(colon)M": ideal_times(gcol, whole(M)).labels}
    lines = [f"submodule {_set(K)} of {M.name}",
             f"(K :_R M)        = {_set(col)}",
             f"Grad((K :_R M))  = {_set(gcol)}",
             f"Grad_M(K)        = {_set(gm)}",
             f"Grad((K:M))M     = {_set(ideal_times(gcol, whole(M)))}"]
    if M.is_self_module:
        gi = graded_radical_ideal(K)
        ui = ungraded_radical(K)
        data["Grad"] = gi.labels
        data["radical"] = ui.labels
        lines += [f"Grad(I)          = {_set(gi)}", f"ungraded radical = {_set(ui)}"]
    _emit(args, "\n".join(lines), data)
    return EXIT_OK


def cmd_colon(args) -> int:
    spec = load_spec(args.file)
    K = _submodule(spec, args.submodule)
    M = K.module
    col = colon_ideal(K)
    rc = [M.ring.labels[i] for i in restricted_colon(K)]
    data = {"module": M.name, "submodule": K.labels, "colon": col.labels, "colon_e": rc}
    text = "\n".join([f"submodule {_set(K)} of {M.name}",
                      f"(K :_R M)     = {_set(col)}",
                      f"(K :_R_e M)   = {{{', '.join(rc)}}}"])
    _emit(args, text, data)
    return EXIT_OK


# -- corpora -------------------------------------------------------------------------------


def _corpus(args) -> Corpus:
    corpus = load_corpus(args.corpus) if args.corpus else default_corpus()
    if args.extend:
        _extend(corpus, args.extend, args.seed, args.max_order)
    return corpus


def _extend(corpus: Corpus, count: int, seed: int, max_order: int | None):
    """Append ``count`` random products Z_a x Z_b (trivially graded), reproducible from ``seed``."""
    rng = random.Random(seed)
    bound = min(max_order or 36, 36)
    pairs = [(a, b) for a in range(2, bound // 2 + 1) for b in range(2, bound // 2 + 1)
             if a * b <= bound]
    chosen = sorted(rng.sample(pairs, min(count, len(pairs))))
    orders = sorted({n for pair in chosen for n in pair})
    lines = [f"ring Q{n} = zn {n}" for n in orders]
    lines += [f"module Z{a}xZ{b}r = product Q{a} Q{b}" for a, b in chosen]
    extra = parse_spec("\n".join(lines))
    for a, b in chosen:
        name = f"Z{a}xZ{b}r"
        corpus.instances.append(Instance(len(corpus.instances), name, extra.modules[name]))


def cmd_laws(args) -> int:
    corpus = _corpus(args)
    try:
        laws = resolve_laws(args.law)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    results = [run_law(law, corpus, phis=_phi_names(args), mutant=args.mutant,
                       max_order=args.max_order, mulset_limit=args.mulset_limit,
                       timing=args.timing)
               for law in laws]
    report = SuiteReport(corpus.name, results)
    _emit(args, report.render(), report.to_dict())
    return EXIT_OK if report.passed else EXIT_COUNTEREXAMPLE


def cmd_search(args) -> int:
    corpus = _corpus(args)
    try:
        a, b = PredicateSpec.parse(args.a), PredicateSpec.parse(args.b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = search_separating_example(a, b, corpus, max_order=args.max_order,
                                       find_all=args.all, instance=args.instance)
    data = result.to_dict()
    data["verified"] = [verify_separation(a, b, corpus, s) for s in result.found]
    _emit(args, result.render(), data)
    return EXIT_OK if result.found else EXIT_INVALID


def cmd_catalog(args) -> int:
    spec = load_spec(args.file)
    corpus_mods = []
    for kind, name, obj in spec.structures():
        if kind == "group" or obj is None:
            continue
        M = obj.self_module if kind == "ring" else obj
        if args.module and name != args.module:
            continue
        if any(M is m for _, m in corpus_mods):
            continue
        corpus_mods.append((name, M))
    if args.module and not corpus_mods:
        raise UsageError(f"no ring or module named {args.module!r}")
    entries, lines = [], []
    for name, M in corpus_mods:
        if args.max_order is not None and M.order > args.max_order:
            lines.append(f"{name}: skipped (|M| = {M.order} > max-order {args.max_order})")
            continue
        inst = Instance(0, name, M)
        names = _phi_names(args)
        phis = ([parse_phi(p, M) for p in names] if names is not None else
                [p for p in inst.default_phis() if str(p) not in ("empty", "zero")])
        lines.append(f"{name}: {len(inst.submodules)} graded submodules, "
                     f"multiplication module: {'yes' if inst.multiplication else 'no'}")
        for K in inst.proper:
            rep = classify(K, phis, local=False)
            true = [f"{e.name}" + ("" if e.phi in ("empty", "zero") else f"@{e.phi}")
                    for e in rep.entries if e.holds]
            entries.append({"module": name, "report": rep.to_dict()})
            lines.append(f"  {_set(K)}: {', '.join(true) if true else '-'}")
    _emit(args, "\n".join(lines), {"catalog": entries})
    return EXIT_OK


# -- argument parsing --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-order", type=int, default=None, metavar="N",
                        help="ignore structures with more than N elements")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized corpus extensions (--extend)")

    parser = argparse.ArgumentParser(
        prog="gradedphi",
        description="Validate and classify finite graded modules; run the phi-2-absorbing law suite.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check every declared structure")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    for name, func, helptext in (("classify", cmd_classify, "evaluate every predicate"),
                                 ("radical", cmd_radical, "print Grad(I) and Grad_M(K)"),
                                 ("colon", cmd_colon, "print (K :_R M)")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")
        p.add_argument("--submodule", required=True)
        if name == "classify":
            p.add_argument("--phi", help="comma-separated phi list (empty, zero, n:<k>, omega, "
                                         "table:<file>)")
            p.add_argument("--no-local", action="store_true", help="skip the g-local predicates")
        p.set_defaults(func=func)

    corpus_flags = argparse.ArgumentParser(add_help=False)
    corpus_flags.add_argument("--corpus", help="structure file (default: the shipped corpus)")
    corpus_flags.add_argument("--extend", type=int, default=0, metavar="N",
                              help="append N random products of cyclic rings (uses --seed)")
    corpus_flags.add_argument("--report", help="also write the JSON report to this path")

    p = sub.add_parser("laws", parents=[common, corpus_flags], help="run the law suite")
    p.add_argument("--law", default="all", help="law id, comma list, or 'all'")
    p.add_argument("--phi", help="comma-separated phi list overriding the defaults")
    p.add_argument("--mutant", action="store_true", help="run the deliberately weakened variants")
    p.add_argument("--timing", action="store_true", help="include runtimes in the report")
    p.add_argument("--mulset-limit", type=int, default=128, metavar="N",
                   help="multiplicative sets per ring for localization laws")
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("search", parents=[common, corpus_flags],
                       help="find a submodule satisfying --a but not --b")
    p.add_argument("--a", required=True, help="predicate, e.g. weakly-prime or primary@n:2")
    p.add_argument("--b", required=True)
    p.add_argument("--all", action="store_true", help="list every separating submodule")
    p.add_argument("--instance", help="restrict to one corpus instance")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("catalog", parents=[common], help="enumerate and classify all submodules")
    p.add_argument("file")
    p.add_argument("--module", help="only this ring or module")
    p.add_argument("--phi", help="comma-separated phi list")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecParseError as exc:
        path = getattr(args, "file", None) or getattr(args, "corpus", None)
        print(f"error: {path + ': ' if path else ''}{exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ImproperSubmodule, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AxiomViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except BoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except GradedPhiError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
