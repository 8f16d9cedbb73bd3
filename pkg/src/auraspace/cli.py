"""Command-line entry point: ``auraspace <command> ...``.

Exit codes: 0 success, 1 a law, corpus row or validation failed,
2 usage or input error, 3 scale refused.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from . import operators as ops
from .classifiers import CLASSES, class_tables, classify, is_b_set
from .continuity import (
    FLAGS,
    comparison_chain_check,
    decomposition_check,
    ia_continuity_profile,
    profile_hierarchy_holds,
)
from .core import IdealAuraSpace, ParseError, SpaceError
from .corpus import run_paper_corpus
from .io import load_map, load_space
from .laws import LAWS, UnknownLaw, get_law, iter_sources, law_ids, run_laws, suite_ok
from .search import (
    NotFound,
    ScaleRefused,
    SearchConfig,
    UnknownPredicate,
    find_witness,
    get_predicate,
    predicate_ids,
    stabilization_census,
)
from .topologies import GENERATORS, generate

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SCALE = 0, 1, 2, 3


class UnknownOp(ValueError):
    pass


def _emit(args: argparse.Namespace, text: str, obj: Any) -> None:
    if args.format == "json":
        print(json.dumps(obj, ensure_ascii=False, indent=2))
    else:
        print(text)


# -- validate ------------------------------------------------------------------

def cmd_validate(args: argparse.Namespace) -> int:
    try:
        space = load_space(args.file)
    except SpaceError as exc:
        lines = [v.describe(exc.universe) for v in exc.violations]
        _emit(args, "invalid space:\n" + "\n".join(f"  {line}" for line in lines),
              {"valid": False, "violations": lines})
        return EXIT_FAIL
    info = {
        "valid": True,
        "points": space.n,
        "open_sets": len(space.topology.opens),
        "ideal_members": len(space.ideal.members),
        "transitive": space.is_transitive(),
    }
    _emit(args, (f"valid: {space.n} points, {info['open_sets']} open sets, "
                 f"{info['ideal_members']} ideal members, "
                 f"{'transitive' if info['transitive'] else 'non-transitive'} scope"), info)
    return EXIT_OK


# -- compute -------------------------------------------------------------------

SET_OPS: dict[str, Callable[[IdealAuraSpace, int], int]] = {
    "star": ops.local_star,
    "auralocal": ops.aura_local,
    "clstar": ops.star_closure,
    "claura": ops.aura_closure,
    "intaura": ops.aura_interior,
    "clsa": ops.ia_closure,
    "clinf": ops.ia_closure_fixpoint,
    "psi": ops.psi_aura,
    "intsa": ops.ia_interior,
}
COMPUTE_OPS = (*SET_OPS, "trace")


def cmd_compute(args: argparse.Namespace) -> int:
    if args.op not in COMPUTE_OPS:
        raise UnknownOp(f"unknown operation {args.op!r}; expected one of {', '.join(COMPUTE_OPS)}")
    space = load_space(args.file)
    u = space.universe
    a = u.parse_set(args.set)
    if args.op == "trace":
        trace = ops.ia_closure_trace(space, a)
        _emit(args, trace.format(u), {
            "op": "trace",
            "input": u.format_set(a),
            "steps": [u.format_set(s) for s in trace.steps],
            "stabilized_at": trace.stabilized_at,
        })
    else:
        out = u.format_set(SET_OPS[args.op](space, a))
        _emit(args, out, {"op": args.op, "input": u.format_set(a), "result": out})
    return EXIT_OK


# -- topology ------------------------------------------------------------------

def cmd_topology(args: argparse.Namespace) -> int:
    space = load_space(args.file)
    u = space.universe
    if args.name == "tau":
        fam = space.topology.opens
    else:
        got = generate(space, args.name)
        fam = got if args.name == "beta" else got.opens
    _emit(args, fam.format(u), {"name": args.name, "sets": [u.format_set(m) for m in fam]})
    return EXIT_OK


# -- classify ------------------------------------------------------------------

def cmd_classify(args: argparse.Namespace) -> int:
    space = load_space(args.file)
    u = space.universe
    if args.set is not None:
        a = u.parse_set(args.set)
        prof = classify(space, a, args.closure).as_dict()
        pair = is_b_set(space, a, args.closure)
        obj: dict[str, Any] = {"set": u.format_set(a), **prof}
        if pair is not None:
            obj["b_set_pair"] = [u.format_set(pair[0]), u.format_set(pair[1])]
        text = u.format_set(a) + ": " + " ".join(f"{k}={'yes' if v else 'no'}" for k, v in prof.items())
        _emit(args, text, obj)
        return EXIT_OK
    tables_ = class_tables(space, args.closure)
    rows = []
    width = max(len(u.format_set(space.full)), 3)
    lines = [("set".ljust(width) + "  " + " ".join(name.ljust(7) for name in CLASSES)).rstrip()]
    for m in range(space.full + 1):
        flags = {name: bool(tables_[name][m]) for name in CLASSES}
        rows.append({"set": u.format_set(m), **flags})
        cells = " ".join(("yes" if flags[name] else "-").ljust(7) for name in CLASSES)
        lines.append(u.format_set(m).ljust(width) + "  " + cells.rstrip())
    _emit(args, "\n".join(lines), rows)
    return EXIT_OK


# -- continuity ----------------------------------------------------------------

def cmd_continuity(args: argparse.Namespace) -> int:
    fmap = load_map(args.mapfile)
    profile = ia_continuity_profile(fmap, args.target_family, args.closure)
    decomp = decomposition_check(fmap, reading=args.target_family)
    comp = comparison_chain_check(fmap, reading=args.target_family)
    obj = {
        "target_family": args.target_family,
        "profile": profile,
        "hierarchy_holds": profile_hierarchy_holds(profile),
        "decomposition": {"mode": decomp.mode, "clauses": decomp.clauses},
        "comparison": {"clauses": comp.clauses, "probe": comp.probe},
    }
    lines = [" ".join(f"{k}={'yes' if profile[k] else 'no'}" for k in FLAGS),
             f"hierarchy: {'holds' if obj['hierarchy_holds'] else 'FAILS'}",
             f"decomposition ({decomp.mode}): "
             + " ".join(f"{k}={'holds' if v else 'FAILS'}" for k, v in decomp.clauses.items()),
             "comparison: " + " ".join(f"{k}={'holds' if v else 'FAILS'}" for k, v in comp.clauses.items())
             + " (probe iii=" + ("holds" if comp.probe["iii"] else "fails") + ")"]
    _emit(args, "\n".join(lines), obj)
    return EXIT_OK


# -- check / repro ---------------------------------------------------------------

def _corpus_lines(report) -> list[str]:
    lines = []
    for row in report.rows:
        e = row.expectation
        mark = "ok  " if row.ok else "FAIL"
        arg = f"({e.arg})" if e.arg else ""
        lines.append(f"{mark} {e.fixture:18} {e.op}{arg} = {e.expected!r}  got {row.got!r}  [{e.origin}]")
    return lines


def cmd_check(args: argparse.Namespace) -> int:
    if args.all:
        ids = [i for i in law_ids() if args.probes or LAWS[i].kind == "asserted"]
    else:
        ids = [get_law(i).id for i in args.law]
    sources = args.spaces or ["enum:n=3"]
    reports = run_laws(ids, iter_sources(sources, args.seed), jobs=args.jobs)
    ok = suite_ok(reports)
    lines = [r.summary() for r in reports]
    for r in reports:
        if r.kind == "asserted" and r.violations:
            lines += [f"    {v.describe()}" for v in r.violations[:3]]
    obj: dict[str, Any] = {"sources": sources, "seed": args.seed, "laws": [r.to_obj() for r in reports]}
    if args.all:
        corpus = run_paper_corpus()
        ok = ok and corpus.ok
        lines.append(f"corpus: {'pass' if corpus.ok else 'fail'} "
                     f"({len(corpus.rows) - len(corpus.failures)}/{len(corpus.rows)} expectations)")
        obj["corpus_ok"] = corpus.ok
    obj["ok"] = ok
    _emit(args, "\n".join(lines), obj)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_repro(args: argparse.Namespace) -> int:
    report = run_paper_corpus(only=args.only)
    rows = [
        {"fixture": r.expectation.fixture, "op": r.expectation.op, "arg": r.expectation.arg,
         "expected": r.expectation.expected, "got": r.got, "ok": r.ok, "origin": r.expectation.origin}
        for r in report.rows
    ]
    if not report.rows:
        raise ParseError(f"no corpus rows for fixture(s) {', '.join(args.only or [])}")
    lines = _corpus_lines(report)
    lines.append(f"{len(report.rows) - len(report.failures)}/{len(report.rows)} expectations match")
    _emit(args, "\n".join(lines), {"ok": report.ok, "rows": rows})
    return EXIT_OK if report.ok else EXIT_FAIL


# -- search ----------------------------------------------------------------------

def _search_config(args: argparse.Namespace) -> SearchConfig:
    fixed_top = fixed_ideal = None
    top_src, ideal_src = args.topology, args.ideal
    if top_src not in ("all", "discrete"):
        fixed_top = load_space(top_src).topology
        top_src = "fixed"
    if ideal_src not in ("all", "principal"):
        fixed_ideal = load_space(ideal_src).ideal
        ideal_src = "fixed"
    n = args.n
    if n is None:
        n = fixed_top.universe.n if fixed_top is not None else None
    if n is None:
        raise ParseError("--n is required unless --topology names a space file")
    return SearchConfig(
        n=n, mode=args.mode, seed=args.seed, budget=args.budget,
        topology_source=top_src, ideal_source=ideal_src,
        fixed_topology=fixed_top, fixed_ideal=fixed_ideal, canonicalize=args.canonicalize,
    )


def cmd_search(args: argparse.Namespace) -> int:
    config = _search_config(args)
    if config.mode == "exhaustive" and config.topology_source == "all" and config.n == 4:
        print("note: exhaustive search over every topology on 4 points is expensive", file=sys.stderr)
    if args.census:
        census = stabilization_census(config, jobs=args.jobs)
        lines = [f"stabilization census, n={census.n}, {census.spaces} spaces"]
        lines += [f"  index {k}: {v} spaces ({census.transitive_histogram.get(k, 0)} transitive)"
                  for k, v in census.histogram.items()]
        _emit(args, "\n".join(lines), {
            "n": census.n, "spaces": census.spaces,
            "histogram": {str(k): v for k, v in census.histogram.items()},
            "transitive_histogram": {str(k): v for k, v in census.transitive_histogram.items()},
            "max_index": census.max_index,
        })
        return EXIT_OK
    if not args.predicate:
        raise ParseError("search needs --predicate (or --census)")
    pred = get_predicate(args.predicate)
    result = find_witness(pred.id, config, jobs=args.jobs)
    if isinstance(result, NotFound):
        text = f"{pred.id}: not found after {result.spaces_checked} spaces ({result.reason}); {result.verdict}"
        _emit(args, text, {"predicate": pred.id, "found": False, "reason": result.reason,
                           "spaces_checked": result.spaces_checked, "verdict": result.verdict})
        return EXIT_OK
    if args.out:
        Path(args.out).write_text(result.dumps(), encoding="utf-8")
    u = result.space.universe
    subsets = " ".join(f"{k}={u.format_set(v)}" for k, v in result.subsets.items())
    text = f"{pred.id}: {pred.verdict(True)}; {subsets}\n{result.dumps().rstrip()}"
    _emit(args, text, {"predicate": pred.id, "found": True, "verdict": pred.verdict(True),
                       "witness": result.to_obj()})
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="auraspace", description="Finite ideal-aura space workbench.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a space file against the axioms")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("compute", parents=[common], help="apply an operator to a set")
    p.add_argument("file")
    p.add_argument("op", metavar="OP", help=", ".join(COMPUTE_OPS))
    p.add_argument("set", metavar="SET", help="set expression such as {a,c}")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("topology", parents=[common], help="print a derived topology or the basis")
    p.add_argument("file")
    p.add_argument("name", choices=("tau", *GENERATORS))
    p.set_defaults(func=cmd_topology)

    p = sub.add_parser("classify", parents=[common], help="generalized-open classes")
    p.add_argument("file")
    p.add_argument("set", nargs="?", default=None)
    p.add_argument("--closure", choices=("step", "fixpoint"), default="step")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("continuity", parents=[common], help="continuity profile of a map file")
    p.add_argument("mapfile")
    p.add_argument("--target-family", choices=("cech", "topology"), default="cech")
    p.add_argument("--closure", choices=("step", "fixpoint"), default="step")
    p.set_defaults(func=cmd_continuity)

    p = sub.add_parser("check", parents=[common], help="run laws over a set of spaces")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--law", action="append", help="law id (repeatable)")
    which.add_argument("--all", action="store_true", help="every law plus the worked-example corpus")
    p.add_argument("--spaces", action="append",
                   help="enum:n=K | random:n=J..K,count=C | fixtures | fixture:NAME | FILE (repeatable)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-probes", dest="probes", action="store_false", help="skip probe laws with --all")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("repro", parents=[common], help="reproduce the worked-example corpus")
    p.add_argument("--only", action="append", help="fixture name (repeatable)")
    p.set_defaults(func=cmd_repro)

    p = sub.add_parser("search", parents=[common], help="search for a witness")
    p.add_argument("--predicate", help="; ".join(predicate_ids()))
    p.add_argument("--n", type=int)
    p.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int)
    p.add_argument("--topology", default="all", help="all | discrete | FILE")
    p.add_argument("--ideal", default="all", help="all | principal | FILE")
    p.add_argument("--canonicalize", action="store_true")
    p.add_argument("--census", action="store_true", help="stabilization-index histogram instead")
    p.add_argument("--out", help="write the witness file here")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except ScaleRefused as exc:
        print(f"scale refused: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except SpaceError as exc:
        print("invalid space:", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v.describe(exc.universe)}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, UnknownOp, UnknownLaw, UnknownPredicate, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
