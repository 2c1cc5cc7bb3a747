"""Command-line front end.

Exit codes: 0 success, 1 a ``check`` failed, 2 invalid input, 3 a resource
guard was hit.
"""
from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations
from typing import TextIO

from . import analysis, complex as cx, decomp
from .errors import ResourceError, ValidationError
from .poset import (BSBounds, HasseDiagram, count_maximal_chains,
                    enumerate_elements, join, leq, maximal_chains, meet,
                    seq_label)

COMMANDS = ("enumerate", "hasse", "complex", "chains", "count", "check",
            "shedding", "atom-order", "dual", "shear", "find-bs")
SUITES = ("lattice", "pure", "flag", "vd", "rao", "counts", "dual")
DEFAULT_MAX_ELEMENTS = 10**5
DEFAULT_MAX_CHAINS = 10**6


def emit_dot(h: HasseDiagram, name: str = "poset") -> str:
    """Graphviz digraph of the cover relation, bottom to top."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i in range(len(h)):
        lines.append(f'  "{h.label(i)}";')
    for i, j in h.edges:
        lines.append(f'  "{h.label(i)}" -> "{h.label(j)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bsposets",
        description="Boij-Söderberg posets, their order complexes and checks.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--lower", help="lower bound, e.g. 1,3")
    parser.add_argument("--upper", help="upper bound, e.g. 3,4")
    parser.add_argument("--format", choices=("text", "json", "dot"), default="text")
    parser.add_argument("--suite", default="all",
                        help="comma-separated subset of: " + ",".join(SUITES) + " (or all)")
    parser.add_argument("--p", type=int, help="shear: length minus one")
    parser.add_argument("--k", type=int, help="shear: width, 1 <= k <= p")
    parser.add_argument("--poset", help="find-bs: JSON file with elements and edges")
    parser.add_argument("--window", type=int, default=8, help="find-bs: entry window")
    parser.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS)
    parser.add_argument("--max-chains", type=int, default=DEFAULT_MAX_CHAINS)
    return parser


def _bounds(args) -> BSBounds:
    if args.lower is None or args.upper is None:
        raise ValidationError(f"{args.command} needs --lower and --upper")
    return BSBounds.parse(args.lower, args.upper)


def _hasse(args, bounds: BSBounds) -> HasseDiagram:
    h = HasseDiagram.from_bounds(bounds, max_elements=args.max_elements)
    n = count_maximal_chains(bounds)
    if n > args.max_chains:
        raise ResourceError(f"{bounds} has {n} maximal chains (limit {args.max_chains})")
    return h


def _lattice_check(h: HasseDiagram) -> bool:
    els = h.elements
    if len(els) <= 12:
        subsets = (s for r in range(1, len(els) + 1) for s in combinations(els, r))
    else:
        subsets = (s for r in (1, 2) for s in combinations(els, r))
    for s in subsets:
        lo, hi = meet(s), join(s)
        if lo not in h.index or hi not in h.index:
            return False
        lower = [x for x in els if all(leq(x, d) for d in s)]
        upper = [x for x in els if all(leq(d, x) for d in s)]
        if not all(leq(x, lo) for x in lower) or lo not in lower:
            return False
        if not all(leq(hi, x) for x in upper) or hi not in upper:
            return False
    return True


def run_checks(bounds: BSBounds, suites, max_elements=DEFAULT_MAX_ELEMENTS) -> dict[str, bool]:
    """Evaluate the named property suites; every one should hold."""
    h = HasseDiagram.from_bounds(bounds, max_elements=max_elements)
    delta = cx.order_complex(h)
    results: dict[str, bool] = {}
    for name in suites:
        if name == "lattice":
            results[name] = _lattice_check(h)
        elif name == "pure":
            results[name] = (h.is_pure() and delta.is_pure()
                             and delta.dimension() == bounds.budget)
        elif name == "flag":
            incomparable = {frozenset((h.label(i), h.label(j)))
                            for i, j in combinations(range(len(h)), 2)
                            if not h.le(i, j) and not h.le(j, i)}
            nonfaces = cx.minimal_nonfaces(delta)
            results[name] = set(nonfaces) == incomparable and cx.is_flag(delta)
        elif name == "vd":
            tree = decomp.is_vertex_decomposable(delta)
            ok = tree is not None and decomp.check_certificate(delta, tree)
            if ok:
                order = decomp.shelling_from_tree(delta, tree)
                ok = decomp.is_shelling(delta, order)
            results[name] = ok
        elif name == "rao":
            results[name] = decomp.verify_rao(h, decomp.lex_atom_ordering(bounds))
        elif name == "counts":
            results[name] = analysis.count_report(bounds).within_bounds()
        elif name == "dual":
            iso = analysis.dual_bounds(bounds)
            twice = analysis.dual_bounds(iso.target).target
            results[name] = iso.verify() and twice.normalized() == bounds.normalized()
        else:
            raise ValidationError(f"unknown suite {name!r}")
    return results


def _suites(spec: str) -> list[str]:
    if spec == "all":
        return list(SUITES)
    names = [s.strip() for s in spec.split(",") if s.strip()]
    for s in names:
        if s not in SUITES:
            raise ValidationError(f"unknown suite {s!r}")
    return names


def _fmt_chain(chain) -> str:
    return " < ".join(seq_label(d) for d in chain)


def run(args: argparse.Namespace, out: TextIO) -> int:
    fmt = args.format
    cmd = args.command
    if fmt == "dot" and cmd != "hasse":
        raise ValidationError("--format dot is only available for hasse")

    if cmd == "shear":
        if args.p is None or args.k is None:
            raise ValidationError("shear needs --p and --k")
        iso = analysis.shear(args.p, args.k)
        _emit_iso(iso, fmt, out)
        return 0 if iso.verify() else 1

    if cmd == "find-bs":
        if not args.poset:
            raise ValidationError("find-bs needs --poset FILE")
        try:
            with open(args.poset, encoding="utf-8") as fh:
                P = HasseDiagram.from_json(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read poset file: {exc}") from exc
        found = analysis.bs_membership_search(P, args.window)
        if fmt == "json":
            out.write(_dumps(None if found is None else {
                "bounds": found[0].to_json(),
                "map": [[list(a) if isinstance(a, tuple) else a, list(b)]
                        for a, b in sorted(found[1].items())],
            }))
        elif found is None:
            out.write(f"no Boij-Söderberg poset found within window {args.window}\n")
        else:
            out.write(f"found {found[0]}\n")
        return 0

    bounds = _bounds(args)

    if cmd == "enumerate":
        els = enumerate_elements(bounds, args.max_elements)
        if fmt == "json":
            out.write(_dumps([list(d) for d in els]))
        else:
            out.writelines(seq_label(d) + "\n" for d in els)
    elif cmd == "hasse":
        h = HasseDiagram.from_bounds(bounds, max_elements=args.max_elements)
        if fmt == "dot":
            out.write(emit_dot(h))
        elif fmt == "json":
            out.write(_dumps(h.to_json()))
        else:
            out.writelines(f"{h.label(i)} -> {h.label(j)}\n" for i, j in h.edges)
    elif cmd == "complex":
        delta = cx.order_complex(_hasse(args, bounds))
        if fmt == "json":
            out.write(_dumps(delta.to_json()))
        else:
            out.writelines("{" + " ".join(f) + "}\n" for f in delta.sorted_facets())
    elif cmd == "chains":
        _hasse(args, bounds)
        chains = maximal_chains(bounds, args.max_chains)
        if fmt == "json":
            out.write(_dumps([[list(d) for d in c] for c in chains]))
        else:
            out.writelines(_fmt_chain(c) + "\n" for c in chains)
    elif cmd == "count":
        enumerate_elements(bounds, args.max_elements)
        report = analysis.count_report(bounds)
        if fmt == "json":
            out.write(_dumps(report.to_json()))
        else:
            out.write(f"vertices: {report.vertex_count}\n")
            out.write(f"facets: {report.facet_count}\n")
            out.write(f"consecutive form: {report.formula_applicable}\n")
            out.write(f"vertex bounds: {report.v_lo} <= v <= {report.v_hi}"
                      f" (exponent-p variant: {report.printed_v_hi})\n")
            out.write(f"facet bounds: {report.n_lo} <= n <= {report.n_hi}\n")
    elif cmd == "check":
        _hasse(args, bounds)
        results = run_checks(bounds, _suites(args.suite), args.max_elements)
        if fmt == "json":
            out.write(_dumps({k: "PASS" if v else "FAIL" for k, v in results.items()}))
        else:
            out.writelines(f"{k}: {'PASS' if v else 'FAIL'}\n" for k, v in results.items())
        return 0 if all(results.values()) else 1
    elif cmd == "shedding":
        delta = cx.order_complex(_hasse(args, bounds))
        verts = cx.sort_labels(decomp.shedding_vertices(delta))
        if fmt == "json":
            tree = decomp.is_vertex_decomposable(delta)
            out.write(_dumps({"shedding_vertices": verts,
                              "certificate": tree.to_json() if tree else None}))
        else:
            out.writelines(v + "\n" for v in verts)
    elif cmd == "atom-order":
        h = _hasse(args, bounds)
        order = decomp.lex_atom_ordering(bounds)
        ok = decomp.verify_rao(h, order)
        if fmt == "json":
            out.write(_dumps({"atoms": [list(a) for a in order],
                              "recursive_atom_ordering": ok}))
        else:
            out.writelines(seq_label(a) + "\n" for a in order)
            out.write(f"recursive atom ordering: {'PASS' if ok else 'FAIL'}\n")
        return 0 if ok else 1
    elif cmd == "dual":
        enumerate_elements(bounds, args.max_elements)
        iso = analysis.dual_bounds(bounds)
        _emit_iso(iso, fmt, out)
        return 0 if iso.verify() else 1
    return 0


def _emit_iso(iso: analysis.PosetIso, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        out.write(_dumps({"source": iso.source.to_json(),
                          "target": iso.target.to_json(),
                          "reversing": iso.reversing,
                          "map": iso.to_json()}))
    else:
        kind = "order-reversing" if iso.reversing else "order-preserving"
        out.write(f"{iso.source} -> {iso.target} ({kind})\n")
        for a in sorted(iso.mapping):
            out.write(f"{seq_label(a)} -> {seq_label(iso.mapping[a])}\n")


def main(argv=None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return run(args, out)
    except ValidationError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except ResourceError as exc:
        err.write(f"resource limit: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
