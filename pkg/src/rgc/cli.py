"""``rgc`` command line.

Exit status: 0 positive verdict or success, 1 negative verdict, 2 usage or
input error, 3 search bound exhausted without a verdict.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Callable

from . import closure, emsol, families, graph, heapsat, hom, implication, paths, pcp
from .graph import Graph

OK, NEGATIVE, USAGE, UNKNOWN = 0, 1, 2, 3


@dataclass
class Outcome:
    code: int
    text: str
    data: dict[str, Any] = field(default_factory=dict)


def graph_json(g: Graph | None) -> dict[str, Any] | None:
    if g is None:
        return None
    return {
        "nodes": list(g.order),
        "s1": sorted([x, y] for x, y in g.s1 if (x, y) != (graph.NULL, graph.NULL)),
        "s2": sorted([x, y] for x, y in g.s2 if (x, y) != (graph.NULL, graph.NULL)),
    }


def _sorted_map(h: dict[str, str]) -> dict[str, str]:
    return dict(sorted(h.items()))


def _write_or_print(g: Graph, out: str | None, label: str) -> Outcome:
    text = graph.serialize(g)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return Outcome(OK, f"wrote {label} ({len(g.nodes)} nodes) to {out}\n", {"graph": graph_json(g), "output": out})
    return Outcome(OK, text, {"graph": graph_json(g)})


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


# -- subcommands ------------------------------------------------------------


def cmd_hom(a) -> Outcome:
    g, t = graph.load(a.source), graph.load(a.target)
    if a.all:
        homs = hom.enumerate_homs(g, t, a.limit)
        text = "no homomorphism\n"
        if homs:
            text = f"{len(homs)} homomorphism(s)\n" + "---\n".join(hom.format_witness(h) for h in homs)
        return Outcome(OK if homs else NEGATIVE, text, {"homomorphisms": [_sorted_map(h) for h in homs]})
    h = hom.find_hom(g, t)
    if h is None:
        return Outcome(NEGATIVE, "no homomorphism\n", {"homomorphic": False, "witness": None})
    return Outcome(OK, hom.format_witness(h), {"homomorphic": True, "witness": _sorted_map(h)})


def cmd_sat(a) -> Outcome:
    res = heapsat.sat_over_heaps(graph.load(a.graph))
    trace = [{"node": r.node, "reason": r.reason} for r in res.cleanup_trace]
    lines = []
    if a.trace:
        lines += [f"removed {r.node}: {r.reason}" for r in res.cleanup_trace]
    if res.satisfiable:
        lines.append("SAT")
        text = "\n".join(lines) + "\n" + graph.serialize(res.witness)
    else:
        lines.append("UNSAT")
        text = "\n".join(lines) + "\n"
    return Outcome(
        OK if res.satisfiable else NEGATIVE,
        text,
        {"satisfiable": res.satisfiable, "witness": graph_json(res.witness), "cleanup_trace": trace},
    )


def cmd_product(a) -> Outcome:
    return _write_or_print(closure.product(graph.load(a.g1), graph.load(a.g2)), a.output, "product")


def cmd_sum(a) -> Outcome:
    return _write_or_print(closure.graph_sum(graph.load(a.g1), graph.load(a.g2)), a.output, "sum")


def cmd_gen(a) -> Outcome:
    if a.family == "grid":
        g = families.gen_grid(a.m, a.n)
    elif a.family == "cg":
        g = families.gen_cg(families.CorresponderParams(a.n, a.k, tuple(a.u), tuple(a.l)))
    else:
        g = families.gen_list(a.word)
    return _write_or_print(g, a.output, a.family)


def cmd_enum_heaps(a) -> Outcome:
    heaps = list(families.enumerate_heaps(families.HeapEnumConfig(a.max, dedupe=not a.labelled)))
    if a.count:
        return Outcome(OK, f"{len(heaps)}\n", {"count": len(heaps)})
    text = "---\n".join(graph.serialize(h) for h in heaps)
    return Outcome(OK, text, {"count": len(heaps), "heaps": [graph_json(h) for h in heaps]})


def cmd_slices(a) -> Outcome:
    g = graph.load(a.graph)
    if a.regex is not None:
        p = paths.find_slice_matching(g, a.regex)
        if p is None:
            return Outcome(NEGATIVE, f"no slice matches {a.regex}\n", {"regex": a.regex, "slice": None})
        return Outcome(
            OK,
            f"{p}\nword {paths.word(p) or 'ε'}\n",
            {"regex": a.regex, "slice": str(p), "word": paths.word(p)},
        )
    found = list(paths.iter_slices(g, a.max_len))
    text = "".join(f"{paths.word(p) or 'ε'}\t{p}\n" for p in found)
    return Outcome(
        OK,
        text,
        {"max_len": a.max_len, "slices": [{"path": str(p), "word": paths.word(p)} for p in found]},
    )


def cmd_pcp(a) -> Outcome:
    inst = pcp.parse_pcp(_read(a.file))
    if a.pcp_cmd == "solve":
        sol = pcp.brute_solve_pcp(inst, a.max_len)
        if sol is None:
            return Outcome(UNKNOWN, f"UNKNOWN(no solution up to length {a.max_len})\n", {"solution": None, "max_len": a.max_len})
        return Outcome(
            OK,
            f"solution {' '.join(map(str, sol))}\nstring {inst.top(sol)}\n",
            {"solution": sol, "string": inst.top(sol)},
        )
    if a.pcp_cmd == "reduce":
        return _write_or_print(pcp.build_reduction(inst), a.output, "reduction graph")
    hit = pcp.bounded_cg_search(inst, a.n_max, a.k_max, workers=a.threads)
    if hit is None:
        return Outcome(
            UNKNOWN,
            f"UNKNOWN(no corresponder graph up to n={a.n_max}, k={a.k_max})\n",
            {"params": None, "n_max": a.n_max, "k_max": a.k_max},
        )
    params, h = hit
    sol = pcp.solution_from_witness(inst, families.gen_cg(params), h)
    text = f"{params}\nsolution {' '.join(map(str, sol))}\n" + hom.format_witness(h)
    data = {
        "params": {"n": params.n, "k": params.k, "u": list(params.u), "l": list(params.l)},
        "solution": sol,
        "witness": _sorted_map(h),
    }
    return Outcome(OK, text, data)


def cmd_emsol(a) -> Outcome:
    if a.emsol_cmd == "emit":
        if a.flexible_example:
            text = emsol.emit_flexible(emsol.IN_DEGREE_ZERO)
            return Outcome(OK, text, {"formula": text})
        if a.graph is None:
            raise argparse.ArgumentTypeError("emsol emit needs a graph file")
        text = emsol.render(emsol.emit_formula(graph.load(a.graph)))
        return Outcome(OK, text, {"formula": text})
    g = graph.load(a.graph)
    f = emsol.parse_formula(_read(a.formula))
    ok = emsol.eval_formula(g, f)
    return Outcome(OK if ok else NEGATIVE, "TRUE\n" if ok else "FALSE\n", {"value": ok})


def cmd_implies(a) -> Outcome:
    v = implication.check_implication(graph.load(a.g1), graph.load(a.g2), a.max)
    data: dict[str, Any] = {"verdict": v.status.name, "bound": v.bound, "counterexample": graph_json(v.counterexample)}
    text = f"{v}\n"
    if v.certificate is not None:
        data["certificate"] = {"regex": v.certificate.regex, "slice": str(v.certificate.path)}
        text += f"slice {v.certificate.path} matches {v.certificate.regex}; the second graph has none\n"
    if v.counterexample is not None:
        text += graph.serialize(v.counterexample)
    code = {implication.Status.VALID: OK, implication.Status.COUNTEREXAMPLE: NEGATIVE}.get(v.status, UNKNOWN)
    return Outcome(code, text, data)


def cmd_equiv(a) -> Outcome:
    g1, g2 = graph.load(a.g1), graph.load(a.g2)
    if hom.homomorphic(g1, g2) and hom.homomorphic(g2, g1):
        return Outcome(OK, "EQUIVALENT\n", {"verdict": "EQUIVALENT", "bound": None})
    v = implication.equiv_bounded(g1, g2, a.max)
    if v.equivalent:
        return Outcome(UNKNOWN, f"UNKNOWN(equivalent up to bound {a.max})\n", {"verdict": "UNKNOWN", "bound": a.max})
    return Outcome(
        NEGATIVE,
        f"COUNTEREXAMPLE({v.direction})\n" + graph.serialize(v.counterexample),
        {"verdict": "COUNTEREXAMPLE", "direction": v.direction, "bound": a.max, "counterexample": graph_json(v.counterexample)},
    )


def cmd_gadget(a) -> Outcome:
    return _write_or_print(
        implication.invariant_gadget(graph.load(a.g1), graph.load(a.g2)), a.output, "gadget"
    )


def cmd_classify(a) -> Outcome:
    c = graph.classify(graph.load(a.graph))
    flags = {"heap": c.is_heap, "tree": c.is_tree, "list": c.is_list, "orable": c.is_orable}
    text = "".join(f"{k}: {'yes' if v else 'no'}\n" for k, v in flags.items())
    return Outcome(OK, text, flags)


# -- parser -----------------------------------------------------------------


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _count(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=_positive, default=1, help="worker processes (output does not depend on it)")

    p = argparse.ArgumentParser(prog="rgc", description="Regular graph constraint toolkit.")
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name: str, fn: Callable[[Any], Outcome], help_: str, parent=sub):
        sp = parent.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("hom", cmd_hom, "find a homomorphism")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.add_argument("--all", action="store_true", help="list every homomorphism")
    sp.add_argument("--limit", type=_positive, default=None)

    sp = add("sat", cmd_sat, "satisfiability over heaps")
    sp.add_argument("graph")
    sp.add_argument("--trace", action="store_true", help="show cleanup removals")

    for name, fn in (("product", cmd_product), ("sum", cmd_sum)):
        sp = add(name, fn, f"graph {name}")
        sp.add_argument("g1")
        sp.add_argument("g2")
        sp.add_argument("-o", "--output")

    gen = sub.add_parser("gen", help="generate a graph family member")
    gsub = gen.add_subparsers(dest="family", required=True)
    sp = add("grid", cmd_gen, "m x n grid", gsub)
    sp.add_argument("m", type=_positive)
    sp.add_argument("n", type=_positive)
    sp.add_argument("-o", "--output")
    sp = add("cg", cmd_gen, "corresponder graph", gsub)
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)
    sp.add_argument("--u", type=int, nargs="*", default=[])
    sp.add_argument("--l", type=int, nargs="*", default=[])
    sp.add_argument("-o", "--output")
    sp = add("list", cmd_gen, "list spelling a word over {1,2}", gsub)
    sp.add_argument("word")
    sp.add_argument("-o", "--output")

    sp = add("enum-heaps", cmd_enum_heaps, "enumerate small heaps")
    sp.add_argument("--max", type=_count, required=True, help="non-special node bound")
    sp.add_argument("--count", action="store_true")
    sp.add_argument("--labelled", action="store_true", help="every labelled heap, not one per class")

    sp = add("slices", cmd_slices, "slices and slice-regex matching")
    sp.add_argument("graph")
    sp.add_argument("--regex")
    sp.add_argument("--max-len", type=_count, default=4)

    pc = sub.add_parser("pcp", help="Post correspondence instances")
    psub = pc.add_subparsers(dest="pcp_cmd", required=True)
    sp = add("solve", cmd_pcp, "bounded brute-force solver", psub)
    sp.add_argument("file")
    sp.add_argument("--max-len", type=_positive, default=6)
    sp = add("reduce", cmd_pcp, "build the reduction graph", psub)
    sp.add_argument("file")
    sp.add_argument("-o", "--output")
    sp = add("search", cmd_pcp, "bounded corresponder graph search", psub)
    sp.add_argument("file")
    sp.add_argument("--n-max", type=int, default=4)
    sp.add_argument("--k-max", type=int, default=2)

    em = sub.add_parser("emsol", help="logic encodings")
    esub = em.add_subparsers(dest="emsol_cmd", required=True)
    sp = add("emit", cmd_emsol, "emit the partition normal form", esub)
    sp.add_argument("graph", nargs="?")
    sp.add_argument("--flexible-example", action="store_true", help="print the bundled relaxed-form example")
    sp = add("eval", cmd_emsol, "evaluate a normal-form formula", esub)
    sp.add_argument("graph")
    sp.add_argument("formula")

    sp = add("implies", cmd_implies, "implication over heaps")
    sp.add_argument("g1")
    sp.add_argument("g2")
    sp.add_argument("--max", type=_count, default=3, help="non-special node bound")

    sp = add("equiv", cmd_equiv, "equivalence over heaps")
    sp.add_argument("g1")
    sp.add_argument("g2")
    sp.add_argument("--max", type=_count, default=3)

    sp = add("gadget", cmd_gadget, "invariant-maintenance gadget")
    sp.add_argument("g1")
    sp.add_argument("g2")
    sp.add_argument("-o", "--output")

    sp = add("classify", cmd_classify, "heap/tree/list/orable flags")
    sp.add_argument("graph")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.fn(args)
    except (OSError, ValueError, argparse.ArgumentTypeError) as exc:
        # GraphError, ParseError, PcpError, EmsolError and friends are ValueErrors.
        print(f"rgc: error: {exc}", file=sys.stderr)
        return USAGE
    if args.json:
        payload = {"exit": out.code, **out.data}
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(out.text)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
