"""Satisfiability of a constraint graph over heaps.

``graph_cleanup`` deletes nodes that no heap model can map onto (unreachable
ones, and ones lacking an s1- or s2-successor) until nothing changes.  A
nonempty result still contains root, and choosing one successor per
relation for every reachable node yields a heap that embeds in the
constraint graph by the identity map.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .graph import EMPTY, NULL, ROOT, Graph, GraphError


@dataclass(frozen=True)
class Removal:
    node: str
    reason: str  # "unreachable" | "missing-s1" | "missing-s2"


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    witness: Graph | None
    cleanup_trace: tuple[Removal, ...] = field(default=())


def _induced(g: Graph, keep: set[str]) -> Graph:
    if ROOT not in keep:
        return EMPTY
    return Graph(
        frozenset(keep),
        frozenset(e for e in g.s1 if e[0] in keep and e[1] in keep),
        frozenset(e for e in g.s2 if e[0] in keep and e[1] in keep),
    )


def cleanup_with_trace(g: Graph) -> tuple[Graph, list[Removal]]:
    trace: list[Removal] = []
    alive = set(g.nodes)
    while True:
        changed = False
        # null is exempt from the reachability rule, as in the heap definition;
        # it falls only together with root.
        reach = _reach(g, alive)
        for x in sorted(alive - reach - {NULL}):
            alive.discard(x)
            trace.append(Removal(x, "unreachable"))
            changed = True
        for x in sorted(alive):
            for i in (1, 2):
                if not (g.succ(i, x) & alive):
                    alive.discard(x)
                    trace.append(Removal(x, f"missing-s{i}"))
                    changed = True
                    break
        if ROOT not in alive:
            for x in sorted(alive):
                trace.append(Removal(x, "unreachable"))
            return EMPTY, trace
        if not changed:
            return _induced(g, alive), trace


def _reach(g: Graph, alive: set[str]) -> set[str]:
    if ROOT not in alive:
        return set()
    seen = {ROOT}
    todo = [ROOT]
    while todo:
        x = todo.pop()
        for i in (1, 2):
            for y in g.succ(i, x):
                if y in alive and y not in seen:
                    seen.add(y)
                    todo.append(y)
    return seen


def graph_cleanup(g: Graph) -> Graph:
    return cleanup_with_trace(g)[0]


def extract_heap(g: Graph) -> Graph:
    """Select one s1- and one s2-successor (lexicographically least) for every
    node reachable from root through selected edges."""
    if g.is_empty or ROOT not in g.nodes:
        raise GraphError("extract_heap needs a nonempty graph containing root")
    picks: dict[str, tuple[str, str]] = {}
    todo = [ROOT]
    while todo:
        x = todo.pop()
        if x in picks:
            continue
        chosen = []
        for i in (1, 2):
            succ = g.succ(i, x)
            if not succ:
                raise GraphError(f"node {x!r} has no s{i}-successor; run graph_cleanup first")
            chosen.append(min(succ))
        picks[x] = (chosen[0], chosen[1])
        todo.extend(y for y in reversed(chosen) if y not in picks)
    picks[NULL] = (NULL, NULL)
    return Graph(
        frozenset(picks),
        frozenset((x, p[0]) for x, p in picks.items()),
        frozenset((x, p[1]) for x, p in picks.items()),
    )


def sat_over_heaps(g: Graph) -> SatResult:
    cleaned, trace = cleanup_with_trace(g)
    if cleaned.is_empty:
        return SatResult(False, None, tuple(trace))
    return SatResult(True, extract_heap(cleaned), tuple(trace))
