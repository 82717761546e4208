"""Graph homomorphisms: verification, backtracking search, composition.

A homomorphism is a plain ``dict`` from source node ids to target node ids.
Search assigns nodes in breadth-first order from root (successors taken in
s1-then-s2, lexicographic order; unreachable nodes last, lexicographic) and
tries target values in serialization order.  Candidate sets are bitmasks
over the target's node order, pruned by forward checking along edges in
both directions.
"""
from __future__ import annotations

from collections import deque
from typing import Iterator, Mapping

from .graph import NULL, ROOT, Graph

Homomorphism = dict[str, str]


class HomError(ValueError):
    pass


def check_hom(g: Graph, target: Graph, h: Mapping[str, str]) -> bool:
    missing = g.nodes - h.keys()
    if missing:
        raise HomError(f"mapping is not total: no image for {sorted(missing)[0]!r}")
    for x in g.nodes:
        if h[x] not in target.nodes:
            raise HomError(f"image {h[x]!r} of {x!r} is not a target node")
        if (h[x] == ROOT) != (x == ROOT) or (h[x] == NULL) != (x == NULL):
            return False
    for i in (1, 2):
        rel = target.rel(i)
        if any((h[x], h[y]) not in rel for x, y in g.rel(i)):
            return False
    return True


def search_order(g: Graph) -> list[str]:
    seen = {ROOT, NULL}
    out: list[str] = []
    todo = deque([ROOT])
    while todo:
        x = todo.popleft()
        for i in (1, 2):
            for y in sorted(g.succ(i, x)):
                if y not in seen:
                    seen.add(y)
                    out.append(y)
                    todo.append(y)
    out.extend(sorted(g.nodes - seen))
    return out


def iter_homs(g: Graph, target: Graph) -> Iterator[Homomorphism]:
    """All homomorphisms from ``g`` to ``target`` in canonical order."""
    if g.is_empty or target.is_empty:
        return
    tidx = target.index
    torder = target.order
    succ1, succ2, pred1, pred2 = target.masks
    tsucc = (succ1, succ2)
    tpred = (pred1, pred2)
    r_t, n_t = tidx[ROOT], tidx[NULL]
    full = (1 << len(torder)) - 1
    plain = full & ~(1 << r_t) & ~(1 << n_t)

    order = [ROOT, NULL] + search_order(g)
    pos = {x: k for k, x in enumerate(order)}
    # Per variable: constraints toward other variables as (rel, other, outgoing).
    links: list[list[tuple[int, int, bool]]] = [[] for _ in order]
    loops: list[list[int]] = [[] for _ in order]
    for r in (0, 1):
        for x, y in g.rel(r + 1):
            a, b = pos[x], pos[y]
            if a == b:
                loops[a].append(r)
                continue
            links[a].append((r, b, True))
            links[b].append((r, a, False))

    dom = [plain] * len(order)
    dom[0] = 1 << r_t
    dom[1] = 1 << n_t
    # Nodes with outgoing (incoming) r-edges need images with the same.
    for v in range(len(order)):
        for r, _, outgoing in links[v]:
            table = tsucc[r] if outgoing else tpred[r]
            dom[v] &= sum(1 << t for t in range(len(torder)) if table[t])
        if not dom[v]:
            return

    assign = [-1] * len(order)

    def place(v: int, t: int, dom: list[int]) -> list[int] | None:
        for r in loops[v]:
            if not (tsucc[r][t] >> t) & 1:
                return None
        new = dom[:]
        new[v] = 1 << t
        for r, w, outgoing in links[v]:
            m = new[w] & (tsucc[r][t] if outgoing else tpred[r][t])
            if not m:
                return None
            new[w] = m
        return new

    def rec(v: int, dom: list[int]) -> Iterator[Homomorphism]:
        if v == len(order):
            yield {order[k]: torder[assign[k]] for k in range(len(order))}
            return
        m = dom[v]
        while m:
            low = m & -m
            t = low.bit_length() - 1
            m ^= low
            new = place(v, t, dom)
            if new is not None:
                assign[v] = t
                yield from rec(v + 1, new)
        assign[v] = -1

    yield from rec(0, dom)


def find_hom(g: Graph, target: Graph) -> Homomorphism | None:
    return next(iter_homs(g, target), None)


def homomorphic(g: Graph, target: Graph) -> bool:
    return find_hom(g, target) is not None


def enumerate_homs(g: Graph, target: Graph, limit: int | None = None) -> list[Homomorphism]:
    if limit is not None and limit < 1:
        raise ValueError("limit must be at least 1")
    out = []
    for h in iter_homs(g, target):
        out.append(h)
        if limit is not None and len(out) >= limit:
            break
    return out


def compose(h1: Mapping[str, str], h2: Mapping[str, str]) -> Homomorphism:
    """``h2 . h1``: first ``h1`` (G -> G'), then ``h2`` (G' -> G'')."""
    out = {}
    for x, y in h1.items():
        if y not in h2:
            raise HomError(f"{x!r} maps to {y!r}, which is outside the domain of the second map")
        out[x] = h2[y]
    return out


def identity(g: Graph) -> Homomorphism:
    return {x: x for x in g.nodes}


def format_witness(h: Mapping[str, str]) -> str:
    return "".join(f"{x} -> {h[x]}\n" for x in sorted(h))
