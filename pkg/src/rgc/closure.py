"""Conjunction (Cartesian product) and disjunction (sum of orable graphs)."""
from __future__ import annotations

from itertools import product as _cartesian

from .graph import NULL, ROOT, Graph, GraphError, is_orable

SPECIAL = (ROOT, NULL)


def pair_id(a: str, b: str) -> str:
    if a == b and a in SPECIAL:
        return a
    return f"<{a}|{b}>"


def product(g1: Graph, g2: Graph) -> Graph:
    """Models of the result are exactly the common models of both inputs.

    Pairs with exactly one special component are not nodes of the product,
    so edges touching them are dropped.
    """
    inner1 = sorted(g1.nodes - set(SPECIAL))
    inner2 = sorted(g2.nodes - set(SPECIAL))
    members = {(ROOT, ROOT), (NULL, NULL)} | set(_cartesian(inner1, inner2))
    nodes = frozenset(pair_id(*p) for p in members)
    rels = []
    for i in (1, 2):
        edges = set()
        for x1, y1 in g1.rel(i):
            for x2, y2 in g2.rel(i):
                if (x1, x2) in members and (y1, y2) in members:
                    edges.add((pair_id(x1, x2), pair_id(y1, y2)))
        rels.append(frozenset(edges))
    return Graph(nodes, rels[0], rels[1])


def graph_sum(g1: Graph, g2: Graph) -> Graph:
    """Union sharing only root and null.  Both inputs must be orable.

    Colliding non-special ids get a ``#1``/``#2`` suffix.
    """
    for k, g in ((1, g1), (2, g2)):
        if not is_orable(g):
            raise GraphError(f"graph {k} is not orable: root has an s2-edge to a node other than null")
    clash = (g1.nodes & g2.nodes) - set(SPECIAL)

    def ren(suffix: str, taken: frozenset[str]):
        def f(x: str) -> str:
            if x not in clash:
                return x
            name = f"{x}#{suffix}"
            while name in taken:
                name += "'"
            return name
        return f

    taken = g1.nodes | g2.nodes
    f1, f2 = ren("1", taken), ren("2", taken)
    nodes = frozenset(map(f1, g1.nodes)) | frozenset(map(f2, g2.nodes))
    s1 = frozenset((f1(x), f1(y)) for x, y in g1.s1) | frozenset((f2(x), f2(y)) for x, y in g2.s1)
    s2 = frozenset((f1(x), f1(y)) for x, y in g1.s2) | frozenset((f2(x), f2(y)) for x, y in g2.s2)
    return Graph(nodes, s1, s2)
