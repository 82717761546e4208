"""Brute-force reference implementations used only by the tests.

Nothing here calls the search code it is meant to check.
"""
from __future__ import annotations

import itertools
import random

from rgc.graph import NULL, ROOT, Graph, validate

# Two-node graphs from the non-orable disjunction example.
G1_EX = validate(s1=[(ROOT, NULL)], s2=[(ROOT, ROOT)])
G2_EX = validate(s1=[(ROOT, ROOT)], s2=[(ROOT, NULL)])
G3_EX = validate(s1=[(ROOT, NULL)], s2=[(ROOT, NULL)])


def _respects(g: Graph, t: Graph, h: dict[str, str]) -> bool:
    return all((h[x], h[y]) in t.s1 for x, y in g.s1) and all(
        (h[x], h[y]) in t.s2 for x, y in g.s2
    )


def brute_homs(g: Graph, t: Graph) -> list[dict[str, str]]:
    """All homomorphisms, by trying every map of the non-special nodes."""
    if g.is_empty or t.is_empty:
        return []
    src = sorted(g.nodes - {ROOT, NULL})
    tgt = sorted(t.nodes - {ROOT, NULL})
    out = []
    for img in itertools.product(tgt, repeat=len(src)):
        h = dict(zip(src, img))
        h[ROOT], h[NULL] = ROOT, NULL
        if _respects(g, t, h):
            out.append(h)
    return out


def brute_has_hom(g: Graph, t: Graph) -> bool:
    return bool(brute_homs(g, t))


def labelled_heaps(n: int) -> list[Graph]:
    """Every heap on non-special nodes ``v1..vn`` (exactly n of them)."""
    names = [ROOT, NULL] + [f"v{k}" for k in range(1, n + 1)]
    movable = [ROOT] + names[2:]
    out = []
    for picks in itertools.product(names, repeat=2 * len(movable)):
        s1 = [(x, picks[2 * k]) for k, x in enumerate(movable)]
        s2 = [(x, picks[2 * k + 1]) for k, x in enumerate(movable)]
        g = validate(names, s1, s2)
        if g.reachable() | {NULL} == set(g.nodes):
            out.append(g)
    return out


def all_graphs(n: int, *, limit: int | None = None, rng: random.Random | None = None):
    """Every graph on exactly n non-special nodes, or a sample of ``limit``
    of them when the full set is larger."""
    inner = [f"v{k}" for k in range(1, n + 1)]
    nodes = [ROOT, NULL] + inner
    sources = [ROOT] + inner
    slots = [(i, x, y) for i in (1, 2) for x in sources for y in nodes]
    total = 2 ** len(slots)

    def build(mask: int) -> Graph:
        s = ([], [])
        for b, (i, x, y) in enumerate(slots):
            if mask >> b & 1:
                s[i - 1].append((x, y))
        return validate(nodes, s[0], s[1])

    if limit is None or total <= limit:
        return [build(m) for m in range(total)]
    rng = rng or random.Random(0)
    return [build(m) for m in rng.sample(range(total), limit)]


def tiling_ok(m: int, n: int, t: Graph, colour: dict[tuple[int, int], str]) -> bool:
    """Domino check for an m x n grid coloured by target nodes: horizontal
    neighbours must be an s1 pair, vertical ones an s2 pair, and the border
    must step to null."""
    if colour[(1, 1)] != ROOT or any(
        c in (ROOT, NULL) for p, c in colour.items() if p != (1, 1)
    ):
        return False
    for (i, j), c in colour.items():
        right = colour.get((i, j + 1), NULL)
        down = colour.get((i + 1, j), NULL)
        if (c, right) not in t.s1 or (c, down) not in t.s2:
            return False
    return True


def brute_tiling(m: int, n: int, t: Graph) -> bool:
    cells = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1) if (i, j) != (1, 1)]
    palette = sorted(t.nodes - {ROOT, NULL})
    for img in itertools.product(palette, repeat=len(cells)):
        colour = dict(zip(cells, img))
        colour[(1, 1)] = ROOT
        if tiling_ok(m, n, t, colour):
            return True
    return False


def brute_pcp(pairs, max_len: int):
    """Shortest, then lexicographically least, solution by plain product
    enumeration (no pruning)."""
    for k in range(1, max_len + 1):
        for seq in itertools.product(range(len(pairs)), repeat=k):
            if "".join(pairs[t][0] for t in seq) == "".join(pairs[t][1] for t in seq):
                return list(seq)
    return None
