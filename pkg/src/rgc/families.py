"""Graph families (grids, lists, corresponder graphs) and bounded heap enumeration.

Heaps are enumerated one per isomorphism class.  A heap is a deterministic
structure in which every non-null node is reachable from root, so numbering
nodes in order of discovery by a breadth-first walk from root (s1 before s2)
is a canonical labeling.  The generator builds heaps directly in that
numbering, which yields each class exactly once without any comparison
between candidates.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graph import NULL, ROOT, Graph, GraphError, validate

# -- corresponder graphs ----------------------------------------------------


@dataclass(frozen=True)
class CorresponderParams:
    n: int
    k: int
    u: tuple[int, ...]  # u_1 .. u_{k-1}; u_0 = 0 is implicit
    l: tuple[int, ...]  # l_1 .. l_{k-1}; l_0 = 0 is implicit

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(self.u))
        object.__setattr__(self, "l", tuple(self.l))
        if self.n < 2 or self.k < 2:
            raise GraphError(f"need n >= 2 and k >= 2, got n={self.n}, k={self.k}")
        for name, seq in (("u", self.u), ("l", self.l)):
            if len(seq) != self.k - 1:
                raise GraphError(f"{name} must have k-1 = {self.k - 1} entries, got {len(seq)}")
            full = (0,) + seq
            if any(a >= b for a, b in zip(full, full[1:])) or (seq and seq[-1] >= self.n):
                raise GraphError(f"{name} must satisfy 0 < {name}_1 < ... < {name}_(k-1) < n")

    @property
    def u_all(self) -> tuple[int, ...]:
        return (0,) + self.u

    @property
    def l_all(self) -> tuple[int, ...]:
        return (0,) + self.l

    def __str__(self) -> str:
        return f"CG({', '.join(map(str, (self.n, self.k, *self.u, *self.l)))})"


def gen_cg(p: CorresponderParams) -> Graph:
    n, k = p.n, p.k
    C = [f"C{i}" for i in range(2 * k)]
    U = [f"U{i}" for i in range(2 * n)]
    L = [f"L{i}" for i in range(2 * n)]
    s1 = [(ROOT, C[0])]
    for spine in (C, U, L):
        s1 += list(zip(spine, spine[1:])) + [(spine[-1], NULL)]
    s2 = [(ROOT, NULL)]
    s2 += [(C[2 * i], U[2 * ui]) for i, ui in enumerate(p.u_all)]
    s2 += [(C[2 * i + 1], L[2 * li + 1]) for i, li in enumerate(p.l_all)]
    s2 += [(U[2 * i], L[2 * i]) for i in range(n)]
    s2 += [(L[2 * i + 1], U[2 * i + 1]) for i in range(n)]
    ls, us = set(p.l_all), set(p.u_all)
    s2 += [(U[2 * i + 1], ROOT if i in ls else NULL) for i in range(n)]
    s2 += [(L[2 * i], ROOT if i in us else NULL) for i in range(n)]
    return validate(C + U + L, s1, s2)


def iter_cg_params(n_max: int, k_max: int, n_min: int = 2) -> Iterator[CorresponderParams]:
    """Ascending n, then k, then lexicographic (u, l)."""
    for n in range(max(2, n_min), n_max + 1):
        for k in range(2, min(k_max, n) + 1):
            cuts = list(itertools.combinations(range(1, n), k - 1))
            for u in cuts:
                for l in cuts:
                    yield CorresponderParams(n, k, u, l)


# -- grids and lists --------------------------------------------------------


def grid_id(i: int, j: int) -> str:
    return ROOT if (i, j) == (1, 1) else f"g{i}_{j}"


def gen_grid(m: int, n: int) -> Graph:
    """m rows, n columns; s1 steps right, s2 steps down; the cell (1,1) is root."""
    if m < 1 or n < 1:
        raise GraphError("grid dimensions must be positive")
    cells = [grid_id(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    s1 = [
        (grid_id(i, j), grid_id(i, j + 1) if j < n else NULL)
        for i in range(1, m + 1)
        for j in range(1, n + 1)
    ]
    s2 = [
        (grid_id(i, j), grid_id(i + 1, j) if i < m else NULL)
        for i in range(1, m + 1)
        for j in range(1, n + 1)
    ]
    return validate(cells, s1, s2)


def gen_list(w: str) -> Graph:
    """Chain from root spelling ``w``; every other edge goes to null."""
    if any(c not in "12" for c in w):
        raise GraphError(f"list word must be over {{1,2}}, got {w!r}")
    if not w:
        return validate(s1=[(ROOT, NULL)], s2=[(ROOT, NULL)])
    chain = [ROOT] + [f"l{i}" for i in range(1, len(w))] + [NULL]
    rels: dict[str, list] = {"1": [], "2": []}
    for x, nxt, letter in zip(chain, chain[1:], w):
        other = "2" if letter == "1" else "1"
        rels[letter].append((x, nxt))
        rels[other].append((x, NULL))
    return validate(chain, rels["1"], rels["2"])


# -- heap enumeration -------------------------------------------------------


@dataclass(frozen=True)
class HeapEnumConfig:
    max_nodes: int  # non-special nodes
    dedupe: bool = True

    def __post_init__(self):
        if self.max_nodes < 0:
            raise ValueError("max_nodes must be non-negative")


def heap_node(k: int) -> str:
    return f"v{k}"


def _build(succ1: Sequence[int], succ2: Sequence[int], names: Sequence[str]) -> Graph:
    return Graph(
        frozenset(names),
        frozenset((names[x], names[y]) for x, y in enumerate(succ1)),
        frozenset((names[x], names[y]) for x, y in enumerate(succ2)),
    )


def _names(n: int) -> list[str]:
    # index 0 is root, 1 is null, 2.. are v1, v2, ...
    return [ROOT, NULL] + [heap_node(k) for k in range(1, n + 1)]


class _Target:
    """Bitmask view of a constraint graph for incremental colouring checks."""

    def __init__(self, g: Graph):
        idx = g.index
        succ1, succ2, _, _ = g.masks
        self.succ = (succ1, succ2)
        self.root = idx[ROOT]
        self.null = idx[NULL]
        self.plain = ((1 << len(idx)) - 1) & ~(1 << self.root) & ~(1 << self.null)


def _bits(m: int) -> Iterator[int]:
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def heap_search(
    max_nodes: int,
    require: Iterable[Graph] = (),
    forbid: Iterable[Graph] = (),
    *,
    min_nodes: int = 0,
) -> Iterator[Graph]:
    """Canonical heaps with ``min_nodes..max_nodes`` non-special nodes, by size,
    that map homomorphically to every graph in ``require`` and to none in
    ``forbid``.

    Every partial heap carries the set of partial colourings into each
    target consistent with the edges placed so far.  A branch whose set for
    some required target is empty is cut; since edges are only ever added,
    no completion of it could be a model.  At a leaf the sets are exactly the
    homomorphisms.  Output order equals :func:`enumerate_heaps` filtered.
    """
    req = [_Target(g) for g in require]
    forb = [_Target(g) for g in forbid]
    targets = req + forb
    nreq = len(req)
    for n in range(min_nodes, max_nodes + 1):
        yield from _search_exact(n, targets, nreq)


def _search_exact(n: int, targets: list[_Target], nreq: int) -> Iterator[Graph]:
    size = n + 2
    names = _names(n)
    succ = ([-1] * size, [-1] * size)
    succ[0][1] = succ[1][1] = 1
    queue = [0] + list(range(2, size))  # processing order; null has fixed edges
    init = [[(t.root, t.null)] for t in targets]

    def rec(qpos: int, rel: int, found: int, cols: list[list[tuple[int, ...]]]):
        # `found` counts discovered non-special nodes: indices 2 .. found+1.
        if qpos > found:  # every discovered node has both edges
            if found == n:
                if all(cols[j] for j in range(nreq)) and not any(cols[j] for j in range(nreq, len(targets))):
                    yield _build(succ[0], succ[1], names)
            return
        x = queue[qpos]
        nq, nrel = (qpos, 1) if rel == 0 else (qpos + 1, 0)
        choices = [1, 0] + list(range(2, found + 2))
        if found < n:
            choices.append(found + 2)
        for y in choices:
            fresh = y == found + 2
            new_cols = []
            dead = False
            for j, t in enumerate(targets):
                table = t.succ[rel]
                if fresh:
                    nxt = [c + (v,) for c in cols[j] for v in _bits(table[c[x]] & t.plain)]
                else:
                    nxt = [c for c in cols[j] if (table[c[x]] >> c[y]) & 1]
                if not nxt and j < nreq:
                    dead = True
                    break
                new_cols.append(nxt)
            if dead:
                continue
            succ[rel][x] = y
            yield from rec(nq, nrel, found + 1 if fresh else found, new_cols)
        succ[rel][x] = -1

    yield from rec(0, 0, 0, init)


def enumerate_heaps(cfg: HeapEnumConfig) -> Iterator[Graph]:
    """All heaps with at most ``cfg.max_nodes`` non-special nodes.

    With ``dedupe`` one heap per isomorphism class is produced (canonical
    breadth-first numbering); without it every labelled heap over the node
    names ``v1..vn`` is produced, for each size n.
    """
    if cfg.dedupe:
        yield from heap_search(cfg.max_nodes)
        return
    for n in range(cfg.max_nodes + 1):
        names = _names(n)
        size = n + 2
        movable = [0] + list(range(2, size))
        for picks in itertools.product(range(size), repeat=2 * len(movable)):
            succ1 = [1] * size
            succ2 = [1] * size
            for k, x in enumerate(movable):
                succ1[x] = picks[2 * k]
                succ2[x] = picks[2 * k + 1]
            if _all_reachable(succ1, succ2):
                yield _build(succ1, succ2, names)


def _all_reachable(succ1, succ2) -> bool:
    seen = {0, 1}
    todo = [0]
    while todo:
        x = todo.pop()
        for y in (succ1[x], succ2[x]):
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return len(seen) == len(succ1)


def canonical_form(h: Graph) -> Graph:
    """Relabel a heap by breadth-first discovery order from root."""
    names = {ROOT: ROOT, NULL: NULL}
    order = [ROOT]
    for x in order:
        for i in (1, 2):
            (y,) = h.succ(i, x)
            if y not in names:
                names[y] = heap_node(len(names) - 1)
                order.append(y)
    if set(names) != set(h.nodes):
        raise GraphError("canonical_form expects a heap")
    return Graph(
        frozenset(names.values()),
        frozenset((names[x], names[y]) for x, y in h.s1),
        frozenset((names[x], names[y]) for x, y in h.s2),
    )


# -- random instances (test and experiment support) --------------------------


def random_graph(rng: random.Random, n: int, density: float = 0.35) -> Graph:
    """Each possible non-null edge is present independently."""
    names = [heap_node(k) for k in range(1, n + 1)]
    every = [ROOT, NULL] + names
    rels = []
    for _ in (1, 2):
        rels.append([(x, y) for x in [ROOT] + names for y in every if rng.random() < density])
    return validate(names, rels[0], rels[1])


def random_heap(rng: random.Random, n: int) -> Graph:
    """Random successor functions on ``n`` non-special nodes; nodes left
    unreachable are dropped, so the result may be smaller."""
    size = n + 2
    succ1 = [1] * size
    succ2 = [1] * size
    for x in [0] + list(range(2, size)):
        succ1[x] = rng.randrange(size)
        succ2[x] = rng.randrange(size)
    seen = {0, 1}
    todo = [0]
    while todo:
        x = todo.pop()
        for y in (succ1[x], succ2[x]):
            if y not in seen:
                seen.add(y)
                todo.append(y)
    names = _names(n)
    keep = sorted(seen)
    return Graph(
        frozenset(names[x] for x in keep),
        frozenset((names[x], names[succ1[x]]) for x in keep),
        frozenset((names[x], names[succ2[x]]) for x in keep),
    )


def random_orable(
    rng: random.Random, n: int, density: float = 0.35, *, root_entry: bool = True
) -> Graph:
    """Random orable graph; ``root_entry=False`` also drops every edge into
    root (the shape the invariant gadget accepts)."""
    g = random_graph(rng, n, density)
    s1 = {e for e in g.s1 if root_entry or e[1] != ROOT}
    s2 = {e for e in g.s2 if e[0] != ROOT and (root_entry or e[1] != ROOT)} | {(ROOT, NULL)}
    return Graph(g.nodes, frozenset(s1), frozenset(s2))
