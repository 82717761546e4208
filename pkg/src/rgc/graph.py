"""Two-relation rooted graphs: data model, validation, classification, text format.

A graph has nodes, two edge relations ``s1`` and ``s2``, and two reserved
nodes ``root`` and ``null``.  ``null`` carries exactly one self-loop in each
relation; the loops are implicit in the text format and inserted by
:func:`validate`.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

ROOT = "root"
NULL = "null"
RESERVED = (ROOT, NULL)


class GraphError(ValueError):
    """Raised for structurally invalid graphs."""


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


Edge = tuple[str, str]


@dataclass(frozen=True)
class Graph:
    """An immutable graph.  Construct through :func:`validate` unless the
    inputs are already known to satisfy the invariants."""

    nodes: frozenset[str]
    s1: frozenset[Edge]
    s2: frozenset[Edge]

    root = ROOT
    null = NULL

    @property
    def is_empty(self) -> bool:
        return not self.nodes

    def rel(self, i: int) -> frozenset[Edge]:
        if i == 1:
            return self.s1
        if i == 2:
            return self.s2
        raise ValueError(f"relation index must be 1 or 2, got {i!r}")

    def succ(self, i: int, x: str) -> frozenset[str]:
        return self._succ[i - 1].get(x, frozenset())

    def pred(self, i: int, x: str) -> frozenset[str]:
        return self._pred[i - 1].get(x, frozenset())

    @cached_property
    def _succ(self) -> tuple[dict[str, frozenset[str]], dict[str, frozenset[str]]]:
        return _adjacency(self.s1, 0), _adjacency(self.s2, 0)

    @cached_property
    def _pred(self) -> tuple[dict[str, frozenset[str]], dict[str, frozenset[str]]]:
        return _adjacency(self.s1, 1), _adjacency(self.s2, 1)

    @cached_property
    def order(self) -> tuple[str, ...]:
        """Nodes in serialization order (lexicographic)."""
        return tuple(sorted(self.nodes))

    @cached_property
    def index(self) -> dict[str, int]:
        return {x: k for k, x in enumerate(self.order)}

    @cached_property
    def masks(self) -> tuple[list[int], list[int], list[int], list[int]]:
        """Bitmask adjacency over :attr:`order`: ``(succ1, succ2, pred1, pred2)``."""
        idx = self.index
        out = tuple([0] * len(idx) for _ in range(4))
        for r, rel in enumerate((self.s1, self.s2)):
            for x, y in rel:
                out[r][idx[x]] |= 1 << idx[y]
                out[r + 2][idx[y]] |= 1 << idx[x]
        return out

    def reachable(self, start: str = ROOT) -> set[str]:
        if start not in self.nodes:
            return set()
        seen = {start}
        todo = deque([start])
        while todo:
            x = todo.popleft()
            for i in (1, 2):
                for y in self.succ(i, x):
                    if y not in seen:
                        seen.add(y)
                        todo.append(y)
        return seen

    def __str__(self) -> str:
        return serialize(self) if not self.is_empty else "<empty graph>"


def _adjacency(rel: Iterable[Edge], side: int) -> dict[str, frozenset[str]]:
    acc: dict[str, set[str]] = {}
    for e in rel:
        acc.setdefault(e[side], set()).add(e[1 - side])
    return {k: frozenset(v) for k, v in acc.items()}


EMPTY = Graph(frozenset(), frozenset(), frozenset())


def validate(
    nodes: Iterable[str] = (),
    s1: Iterable[Edge] = (),
    s2: Iterable[Edge] = (),
    *,
    root: str = ROOT,
    null: str = NULL,
) -> Graph:
    """Check a candidate structure and return it as a :class:`Graph`.

    ``root`` and ``null`` are added to the node set if missing and renamed
    to the reserved ids when the caller uses different names.  The null
    self-loops are inserted.
    """
    if root == null:
        raise GraphError("root and null must be distinct")
    rename = {root: ROOT, null: NULL}
    node_set = set(nodes) | {root, null}
    if root != ROOT or null != NULL:
        clash = (node_set - {root, null}) & set(RESERVED)
        if clash:
            raise GraphError(f"node id {sorted(clash)[0]!r} is reserved")
    node_set = {rename.get(x, x) for x in node_set}

    rels = []
    for name, rel in (("s1", s1), ("s2", s2)):
        edges = set()
        for x, y in rel:
            x, y = rename.get(x, x), rename.get(y, y)
            for end in (x, y):
                if end not in node_set:
                    raise GraphError(f"{name} edge {x}->{y}: unknown node {end!r}")
            if x == NULL and y != NULL:
                raise GraphError(f"{name} edge {x}->{y}: null may only self-loop")
            edges.add((x, y))
        edges.add((NULL, NULL))
        rels.append(frozenset(edges))
    return Graph(frozenset(node_set), rels[0], rels[1])


def minimal_heap() -> Graph:
    """root with both edges to null."""
    return validate(s1=[(ROOT, NULL)], s2=[(ROOT, NULL)])


# -- classification ---------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    is_heap: bool
    is_tree: bool
    is_list: bool
    is_orable: bool


def in_degree(g: Graph, x: str, *, exclude_null_loops: bool = False) -> int:
    """Number of distinct nodes with an edge (either relation) into ``x``."""
    if x not in g.nodes:
        raise GraphError(f"node {x!r} not in graph")
    sources = g.pred(1, x) | g.pred(2, x)
    if exclude_null_loops and x == NULL:
        sources = sources - {NULL}
    return len(sources)


def is_heap(g: Graph) -> bool:
    if g.is_empty:
        return False
    for x in g.nodes:
        if len(g.succ(1, x)) != 1 or len(g.succ(2, x)) != 1:
            return False
    return g.reachable() | {NULL} == set(g.nodes)


def is_orable(g: Graph) -> bool:
    return not g.is_empty and g.succ(2, ROOT) == {NULL}


def _acyclic_off_null(g: Graph) -> bool:
    # Kahn's algorithm on the non-null subgraph.
    inner = [x for x in g.nodes if x != NULL]
    indeg = {x: 0 for x in inner}
    for x in inner:
        for y in g.succ(1, x) | g.succ(2, x):
            if y != NULL:
                indeg[y] += 1
    todo = [x for x, d in indeg.items() if d == 0]
    removed = 0
    while todo:
        x = todo.pop()
        removed += 1
        for y in g.succ(1, x) | g.succ(2, x):
            if y != NULL:
                indeg[y] -= 1
                if indeg[y] == 0:
                    todo.append(y)
    return removed == len(inner)


def is_tree(g: Graph) -> bool:
    # null is the shared sink: its self-loops and its fan-in are not counted.
    if g.is_empty or g.reachable() | {NULL} != set(g.nodes):
        return False
    if not _acyclic_off_null(g):
        return False
    return all(in_degree(g, x) <= 1 for x in g.nodes if x != NULL)


def is_list(g: Graph) -> bool:
    if not is_tree(g):
        return False
    for x in g.nodes:
        if x == NULL:
            continue
        out = [y for i in (1, 2) for y in g.succ(i, x) if y != NULL]
        if len(out) > 1:
            return False
    return True


def classify(g: Graph) -> Classification:
    return Classification(
        is_heap=is_heap(g),
        is_tree=is_tree(g),
        is_list=is_list(g),
        is_orable=is_orable(g),
    )


# -- text format ------------------------------------------------------------


_COMMENT = re.compile(r"(^|\s)#.*$")


def _check_id(tok: str, line: int) -> str:
    if not tok or any(c.isspace() for c in tok) or tok.startswith("#"):
        raise ParseError(f"bad node id {tok!r}", line)
    return tok


def parse(text: str) -> Graph:
    """Parse the line format (``node <id>``, ``s1 <from> <to>``, ``s2 ...``).

    Node declarations are optional; once a file declares any node, every
    non-reserved id used in an edge must be declared.
    """
    declared: list[str] = []
    seen: set[str] = set()
    edges: list[tuple[int, str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _COMMENT.sub("", raw).strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        if kw == "node":
            if len(parts) != 2:
                raise ParseError("expected 'node <id>'", lineno)
            x = _check_id(parts[1], lineno)
            if x in RESERVED:
                raise ParseError(f"{x!r} is implicit and cannot be declared", lineno)
            if x in seen:
                raise ParseError(f"duplicate node declaration {x!r}", lineno)
            seen.add(x)
            declared.append(x)
        elif kw in ("s1", "s2"):
            if len(parts) != 3:
                raise ParseError(f"expected '{kw} <from> <to>'", lineno)
            x, y = (_check_id(t, lineno) for t in parts[1:])
            edges.append((int(kw[1]), x, y, lineno))
        else:
            raise ParseError(f"unknown keyword {kw!r}", lineno)

    strict = bool(declared)
    nodes = set(declared) | set(RESERVED)
    rels: tuple[list[Edge], list[Edge]] = ([], [])
    for i, x, y, lineno in edges:
        for end in (x, y):
            if end not in nodes:
                if strict:
                    raise ParseError(f"unknown node {end!r} in edge", lineno)
                nodes.add(end)
        if x == NULL and y != NULL:
            raise ParseError("null may only self-loop", lineno)
        rels[i - 1].append((x, y))
    return validate(nodes, rels[0], rels[1])


def serialize(g: Graph) -> str:
    """Canonical text: sorted node declarations, then s1, then s2 edges.
    The null self-loops are never written."""
    if g.is_empty:
        raise GraphError("the empty graph has no text form")
    lines = [f"node {x}" for x in sorted(g.nodes - set(RESERVED))]
    for i in (1, 2):
        lines.extend(
            f"s{i} {x} {y}" for x, y in sorted(g.rel(i)) if (x, y) != (NULL, NULL)
        )
    return "\n".join(lines) + "\n"


def load(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def relabel(g: Graph, mapping: dict[str, str]) -> Graph:
    """Rename nodes; ids missing from ``mapping`` are kept."""
    f = lambda x: mapping.get(x, x)  # noqa: E731
    return Graph(
        frozenset(map(f, g.nodes)),
        frozenset((f(x), f(y)) for x, y in g.s1),
        frozenset((f(x), f(y)) for x, y in g.s2),
    )
