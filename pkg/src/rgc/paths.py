"""Paths, slices and regular expressions over the edge-label alphabet {1, 2}.

A graph read as an automaton (states = nodes, initial = root, accepting =
null, letter i follows s_i) accepts exactly the words of its slices.
Whether some slice spells a word of a regular expression is reachability in
the product of that automaton with a Thompson NFA for the expression.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from .graph import NULL, ROOT, Graph

ALPHABET = ("1", "2")


class PathError(ValueError):
    pass


class RegexError(ValueError):
    pass


@dataclass(frozen=True)
class Path:
    nodes: tuple[str, ...]
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.nodes:
            raise PathError("a path has at least one node")
        if len(self.labels) != len(self.nodes) - 1:
            raise PathError("need exactly one label between consecutive nodes")
        if any(l not in (1, 2) for l in self.labels):
            raise PathError("labels must be 1 or 2")

    @classmethod
    def of(cls, *items) -> "Path":
        """``Path.of("root", 1, "a", 2, "null")``."""
        return cls(tuple(items[0::2]), tuple(items[1::2]))

    def __str__(self) -> str:
        out = [self.nodes[0]]
        for l, x in zip(self.labels, self.nodes[1:]):
            out += [str(l), x]
        return ",".join(out)


def is_path(g: Graph, p: Path) -> bool:
    if any(x not in g.nodes for x in p.nodes):
        return False
    return all(
        (x, y) in g.rel(l) for x, l, y in zip(p.nodes, p.labels, p.nodes[1:])
    )


def word(p: Path) -> str:
    return "".join(map(str, p.labels))


def is_slice(g: Graph, p: Path) -> bool:
    if not is_path(g, p):
        raise PathError(f"not a path in the graph: {p}")
    return p.nodes[0] == ROOT and p.nodes[-1] == NULL


def map_path(h: Mapping[str, str], p: Path) -> Path:
    return Path(tuple(h[x] for x in p.nodes), p.labels)


# -- regular expressions ----------------------------------------------------


@dataclass(frozen=True)
class Empty:
    def __str__(self):
        return "∅"


@dataclass(frozen=True)
class Eps:
    def __str__(self):
        return "ε"


@dataclass(frozen=True)
class Lit:
    ch: str

    def __str__(self):
        return self.ch


@dataclass(frozen=True)
class Cat:
    left: "Regex"
    right: "Regex"

    def __str__(self):
        return f"{_wrap(self.left, Alt)}{_wrap(self.right, Alt)}"


@dataclass(frozen=True)
class Alt:
    left: "Regex"
    right: "Regex"

    def __str__(self):
        return f"{self.left}|{self.right}"


@dataclass(frozen=True)
class Star:
    inner: "Regex"

    def __str__(self):
        return f"{_wrap(self.inner, (Alt, Cat))}*"


Regex = Union[Empty, Eps, Lit, Cat, Alt, Star]


def _wrap(r: Regex, kinds) -> str:
    return f"({r})" if isinstance(r, kinds) else str(r)


def parse_regex(text: str) -> Regex:
    """Grammar: alt := cat ('|' cat)*; cat := star*; star := atom '*'*;
    atom := '1' | '2' | 'ε' | '∅' | '(' alt ')'.  Concatenation is
    juxtaposition or '·' / '.'; whitespace is ignored."""
    toks = [c for c in text if not c.isspace() and c not in "·."]
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def alt() -> Regex:
        nonlocal pos
        r = cat()
        while peek() == "|":
            pos += 1
            r = Alt(r, cat())
        return r

    def cat() -> Regex:
        parts = []
        while peek() is not None and peek() not in "|)":
            parts.append(star())
        if not parts:
            return Eps()
        r = parts[0]
        for q in parts[1:]:
            r = Cat(r, q)
        return r

    def star() -> Regex:
        nonlocal pos
        r = atom()
        while peek() == "*":
            pos += 1
            r = Star(r)
        return r

    def atom() -> Regex:
        nonlocal pos
        c = peek()
        pos += 1
        if c in ALPHABET:
            return Lit(c)
        if c in ("ε", "e"):
            return Eps()
        if c == "∅":
            return Empty()
        if c == "(":
            r = alt()
            if peek() != ")":
                raise RegexError(f"unbalanced parenthesis in {text!r}")
            pos += 1
            return r
        raise RegexError(f"unexpected {c!r} in {text!r}")

    r = alt()
    if pos != len(toks):
        raise RegexError(f"unexpected {toks[pos]!r} in {text!r}")
    return r


@dataclass
class Nfa:
    """Thompson NFA; ``moves[q]`` lists ``(label, q')`` with label None for ε."""

    start: int
    accept: int
    moves: list[list[tuple[str | None, int]]]

    def closure(self, states) -> set[int]:
        seen = set(states)
        todo = list(states)
        while todo:
            q = todo.pop()
            for a, r in self.moves[q]:
                if a is None and r not in seen:
                    seen.add(r)
                    todo.append(r)
        return seen

    def accepts(self, w: str) -> bool:
        cur = self.closure([self.start])
        for ch in w:
            cur = self.closure({r for q in cur for a, r in self.moves[q] if a == ch})
        return self.accept in cur


def thompson(r: Regex) -> Nfa:
    moves: list[list[tuple[str | None, int]]] = []

    def new() -> int:
        moves.append([])
        return len(moves) - 1

    def build(r: Regex) -> tuple[int, int]:
        s, f = new(), new()
        if isinstance(r, Eps):
            moves[s].append((None, f))
        elif isinstance(r, Lit):
            moves[s].append((r.ch, f))
        elif isinstance(r, Cat):
            a = build(r.left)
            b = build(r.right)
            moves[s].append((None, a[0]))
            moves[a[1]].append((None, b[0]))
            moves[b[1]].append((None, f))
        elif isinstance(r, Alt):
            for part in (r.left, r.right):
                a = build(part)
                moves[s].append((None, a[0]))
                moves[a[1]].append((None, f))
        elif isinstance(r, Star):
            a = build(r.inner)
            moves[s] += [(None, a[0]), (None, f)]
            moves[a[1]] += [(None, a[0]), (None, f)]
        elif not isinstance(r, Empty):
            raise TypeError(f"not a regex node: {r!r}")
        return s, f

    s, f = build(r)
    return Nfa(s, f, moves)


def as_regex(e: Regex | str) -> Regex:
    return parse_regex(e) if isinstance(e, str) else e


@dataclass(frozen=True)
class SliceNfa:
    """The graph itself as an automaton over {1, 2}."""

    graph: Graph

    def accepts(self, w: str) -> bool:
        cur = {ROOT} & self.graph.nodes
        for ch in w:
            cur = {y for x in cur for y in self.graph.succ(int(ch), x)}
        return NULL in cur


def find_slice_matching(g: Graph, e: Regex | str) -> Path | None:
    """Some slice of ``g`` whose word is in L(e), or None.  The witness is a
    shortest one in the product automaton."""
    if g.is_empty:
        return None
    nfa = thompson(as_regex(e))
    starts = [(ROOT, q) for q in sorted(nfa.closure([nfa.start]))]
    parent: dict[tuple[str, int], tuple[tuple[str, int], int | None] | None] = {
        s: None for s in starts
    }
    todo = deque(starts)
    while todo:
        state = todo.popleft()
        x, q = state
        if x == NULL and q == nfa.accept:
            return _rebuild(parent, state)
        for a, r in nfa.moves[q]:
            if a is None:
                nxt = [((x, r), None)]
            else:
                nxt = [((y, r), int(a)) for y in sorted(g.succ(int(a), x))]
            for s2, label in nxt:
                if s2 not in parent:
                    parent[s2] = (state, label)
                    todo.append(s2)
    return None


def _rebuild(parent, state) -> Path:
    nodes, labels = [state[0]], []
    while parent[state] is not None:
        prev, label = parent[state]
        if label is not None:
            nodes.append(prev[0])
            labels.append(label)
        state = prev
    return Path(tuple(reversed(nodes)), tuple(reversed(labels)))


def has_slice_matching(g: Graph, e: Regex | str) -> bool:
    return find_slice_matching(g, e) is not None


def iter_slices(g: Graph, max_len: int) -> Iterator[Path]:
    """All slices with at most ``max_len`` edges (depth-first)."""

    def rec(nodes, labels):
        if nodes[-1] == NULL:
            yield Path(tuple(nodes), tuple(labels))
        if len(labels) == max_len:
            return
        for i in (1, 2):
            for y in sorted(g.succ(i, nodes[-1])):
                yield from rec(nodes + [y], labels + [i])

    if ROOT in g.nodes:
        yield from rec([ROOT], [])
