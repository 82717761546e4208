"""Existential monadic second-order encodings of graph constraints.

:func:`emit_formula` turns a target graph into the partition normal form
(one colour per target node, colour 0 for null and 1 for root) and
:func:`eval_formula` decides it on a small graph by trying every colouring.
The evaluator never consults the homomorphism engine, which makes it a
second opinion on :func:`rgc.hom.find_hom`.

The relaxed form (a propositional body over ``Xj(x)``, ``Xj(y)`` and
``si(x,y)`` under ``FORALL x. FORALL y.``) is emitted and parsed but never
evaluated.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Union

from .graph import NULL, ROOT, Graph

ENV_MAX_EVAL = "RGC_MAX_EVAL_NODES"
DEFAULT_MAX_EVAL = 6


class EmsolError(ValueError):
    pass


class EvalLimitError(EmsolError):
    """The graph is too large for exhaustive colouring."""


def max_eval_nodes() -> int:
    raw = os.environ.get(ENV_MAX_EVAL, "")
    if not raw:
        return DEFAULT_MAX_EVAL
    try:
        val = int(raw)
    except ValueError:
        raise EmsolError(f"{ENV_MAX_EVAL} must be an integer, got {raw!r}") from None
    if val < 0:
        raise EmsolError(f"{ENV_MAX_EVAL} must be non-negative")
    return val


# -- partition normal form --------------------------------------------------


@dataclass(frozen=True)
class EmsolFormula:
    """``allowed[j][i-1]`` is the set of colours an ``s_i``-successor of a
    node coloured j may take.  ``names[j]`` is the target node behind colour j
    (informational; evaluation does not use it)."""

    k: int
    allowed: tuple[tuple[frozenset[int], frozenset[int]], ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.k == 1 or self.k < 0:
            raise EmsolError("colour count must be 0 or at least 2")
        if len(self.allowed) != self.k:
            raise EmsolError(f"expected {self.k} clause pairs, got {len(self.allowed)}")
        for row in self.allowed:
            for s in row:
                if any(not 0 <= c < self.k for c in s):
                    raise EmsolError("clause mentions an undeclared colour")
        if self.names and len(self.names) != self.k:
            raise EmsolError("one name per colour")

    def successors(self, j: int, i: int) -> frozenset[int]:
        return self.allowed[j][i - 1]


def colour_order(target: Graph) -> tuple[str, ...]:
    if target.is_empty:
        return ()
    return (NULL, ROOT) + tuple(sorted(target.nodes - {NULL, ROOT}))


def emit_formula(target: Graph) -> EmsolFormula:
    names = colour_order(target)
    col = {x: j for j, x in enumerate(names)}
    allowed = tuple(
        tuple(frozenset(col[y] for y in target.succ(i, x)) for i in (1, 2))
        for x in names
    )
    return EmsolFormula(len(names), allowed, names)


def _xs(cols) -> str:
    return ", ".join(f"X{c}" for c in cols)


def render(f: EmsolFormula) -> str:
    if f.k == 0:
        return "FALSE\n"
    lines = [
        f"EXISTS {_xs(range(f.k))}.",
        f"  partit({_xs(range(f.k))}) AND singl(X0, null) AND singl(X1, root) AND",
        "  FORALL x. " + " AND ".join(f"(X{j}(x) => P{j}(x))" for j in range(f.k)),
        "WHERE",
    ]
    for j in range(f.k):
        lines.append(f"  P{j}(x) = P{j}_1(x) AND P{j}_2(x)")
        for i in (1, 2):
            cols = sorted(f.successors(j, i))
            rhs = " OR ".join(f"X{c}(y)" for c in cols) if cols else "FALSE"
            lines.append(f"  P{j}_{i}(x) = FORALL y. s{i}(x,y) => ({rhs})")
    if f.names:
        lines.append("COLOURS")
        lines += [f"  X{j} = {x}" for j, x in enumerate(f.names)]
    return "\n".join(lines) + "\n"


_HEAD = re.compile(r"EXISTS\s+(X\d+(?:\s*,\s*X\d+)*)\s*\.$")
_CLAUSE = re.compile(r"P(\d+)_([12])\(x\)\s*=\s*FORALL y\.\s*s([12])\(x,y\)\s*=>\s*\((.*)\)$")
_COLOUR = re.compile(r"X(\d+)\s*=\s*(\S+)$")


def parse_formula(text: str) -> EmsolFormula:
    """Read back the output of :func:`render`.  Only the header and the
    ``Pj_i`` clause lines carry information; the fixed preamble lines are
    checked for presence."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if lines == ["FALSE"]:
        return EmsolFormula(0, ())
    if not lines:
        raise EmsolError("empty formula text")
    m = _HEAD.match(lines[0])
    if not m:
        raise EmsolError("first line must be 'EXISTS X0, ..., Xk-1.'")
    cols = [int(t.strip()[1:]) for t in m.group(1).split(",")]
    k = len(cols)
    if cols != list(range(k)):
        raise EmsolError("colour variables must be X0..Xk-1 in order")
    if not any(ln.startswith("partit(") for ln in lines):
        raise EmsolError("missing partit constraint")
    clauses: dict[tuple[int, int], frozenset[int]] = {}
    names: dict[int, str] = {}
    section = "head"
    for ln in lines[1:]:
        if ln in ("WHERE", "COLOURS"):
            section = ln
            continue
        if section == "WHERE" and ln.startswith("P") and "_" in ln.split("(")[0]:
            cm = _CLAUSE.match(ln)
            if not cm or cm.group(2) != cm.group(3):
                raise EmsolError(f"malformed clause: {ln!r}")
            j, i = int(cm.group(1)), int(cm.group(2))
            body = cm.group(4).strip()
            if body == "FALSE":
                targets = frozenset()
            else:
                toks = [t.strip() for t in body.split(" OR ")]
                if not all(re.fullmatch(r"X\d+\(y\)", t) for t in toks):
                    raise EmsolError(f"malformed clause body: {body!r}")
                targets = frozenset(int(t[1:-3]) for t in toks)
            if (j, i) in clauses:
                raise EmsolError(f"clause P{j}_{i} defined twice")
            clauses[(j, i)] = targets
        elif section == "COLOURS":
            cm = _COLOUR.match(ln)
            if not cm:
                raise EmsolError(f"malformed colour line: {ln!r}")
            names[int(cm.group(1))] = cm.group(2)
    missing = [(j, i) for j in range(k) for i in (1, 2) if (j, i) not in clauses]
    if missing:
        j, i = missing[0]
        raise EmsolError(f"clause P{j}_{i} missing")
    allowed = tuple((clauses[(j, 1)], clauses[(j, 2)]) for j in range(k))
    name_tuple = tuple(names[j] for j in range(k)) if len(names) == k else ()
    return EmsolFormula(k, allowed, name_tuple)


def iter_models(g: Graph, f: EmsolFormula, *, cap: int | None = None) -> Iterator[dict[str, int]]:
    """Every colouring of ``g`` satisfying ``f``.  Raises
    :class:`EvalLimitError` when ``g`` has more than ``cap`` non-special
    nodes (default from the environment)."""
    cap = max_eval_nodes() if cap is None else cap
    inner = sorted(g.nodes - {NULL, ROOT})
    if len(inner) > cap:
        raise EvalLimitError(
            f"{len(inner)} non-special nodes exceed the evaluation cap of {cap}"
        )
    if g.is_empty or f.k == 0:
        return
    edges = [(i, x, y) for i in (1, 2) for x, y in sorted(g.rel(i))]
    # singl pins null and root; partit makes the rest a function into the
    # remaining colours.
    for combo in product(range(2, f.k), repeat=len(inner)):
        col = dict(zip(inner, combo))
        col[NULL], col[ROOT] = 0, 1
        if all(col[y] in f.allowed[col[x]][i - 1] for i, x, y in edges):
            yield col


def eval_formula(g: Graph, f: EmsolFormula, *, cap: int | None = None) -> bool:
    return next(iter_models(g, f, cap=cap), None) is not None


# -- relaxed form -------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Member:
    colour: int
    var: str  # "x" or "y"


@dataclass(frozen=True)
class Edge:
    rel: int


@dataclass(frozen=True)
class Not:
    arg: "Prop"


@dataclass(frozen=True)
class And:
    args: tuple["Prop", ...]


@dataclass(frozen=True)
class Or:
    args: tuple["Prop", ...]


@dataclass(frozen=True)
class Implies:
    lhs: "Prop"
    rhs: "Prop"


Prop = Union[Const, Member, Edge, Not, And, Or, Implies]


def X(j: int, var: str = "x") -> Member:
    return Member(j, var)


def S(i: int) -> Edge:
    return Edge(i)


def _atoms(p: Prop, positive: bool = True) -> Iterator[tuple[Prop, bool]]:
    if isinstance(p, (Const, Member, Edge)):
        yield p, positive
    elif isinstance(p, Not):
        yield from _atoms(p.arg, not positive)
    elif isinstance(p, (And, Or)):
        for a in p.args:
            yield from _atoms(a, positive)
    elif isinstance(p, Implies):
        yield from _atoms(p.lhs, not positive)
        yield from _atoms(p.rhs, positive)
    else:
        raise EmsolError(f"not a proposition: {p!r}")


@dataclass(frozen=True)
class FlexibleFormula:
    """``EXISTS X0..Xk-1. singl(X0,null) AND singl(X1,root) AND
    FORALL x. FORALL y. c_1 AND ... AND c_n``.

    Each conjunct may mention at most one of ``s1(x,y)``, ``s2(x,y)``, and
    only under an odd number of negations.
    """

    k: int
    clauses: tuple[Prop, ...] = ()

    def __post_init__(self):
        if self.k < 2:
            raise EmsolError("need at least the colours X0 and X1")
        flat: list[Prop] = []
        for c in self.clauses:
            flat.extend(c.args if isinstance(c, And) else (c,))
        object.__setattr__(self, "clauses", tuple(flat))
        for c in self.clauses:
            rels = set()
            for a, pos in _atoms(c):
                if isinstance(a, Member):
                    if not 0 <= a.colour < self.k:
                        raise EmsolError(f"X{a.colour} is not declared (k = {self.k})")
                    if a.var not in ("x", "y"):
                        raise EmsolError(f"unknown variable {a.var!r}")
                elif isinstance(a, Edge):
                    if a.rel not in (1, 2):
                        raise EmsolError(f"unknown relation s{a.rel}")
                    if pos:
                        raise EmsolError(f"s{a.rel}(x,y) occurs positively in {render_prop(c)}")
                    rels.add(a.rel)
            if len(rels) > 1:
                raise EmsolError(f"clause mixes s1 and s2: {render_prop(c)}")

    def _part(self, i: int) -> tuple[Prop, ...]:
        def rel_of(c):
            return {a.rel for a, _ in _atoms(c) if isinstance(a, Edge)}

        return tuple(c for c in self.clauses if (rel_of(c) or {1}) == {i})

    @property
    def b1(self) -> tuple[Prop, ...]:
        """Conjuncts over ``s1`` (and those over no relation)."""
        return self._part(1)

    @property
    def b2(self) -> tuple[Prop, ...]:
        return self._part(2)


def _prec(p: Prop) -> int:
    if isinstance(p, Implies):
        return 1
    if isinstance(p, Or):
        return 2
    if isinstance(p, And):
        return 3
    return 4


def render_prop(p: Prop) -> str:
    def wrap(q: Prop, above: int) -> str:
        s = render_prop(q)
        return f"({s})" if _prec(q) <= above else s

    if isinstance(p, Const):
        return "TRUE" if p.value else "FALSE"
    if isinstance(p, Member):
        return f"X{p.colour}({p.var})"
    if isinstance(p, Edge):
        return f"s{p.rel}(x,y)"
    if isinstance(p, Not):
        return "NOT " + wrap(p.arg, 3)
    if isinstance(p, And):
        return " AND ".join(wrap(a, 3) for a in p.args) if p.args else "TRUE"
    if isinstance(p, Or):
        return " OR ".join(wrap(a, 2) for a in p.args) if p.args else "FALSE"
    if isinstance(p, Implies):
        return f"{wrap(p.lhs, 1)} => {wrap(p.rhs, 1)}"
    raise EmsolError(f"not a proposition: {p!r}")


def emit_flexible(f: FlexibleFormula) -> str:
    head = [
        f"EXISTS {_xs(range(f.k))}.",
        "  singl(X0, null) AND singl(X1, root)" + (" AND" if f.clauses else ""),
    ]
    if f.clauses:
        head.append("  FORALL x. FORALL y.")
        body = [f"    {render_prop(c) if _prec(c) > 3 else '(' + render_prop(c) + ')'}" for c in f.clauses]
        head.append(" AND\n".join(body))
    return "\n".join(head) + "\n"


_TOKEN = re.compile(r"\s*(=>|\(|\)|X\d+\([xy]\)|s[12]\(x,y\)|NOT|AND|OR|TRUE|FALSE)")


def _tokenize(s: str) -> list[str]:
    out, pos = [], 0
    s = s.rstrip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise EmsolError(f"unexpected text at {s[pos:pos + 12]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_prop(s: str) -> Prop:
    toks = _tokenize(s)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        t = peek()
        if t is None or (expected is not None and t != expected):
            raise EmsolError(f"expected {expected or 'a token'}, got {t!r}")
        pos += 1
        return t

    def imp() -> Prop:
        lhs = disj()
        if peek() == "=>":
            take()
            return Implies(lhs, imp())
        return lhs

    def nary(sub, op, cls):
        args = [sub()]
        while peek() == op:
            take()
            args.append(sub())
        return args[0] if len(args) == 1 else cls(tuple(args))

    def disj() -> Prop:
        return nary(conj, "OR", Or)

    def conj() -> Prop:
        return nary(unary, "AND", And)

    def unary() -> Prop:
        t = take()
        if t == "NOT":
            return Not(unary())
        if t == "(":
            p = imp()
            take(")")
            return p
        if t in ("TRUE", "FALSE"):
            return Const(t == "TRUE")
        if t.startswith("X"):
            return Member(int(t[1:-3]), t[-2])
        if t.startswith("s"):
            return Edge(int(t[1]))
        raise EmsolError(f"unexpected {t!r}")

    p = imp()
    if pos != len(toks):
        raise EmsolError(f"trailing tokens from {toks[pos]!r}")
    return p


def parse_flexible(text: str) -> FlexibleFormula:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2:
        raise EmsolError("formula needs a header and the singl line")
    m = _HEAD.match(lines[0])
    if not m:
        raise EmsolError("first line must be 'EXISTS X0, ..., Xk-1.'")
    k = len(m.group(1).split(","))
    singl = "singl(X0, null) AND singl(X1, root)"
    if lines[1] == singl:
        return FlexibleFormula(k)
    if lines[1] != singl + " AND" or len(lines) < 4 or lines[2] != "FORALL x. FORALL y.":
        raise EmsolError("malformed preamble")
    body = parse_prop(" ".join(lines[3:]))
    clauses = body.args if isinstance(body, And) else (body,)
    return FlexibleFormula(k, tuple(clauses))


# "root has in-degree 0" over heaps: X2 holds null and the s1-closure of
# root, and is kept disjoint from X1.
IN_DEGREE_ZERO = FlexibleFormula(
    3,
    (
        Not(And((X(1), X(2)))),
        Implies(X(0), X(2)),
        Implies(S(1), And((Implies(X(1), X(2, "y")), Implies(X(2), X(2, "y"))))),
        Implies(S(2), Not(X(1, "y"))),
    ),
)
