"""Implication and equivalence of constraint graphs.

Over all graphs, ``g1`` implies ``g2`` exactly when ``g1 -> g2``.  Over
heaps that test is only sufficient, and no complete procedure exists, so the
heap side offers a bounded counterexample search whose verdicts always carry
the bound they were obtained under.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .closure import product
from .families import heap_search
from .graph import NULL, ROOT, Graph, GraphError, is_heap, is_orable, validate
from .heapsat import sat_over_heaps
from .hom import homomorphic
from .paths import Path, find_slice_matching, has_slice_matching

DEFAULT_REGEXES = ("1*", "121*", "1221*", "12(21)*", "2", "1*2", "(1|2)*")


def implies_over_graphs(g1: Graph, g2: Graph) -> bool:
    return homomorphic(g1, g2)


def implies_sufficient(g1: Graph, g2: Graph) -> bool:
    """True means every heap model of ``g1`` is a model of ``g2``; False
    decides nothing."""
    return homomorphic(g1, g2)


def find_heap_counterexample(g1: Graph, g2: Graph, max_nodes: int) -> Graph | None:
    """First canonical heap with at most ``max_nodes`` non-special nodes
    that maps to ``g1`` but not to ``g2``."""
    if max_nodes < 0:
        raise ValueError("max_nodes must be non-negative")
    return next(heap_search(max_nodes, require=(g1,), forbid=(g2,)), None)


class Status(enum.Enum):
    VALID = "VALID(sufficient)"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class RegexCertificate:
    """``heap`` is a model of g1 with a slice ``path`` whose word matches
    ``regex``; g2 has no slice matching it, so ``heap`` cannot map to g2."""

    regex: str
    path: Path
    heap: Graph


@dataclass(frozen=True)
class ImplicationVerdict:
    status: Status
    bound: int
    counterexample: Graph | None = None
    certificate: RegexCertificate | None = None

    def __str__(self) -> str:
        if self.status is Status.UNKNOWN:
            return f"UNKNOWN(bound {self.bound})"
        return self.status.value


def regex_certificate(
    g1: Graph, g2: Graph, regexes: Sequence[str] = DEFAULT_REGEXES
) -> RegexCertificate | None:
    """Look for a slice language separating a heap model of ``g1`` from ``g2``.

    The heap is the witness produced by heap satisfiability, so the
    certificate is a concrete counterexample and not a claim about ``g1``
    as a graph (``g1`` may have slices no heap model realises).
    """
    res = sat_over_heaps(g1)
    if not res.satisfiable:
        return None
    h0 = res.witness
    for e in regexes:
        p = find_slice_matching(h0, e)
        if p is not None and not has_slice_matching(g2, e):
            return RegexCertificate(e, p, h0)
    return None


def check_implication(
    g1: Graph,
    g2: Graph,
    max_nodes: int,
    *,
    regexes: Sequence[str] = DEFAULT_REGEXES,
) -> ImplicationVerdict:
    if implies_sufficient(g1, g2):
        return ImplicationVerdict(Status.VALID, max_nodes)
    cert = regex_certificate(g1, g2, regexes)
    if cert is not None:
        return ImplicationVerdict(Status.COUNTEREXAMPLE, max_nodes, cert.heap, cert)
    h = find_heap_counterexample(g1, g2, max_nodes)
    if h is not None:
        return ImplicationVerdict(Status.COUNTEREXAMPLE, max_nodes, h)
    return ImplicationVerdict(Status.UNKNOWN, max_nodes)


@dataclass(frozen=True)
class EquivVerdict:
    equivalent: bool
    bound: int
    counterexample: Graph | None = None
    direction: str | None = None  # "1->2": model of g1 only; "2->1": of g2 only

    def __str__(self) -> str:
        if self.equivalent:
            return f"EQUIVALENT(bound {self.bound})"
        return f"COUNTEREXAMPLE({self.direction})"


def equiv_bounded(g1: Graph, g2: Graph, max_nodes: int) -> EquivVerdict:
    for direction, a, b in (("1->2", g1, g2), ("2->1", g2, g1)):
        h = find_heap_counterexample(a, b, max_nodes)
        if h is not None:
            return EquivVerdict(False, max_nodes, h, direction)
    return EquivVerdict(True, max_nodes)


def equiv_via_product(g1: Graph, g2: Graph, max_nodes: int) -> bool:
    """Bounded ``g1 => g2`` decided as ``g1 ~ g1 x g2``."""
    return equiv_bounded(g1, product(g1, g2), max_nodes).equivalent


# -- invariant maintenance gadget ------------------------------------------------


GADGET_A = "a"
GADGET_B = "b"


def _gadget_name(x: str, k: int) -> str:
    return x if x == NULL else f"{x}@{k}"


def invariant_gadget(g1: Graph, g2: Graph) -> Graph:
    """Graph whose heap models H satisfy: H stays a model after
    ``root.1.2 := null`` for every such H iff ``g1`` implies ``g2``.

    Root of the gadget has s1-edges to fresh nodes a and b.  a leads on to
    ``g1`` and points back to root through s2; b leads to ``g2`` and to
    null.  Node ids of ``g_k`` get the suffix ``@k``.
    """
    for k, g in ((1, g1), (2, g2)):
        if not is_orable(g):
            raise GraphError(f"graph {k} is not orable")
        if g.pred(1, ROOT) or g.pred(2, ROOT):
            raise GraphError(f"graph {k} has an edge into its root")
    nodes = [ROOT, GADGET_A, GADGET_B]
    s1 = [(ROOT, GADGET_A), (ROOT, GADGET_B), (GADGET_A, f"{ROOT}@1"), (GADGET_B, f"{ROOT}@2")]
    s2 = [(ROOT, NULL), (GADGET_A, ROOT), (GADGET_B, NULL)]
    for k, g in ((1, g1), (2, g2)):
        nodes += [_gadget_name(x, k) for x in g.nodes]
        s1 += [(_gadget_name(x, k), _gadget_name(y, k)) for x, y in g.s1]
        s2 += [(_gadget_name(x, k), _gadget_name(y, k)) for x, y in g.s2]
    return validate(nodes, s1, s2)


def assignment_site(h: Graph) -> str:
    """The node whose 2-field ``root.1.2 := ...`` writes, i.e. s1(root)."""
    if not is_heap(h):
        raise GraphError("assignment needs a heap")
    (y,) = h.succ(1, ROOT)
    return y


def apply_assignment(h: Graph, target: str = NULL) -> Graph:
    """Run ``root.1.2 := target`` on heap ``h`` (``target`` is null or root)
    and drop nodes that become unreachable.  A write into null is a no-op."""
    if target not in (NULL, ROOT):
        raise ValueError("target must be 'null' or 'root'")
    y = assignment_site(h)
    if y == NULL:
        return h
    s2 = {(x, z) for x, z in h.s2 if x != y} | {(y, target)}
    g = Graph(h.nodes, h.s1, frozenset(s2))
    live = g.reachable() | {NULL}
    return Graph(
        frozenset(live),
        frozenset(e for e in g.s1 if e[0] in live),
        frozenset(e for e in g.s2 if e[0] in live),
    )


@dataclass(frozen=True)
class InvariantViolation:
    before: Graph
    after: Graph


def find_invariant_violation(
    g: Graph, max_nodes: int, target: str = NULL
) -> InvariantViolation | None:
    """First heap model of ``g`` (at most ``max_nodes`` non-special nodes)
    that stops being a model after the assignment."""
    for h in heap_search(max_nodes, require=(g,)):
        after = apply_assignment(h, target)
        if not homomorphic(after, g):
            return InvariantViolation(h, after)
    return None


# Extra non-special heap nodes a gadget model needs beyond a model of g1:
# y = s1(root) and s1(y), which plays the root of the g1 part.
GADGET_OVERHEAD = 2
