import random

import pytest

from oracles import G1_EX, all_graphs, brute_has_hom
from rgc.closure import product
from rgc.families import random_graph, random_heap, random_orable
from rgc.graph import NULL, ROOT, GraphError, is_heap, minimal_heap, validate
from rgc.hom import homomorphic
from rgc.implication import (
    GADGET_OVERHEAD,
    Status,
    apply_assignment,
    assignment_site,
    check_implication,
    equiv_bounded,
    equiv_via_product,
    find_heap_counterexample,
    find_invariant_violation,
    implies_over_graphs,
    implies_sufficient,
    invariant_gadget,
    regex_certificate,
)
from rgc.pcp import PcpInstance, build_reduction, witness_from_solution


def test_over_graphs_examples():
    g = random_graph(random.Random(1), 3)
    assert implies_over_graphs(g, g)
    assert not implies_over_graphs(minimal_heap(), G1_EX)


def test_over_graphs_product_identity():
    rng = random.Random(51)
    for _ in range(100):
        g, t = random_graph(rng, 2), random_graph(rng, 2, density=0.6)
        assert implies_over_graphs(g, product(g, t)) == implies_over_graphs(g, t)


def test_over_graphs_matches_all_graph_search():
    # a graph model of g1 outside g2 exists among small graphs (g1 included)
    # exactly when there is no homomorphism g1 -> g2
    rng = random.Random(52)
    pool = [g for n in range(2) for g in all_graphs(n, limit=30, rng=rng)]
    for g1 in pool[::4]:
        for g2 in pool[::6]:
            models = pool + [g1]
            witness = any(brute_has_hom(h, g1) and not brute_has_hom(h, g2) for h in models)
            assert implies_over_graphs(g1, g2) == (not witness)


def test_sufficient_examples():
    assert implies_sufficient(G1_EX, G1_EX)
    inst = PcpInstance((("c", "bc"), ("ab", "a")))
    _, cg, _ = witness_from_solution(inst, [1, 0])
    assert implies_sufficient(cg, build_reduction(inst))


def test_sufficient_not_necessary():
    # g1 has no heap model at all, so it implies anything over heaps
    g1 = validate(["a"], s1=[(ROOT, "a")], s2=[(ROOT, NULL)])
    assert not implies_sufficient(g1, G1_EX)
    assert find_heap_counterexample(g1, G1_EX, 3) is None


def test_counterexample_examples():
    assert find_heap_counterexample(G1_EX, G1_EX, 3) is None
    assert find_heap_counterexample(minimal_heap(), G1_EX, 0) == minimal_heap()
    with pytest.raises(ValueError):
        find_heap_counterexample(G1_EX, G1_EX, -1)


def test_soundness_sweep():
    rng = random.Random(53)
    for _ in range(150):
        g1, g2 = random_graph(rng, rng.randint(0, 2)), random_graph(rng, rng.randint(0, 2), density=0.5)
        if implies_sufficient(g1, g2):
            assert find_heap_counterexample(g1, g2, 3) is None


def test_verdicts():
    v = check_implication(G1_EX, G1_EX, 2)
    assert v.status is Status.VALID and str(v) == "VALID(sufficient)"
    v = check_implication(minimal_heap(), G1_EX, 2)
    assert v.status is Status.COUNTEREXAMPLE
    assert is_heap(v.counterexample)
    assert homomorphic(v.counterexample, minimal_heap()) and not homomorphic(v.counterexample, G1_EX)
    g1 = validate(["a"], s1=[(ROOT, "a")], s2=[(ROOT, NULL)])
    v = check_implication(g1, G1_EX, 2)
    assert v.status is Status.UNKNOWN and str(v) == "UNKNOWN(bound 2)"


def test_regex_certificates_are_real():
    rng = random.Random(54)
    seen = 0
    for _ in range(300):
        g1, g2 = random_graph(rng, rng.randint(0, 3)), random_graph(rng, rng.randint(0, 3))
        cert = regex_certificate(g1, g2)
        if cert is None:
            continue
        seen += 1
        assert is_heap(cert.heap)
        assert homomorphic(cert.heap, g1) and not homomorphic(cert.heap, g2)
    assert seen > 20


def test_equiv_examples():
    g = random_heap(random.Random(2), 3)
    assert equiv_bounded(g, g, 3).equivalent
    v = equiv_bounded(minimal_heap(), G1_EX, 2)
    assert not v.equivalent and v.direction == "1->2"
    assert v.counterexample == minimal_heap()
    unsat = validate(["a"], s1=[(ROOT, "a")], s2=[(ROOT, NULL)])
    v = equiv_bounded(unsat, minimal_heap(), 2)
    assert v.direction == "2->1" and v.counterexample == minimal_heap()


def test_equiv_product_identity():
    rng = random.Random(55)
    for _ in range(80):
        g1, g2 = random_graph(rng, rng.randint(0, 2), density=0.5), random_graph(rng, rng.randint(0, 2), density=0.5)
        bounded = find_heap_counterexample(g1, g2, 2) is None
        assert equiv_via_product(g1, g2, 2) == bounded


def test_gadget_shape():
    rng = random.Random(56)
    built = 0
    for _ in range(100):
        g1, g2 = random_orable(rng, 2), random_orable(rng, 2, root_entry=rng.random() < 0.2)
        if g1.pred(1, ROOT) or g1.pred(2, ROOT) or g2.pred(1, ROOT) or g2.pred(2, ROOT):
            with pytest.raises(GraphError):
                invariant_gadget(g1, g2)
            continue
        g = invariant_gadget(g1, g2)
        built += 1
        assert len(g.nodes) == len(g1.nodes) + len(g2.nodes) + 2
        assert {(ROOT, "a"), (ROOT, "b"), ("a", "root@1"), ("b", "root@2")} <= g.s1
        assert {(ROOT, NULL), ("a", ROOT), ("b", NULL)} <= g.s2
    assert built > 10


def test_gadget_preconditions():
    with pytest.raises(GraphError, match="not orable"):
        invariant_gadget(G1_EX, minimal_heap())
    loop = validate(s1=[(ROOT, ROOT)], s2=[(ROOT, NULL)])
    with pytest.raises(GraphError, match="into its root"):
        invariant_gadget(minimal_heap(), loop)


def test_gadget_same_graph_preserved():
    rng = random.Random(57)
    for _ in range(30):
        g = random_orable(rng, rng.randint(0, 2), root_entry=False)
        gadget = invariant_gadget(g, g)
        assert find_invariant_violation(gadget, 4) is None


def test_assignment():
    h = minimal_heap()
    assert assignment_site(h) == NULL
    assert apply_assignment(h) == h
    already = validate(["y"], s1=[(ROOT, "y"), ("y", NULL)], s2=[(ROOT, NULL), ("y", NULL)])
    assert apply_assignment(already) == already
    back = validate(["y", "z"], s1=[(ROOT, "y"), ("y", NULL), ("z", NULL)], s2=[(ROOT, NULL), ("y", "z"), ("z", NULL)])
    after = apply_assignment(back)
    assert after.nodes == {ROOT, NULL, "y"}  # z became garbage
    assert ("y", NULL) in after.s2
    assert ("y", ROOT) in apply_assignment(back, ROOT).s2
    with pytest.raises(ValueError):
        apply_assignment(back, "y")


def test_assignment_keeps_heaps():
    rng = random.Random(58)
    for _ in range(100):
        h = random_heap(rng, rng.randint(0, 5))
        assert is_heap(apply_assignment(h))
        assert is_heap(apply_assignment(h, ROOT))


def test_gadget_equivalence_small():
    rng = random.Random(59)
    tested = 0
    while tested < 15:
        g1 = random_orable(rng, rng.randint(0, 2), root_entry=False)
        g2 = random_orable(rng, rng.randint(0, 2), root_entry=False)
        gadget = invariant_gadget(g1, g2)
        tested += 1
        preserved = find_invariant_violation(gadget, 2 + GADGET_OVERHEAD) is None
        assert preserved == (find_heap_counterexample(g1, g2, 2) is None)
