from pathlib import Path

import pytest

from oracles import G1_EX, all_graphs
from rgc.emsol import (
    IN_DEGREE_ZERO,
    EmsolError,
    EmsolFormula,
    EvalLimitError,
    FlexibleFormula,
    Implies,
    Not,
    S,
    X,
    emit_flexible,
    emit_formula,
    eval_formula,
    iter_models,
    max_eval_nodes,
    parse_flexible,
    parse_formula,
    parse_prop,
    render,
    render_prop,
)
from rgc.families import gen_list
from rgc.graph import EMPTY, NULL, ROOT, minimal_heap
from rgc.hom import find_hom

GOLDEN = Path(__file__).parent / "golden" / "in_degree_zero.txt"


def test_minimal_heap_formula():
    f = emit_formula(minimal_heap())
    assert f.k == 2
    assert f.successors(1, 1) == {0}
    assert f.successors(1, 2) == {0}
    assert f.names == (NULL, ROOT)


def test_g1_formula():
    f = emit_formula(G1_EX)
    assert f.successors(1, 2) == {1}
    assert not eval_formula(minimal_heap(), f)


def test_self_evaluation():
    assert eval_formula(minimal_heap(), emit_formula(minimal_heap()))


def test_render_structure():
    text = render(emit_formula(gen_list("12")))
    assert text.startswith("EXISTS X0, X1, X2.\n")
    assert "partit(X0, X1, X2)" in text
    assert "singl(X0, null) AND singl(X1, root)" in text


def test_render_round_trip():
    for n in range(3):
        for t in all_graphs(n, limit=60):
            f = emit_formula(t)
            assert parse_formula(render(f)) == f


def test_parse_errors():
    with pytest.raises(EmsolError):
        parse_formula("")
    with pytest.raises(EmsolError):
        parse_formula("EXISTS X0, X2.\n")
    text = render(emit_formula(minimal_heap()))
    with pytest.raises(EmsolError, match="missing"):
        parse_formula("\n".join(ln for ln in text.splitlines() if "P1_2" not in ln))
    with pytest.raises(EmsolError, match="malformed"):
        parse_formula(text.replace("s2(x,y) => (X0(y))", "s1(x,y) => (X0(y))", 1))


def test_formula_validation():
    with pytest.raises(EmsolError):
        EmsolFormula(1, ((frozenset(), frozenset()),))
    with pytest.raises(EmsolError):
        EmsolFormula(2, ((frozenset({5}), frozenset()), (frozenset(), frozenset())))


def test_models_are_total_and_pinned():
    f = emit_formula(gen_list("121"))
    g = gen_list("121")
    models = list(iter_models(g, f))
    assert models
    for col in models:
        assert set(col) == set(g.nodes)
        assert col[NULL] == 0 and col[ROOT] == 1


def test_empty_inputs():
    assert not eval_formula(EMPTY, emit_formula(minimal_heap()))
    assert render(emit_formula(EMPTY)) == "FALSE\n"
    assert parse_formula("FALSE\n").k == 0


def test_size_guard(monkeypatch):
    monkeypatch.delenv("RGC_MAX_EVAL_NODES", raising=False)
    assert max_eval_nodes() == 6
    g = gen_list("12121212")  # 7 non-special nodes
    f = emit_formula(g)
    with pytest.raises(EvalLimitError):
        eval_formula(g, f)
    monkeypatch.setenv("RGC_MAX_EVAL_NODES", "7")
    assert eval_formula(g, f)
    monkeypatch.setenv("RGC_MAX_EVAL_NODES", "many")
    with pytest.raises(EmsolError):
        max_eval_nodes()


def test_agrees_with_find_hom_small():
    graphs = [g for n in range(2) for g in all_graphs(n, limit=40)]
    for g in graphs[::3]:
        for t in graphs[::5]:
            assert eval_formula(g, emit_formula(t)) == (find_hom(g, t) is not None)


def test_in_degree_example_golden():
    assert emit_flexible(IN_DEGREE_ZERO) == GOLDEN.read_text(encoding="utf-8")
    assert parse_flexible(GOLDEN.read_text(encoding="utf-8")) == IN_DEGREE_ZERO


def test_in_degree_example_parts():
    assert len(IN_DEGREE_ZERO.b1) == 3
    assert len(IN_DEGREE_ZERO.b2) == 1


def test_header_only():
    assert emit_flexible(FlexibleFormula(3)) == "EXISTS X0, X1, X2.\n  singl(X0, null) AND singl(X1, root)\n"
    assert parse_flexible(emit_flexible(FlexibleFormula(3))) == FlexibleFormula(3)


def test_edge_atoms_must_be_negative():
    with pytest.raises(EmsolError, match="positively"):
        FlexibleFormula(2, (Implies(X(0), S(1)),))
    with pytest.raises(EmsolError, match="mixes"):
        FlexibleFormula(2, (Implies(S(1), Not(S(2))),))
    with pytest.raises(EmsolError, match="not declared"):
        FlexibleFormula(2, (X(4),))


def test_prop_round_trip():
    for text in [
        "X0(x)",
        "NOT X1(y)",
        "X0(x) => X1(y) => X0(y)",
        "(X0(x) => X1(y)) => X0(y)",
        "X0(x) OR X1(x) AND X0(y)",
        "NOT (X0(x) OR TRUE)",
        "s1(x,y) => FALSE",
    ]:
        p = parse_prop(text)
        assert parse_prop(render_prop(p)) == p
    with pytest.raises(EmsolError):
        parse_prop("X0(z)")
    with pytest.raises(EmsolError):
        parse_prop("(X0(x)")
