import itertools
import random

import pytest

from rgc.families import CorresponderParams, gen_cg, gen_list, random_graph, random_heap
from rgc.graph import NULL, ROOT, minimal_heap
from rgc.hom import find_hom
from rgc.paths import (
    Path,
    PathError,
    RegexError,
    SliceNfa,
    find_slice_matching,
    has_slice_matching,
    is_path,
    is_slice,
    iter_slices,
    map_path,
    parse_regex,
    thompson,
    word,
)
from rgc.pcp import PcpInstance, build_reduction, witness_from_solution

CG32 = gen_cg(CorresponderParams(3, 2, (2,), (1,)))


def test_word_basics():
    assert word(Path((ROOT,))) == ""
    assert word(Path.of(ROOT, 1, "C0", 2, "U0")) == "12"
    spine = Path.of(ROOT, 1, "C0", 1, "C1", 1, "C2", 1, "C3", 1, NULL)
    assert is_slice(CG32, spine)
    assert word(spine) == "1" * 5


def test_slice_checks():
    g = minimal_heap()
    assert is_slice(g, Path.of(ROOT, 1, NULL))
    assert is_slice(g, Path.of(ROOT, 1, NULL, 1, NULL))
    assert not is_slice(g, Path((ROOT,)))
    with pytest.raises(PathError):
        is_slice(g, Path.of(ROOT, 1, ROOT))


def test_path_validation():
    with pytest.raises(PathError):
        Path(())
    with pytest.raises(PathError):
        Path((ROOT, NULL), ())
    with pytest.raises(PathError):
        Path((ROOT, NULL), (3,))


def test_map_path_identity_and_word():
    rng = random.Random(21)
    for _ in range(100):
        g = random_heap(rng, rng.randint(0, 3))
        t = random_graph(rng, rng.randint(0, 3), density=0.6)
        h = find_hom(g, t)
        for p in itertools.islice(iter_slices(g, 5), 10):
            assert map_path({x: x for x in g.nodes}, p) == p
            if h is not None:
                q = map_path(h, p)
                assert word(q) == word(p)
                assert is_path(t, q) and is_slice(t, q)


def test_pcp_witness_maps_slices():
    inst = PcpInstance((("c", "bc"), ("ab", "a")))
    g = build_reduction(inst)
    _, cg, h = witness_from_solution(inst, [1, 0])
    for p in iter_slices(cg, 8):
        assert is_slice(g, map_path(h, p))


def test_minimal_heap_regexes():
    g = minimal_heap()
    assert has_slice_matching(g, "1")
    assert has_slice_matching(g, "11")
    # root,2,null,1,null is a slice once null's loops may be walked
    assert has_slice_matching(g, "2·1")
    assert not has_slice_matching(g, "∅")
    assert not has_slice_matching(g, "ε")


def test_cg_regexes():
    assert has_slice_matching(CG32, "1*")
    assert has_slice_matching(CG32, "12·1*")
    p = find_slice_matching(CG32, "12·1*")
    assert p.nodes[:3] == (ROOT, "C0", "U0")


def test_regex_parse_and_print():
    for text in ["1", "12", "1|2", "(12)*", "1(2|1)*2", "ε", "∅", "1*2*"]:
        r = parse_regex(text)
        assert parse_regex(str(r)) == r
    with pytest.raises(RegexError):
        parse_regex("(1")
    with pytest.raises(RegexError):
        parse_regex("3")
    with pytest.raises(RegexError):
        parse_regex("1)")


def test_thompson_against_python_re():
    import re

    pool = ["1*", "121*", "1221*", "12(21)*", "(1|2)*2", "1(1|2)"]
    for text in pool:
        nfa = thompson(parse_regex(text))
        pattern = re.compile(text)
        for n in range(6):
            for w in itertools.product("12", repeat=n):
                w = "".join(w)
                assert nfa.accepts(w) == bool(pattern.fullmatch(w)), (text, w)


def test_slice_nfa_on_lists():
    for w in ["", "1", "12", "2211", "121"]:
        g = gen_list(w)
        words = {word(p) for p in iter_slices(g, 8)}
        for n in range(9):
            for cand in itertools.product("12", repeat=n):
                cand = "".join(cand)
                assert SliceNfa(g).accepts(cand) == (cand in words)


def test_witness_is_slice_and_matches():
    rng = random.Random(22)
    for _ in range(100):
        g = random_graph(rng, rng.randint(0, 3))
        for e in ["1*", "121*", "(1|2)*2"]:
            p = find_slice_matching(g, e)
            if p is not None:
                assert is_slice(g, p)
                assert thompson(parse_regex(e)).accepts(word(p))
