"""Regular graph constraints: homomorphism-defined heap properties.

A constraint is a target graph; a heap satisfies it when it maps
homomorphically into the target.
"""
from .closure import graph_sum, product
from .emsol import EmsolFormula, emit_formula, eval_formula, parse_formula, render
from .families import (
    CorresponderParams,
    HeapEnumConfig,
    enumerate_heaps,
    gen_cg,
    gen_grid,
    gen_list,
    heap_search,
)
from .graph import (
    EMPTY,
    NULL,
    ROOT,
    Graph,
    GraphError,
    ParseError,
    classify,
    is_heap,
    is_orable,
    load,
    minimal_heap,
    parse,
    serialize,
    validate,
)
from .heapsat import graph_cleanup, sat_over_heaps
from .hom import check_hom, compose, enumerate_homs, find_hom, homomorphic
from .implication import (
    apply_assignment,
    check_implication,
    equiv_bounded,
    find_heap_counterexample,
    implies_over_graphs,
    implies_sufficient,
    invariant_gadget,
)
from .paths import Path, find_slice_matching, has_slice_matching, parse_regex
from .pcp import (
    PcpInstance,
    bounded_cg_search,
    brute_solve_pcp,
    build_reduction,
    parse_pcp,
    solution_from_witness,
    witness_from_solution,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
