"""Reduce a PCP instance, search corresponder graphs, and map witnesses back."""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from rgc.graph import serialize
from rgc.pcp import bounded_cg_search, brute_solve_pcp, build_reduction, parse_pcp, solution_from_witness
from rgc.families import gen_cg

DEFAULT = Path(__file__).resolve().parents[1] / "data" / "cbc_aba.pcp"


@dataclass(frozen=True)
class PipelineConfig:
    instance: Path = DEFAULT
    max_len: int = 6
    n_max: int = 5
    k_max: int = 3
    workers: int = 1
    dump: Path | None = None


def run(cfg: PipelineConfig) -> dict:
    inst = parse_pcp(cfg.instance.read_text())
    t0 = time.perf_counter()
    g = build_reduction(inst)
    if cfg.dump:
        cfg.dump.write_text(serialize(g))
    direct = brute_solve_pcp(inst, cfg.max_len)
    hit = bounded_cg_search(inst, cfg.n_max, cfg.k_max, workers=cfg.workers)
    back = solution_from_witness(inst, gen_cg(hit[0]), hit[1]) if hit else None
    return {
        "pairs": inst.pairs,
        "reduction_nodes": len(g.nodes),
        "direct_solution": direct,
        "witness": hit[0] if hit else None,
        "recovered_solution": back,
        "seconds": time.perf_counter() - t0,
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("instance", nargs="?", type=Path, default=DEFAULT)
    ap.add_argument("--max-len", type=int, default=PipelineConfig.max_len)
    ap.add_argument("--n-max", type=int, default=PipelineConfig.n_max)
    ap.add_argument("--k-max", type=int, default=PipelineConfig.k_max)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--dump", type=Path)
    a = ap.parse_args()
    res = run(PipelineConfig(a.instance, a.max_len, a.n_max, a.k_max, a.workers, a.dump))
    for key, val in res.items():
        print(f"{key}: {val:.3f}" if key == "seconds" else f"{key}: {val}")


if __name__ == "__main__":
    main()
