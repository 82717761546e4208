"""Sweep random orable pairs and compare gadget invariance with bounded implication."""
from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass

from rgc.families import random_orable
from rgc.implication import (
    GADGET_OVERHEAD,
    find_heap_counterexample,
    find_invariant_violation,
    invariant_gadget,
)


@dataclass(frozen=True)
class SweepConfig:
    pairs: int = 100
    max_inner: int = 2
    bound: int = 4  # non-special heap nodes seen by the gadget check
    density: float = 0.4
    seed: int = 0


def run(cfg: SweepConfig) -> dict:
    rng = random.Random(cfg.seed)
    agree = holds = 0
    t0 = time.perf_counter()
    for _ in range(cfg.pairs):
        g1 = random_orable(rng, rng.randint(0, cfg.max_inner), cfg.density, root_entry=False)
        g2 = random_orable(rng, rng.randint(0, cfg.max_inner), cfg.density, root_entry=False)
        kept = find_invariant_violation(invariant_gadget(g1, g2), cfg.bound) is None
        implied = find_heap_counterexample(g1, g2, cfg.bound - GADGET_OVERHEAD) is None
        holds += implied
        agree += kept == implied
    return {"pairs": cfg.pairs, "agree": agree, "implication_holds": holds,
            "seconds": round(time.perf_counter() - t0, 3)}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    for f, default in SweepConfig.__dataclass_fields__.items():
        ap.add_argument(f"--{f.replace('_', '-')}", type=type(default.default), default=default.default)
    print(run(SweepConfig(**vars(ap.parse_args()))))


if __name__ == "__main__":
    main()
