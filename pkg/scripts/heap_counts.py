"""Count canonical and labelled heaps by exact size."""
from __future__ import annotations

import argparse
import math
import time
from dataclasses import dataclass

from rgc.families import heap_search


@dataclass(frozen=True)
class CountConfig:
    max_nodes: int = 3


def run(cfg: CountConfig) -> list[tuple[int, int, int, float]]:
    rows = []
    for n in range(cfg.max_nodes + 1):
        t0 = time.perf_counter()
        canon = sum(1 for _ in heap_search(n, min_nodes=n))
        rows.append((n, canon, canon * math.factorial(n), time.perf_counter() - t0))
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-nodes", type=int, default=CountConfig.max_nodes)
    cfg = CountConfig(ap.parse_args().max_nodes)
    print("size\tcanonical\tlabelled\tseconds")
    for n, canon, lab, dt in run(cfg):
        print(f"{n}\t{canon}\t{lab}\t{dt:.3f}")


if __name__ == "__main__":
    main()
