"""Time seeded random decompositions across all r for a few (n, p)."""

from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass, field

from shalika import cosets
from shalika.gf import GF
from shalika.linalg import random_invertible


@dataclass
class BenchConfig:
    cases: list = field(default_factory=lambda: [(2, 5), (3, 3), (4, 2)])
    samples: int = 1000
    seed: int = 0


def bench(cfg: BenchConfig):
    for n, p in cfg.cases:
        rng = random.Random(cfg.seed)
        F = GF(p)
        gs = [random_invertible(2 * n, F, rng) for _ in range(cfg.samples)]
        t = time.perf_counter()
        labels = {}
        for g in gs:
            for r in range(1, 2 * n):
                d = cosets.decompose(g, n, r)
                labels[(r, d.label.as_tuple())] = labels.get((r, d.label.as_tuple()), 0) + 1
        dt = time.perf_counter() - t
        print(f"GL_{2 * n}(F_{p}): {cfg.samples * (2 * n - 1)} decompositions in {dt:.2f}s; "
              f"{len(labels)} (r, label) cells hit")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=BenchConfig.samples)
    ap.add_argument("--seed", type=int, default=BenchConfig.seed)
    args = ap.parse_args()
    bench(BenchConfig(samples=args.samples, seed=args.seed))


if __name__ == "__main__":
    main()
