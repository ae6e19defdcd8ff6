"""Tabulate how the subspaces of Gr(r, F_p^2n) distribute over the labels (k, l).

Also checks that every label's fiber is nonempty and that the table sums to the
Gaussian binomial.
"""

from __future__ import annotations

import argparse
from collections import Counter
from dataclasses import dataclass

from shalika import cosets, subspace as sp


@dataclass
class SweepConfig:
    max_n: int = 3
    p: int = 2


def sweep(cfg: SweepConfig) -> bool:
    ok = True
    for n in range(1, cfg.max_n + 1):
        for r in range(1, 2 * n):
            hist = Counter(cosets.invariants(W, n) for W in sp.grassmannian(2 * n, r, cfg.p))
            labels = [lab.as_tuple() for lab in cosets.kl_bounds(n, r)]
            total = sp.gaussian_binomial(2 * n, r, cfg.p)
            good = set(hist) == set(labels) and sum(hist.values()) == total
            ok &= good
            cells = " ".join(f"{k}{l}:{hist[(k, l)]}" for k, l in labels)
            print(f"n={n} r={r} |Gr|={total} {'ok ' if good else 'BAD'} {cells}")
    return ok


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=SweepConfig.max_n)
    ap.add_argument("--p", type=int, default=SweepConfig.p)
    args = ap.parse_args()
    raise SystemExit(0 if sweep(SweepConfig(args.max_n, args.p)) else 1)


if __name__ == "__main__":
    main()
