"""Run the brute-force oracle over a list of (n, p) cases and write a JSON summary."""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from shalika import oracle


@dataclass
class CertifyConfig:
    cases: list = field(default_factory=lambda: [(1, 2), (1, 3), (1, 5), (2, 2)])
    expensive: bool = False
    out: str | None = None


def run(cfg: CertifyConfig) -> dict:
    rows = []
    for n, p in cfg.cases:
        mask = oracle.invertible_mask(2 * n, p)
        for r in range(1, 2 * n):
            part = oracle.double_coset_partition(n, p, r, expensive=cfg.expensive, mask=mask)
            rep = oracle.certify(n, p, r, expensive=cfg.expensive, partition=part)
            rows.append({"n": n, "p": p, "r": r, "ok": rep["ok"], "classes": rep["num_classes"],
                         "sizes": sorted(c["size"] for c in rep["classes"]), "seconds": rep["seconds"]})
            print(f"n={n} p={p} r={r} ok={rep['ok']} classes={rep['num_classes']} "
                  f"({rep['seconds']['total']:.2f}s)")
    return {"config": asdict(cfg), "results": rows, "ok": all(r["ok"] for r in rows)}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--case", action="append", metavar="N,P", help="repeatable; default: the small cases")
    ap.add_argument("--expensive", action="store_true")
    ap.add_argument("--out")
    args = ap.parse_args()
    cfg = CertifyConfig(expensive=args.expensive, out=args.out)
    if args.case:
        cfg.cases = [tuple(int(x) for x in c.split(",")) for c in args.case]
    t = time.perf_counter()
    summary = run(cfg)
    summary["wall_seconds"] = time.perf_counter() - t
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            json.dump(summary, fh, indent=2)
    raise SystemExit(0 if summary["ok"] else 1)


if __name__ == "__main__":
    main()
