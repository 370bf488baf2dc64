"""Face counts and Salvetti homology for braid arrangements at several levels.

    python3 scripts/salvetti_table.py --k 3 --levels 2 3
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from cellstrat.arrangements import braid_arrangement, complement_subposet, enumerate_faces, enumerate_higher_faces, salvetti
from cellstrat.complexes import deltaset_homology


@dataclass
class SalvettiConfig:
    k: int = 3
    levels: list[int] = field(default_factory=lambda: [2, 3])


def run(cfg: SalvettiConfig) -> list[dict]:
    a = braid_arrangement(cfg.k)
    fp = enumerate_faces(a)
    print(f"braid arrangement, k={cfg.k}: {len(a)} hyperplanes, {len(fp)} faces {fp.dim_counts()}")
    rows = []
    for level in cfg.levels:
        t0 = time.perf_counter()
        hf = enumerate_higher_faces(a, level)
        comp = complement_subposet(hf)
        d = salvetti(a, level)
        h = deltaset_homology(d)
        rows.append(
            {
                "level": level,
                "faces": len(hf),
                "complement": len(comp),
                "cells": d.counts(),
                "homology": h.describe(),
                "seconds": time.perf_counter() - t0,
            }
        )
    print(f"{'level':>5} {'faces':>6} {'compl':>6}  {'Sd cells':<32} {'H':<28} time")
    for r in rows:
        cells = " ".join(map(str, r["cells"]))
        print(f"{r['level']:>5} {r['faces']:>6} {r['complement']:>6}  {cells:<32} {r['homology']:<28} {r['seconds']:.2f}s")
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--levels", type=int, nargs="+", default=[2, 3])
    args = p.parse_args()
    run(SalvettiConfig(args.k, args.levels))


if __name__ == "__main__":
    main()
