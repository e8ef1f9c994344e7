"""Uniform growth of orbital graphs versus a trivial coset graph.

Writes one CSV of ball sizes per graph and prints the fitted log2 slope.

    python3 scripts/growth_dichotomy.py --max-radius 14 --roots 16 --outdir runs/growth
"""
from __future__ import annotations

import argparse
import os

from thompson.analysis import growth_table, sample_roots, table_to_csv, uniform_growth_estimate
from thompson.dyadic import parse_number
from thompson.schreier import coset_ball, make_oracle, orbital_ball
from thompson.serialize import write_atomic


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", default="1/2,1/3,3/8,2/7")
    ap.add_argument("--max-radius", type=int, default=14)
    ap.add_argument("--roots", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--outdir", default=None)
    args = ap.parse_args()

    n = args.max_radius
    graphs = [(f"orbit:{p}", orbital_ball(parse_number(p), n + 2)) for p in args.points.split(",")]
    graphs.append(("coset:whole", coset_ball(make_oracle("whole"), n)))
    if args.outdir:
        os.makedirs(args.outdir, exist_ok=True)
    print(f"{'graph':<14} {'b(n)':>8} {'slope':>7} {'r^2':>9}  class")
    for gid, g in graphs:
        roots = sample_roots(g, args.roots, n, args.seed)
        table = growth_table(g, roots, n, graph_id=gid)
        est = uniform_growth_estimate(table, window=(n // 2 - 1, n) if n >= 8 else None)
        print(f"{gid:<14} {table.uniform()[-1]:>8} {est.fitted_rate:>7.3f} {est.r_squared:>9.5f}  {est.classification}")
        if args.outdir:
            name = gid.replace(":", "_").replace("/", "-") + ".csv"
            write_atomic(os.path.join(args.outdir, name), table_to_csv(table))


if __name__ == "__main__":
    main()
