#!/usr/bin/env python3
"""Print the total-variation decay of the bases-exchange walk.

Examples:
    python3 scripts/mixing_decay.py --builtin k4 --steps 120
    python3 scripts/mixing_decay.py --matroid-file my.circuits --steps 200 --exact
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from pavingwalk.hamilton import complete_graph, from_hamiltonian_cycles
from pavingwalk.ioformats import read_matroid_file
from pavingwalk.matroid import ExplicitMatroid, uniform_matroid
from pavingwalk.paving import bases_from_circuits
from pavingwalk.walk import exact_walk_distribution, lex_least_basis, tv_decay_exact, tv_distance, uniform_distribution

BUILTINS = {
    "u24": lambda: uniform_matroid(4, 2),
    "u36": lambda: uniform_matroid(6, 3),
    "k4": lambda: bases_from_circuits(from_hamiltonian_cycles(complete_graph(4))),
    "k5": lambda: bases_from_circuits(from_hamiltonian_cycles(complete_graph(5))),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--builtin", choices=sorted(BUILTINS), default="u24")
    ap.add_argument("--matroid-file", type=Path, default=None)
    ap.add_argument("--steps", type=int, default=100)
    ap.add_argument("--stride", type=int, default=5, help="print every k-th step")
    ap.add_argument("--exact", action="store_true", help="exact rationals instead of float64")
    args = ap.parse_args()

    if args.matroid_file is not None:
        mf = read_matroid_file(args.matroid_file)
        matroid = (
            ExplicitMatroid(mf.m, mf.r, mf.sets)
            if mf.kind == "bases"
            else bases_from_circuits(mf.to_family())
        )
    else:
        matroid = BUILTINS[args.builtin]()

    print(f"# m={matroid.m} r={matroid.r} bases={len(matroid.bases)}")
    start = lex_least_basis(matroid)
    if args.exact:
        curve = tv_decay_exact(matroid, start, args.steps)
        for t in range(0, args.steps + 1, args.stride):
            print(f"{t:6d}  {float(curve[t]):.12e}  ({curve[t]})")
    else:
        uniform = uniform_distribution(matroid)
        for t in range(0, args.steps + 1, args.stride):
            dist = exact_walk_distribution(matroid, start, t)
            print(f"{t:6d}  {tv_distance(dist, uniform):.12e}")


if __name__ == "__main__":
    main()
