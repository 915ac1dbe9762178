"""Wall time of one refinement vs n and thread count on random 3-regular graphs."""

import argparse
import json
import time

from wlkit.engine import run_refinement
from wlkit.graph import random_regular
from wlkit.variants import parse_algorithm


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alg", default="2-fwl")
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 20, 40, 60])
    ap.add_argument("--threads", type=int, nargs="+", default=[1, 2, 4])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    alg = parse_algorithm(args.alg)
    for n in args.sizes:
        g = random_regular(n, 3, args.seed)
        for t in args.threads:
            t0 = time.perf_counter()
            r = run_refinement(alg, g, threads=t)
            dt = time.perf_counter() - t0
            print(json.dumps({"alg": alg.name, "n": n, "threads": t, "seconds": round(dt, 4),
                              "iterations": r.iterations, "classes": r.final.num_classes}))


if __name__ == "__main__":
    main()
