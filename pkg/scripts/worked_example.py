"""Two triangles vs the 6-cycle under 1-WL, 2-WL and 2-FWL.

Prints per-round histograms and verdicts, and writes JSON/DOT traces to --out.
Render a DOT file with ``dot -Tsvg trace.dot -o trace.svg``.
"""

import argparse
from pathlib import Path

from wlkit.engine import compare, run_refinement
from wlkit.formats import write_trace
from wlkit.graph import cycle, disjoint_union
from wlkit.variants import kfwl, kwl, wl1


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="traces")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    graphs = {"G": disjoint_union(cycle(3), cycle(3)), "H": cycle(6)}
    for alg in (wl1(), kwl(2), kfwl(2)):
        print(f"== {alg}")
        for name, g in graphs.items():
            r = run_refinement(alg, g)
            sizes = [sorted(c.histogram().values(), reverse=True) for c in r.history]
            print(f"  {name}: rounds={r.rounds} class sizes per round {sizes}")
            stem = f"{alg.name.lower()}_{name}"
            (out / f"{stem}.json").write_text(write_trace(r, g, "json"))
            (out / f"{stem}.dot").write_text(write_trace(r, g, "dot"))
        c = compare(alg, graphs["G"], graphs["H"])
        where = f" at round {c.first_distinguishing_round}" if c.distinguished else ""
        print(f"  verdict: {c.verdict.value}{where}")


if __name__ == "__main__":
    main()
