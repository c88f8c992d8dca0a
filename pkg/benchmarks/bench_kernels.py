"""Time the compiled kernels against the pure-Python reference.

    python benchmarks/bench_kernels.py [--repeat 3] [--json]

Each workload is run on both backends with identical inputs; the outputs
are compared before any timing is reported.
"""

import argparse
import json
import sys
import timeit
from array import array
from itertools import combinations

from umx import gen, kernels
from umx.core import dist_set_set
from umx.dynamics import SelfMap
from umx.proximity import check_separation


def triangle_workload(n):
    space = gen.random_space(gen.GenConfig(n_points=n, seed=1))
    rank = space.rank
    # one off-level entry so the scan also exercises the failure branch
    broken = array("q", rank)
    broken[1] = broken[n] = max(rank) + 1
    return lambda k: (k.triangle_failures(rank, n), k.triangle_failures(broken, n))


def expansion_workload(n):
    space = gen.random_space(gen.GenConfig(n_points=n, seed=2))
    M = space.points
    F = gen.random_noncyclic_nonexpansive_map(space, M, M, 3)
    image = F.index_image(space)
    subset = array("q", range(n))
    return lambda k: [k.first_expansion(space.rank, n, image, subset, strict) for strict in (False, True)]


def strict_search_workload(max_points):
    jobs = []
    for space in gen.enumerate_spaces(max_points, (1, 2, 3)):
        labels = space.labels
        subsets = [frozenset(c) for k in range(1, len(labels) + 1) for c in combinations(labels, k)]
        for A in subsets:
            for B in subsets:
                if check_separation(space, A, B) and dist_set_set(space, A, B)[0] > 0:
                    in_a = array("q", [x in A for x in labels])
                    in_b = array("q", [x in B for x in labels])
                    jobs.append((space.rank, len(space), in_a, in_b))
    return lambda k: [k.find_strict_noncyclic(*job) for job in jobs]


WORKLOADS = {
    "triangle_failures n=90": lambda: triangle_workload(90),
    "first_expansion n=600": lambda: expansion_workload(600),
    "strict search, all pairs on <=5 points": lambda: strict_search_workload(5),
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="print machine-readable results")
    args = ap.parse_args(argv)

    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled kernels are not built; only the Python backend will be timed", file=sys.stderr)
    rows = []
    for name, build in WORKLOADS.items():
        run = build()
        outputs = {b: run(mod) for b, mod in impls.items()}
        if len({repr(v) for v in outputs.values()}) != 1:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        times = {
            b: min(timeit.repeat(lambda m=mod: run(m), number=1, repeat=args.repeat))
            for b, mod in impls.items()
        }
        rows.append({"workload": name, **{f"{b}_s": t for b, t in times.items()}})

    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    print(f"{'workload':42} {'python':>10} {'cython':>10} {'speedup':>9}")
    for row in rows:
        py, cy = row["python_s"], row.get("cython_s")
        tail = f"{cy:10.4f} {py / cy:8.1f}x" if cy else f"{'-':>10} {'-':>9}"
        print(f"{row['workload']:42} {py:10.4f} {tail}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
