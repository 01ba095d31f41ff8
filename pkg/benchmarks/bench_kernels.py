"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload runs on both backends, checks that the outputs agree, and
reports the best-of-N wall time and the speedup.
"""
from __future__ import annotations

import argparse
import sys
import timeit

from robustlat import kernels
from robustlat import lattice as lat


def workloads():
    posets = [P for n in range(1, 5) for P in lat.all_posets(n)]
    ls6 = lat.all_lattices(6)
    pairs6 = [(list(L.poset.up_rows), list(M.poset.up_rows)) for L in ls6[-6:] for M in ls6[-6:]]
    ls4 = lat.all_lattices(4)
    adj = []
    for L in ls4:
        for M in ls4:
            a, b = list(L.poset.up_rows), list(M.poset.up_rows)
            adj += [(a, b, list(t)) for t in kernels.fallback.monotone_maps(a, b)]

    def topo(mod):
        return [list(mod.topology_families(P.n, list(P.up_rows))) for P in posets]

    def mono(mod):
        return [len(mod.monotone_maps(a, b)) for a, b in pairs6]

    def adjoints(mod):
        return [len(mod.adjoint_candidates(a, b, f)) for a, b, f in adj]

    return [
        (f"topology_families, {len(posets)} posets <= 4", topo),
        (f"monotone_maps, {len(pairs6)} pairs of 6-element lattices", mono),
        (f"adjoint_candidates, {len(adj)} maps between lattices <= 4", adjoints),
    ]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels.compiled is None:
        print("compiled extension not available; build with `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'workload':<52} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name, fn in workloads():
        assert fn(kernels.fallback) == fn(kernels.compiled), name
        slow = min(timeit.repeat(lambda: fn(kernels.fallback), number=1, repeat=args.repeat))
        fast = min(timeit.repeat(lambda: fn(kernels.compiled), number=1, repeat=args.repeat))
        print(f"{name:<52} {slow:>9.4f}s {fast:>9.4f}s {slow / fast:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
