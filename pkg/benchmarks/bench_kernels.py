#!/usr/bin/env python3
"""Time the numba kernels against the pure-numpy fallbacks.

Compilation is excluded: every jitted kernel is called once on a tiny input
before timing.  Both paths must return identical arrays; the script checks
that too.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--skip-numpy-above 2000]
"""

import argparse
import itertools
import time

import numpy as np

from cayleydih import _kernels
from cayleydih.cayley import Graph, build_cayley_graph, validate_connection_set
from cayleydih.groups import parse_element_list, parse_group


def cayley(group, text):
    spec = parse_group(group)
    return build_cayley_graph(validate_connection_set(spec, parse_element_list(text, spec)))


CASES = [
    ("6-cycle", lambda: cayley("C6", "(1);(5)")),
    ("K33", lambda: cayley("dih(C3)", "x(0);x(1);x(2)")),
    ("Q3 cube", lambda: cayley("C2xC2xC2", "(1,0,0);(0,1,0);(0,0,1)")),
    ("C9xC3 counterexample", lambda: cayley("C9xC3", "(1,0);(0,1);(8,0);(0,2)")),
    ("K7", lambda: Graph.from_edges(7, itertools.combinations(range(7), 2))),
    ("C4xC4 rook", lambda: cayley("C4xC4", "(1,0);(2,0);(3,0);(0,1);(0,2);(0,3)")),
    ("K44", lambda: cayley("dih(C4)", "x(0);x(1);x(2);x(3)")),
]


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def warm_up():
    adj = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]], dtype=np.uint8)
    auts, _ = _kernels.automorphisms(adj, 100, jit=True)
    _kernels.regular_subgroups(auts, 100, jit=True)
    _kernels.preserves_adjacency(adj, auts, jit=True)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--skip-numpy-above", type=int, default=5000, help="skip the numpy subgroup search above this many automorphisms")
    args = p.parse_args()

    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")
    warm_up()

    print(f"{'graph':<22} {'n':>3} {'|Aut|':>7} {'#reg':>6}  {'aut nb':>8} {'aut np':>8} {'x':>6}  {'reg nb':>8} {'reg np':>8} {'x':>6}")
    for name, make in CASES:
        adj = make().adjacency_matrix()
        t_nb, (a_nb, c) = timed(lambda: _kernels.automorphisms(adj, 2**20, jit=True), args.repeat)
        t_np, (a_np, _) = timed(lambda: _kernels.automorphisms(adj, 2**20, jit=False), args.repeat)
        assert np.array_equal(a_nb, a_np), name
        r_nb, (rows_nb, k) = timed(lambda: _kernels.regular_subgroups(a_nb, 10**6, jit=True), args.repeat)
        if c <= args.skip_numpy_above:
            r_np, (rows_np, _) = timed(lambda: _kernels.regular_subgroups(a_nb, 10**6, jit=False), 1)
            assert np.array_equal(rows_nb, rows_np), name
            reg_np = f"{r_np * 1e3:8.1f} {r_np / r_nb:6.1f}"
        else:
            reg_np = f"{'skip':>8} {'-':>6}"
        print(
            f"{name:<22} {adj.shape[0]:>3} {c:>7} {k:>6}  "
            f"{t_nb * 1e3:8.1f} {t_np * 1e3:8.1f} {t_np / t_nb:6.1f}  {r_nb * 1e3:8.1f} {reg_np}"
        )
    print("times in ms, best of --repeat; x = numpy time / numba time")


if __name__ == "__main__":
    main()
