"""Compare the two sweep backends on identical workloads.

Runs each GL sweep once per backend in the same process and reports
wall-clock time and throughput.  The first numba call pays JIT
compilation, so every workload is swept once as a warm-up before
timing.  Counts from the two lanes are cross-checked; a mismatch
aborts the run.

Usage: python3 benchmarks/bench_sweep.py
"""

import time

from incalg.field import GF
from incalg.harness.kernels import backend_default, sweep_gl
from incalg.poset import chain, poset_from_relations

WORKLOADS = (
    ("2-chain GF(4), k=2, lie+diag flags", chain(2), GF(4), 2, True, True),
    ("2-chain GF(5), k=3", chain(2), GF(5), 3, False, False),
    ("V poset GF(2), k=2", poset_from_relations([1, 2, 3],
                                                [(1, 2), (1, 3)]),
     GF(2), 2, False, False),
    ("2-chain GF(7), k=4", chain(2), GF(7), 4, False, False),
)


def run(backend, P, F, k, want_lie, want_exidem):
    t0 = time.perf_counter()
    res = sweep_gl(P, F, k, want_lie=want_lie, want_exidem=want_exidem,
                   backend=backend)
    return res, time.perf_counter() - t0


def main():
    backends = ["numpy"]
    if backend_default() == "numba":
        backends.insert(0, "numba")
    else:
        print("numba unavailable (or disabled); timing the numpy lane only")

    header = f"{'workload':38} {'backend':7} {'maps':>12} {'time':>9} {'maps/s':>12}"
    print(header)
    print("-" * len(header))
    for name, P, F, k, wl, we in WORKLOADS:
        counts = {}
        for backend in backends:
            run(backend, P, F, k, wl, we)  # warm-up: JIT, table build
            res, dt = run(backend, P, F, k, wl, we)
            counts[backend] = res.counts
            rate = res.n_maps / dt if dt > 0 else float("inf")
            print(f"{name:38} {backend:7} {res.n_maps:>12,} "
                  f"{dt:>8.3f}s {rate:>12,.0f}")
        if len(backends) == 2 and counts["numba"] != counts["numpy"]:
            raise SystemExit(f"backend disagreement on {name}: {counts}")
    if len(backends) == 2:
        print("\nall counts agree between backends")


if __name__ == "__main__":
    main()
