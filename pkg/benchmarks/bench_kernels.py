"""Compare the compiled and pure-Python kernels on representative workloads.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload is run on both backends; results are checked equal before the
timings are reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from idealspaces import kernels
from idealspaces.families import build_space
from idealspaces.ideals import analyze_ring
from idealspaces.rings import build_ring


def _time(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def workloads():
    ring = build_ring("Z/8 x Z/4 x Z/8")
    lat, cls = analyze_ring(ring)
    idl = build_space(lat, cls, "idl")
    cm, req = idl._classes()
    z256 = build_ring("Z/256")
    strict_up = [idl.above[i] & ~(1 << i) for i in range(idl.k)]
    ideal_of = np.array(idl.ids, dtype=np.int32)
    in_space = np.ones(lat.m, dtype=np.uint8)
    return {
        "ring axioms, Z/256": lambda m: m.check_ring_axioms(
            z256.add_table, z256.mul_table, z256.neg_table, z256.zero, z256.one),
        "up-set enumeration, Idl(Z/8xZ/4xZ/8)": lambda m: len(m.enumerate_upsets(cm, req, 2 ** 20)),
        "soberness scan, Idl(Z/8xZ/4xZ/8)": lambda m: m.sober_scan(cm, req, idl.above, idl.below, 2 ** 20),
        "lower-directed scan, Idl(Z/8xZ/4xZ/8)": lambda m: m.lower_directed_scan(
            strict_up, ideal_of, lat.meet_table, in_space, 4),
        "coprime witnesses, bound 2000": lambda m: (lambda r: (list(r[0]), r[1]))(
            m.least_coprime_prime_pairs(2000, [2, 3, 5, 7, 11, 13, 17, 19])),
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    try:
        compiled = kernels.backend_module("cython")
    except ImportError:
        print("compiled kernels are not built; nothing to compare")
        return 1
    python = kernels.backend_module("python")
    print(f"{'workload':<42}{'cython s':>10}{'python s':>10}{'speedup':>9}")
    for name, fn in workloads().items():
        tc, rc = _time(lambda: fn(compiled), args.repeat)
        tp, rp = _time(lambda: fn(python), 1)
        if rc != rp:
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:<42}{tc:>10.4f}{tp:>10.4f}{tp / max(tc, 1e-9):>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
