"""Benchmark the row-reduction kernel: compiled extension vs pure Python.

Row reduction sits under every subspace operation in the engine, so this
is the one hot loop worth compiling.  Run:

    python3 benchmarks/bench_rref.py [--sizes 20,40,80] [--repeat 5]

The pure backend is forced in a subprocess via PERSPLIT_PURE=1 so both
measurements use identical code paths above the kernel.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import statistics
import subprocess
import sys
import time
from fractions import Fraction


def make_matrix(n, seed):
    rng = random.Random(seed)
    return [tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                  for _ in range(n)) for _ in range(n)]


def time_backend(sizes, repeat):
    from persplit._core import BACKEND, rref_rows
    results = {}
    for n in sizes:
        rows = make_matrix(n, seed=n)
        samples = []
        for _ in range(repeat):
            start = time.perf_counter()
            rref_rows(rows, n)
            samples.append(time.perf_counter() - start)
        results[n] = min(samples)
    return BACKEND, results


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="20,40,80")
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--_emit-json", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if args._emit_json:
        backend, results = time_backend(sizes, args.repeat)
        print(json.dumps({"backend": backend, "results": results}))
        return

    runs = {}
    for pure in (False, True):
        env = dict(os.environ)
        env.pop("PERSPLIT_PURE", None)
        if pure:
            env["PERSPLIT_PURE"] = "1"
        out = subprocess.run(
            [sys.executable, __file__, "--sizes", args.sizes,
             "--repeat", str(args.repeat), "--_emit-json"],
            env=env, capture_output=True, text=True, check=True)
        doc = json.loads(out.stdout)
        runs[doc["backend"]] = {int(k): v for k, v in doc["results"].items()}

    backends = sorted(runs)
    print(f"{'n':>5} " + " ".join(f"{b:>12}" for b in backends) + f" {'speedup':>9}")
    for n in sizes:
        times = [runs[b][n] for b in backends]
        line = f"{n:>5} " + " ".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if "cython" in runs and "python" in runs:
            line += f" {runs['python'][n] / runs['cython'][n]:>8.2f}x"
        print(line)
    if len(runs) == 1:
        print(f"(only the {backends[0]} backend is available)")


if __name__ == "__main__":
    main()
