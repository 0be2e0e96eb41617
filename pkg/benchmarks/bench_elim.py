"""Compare the compiled and pure-Python elimination kernels.

    python benchmarks/bench_elim.py [--repeat 5]

Kernel timings use random small-integer matrices shaped like cohomology
differentials (sparse, wide).  The end-to-end timing runs a cohomology
table in a subprocess per backend, since the backend is chosen at import.
"""

import argparse
import os
import random
import subprocess
import sys
import time

from cdgakit import _elim_py, elimination


def random_rows(rng, rows, cols, density):
    return [[rng.choice((-2, -1, 1, 2)) if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)]


def overflows(rows, ncols):
    try:
        elimination.echelon_compiled([r[:] for r in rows], ncols)
    except OverflowError:
        return True
    return False


def time_kernel(fn, matrices, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        for rows, ncols in matrices:
            fn([r[:] for r in rows], ncols)
        best = min(best, time.perf_counter() - start)
    return best


END_TO_END = (
    "import time, cdgakit;"
    "from cdgakit.spaces import product, cpn, kodaira_thurston;"
    "m = product(product(kodaira_thurston(), cpn(3)), cpn(2));"
    "t = time.perf_counter(); cdgakit.cohomology_table(m, 10);"
    "print(cdgakit.BACKEND, time.perf_counter() - t)"
)


def end_to_end(pure):
    env = dict(os.environ)
    if pure:
        env["CDGAKIT_PURE_PYTHON"] = "1"
    else:
        env.pop("CDGAKIT_PURE_PYTHON", None)
    out = subprocess.run([sys.executable, "-c", END_TO_END], capture_output=True, text=True, env=env, check=True)
    backend, seconds = out.stdout.split()
    return backend, float(seconds)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if elimination.BACKEND != "cython":
        print("compiled kernel not available; build with `pip install -e . --no-build-isolation`")
        return 1

    rng = random.Random(0)
    print(f"{'shape':>12} {'density':>8} {'fallback':>8} {'dispatch s':>10} {'python s':>10} {'speedup':>8}")
    for rows, cols, density, count in [(20, 40, 0.1, 50), (60, 120, 0.03, 10), (150, 300, 0.01, 3), (300, 300, 0.006, 2)]:
        mats = [(random_rows(rng, rows, cols, density), cols) for _ in range(count)]
        for m, ncols in mats:
            assert elimination.echelon([r[:] for r in m], ncols) == _elim_py.echelon([r[:] for r in m], ncols)
        fell_back = sum(overflows(m, ncols) for m, ncols in mats)
        tc = time_kernel(elimination.echelon, mats, args.repeat)
        tp = time_kernel(_elim_py.echelon, mats, args.repeat)
        print(f"{rows:>5}x{cols:<6} {density:>8.2f} {fell_back:>4}/{count:<3} {tc:>10.4f} {tp:>10.4f} {tp / tc:>7.1f}x")

    print()
    for pure in (False, True):
        backend, seconds = end_to_end(pure)
        print(f"end-to-end cohomology (KT x CP^3 x CP^2, degree 10), backend {backend}: {seconds:.3f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
