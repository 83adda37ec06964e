"""Compare the compiled prime-field kernels with the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py``.  The end-to-end row times a
global dimension computation in a fresh interpreter for each backend.
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from homolog import _fpkernels_py as pure

try:
    from homolog import _fpkernels as compiled
except ImportError:
    compiled = None

END_TO_END = (
    "import time; from homolog.corpus import lookup; from homolog.syzygy import global_dimension;"
    "A = lookup('final-example').document().algebra(); t = time.perf_counter();"
    "global_dimension(A); print(time.perf_counter() - t)"
)


def _best(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_rows(sizes, p: int, repeat: int):
    rng = np.random.default_rng(0)
    for n in sizes:
        A = rng.integers(0, p, size=(n, n), dtype=np.int64)
        B = rng.integers(0, p, size=(n, n), dtype=np.int64)
        for name, impl in (("rref", "rref_mod"), ("matmul", "matmul_mod")):
            args = (A,) if name == "rref" else (A, B)
            py = _best(lambda: getattr(pure, impl)(*args, p), repeat)
            cy = _best(lambda: getattr(compiled, impl)(*args, p), repeat) if compiled else float("nan")
            yield name, n, py, cy


def end_to_end(pure_python: bool) -> float:
    env = dict(os.environ, HOMOLOG_PURE_PYTHON="1" if pure_python else "0")
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main(argv=None) -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="*", default=[16, 64, 128, 256])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    print(f"{'kernel':<8}{'n':>6}{'numpy (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, n, py, cy in kernel_rows(args.sizes, args.p, args.repeat):
        print(f"{name:<8}{n:>6}{py * 1e3:>14.2f}{cy * 1e3:>14.2f}{py / cy:>10.1f}")
    py, cy = end_to_end(True), end_to_end(False)
    print(f"{'gldim':<8}{'final':>6}{py * 1e3:>14.1f}{cy * 1e3:>14.1f}{py / cy:>10.1f}")


if __name__ == "__main__":
    main()
