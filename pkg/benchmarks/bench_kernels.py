"""Compare the compiled kernels with the numpy/Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel runs on identical inputs under both backends; outputs are
checked for agreement before timings are reported.  The end-to-end rows
time whole operations in a subprocess with LINECONG_KERNELS set.
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from linecong.jetcalc import basis
from linecong.kernels import _pykernels

try:
    from linecong.kernels import _ckernels
except ImportError:
    _ckernels = None


def _cases(rng):
    cases = {}
    bs = basis(4, 7)
    a = [int(x) for x in rng.integers(-10 ** 6, 10 ** 6, bs.size)]
    b = [int(x) for x in rng.integers(-10 ** 6, 10 ** 6, bs.size)]
    cases["mul_exact (4 vars, order 7)"] = ("mul_exact", (a, b, bs.mul_rows, bs.size))

    bs3 = basis(3, 4)
    ia, ib, ic = bs3.mul_table
    A = rng.standard_normal((2000, bs3.size))
    B = rng.standard_normal((2000, bs3.size))
    cases["mul_batch_f64 (2000 x order-4 jets)"] = ("mul_batch_f64", (A, B, ia, ib, ic, bs3.size))

    p = 2 ** 31 - 1
    bs6 = basis(3, 6)
    ia, ib, ic = bs6.mul_table
    x = rng.integers(0, p, bs6.size).astype(np.int64)
    y = rng.integers(0, p, bs6.size).astype(np.int64)
    cases["mul_modp (3 vars, order 6)"] = ("mul_modp", (x, y, ia, ib, ic, bs6.size, p))

    M = rng.integers(0, p, (240, 252)).astype(np.int64)
    cases["rank_modp (240 x 252)"] = ("rank_modp", (M, p))

    C = rng.standard_normal((20000, 4))
    cases["cubic_real_roots (20000 cubics)"] = ("cubic_real_roots", (C,))
    return cases


def _same(u, v) -> bool:
    if isinstance(u, tuple):
        return all(_same(a, b) for a, b in zip(u, v))
    if isinstance(u, list):
        return u == list(v)
    return np.allclose(np.asarray(u, dtype=float), np.asarray(v, dtype=float),
                       rtol=1e-9, atol=1e-9, equal_nan=True)


_E2E = {
    "classify Example-1 umbilic": (
        "from linecong.surfaces import elliptic_umbilic_graph;"
        "from linecong.congruence import BlaschkeCongruence;"
        "from linecong.classify import classify_map_germ; from fractions import Fraction;"
        "B = BlaschkeCongruence(elliptic_umbilic_graph())",
        "classify_map_germ(B, (0, 0, 0), Fraction(-1, 2))"),
    "focal sheets 20^3 grid": (
        "from linecong.surfaces import elliptic_umbilic_graph;"
        "from linecong.congruence import BlaschkeCongruence, focal_sheets;"
        "B = BlaschkeCongruence(elliptic_umbilic_graph())",
        "focal_sheets(B, [(-0.1, 0.1)] * 3, 20)"),
}


def _end_to_end(backend: str, setup: str, stmt: str, repeat: int) -> float:
    code = (f"import timeit; {setup}\n"
            f"print(min(timeit.repeat(lambda: {stmt}, number=1, repeat={repeat})))")
    env = dict(os.environ, LINECONG_KERNELS=backend)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                         check=True)
    return float(out.stdout.strip())


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; only the fallback is available")
        return 1
    rng = np.random.default_rng(0)
    print(f"{'kernel':42s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for name, (fn, inputs) in _cases(rng).items():
        py, cy = getattr(_pykernels, fn), getattr(_ckernels, fn)
        if not _same(py(*inputs), cy(*inputs)):
            print(f"{name}: backends disagree")
            return 1
        tp = min(timeit.repeat(lambda: py(*inputs), number=1, repeat=args.repeat)) * 1e3
        tc = min(timeit.repeat(lambda: cy(*inputs), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:42s} {tp:12.3f} {tc:12.3f} {tp / tc:8.1f}x")
    for name, (setup, stmt) in _E2E.items():
        tp = _end_to_end("python", setup, stmt, args.repeat) * 1e3
        tc = _end_to_end("cython", setup, stmt, args.repeat) * 1e3
        print(f"{name:42s} {tp:12.3f} {tc:12.3f} {tp / tc:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
