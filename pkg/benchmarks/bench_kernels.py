"""Micro-benchmark of the hot kernels on both backends, plus an end-to-end
timing of the full claim suite with the compiled core enabled and disabled.

Run from the repository root:

    python3 benchmarks/bench_kernels.py
"""

import os
import subprocess
import sys
import time
import timeit

import numpy as np

from fractalc import _kernels_py as pure

try:
    from fractalc import _kernels_cy as fast
except ImportError:
    fast = None


def bench(label, fn, number=None):
    if number is None:
        # Aim for ~0.2 s per measurement.
        probe = timeit.timeit(fn, number=5) / 5.0
        number = max(5, int(0.2 / max(probe, 1e-9)))
    best = min(timeit.repeat(fn, number=number, repeat=3)) / number
    print(f"  {label:<34} {best * 1e6:10.1f} us/call  (x{number})")
    return best


def compare(name, make_call):
    print(f"{name}:")
    t_py = bench("python", make_call(pure))
    if fast is not None:
        t_cy = bench("cython", make_call(fast))
        print(f"  speedup: {t_py / t_cy:5.1f}x")
    print()


def main():
    print(f"backends: python{' + cython' if fast is not None else ' only'}\n")

    x = np.linspace(0.0, 1.0, 4096)
    compare("abel_weights(0.5, 4096)", lambda m: lambda: m.abel_weights(0.5, 4096))
    compare("gl_weights(0.5, 16384)", lambda m: lambda: m.gl_weights(0.5, 16384))
    compare(
        "weierstrass_sum(0.5, 2, 24, n=4096)",
        lambda m: lambda: m.weierstrass_sum(0.5, 2.0, 24, x),
    )

    print("end-to-end `check all` (subprocess, includes interpreter start):")
    for label, extra_env in (("cython", {}), ("python", {"FRACTALC_PURE_PYTHON": "1"})):
        env = dict(os.environ, FRACTALC_SEED="0", **extra_env)
        start = time.perf_counter()
        proc = subprocess.run(
            [sys.executable, "-m", "fractalc", "check", "all"],
            capture_output=True,
            text=True,
            env=env,
        )
        elapsed = time.perf_counter() - start
        status = "ok" if proc.returncode == 0 else f"rc={proc.returncode}"
        print(f"  {label:<10} {elapsed:6.2f} s  ({status})")


if __name__ == "__main__":
    main()
