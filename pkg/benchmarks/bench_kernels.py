#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallbacks.

Runs each hot kernel under both backends in subprocesses (the backend is
fixed at import time via THETA_LAB_BACKEND) and prints a timing table.

    python3 benchmarks/bench_kernels.py
"""

import json
import os
import subprocess
import sys

WORKER = r"""
import json
import time

import numpy as np

from thetalab import _kernels

def best_of(fn, repeats=5):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)

results = {"backend": _kernels.BACKEND}

tau = 0.05 + 0.004j  # low imaginary part -> long sums
_kernels.theta_class_sums(6, tau, 10)  # warm up (jit compile)
results["theta_class_sums(m=6, R=4000)"] = best_of(
    lambda: _kernels.theta_class_sums(6, tau, 4000)
)

_kernels.riemann_theta_sum(tau, 10)
results["riemann_theta_sum(R=20000)"] = best_of(
    lambda: _kernels.riemann_theta_sum(tau, 20000)
)

rng = np.random.default_rng(0)
mats = rng.integers(0, 4, size=(20000, 4, 4), dtype=np.uint8)
gens = rng.integers(0, 4, size=(20, 4, 4), dtype=np.uint8)
_kernels.mod4_products(mats[:8], gens)
results["mod4_products(20000x20, 4x4)"] = best_of(
    lambda: _kernels.mod4_products(mats, gens), repeats=3
)

big = _kernels.mod4_products(mats, gens)
_kernels.pack_mod4(big[:8])
results["pack_mod4(400000, 4x4)"] = best_of(lambda: _kernels.pack_mod4(big), repeats=3)

print(json.dumps(results))
"""


def run_backend(backend: str) -> dict:
    env = dict(os.environ, THETA_LAB_BACKEND=backend)
    out = subprocess.run(
        [sys.executable, "-c", WORKER], env=env, capture_output=True, text=True
    )
    if out.returncode != 0:
        raise RuntimeError(f"{backend} worker failed:\n{out.stderr}")
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> None:
    numba = run_backend("numba")
    numpy_ = run_backend("numpy")
    keys = [k for k in numba if k != "backend"]
    width = max(len(k) for k in keys)
    print(f"{'kernel':<{width}}  {'numba':>10}  {'numpy':>10}  speedup")
    for key in keys:
        t_nb, t_np = numba[key], numpy_[key]
        print(f"{key:<{width}}  {t_nb * 1e3:9.3f}ms  {t_np * 1e3:9.3f}ms  {t_np / t_nb:6.2f}x")


if __name__ == "__main__":
    main()
