"""Compare the numba kernels with their numpy twins.

Each kernel is run on identical inputs with both implementations; the
outputs must agree (np.allclose) before timings are printed.  With
``--end-to-end`` the verification suite is also timed in two subprocesses,
one with HZN_DISABLE_NUMBA=1.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--end-to-end]
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from hznlib import kernels
from hznlib._accel import USE_NUMBA
from hznlib.quad import nodes_01


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(rng: np.random.Generator):
    z = rng.uniform(-3, 3, 200_000) + 1j * rng.uniform(-3, 3, 200_000)
    zr = rng.uniform(0.5, 50, 200_000) + 1j * rng.uniform(-20, 20, 200_000)
    t, w, _ = nodes_01(0)
    levels = [nodes_01(k) for k in range(1, 9)]
    t = np.concatenate([t] + [lv[0] for lv in levels])
    w = np.concatenate([w] + [lv[1] for lv in levels])
    x, u, v = 1.3 + 0.4j, 0.6 + 0.8j, -0.5 + 0.2j
    return [
        ("dilog (2e5 points)", kernels.dilog_nb, kernels.dilog_np, (z,)),
        ("psi - log (2e5 points)", kernels.digamma_minus_log_nb, kernels.digamma_minus_log_np, (zr,)),
        ("Herglotz partial sum (n=4000)", kernels.herglotz_partial_nb, kernels.herglotz_partial_np,
         (0.01 + 0.3j, 4000)),
        (f"F(x;u,v) integrand ({t.size} nodes)", kernels.hzn_integrand_nb, kernels.hzn_integrand_np,
         (t, w, x, u, v)),
        (f"J integrand ({t.size} nodes)", kernels.j_integrand_nb, kernels.j_integrand_np, (t, w, x)),
        (f"T integrand ({t.size} nodes)", kernels.t_integrand_nb, kernels.t_integrand_np, (t, w, x)),
        ("double series |u|=|v|=0.9", kernels.hzn_series_nb, kernels.hzn_series_np,
         (x, 0.9j, -0.9 + 0j, 400, 1e-15)),
    ]


def run_kernels(repeat: int) -> bool:
    rng = np.random.default_rng(0)
    ok = True
    print(f"{'kernel':36s} {'numba [ms]':>11s} {'numpy [ms]':>11s} {'speedup':>8s}  agree")
    for name, fast, slow, args in cases(rng):
        a = np.asarray(fast(*args))      # first call compiles
        b = np.asarray(slow(*args))
        agree = bool(np.allclose(a, b, rtol=1e-12, atol=1e-13))
        ok &= agree
        tf = best_of(lambda: fast(*args), repeat)
        ts = best_of(lambda: slow(*args), repeat)
        print(f"{name:36s} {tf * 1e3:11.3f} {ts * 1e3:11.3f} {ts / tf:8.1f}  {agree}")
    return ok


SUITE = "from hznlib.identities import run_all; run_all(seed=1, samples=20)"


def run_end_to_end() -> None:
    for label, flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, HZN_DISABLE_NUMBA=flag)
        # warm-up run fills the numba cache so compile time is not counted
        subprocess.run([sys.executable, "-c", SUITE], env=env, check=True)
        t0 = time.perf_counter()
        subprocess.run([sys.executable, "-c", SUITE], env=env, check=True)
        print(f"identity suite, 20 samples each, {label:5s}: {time.perf_counter() - t0:6.2f} s")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args()
    if not USE_NUMBA:
        print("numba is disabled; both columns time the same python code paths")
    ok = run_kernels(args.repeat)
    if args.end_to_end:
        run_end_to_end()
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
