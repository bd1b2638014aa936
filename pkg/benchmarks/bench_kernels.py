#!/usr/bin/env python3
"""Benchmark the compiled kernel extension against the pure-numpy fallback.

Times the two hot kernels (per-point cycle statistics with the embedded
root find, and the effective-temperature map) on identical random grids.

    python benchmarks/bench_kernels.py --n 2000000 --repeat 3
"""

import argparse
import importlib
import time

import numpy as np


def best_rate(fn, repeat, n):
    best = 0.0
    for _ in range(repeat):
        started = time.perf_counter()
        fn()
        elapsed = time.perf_counter() - started
        best = max(best, n / elapsed)
    return best


def load_backends():
    backends = {}
    for name in ("relmachine._kernels", "relmachine._kernels_py"):
        try:
            backends[name.rsplit(".", 1)[-1].lstrip("_")] = importlib.import_module(name)
        except ImportError:
            print(f"{name}: not available (skipped)")
    return backends


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=1_000_000,
                        help="grid points per timing run")
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions (best is reported)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    n = args.n
    omega_a = np.ones(n)
    omega_b = rng.uniform(0.02, 2.0, n)
    a = rng.uniform(1e-3, 20.0, n)
    b = rng.uniform(1e-3, 20.0, n)
    products = rng.uniform(1e-3, 30.0, n)
    speeds = rng.uniform(0.0, 0.97, n)

    backends = load_backends()
    if not backends:
        raise SystemExit("no kernel backend importable")

    rates = {}
    print(f"{n} points, best of {args.repeat} runs\n")
    print(f"{'backend':12s} {'eval_cycle':>14s} {'beta_eff':>14s}")
    for name, mod in sorted(backends.items()):
        cycle = best_rate(lambda: mod.eval_cycle(omega_a, omega_b, a, b),
                          args.repeat, n)
        beta = best_rate(lambda: mod.beta_eff_products(products, speeds),
                         args.repeat, n)
        rates[name] = (cycle, beta)
        print(f"{name:12s} {cycle / 1e6:10.2f} M/s {beta / 1e6:10.2f} M/s")

    if "kernels" in rates and "kernels_py" in rates:
        cy, py = rates["kernels"], rates["kernels_py"]
        print(f"\nspeedup (compiled / python): "
              f"eval_cycle {cy[0] / py[0]:.2f}x, beta_eff {cy[1] / py[1]:.2f}x")

    # sanity: the two backends agree on a small slice
    if len(backends) == 2:
        v1, r1 = backends["kernels"].eval_cycle(omega_a[:512], omega_b[:512],
                                                a[:512], b[:512])
        v2, r2 = backends["kernels_py"].eval_cycle(omega_a[:512], omega_b[:512],
                                                   a[:512], b[:512])
        assert np.array_equal(r1, r2)
        assert np.allclose(v1, v2, rtol=1e-11, equal_nan=True)
        print("cross-check: backends agree on a 512-point slice")


if __name__ == "__main__":
    main()
