"""Timing comparison of the compiled and pure-numpy kernel backends.

Runs the two batched kernels at several array sizes, then one
end-to-end quadrature and one sphere-oracle query per backend.

    python benchmarks/bench_backends.py
    python benchmarks/bench_backends.py --sizes 1024 65536 --repeats 30
"""

import argparse
import math
import time

import numpy as np

from ballgrad import backend
from ballgrad.closedform4 import EvalPoint
from ballgrad.kernelint import ParamSet, c_numeric
from ballgrad.poisson_oracle import DirectionalQuery, SphereQuadrature, directional_constant


def best_of(repeats, fn, *args):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(names, sizes, repeats):
    rng = np.random.default_rng(0)
    rows = []
    for size in sizes:
        w = np.ascontiguousarray(rng.uniform(0.0, 8.0, size))
        phi = rng.uniform(0.0, np.pi, size)
        cphi = np.ascontiguousarray(np.cos(phi))
        sphi = np.ascontiguousarray(np.sin(phi))
        out = np.empty(size)
        for name in names:
            mod = backend.select(name)
            t_psi = best_of(repeats, mod.psi_integrand_batch, w, 0.6, 1.3, 4, out)
            t_grad = best_of(repeats, mod.grad_dot_batch, cphi, sphi, 0.4, 0.6,
                             4, math.cos(0.7), math.sin(0.7), out)
            rows.append((name, size, t_psi, t_grad))
    return rows


def bench_end_to_end(names, repeats):
    rows = []
    p = EvalPoint(0.5, 0.7)
    ps = ParamSet.from_radius(0.5, 5)
    q = DirectionalQuery(4, 0.6, 0.3)
    sq = SphereQuadrature()
    for name in names:
        backend.select(name)
        t_quad = best_of(repeats, c_numeric, p, ps)
        t_oracle = best_of(repeats, directional_constant, q, sq)
        rows.append((name, t_quad, t_oracle))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+",
                    default=[256, 4096, 65536])
    ap.add_argument("--repeats", type=int, default=20)
    args = ap.parse_args(argv)

    names = ["python"]
    try:
        backend.select("compiled")
        names.insert(0, "compiled")
    except ImportError:
        print("note: compiled extension unavailable, timing python only")

    print(f"{'backend':<10} {'size':>8} {'psi_integrand':>15} {'grad_dot':>15}")
    kernel_rows = bench_kernels(names, args.sizes, args.repeats)
    for name, size, t_psi, t_grad in kernel_rows:
        print(f"{name:<10} {size:>8} {t_psi * 1e6:>13.1f}us {t_grad * 1e6:>13.1f}us")

    if len(names) == 2:
        print("\nspeedup (python / compiled):")
        for size in args.sizes:
            by = {name: (t1, t2) for name, s, t1, t2 in kernel_rows if s == size}
            s_psi = by["python"][0] / by["compiled"][0]
            s_grad = by["python"][1] / by["compiled"][1]
            print(f"  size {size:>7}: psi_integrand x{s_psi:.1f}, grad_dot x{s_grad:.1f}")

    print(f"\n{'backend':<10} {'c_numeric(n=5)':>15} {'oracle(n=4)':>15}")
    for name, t_quad, t_oracle in bench_end_to_end(names, max(3, args.repeats // 4)):
        print(f"{name:<10} {t_quad * 1e3:>13.2f}ms {t_oracle * 1e3:>13.2f}ms")

    backend.select(names[0])


if __name__ == "__main__":
    main()
