"""Time the compiled and numpy node kernels on the same random input.

    python3 benchmarks/bench_kernels.py --sizes 1000 100000 1000000
"""
import argparse
import timeit

import numpy as np

from qlb import kernels
from qlb.checks import node_ensemble
from qlb.lattice import Grid, ModelParams, SpinorField
from qlb.stepper import evolve


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench_nodes(n, repeat, rng):
    u, v, m, a, b, h = node_ensemble(rng, n)
    g = np.zeros_like(u)
    out, ref = {}, None
    for name in kernels.available_backends():
        kernels.use_backend(name)
        res = kernels.node_update(u, v, g, g, h, m, a, b)
        if ref is None:
            ref = res
        elif not all(np.array_equal(x, y) for x, y in zip(ref, res)):
            raise SystemExit(f"backend {name} disagrees with {kernels.available_backends()[0]}")
        out[name] = best_of(lambda: kernels.node_update(u, v, g, g, h, m, a, b), repeat)
    return out


def bench_steps(width, steps, repeat, rng):
    f0 = SpinorField(
        Grid(1 / 512, 0, width - 1),
        rng.standard_normal(width) + 1j * rng.standard_normal(width),
        rng.standard_normal(width) + 1j * rng.standard_normal(width),
    )
    params = ModelParams.gross_neveu(1.0)
    out = {}
    for name in kernels.available_backends():
        kernels.use_backend(name)
        out[name] = best_of(lambda: evolve(f0, params, steps), repeat)
    return out


def report(label, times):
    names = sorted(times)
    cols = "  ".join(f"{name} {times[name] * 1e3:10.3f} ms" for name in names)
    line = f"{label:<28s} {cols}"
    if "cython" in times and "python" in times:
        line += f"  speedup {times['python'] / times['cython']:6.2f}x"
    print(line)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[1000, 100000, 1000000])
    parser.add_argument("--width", type=int, default=4096, help="initial lattice width for the stepping benchmark")
    parser.add_argument("--steps", type=int, default=200)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    previous = kernels.BACKEND
    rng = np.random.default_rng(args.seed)
    print(f"backends: {', '.join(kernels.available_backends())} (default {previous})")
    try:
        for n in args.sizes:
            report(f"node_update n={n}", bench_nodes(n, args.repeat, rng))
        report(f"evolve w={args.width} x{args.steps}", bench_steps(args.width, args.steps, args.repeat, rng))
    finally:
        kernels.use_backend(previous)


if __name__ == "__main__":
    main()
