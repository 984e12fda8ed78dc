"""Time the compiled and pure-Python kernel backends on the same workloads.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--steps N] [--products N]
"""
import argparse
import math
import timeit

import numpy as np

from mvspacetime import _backend, algebra, gravity
from mvspacetime.gravity import MetricModel, PhysicalConstants, circular_state


def workloads(kern, products, steps):
    k = PhysicalConstants()
    mass = 1e11 * k.M_sun
    radius = 26_000 * k.light_year
    model = MetricModel(k, mass)
    table = kern.ProductTable(*algebra.build_basis_table())
    rng = np.random.default_rng(0)
    pairs = [(tuple(rng.uniform(-1, 1, 8)), tuple(rng.uniform(-1, 1, 8))) for _ in range(products)]
    state = circular_state(model, radius, expansion_acceleration=k.a0)
    v = gravity.metric_circular_speed(model, radius, state.velocity[4])
    geo_step = k.c * 2 * math.pi * radius / v / 1000
    v_red = gravity.circular_speed(model, radius)
    red_step = 2 * math.pi * radius / v_red / 1000

    def product():
        for a, b in pairs:
            table.product(a, b)

    def geodesic():
        gravity.integrate_geodesic(state, model, steps, geo_step, kern)

    def reduced():
        gravity.integrate_reduced((radius, 0, 0), (0, v_red, 0), model, steps, red_step, kern)

    return {f"geometric product x{products}": product,
            f"geodesic RK4 x{steps}": geodesic,
            f"reduced RK4 x{steps}": reduced}


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="timing repetitions; the best is kept")
    parser.add_argument("--steps", type=int, default=20_000, help="integrator steps per run")
    parser.add_argument("--products", type=int, default=20_000, help="products per run")
    args = parser.parse_args(argv)

    names = _backend.available()
    timings = {}
    for name in names:
        for label, fn in workloads(_backend.load(name), args.products, args.steps).items():
            timings.setdefault(label, {})[name] = min(timeit.repeat(fn, number=1, repeat=args.repeat))

    print(f"{'workload':<28s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, row in timings.items():
        line = f"{label:<28s}" + "".join(f"{row[n] * 1e3:>10.2f}ms" for n in names)
        if len(names) > 1:
            line += f"{row['python'] / row['compiled']:>11.1f}x"
        print(line)
    if "compiled" not in names:
        print("compiled backend not built; only the pure-Python kernels were timed")


if __name__ == "__main__":
    main()
