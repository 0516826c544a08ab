"""Time the series kernels under each available backend.

    python3 benchmarks/bench_kernels.py [--sizes 64 256 1024] [--p 3] [--repeat 5]
"""
import argparse
import random
import timeit

from wildjet import LaurentSeries, field, kernels


def _poly(rnd, n, p):
    a = [rnd.randrange(p) for _ in range(n)]
    a[0] = a[0] or 1
    return a


def bench(sizes, p, repeat):
    rnd = random.Random(0)
    F = field(p)
    rows = []
    for n in sizes:
        a, b = _poly(rnd, n, p), _poly(rnd, n, p)
        s, t = LaurentSeries(F, 0, a, n), LaurentSeries(F, 0, b, n)
        for name in sorted(kernels.BACKENDS):
            kernels.set_backend(name)
            mod = kernels.BACKENDS[name]
            cases = {
                "mul_trunc": lambda: mod.mul_trunc(a, b, n, p),
                "inv_trunc": lambda: mod.inv_trunc(a, n, p),
                "series mul": lambda: s * t,
                "series invert": lambda: s.invert(),
            }
            for label, fn in cases.items():
                best = min(timeit.repeat(fn, number=1, repeat=repeat))
                rows.append((n, label, name, best))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 256, 1024])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    before = kernels.BACKEND
    try:
        rows = bench(args.sizes, args.p, args.repeat)
    finally:
        kernels.set_backend(before)
    print(f"{'n':>6}  {'operation':<14} {'backend':<8} {'best (ms)':>10}")
    for n, label, name, best in rows:
        print(f"{n:>6}  {label:<14} {name:<8} {best * 1e3:>10.3f}")


if __name__ == "__main__":
    main()
