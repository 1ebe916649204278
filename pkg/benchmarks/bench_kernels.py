"""Time the compiled kernels against their pure-Python twins.

Usage: python3 benchmarks/bench_kernels.py [--size N] [--repeat R] [--seed S]

Inputs are random partial maps on N points. The wand inputs have a body and a
guard with disjoint supports, so the loop length is what varies.
"""

from __future__ import annotations

import argparse
import random
import timeit

from kleenewand import _kernels_py

try:
    from kleenewand import _kernels as _compiled
except ImportError:
    _compiled = None


def random_table(rng: random.Random, n: int, m: int, density: float) -> tuple:
    return tuple(rng.randrange(m) if rng.random() < density else -1 for _ in range(n))


def wand_inputs(rng: random.Random, n: int, a: int) -> tuple[tuple, tuple]:
    guard_pts = set(rng.sample(range(n), max(1, n // 10)))
    f = tuple(-1 if x in guard_pts else rng.randrange(n) for x in range(n))
    g = tuple(rng.randrange(a) if x in guard_pts else -1 for x in range(n))
    return f, g


def bench(size: int, repeat: int, seed: int) -> list[tuple[str, float, float | None]]:
    rng = random.Random(seed)
    f = random_table(rng, size, size, 0.8)
    g = random_table(rng, size, size, 0.8)
    wf, wg = wand_inputs(rng, size, 4)
    jobs = {
        "compose": lambda k: k.compose(f, g),
        "restrict": lambda k: k.restrict(f),
        "union": lambda k: k.union(f, tuple(-1 if v >= 0 else 0 for v in f)),
        "wand": lambda k: k.wand(wf, wg),
    }
    rows = []
    for name, job in jobs.items():
        py = min(timeit.repeat(lambda: job(_kernels_py), number=1, repeat=repeat))
        cy = None
        if _compiled is not None:
            assert job(_compiled) == job(_kernels_py), name
            cy = min(timeit.repeat(lambda: job(_compiled), number=1, repeat=repeat))
        rows.append((name, py, cy))
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print("size=%d  compiled kernels: %s" % (args.size, "yes" if _compiled else "no"))
    print("%-9s %12s %12s %8s" % ("kernel", "python (ms)", "cython (ms)", "speedup"))
    for name, py, cy in bench(args.size, args.repeat, args.seed):
        if cy is None:
            print("%-9s %12.3f %12s %8s" % (name, py * 1e3, "-", "-"))
        else:
            print("%-9s %12.3f %12.3f %7.1fx" % (name, py * 1e3, cy * 1e3, py / cy))


if __name__ == "__main__":
    main()
