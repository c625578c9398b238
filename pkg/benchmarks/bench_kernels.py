"""Compare the compiled and pure-Python integer kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--quick]

Each row reports the best-of-N wall time for both backends, the speedup, and
whether the two outputs are identical.
"""
from __future__ import annotations

import argparse
import sys
import timeit

import numpy as np

from cmunits import _kernels
from cmunits.fields import get_field


def cases(quick: bool):
    primes = [101, 499] if quick else [101, 499, 1999, 4999]
    for p in primes:
        yield f"bernoulli_mod_p p={p}", "bernoulli_mod_p", (p,)
    for d, p in ([(4, 101)] if quick else [(4, 101), (163, 1999), (8, 4999)]):
        F = get_field(d)
        yield (f"gen_bernoulli_mod_p d={d} p={p}", "gen_bernoulli_mod_p",
               (p, d, list(F.chi_K.values), p - 2))
    for d, p, n in ([(4, 5, 2)] if quick else [(4, 5, 2), (3, 7, 2), (43, 11, 2), (163, 5, 2)]):
        F = get_field(d)
        pn = p**n
        yield (f"nu_class_sums d={d} p={p} n={n}", "nu_class_sums",
               (d, p, pn, [F.chi(a) for a in range(d * pn)]))


def _same(a, b) -> bool:
    return np.array_equal(np.asarray(a), np.asarray(b))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="small sizes only")
    args = ap.parse_args(argv)

    py = _kernels.python_backend
    cy = _kernels.compiled_backend
    if cy is None:
        print("compiled backend not available; build with `pip install -e . --no-build-isolation`")
        return 1

    print(f"{'kernel':<36} {'python s':>10} {'cython s':>10} {'speedup':>8}  equal")
    for label, name, fargs in cases(args.quick):
        fp, fc = getattr(py, name), getattr(cy, name)
        tp = min(timeit.repeat(lambda: fp(*fargs), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: fc(*fargs), number=1, repeat=args.repeat))
        same = _same(fp(*fargs), fc(*fargs))
        print(f"{label:<36} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x  {same}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
