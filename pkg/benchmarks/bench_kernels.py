"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Prints one row per (kernel, case) with the best-of-N time of each backend,
the speedup and the max deviation between their outputs.
"""
import argparse
import timeit

import numpy as np

from lacsphere import kernels
from lacsphere.kernels import python as py

CASES = [
    ("enumerate_shell", "d=4 lam=2000", lambda k: k.enumerate_shell(4, 2000)),
    ("enumerate_shell", "d=5 lam=500", lambda k: k.enumerate_shell(5, 500)),
    ("phase_histogram", "q=24 d=4", lambda k: k.phase_histogram(24, np.array([1, 5, 7, 11]))),
    ("phase_histogram", "q=15 d=5", lambda k: k.phase_histogram(15, np.array([1, 2, 3, 4, 5]))),
]


def _trig_case():
    pts = py.enumerate_shell(4, 511)
    xi = np.random.default_rng(0).uniform(-0.5, 0.5, (256, 4))
    return ("shell_trig_sum", f"{len(pts)} pts x 256 xi", lambda k: k.shell_trig_sum(pts, xi))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels.compiled is None:
        raise SystemExit("compiled kernels are not built; run `python setup.py build_ext --inplace`")
    print(f"{'kernel':16s} {'case':24s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s} {'max diff':>10s}")
    for name, case, fn in CASES + [_trig_case()]:
        a, b = fn(py), fn(kernels.compiled)
        diff = float(np.abs(np.asarray(a) - np.asarray(b)).max()) if np.size(a) else 0.0
        tp = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: fn(kernels.compiled), number=1, repeat=args.repeat))
        print(f"{name:16s} {case:24s} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f} {diff:10.2g}")


if __name__ == "__main__":
    main()
