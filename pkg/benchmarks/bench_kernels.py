"""Timing comparison of the compiled kernels against the NumPy fallback.

Run after installing the package:

    python3 benchmarks/bench_kernels.py [--repeats N]
"""
import argparse
import time

import numpy as np

from rnmw import aarset, available_backends, fit_mle, set_backend
from rnmw import _kernels

A, B, LAM = 0.102, 3.644e-08, 0.18


def timeit(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def build_cases():
    ds = aarset()
    xf, xc = ds.failure_times, ds.censored_times
    x_big = np.linspace(0.001, 90.0, 1_000_000)
    targets = np.geomspace(1e-8, 700.0, 1_000_000)
    sx = np.sqrt(xf)
    u = 1.0 / (2.0 * sx)
    v = (1.0 + 2.0 * LAM * xf) * np.exp(LAM * xf) / (2.0 * sx)
    s1 = float(np.sum(sx))
    s2 = float(np.sum(sx * np.exp(LAM * xf)))

    def loglik_many():
        for _ in range(2000):
            _kernels.loglik(A, B, LAM, xf, xc)

    def score_info_many():
        for _ in range(1000):
            _kernels.score_info(A, B, LAM, xf, xc)

    def inner_many():
        for _ in range(1000):
            _kernels.inner_ab(u, v, s1, s2, 50.0 / (2.0 * s1),
                              0.012 * 50.0 / s2, 1e-9, 300)

    return [
        ("loglik, n=50, 2000 calls", loglik_many),
        ("score+information, n=50, 1000 calls", score_info_many),
        ("concave inner fit, 1000 calls", inner_many),
        ("cumulative hazard, 1e6 points", lambda: _kernels.cumhaz(A, B, LAM, x_big)),
        ("hazard, 1e6 points", lambda: _kernels.hazard(A, B, LAM, x_big)),
        ("quantile solve, 1e6 targets",
         lambda: _kernels.quantile_y(0.5, 0.05, 0.3, targets)),
        ("full data fit", lambda: fit_mle(ds, "rnmw")),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    backends = available_backends()
    cases = build_cases()
    results = {}
    for name in backends:
        set_backend(name)
        results[name] = [timeit(fn, args.repeats) for _, fn in cases]

    width = max(len(label) for label, _ in cases)
    header = "%-*s" % (width, "case")
    for name in backends:
        header += "  %12s" % name
    if "native" in backends and "fallback" in backends:
        header += "  %8s" % "speedup"
    print(header)
    print("-" * len(header))
    for i, (label, _) in enumerate(cases):
        line = "%-*s" % (width, label)
        for name in backends:
            line += "  %10.2f ms" % (1000.0 * results[name][i])
        if "native" in backends and "fallback" in backends:
            line += "  %7.1fx" % (results["fallback"][i] / results["native"][i])
        print(line)


if __name__ == "__main__":
    main()
