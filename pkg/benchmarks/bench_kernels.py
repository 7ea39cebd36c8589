"""Compare the numba kernels with their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each kernel is run once per backend to warm up (JIT compile), then timed;
the results of the two backends are also checked for equality.
"""

import argparse
import time

import numpy as np

from k3div import kernels
from k3div._accel import HAVE_NUMBA
from k3div.gf.field import FiniteField2k
from k3div.lattice import build_lattice, discriminant_form
from k3div.lattice.discriminant import _scaled


def _histogram_case():
    D = discriminant_form(build_lattice("U(2)+~A1^20"))
    N = 2
    qd, bm = _scaled(D, N)
    orders = np.array(D.invariant_factors, dtype=np.int64)
    return lambda b: kernels.form_histogram(orders, qd, bm, 2 * N, b)


def _sqr_iter_case():
    F = FiniteField2k(4)
    rng = np.random.default_rng(1)
    f = rng.integers(0, 16, 61)
    f[-1] = 1
    a = rng.integers(0, 16, 60)
    return lambda b: kernels.gf_poly_sqr_iter(a, f, 200, F.exp, F.log, b)


def _rank_case():
    F = FiniteField2k(3)
    rng = np.random.default_rng(2)
    m = rng.integers(0, 8, (300, 300))
    return lambda b: kernels.gf_rank(m, F.exp, F.log, b)


CASES = {
    "form_histogram (2^20 classes)": _histogram_case,
    "gf_poly_sqr_iter (deg 60, 200 squarings, GF(16))": _sqr_iter_case,
    "gf_rank (300x300 over GF(8))": _rank_case,
}


def timeit(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = ["numpy"] + (["numba"] if HAVE_NUMBA else [])
    print(f"{'kernel':52s} " + " ".join(f"{b:>10s}" for b in backends) + ("    speedup" if HAVE_NUMBA else ""))
    for name, make in CASES.items():
        fn = make()
        times, outs = [], []
        for b in backends:
            fn(b)  # warm-up
            t, out = timeit(lambda: fn(b), args.repeat)
            times.append(t)
            outs.append(np.asarray(out))
        if len(outs) == 2 and not np.array_equal(outs[0], outs[1]):
            raise SystemExit(f"{name}: backends disagree")
        row = f"{name:52s} " + " ".join(f"{t * 1e3:8.2f}ms" for t in times)
        if len(times) == 2:
            row += f"  {times[0] / times[1]:8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
