"""Time the compiled kernels against the NumPy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import importlib
import timeit

import numpy as np

from confspace._kernels import _pykernels


def workloads(rng):
    Xf = rng.integers(0, 2, (4500, 39)).astype(np.float64)
    Xb = Xf.astype(np.uint8)
    y = rng.uniform(1, 100, 4500)
    pts = rng.random((1500, 3))
    radii = np.geomspace(0.01, 0.5, 20)
    return {
        "sq_dists_to 4500x39": lambda k: k.sq_dists_to(Xf, Xf[0]),
        "split_scores 4500x39": lambda k: k.split_scores(Xb, y),
        "pair_counts 1500 pts": lambda k: k.pair_counts(pts, radii),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    try:
        ck = importlib.import_module("confspace._kernels._ckernels")
    except ImportError:
        ck = None
        print("compiled kernels not built; timing the NumPy fallback only")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<24}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, call in workloads(rng).items():
        t_py = min(timeit.repeat(lambda: call(_pykernels), number=1, repeat=args.repeat)) * 1e3
        if ck is None:
            print(f"{name:<24}{t_py:>12.2f}{'-':>12}{'-':>10}")
            continue
        a, b = call(_pykernels), call(ck)
        if isinstance(a, tuple):  # split_scores returns (scores, ones)
            a, b = a[0], b[0]
        assert np.allclose(a, b), name
        t_c = min(timeit.repeat(lambda: call(ck), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<24}{t_py:>12.2f}{t_c:>12.2f}{t_py / t_c:>9.1f}x")


if __name__ == "__main__":
    main()
