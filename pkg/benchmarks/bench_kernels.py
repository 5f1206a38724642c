"""Time the compiled and NumPy log-ratio kernels on identical inputs.

    python3 benchmarks/bench_kernels.py [--outcomes 200000] [--candidates 16]

Prints the best-of-5 wall time per kernel and backend, and the maximum
absolute difference between the two backends' outputs.
"""

import argparse
import timeit

import numpy as np

from evgrow import kernels
from evgrow.kernels import _pykernels

try:
    from evgrow.kernels import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def make_inputs(m: int, k: int, d: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    ys = rng.standard_normal((m, d))
    thetas = rng.standard_normal((k, d))
    log_zs = 0.5 * np.sum(thetas**2, axis=1)  # Gaussian location family
    log_w = np.full(k, -np.log(k))
    return ys, log_w, thetas, log_zs


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outcomes", type=int, default=200_000)
    parser.add_argument("--candidates", type=int, default=16)
    parser.add_argument("--dim", type=int, default=2)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    ys, log_w, thetas, log_zs = make_inputs(args.outcomes, args.candidates, args.dim)
    n = 64.0
    impls = {"python": _pykernels}
    if _ckernels is not None:
        impls["cython"] = _ckernels
    print(f"default backend: {kernels.BACKEND}; m={args.outcomes}, k={args.candidates}, d={args.dim}")

    calls = {
        "mixture_log_ratio": lambda impl: kernels.mixture_log_ratio(ys, log_w, thetas, log_zs, n, impl=impl),
        "best_log_ratio": lambda impl: kernels.best_log_ratio(ys, thetas, log_zs, n, impl=impl),
    }
    for name, call in calls.items():
        times = {}
        for label, impl in impls.items():
            times[label] = min(timeit.repeat(lambda: call(impl), number=1, repeat=args.repeat))
            print(f"{name:18s} {label:7s} {times[label] * 1e3:9.2f} ms")
        if "cython" in times:
            a, b = call(_pykernels), call(_ckernels)
            if isinstance(a, tuple):
                diff = np.max(np.abs(a[0] - b[0]))
                same_idx = bool(np.array_equal(a[1], b[1]))
                extra = f", argmax identical: {same_idx}"
            else:
                diff, extra = np.max(np.abs(a - b)), ""
            print(f"{name:18s} speedup {times['python'] / times['cython']:.2f}x, max |diff| {diff:.2e}{extra}")


if __name__ == "__main__":
    main()
