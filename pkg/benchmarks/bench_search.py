"""Time the complement search on the compiled and the numpy kernels.

    python benchmarks/bench_search.py [--restarts 32] [--steps 500] [--repeat 3]

Each case is searched with the same seed on every available backend; the
reported best values should agree to roughly 1e-9.
"""

import argparse
import time

import numpy as np

from umeb import BipartiteDims, available_constructions, complement_product_kets, numerical_search
from umeb._backend import compiled_kernel
from umeb.construct import StateSet
from umeb.linalg import SubspaceBasis, StateVector, bell_basis, orthonormal_complement

CASES = [(2, 3), (2, 5), (3, 5), (3, 7), (4, 7), (5, 8)]
RANDOM = [(3, 4, 6), (3, 6, 8), (4, 8, 12), (5, 8, 16)]


def random_subspace(d, dp, k, seed=1):
    """Generic k-dimensional subspace: the search runs its full budget here."""
    dims = BipartiteDims(d, dp)
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((dims.size, k)) + 1j * rng.standard_normal((dims.size, k))
    q, _ = np.linalg.qr(a)
    return SubspaceBasis(dims, tuple(StateVector(dims, col) for col in q.T), "random")


def cases():
    bell = bell_basis()
    yield "bell 2x2 (3 states)", orthonormal_complement(
        StateSet.imported(BipartiteDims(2, 2), bell[:3]).as_basis()
    )
    for d, dp in CASES:
        dims = BipartiteDims(d, dp)
        option = available_constructions(dims)[-1]
        tag = option.method if option.m_param is None else f"{option.method} m={option.m_param}"
        yield f"{d}x{dp} {tag}", complement_product_kets(option.build(dims))
    for d, dp, k in RANDOM:
        yield f"{d}x{dp} random", random_subspace(d, dp, k)


def best_time(fn, repeat):
    times, result = [], None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--restarts", type=int, default=32)
    parser.add_argument("--steps", type=int, default=500)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = ["python"] + (["cython"] if compiled_kernel is not None else [])
    if len(backends) == 1:
        print("compiled kernel not built; timing the numpy kernel only")
    print(f"{'case':<24} {'dim':>4} " + " ".join(f"{b + ' s':>10}" for b in backends) + f" {'speedup':>8} {'best':>12}")
    for name, comp in cases():
        timings = {}
        for b in backends:
            timings[b] = best_time(
                lambda: numerical_search(comp, args.restarts, 0, args.steps, backend=b), args.repeat
            )
        speed = timings["python"][0] / timings["cython"][0] if "cython" in timings else float("nan")
        best = timings[backends[-1]][1].best_min_schmidt
        cols = " ".join(f"{timings[b][0]:>10.4f}" for b in backends)
        print(f"{name:<24} {len(comp):>4} {cols} {speed:>8.1f} {best:>12.3e}")


if __name__ == "__main__":
    main()
