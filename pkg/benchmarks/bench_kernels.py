"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel runs on the same inputs under both backends; outputs are checked
for equality before timings are reported.
"""

import argparse
import random
import timeit

import numpy as np

from ihforms._kernels import backend_module, compiled_available
from ihforms.complex import generate

P = 2_147_483_629


def _cases(rng):
    d2 = np.array(generate("torus3").boundary(2), dtype=np.int64)
    d3 = np.array(generate("lens(3,1)").boundary(3), dtype=np.int64)
    B = np.array([[rng.randint(0, P - 1) for _ in range(200)] for _ in range(200)], dtype=np.int64)
    sparse = np.array([[rng.choice((0, 0, 0, 1, -1)) for _ in range(120)] for _ in range(80)], dtype=np.int64)
    T = np.array([[rng.randint(-50, 50) for _ in range(30)] for _ in range(30)], dtype=np.int64)
    T[0, 0] = 7
    return {
        "rref_mod_p 80x120": lambda m: m.rref_mod_p(sparse, P),
        "matmul_mod_p 200x200": lambda m: m.matmul_mod_p(B % P, B % P, P),
        "bareiss_pivot 30x30": lambda m: m.bareiss_pivot(T, 0, 0, 1),
        f"smith_int64 torus3 d2 {d2.shape[0]}x{d2.shape[1]}": lambda m: m.smith_int64(d2),
        f"smith_int64 lens(3,1) d3 {d3.shape[0]}x{d3.shape[1]}": lambda m: m.smith_int64(d3),
    }


def _same(a, b):
    if isinstance(a, tuple):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a, dtype=object), np.asarray(b, dtype=object))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not compiled_available():
        raise SystemExit("compiled kernels not built; run `pip install -e . --no-build-isolation`")
    py, cy = backend_module("python"), backend_module("cython")
    print(f"{'kernel':<36}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, fn in _cases(random.Random(0)).items():
        if not _same(fn(py), fn(cy)):
            raise SystemExit(f"{name}: backends disagree")
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat)) * 1e3
        t_cy = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<36}{t_py:>14.2f}{t_cy:>14.2f}{t_py / t_cy:>9.1f}x")


if __name__ == "__main__":
    main()
