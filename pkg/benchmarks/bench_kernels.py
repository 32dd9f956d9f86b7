"""Time the compiled kernels against the pure-Python ones.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends are run on the same inputs and their outputs are compared
before any timing is reported.
"""

import argparse
import time

import numpy as np

from picx import kernels
from picx.ffield import build_system, sample_configuration

CASES = {
    "exceptional r=8, d<=20": lambda k: [k.sorted_vectors(8, d, 3 * d - 1, d * d + 1, -1, 0) for d in range(1, 21)],
    "genus-2 curves r=12, d<=12": lambda k: [k.sorted_vectors(12, d, 3 * d + 1, d * d - 1, d, 0) for d in range(1, 13)],
    "genus-4 curves r=18, d<=8": lambda k: [k.sorted_vectors(18, d, 3 * d + 3, d * d - 3, d, 0) for d in range(1, 9)],
    "failing classes r=9, d<=30": lambda k: [
        k.pairing_bounded(9, d, 1, (1,) * 9, 3 * d - 2, d * d + 3 * d - 10) for d in range(1, 31)
    ],
    # every sorted standard vector with chi >= 1: about 75k outputs, little pruning
    "standard classes r=9, d<=20": lambda k: [
        k.pairing_bounded(9, d, 0, (1,) * 9, 0, d * d + 3 * d) for d in range(1, 21)
    ],
}


def _matrix_case():
    config = sample_configuration(9, 32003, np.random.default_rng(1))
    return build_system(15, (6,) * 8 + (5,), config).matrix


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    found = kernels.backends()
    if "compiled" not in found:
        print("compiled extension not built; only the Python backend is available")
    matrix = _matrix_case()
    cases = dict(CASES)
    cases[f"rank mod p {matrix.shape[0]}x{matrix.shape[1]}"] = lambda k: k.rank_mod_p(matrix, 32003)

    print(f"{'case':36s}" + "".join(f"{name:>12s}" for name in found) + (f"{'speedup':>10s}" if len(found) > 1 else ""))
    for label, fn in cases.items():
        outputs = {name: fn(mod) for name, mod in found.items()}
        first = next(iter(outputs.values()))
        if any(out != first for out in outputs.values()):
            raise SystemExit(f"backends disagree on {label}")
        times = {name: best_of(lambda: fn(mod), args.repeat) for name, mod in found.items()}
        row = f"{label:36s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times.values())
        if len(times) > 1:
            row += f"{times['python'] / times['compiled']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
