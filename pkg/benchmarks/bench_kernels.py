"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from gcpseudo import _pykernels
from gcpseudo.cone import cone_system, grid
from gcpseudo.field import FieldMatrix, nullspace
from gcpseudo.fixtures import example_h, example_htilde
from gcpseudo.oracle import _lifted, cover_assignments

try:
    from gcpseudo import _ckernels
except ImportError:
    _ckernels = None


def cases():
    H = example_h()
    A = np.ascontiguousarray(cone_system(H).coefficient_matrix())
    X = np.ascontiguousarray(grid(3, 4, 4).reshape(-1, 8))
    yield "cone_mask  [4,2] code, 5^8 matrices", "cone_mask", (A, X)

    yield "codewords  example 4-cover", "codeword_pseudomatrices", (nullspace(example_htilde()), 3, 4, 4)

    row = FieldMatrix.from_rows([[1, 2, 2, 1]], 3)
    perms = next(iter(cover_assignments(row, 3, canonical=False)))
    yield "codewords  weight-4 row, 3-cover", "codeword_pseudomatrices", (nullspace(_lifted(row, 3, perms)), 3, 4, 3)

    perms = next(iter(cover_assignments(H, 4)))
    yield "codewords  [4,2] code, 4-cover", "codeword_pseudomatrices", (nullspace(_lifted(H, 4, perms)), 3, 4, 4)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled extension not built; only the numpy path is available")
    print(f"{'case':40s} {'numpy':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, fn, inputs in cases():
        py = min(timeit.repeat(lambda: getattr(_pykernels, fn)(*inputs), number=1, repeat=args.repeat))
        if _ckernels is None:
            print(f"{name:40s} {py * 1e3:9.2f}ms {'-':>10s} {'-':>8s}")
            continue
        c = min(timeit.repeat(lambda: getattr(_ckernels, fn)(*inputs), number=1, repeat=args.repeat))
        same = np.array_equal(getattr(_pykernels, fn)(*inputs), getattr(_ckernels, fn)(*inputs))
        note = "" if same else "  MISMATCH"
        print(f"{name:40s} {py * 1e3:9.2f}ms {c * 1e3:9.2f}ms {py / c:7.1f}x{note}")


if __name__ == "__main__":
    main()
