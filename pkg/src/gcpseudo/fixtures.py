"""Built-in example data: the [4,2] ternary code and its degree-4 pseudocodeword."""

from __future__ import annotations

import numpy as np

from gcpseudo.field import FieldMatrix
from gcpseudo.tanner import CoverLabeling, cover_from_lifted

H_4_2 = [
    [1, 2, 2, 1],
    [2, 0, 1, 2],
]

CODEWORD = [1, 0, 2, 1]

# degree-4 lifted parity-check matrix, blocks are (row j, column i)
H_TILDE = [
    [0, 0, 1, 0, 2, 0, 0, 0, 0, 0, 2, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 2, 0, 0, 0, 0, 0, 2, 0, 1, 0, 0],
    [1, 0, 0, 0, 0, 0, 2, 0, 2, 0, 0, 0, 0, 0, 1, 0],
    [0, 1, 0, 0, 0, 0, 0, 2, 0, 2, 0, 0, 0, 0, 0, 1],
    [0, 0, 2, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 2, 0],
    [0, 0, 0, 2, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 2],
    [2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 2, 0, 0, 0],
    [0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 2, 0, 0],
]

P_VECTOR = [1, 1, 2, 2, 1, 1, 2, 2, 0, 0, 1, 1, 0, 0, 1, 1]

F_EXAMPLE = [
    [2, 2, 2, 2],
    [2, 2, 0, 0],
]

H_S = [[1, 0, 1, 1]]

F_HAT = [
    [2, 2, 2, 0],
    [2, 2, 0, 2],
]

# stage-2 selections (k, l), 0-based, of the lifting example
TRACE_CHOICES = [(2, 0), (2, 0)]


def example_h() -> FieldMatrix:
    return FieldMatrix.from_rows(H_4_2, 3)


def example_htilde() -> FieldMatrix:
    return FieldMatrix.from_rows(H_TILDE, 3)


def example_hs() -> FieldMatrix:
    return FieldMatrix.from_rows(H_S, 3)


def example_cover() -> CoverLabeling:
    cover = cover_from_lifted(example_h(), example_htilde(), 4)
    return CoverLabeling.from_vector(cover, P_VECTOR)


MATRICES = {
    "paper-4-2": example_h,
    "paper-hs": example_hs,
    "paper-htilde": example_htilde,
}

PSEUDOMATRICES = {
    "paper-f": lambda: np.array(F_EXAMPLE),
    "paper-fhat": lambda: np.array(F_HAT),
}

COVERS = {
    "paper-cover-16": example_cover,
}

NAMES = sorted([*MATRICES, *PSEUDOMATRICES, *COVERS])
