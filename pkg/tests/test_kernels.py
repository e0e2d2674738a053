import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gcpseudo import _pykernels, kernels
from gcpseudo.cone import cone_system, grid
from gcpseudo.field import FieldMatrix, nullspace
from gcpseudo.fixtures import example_htilde

ckernels = pytest.importorskip("gcpseudo._ckernels")

from conftest import field_matrices


def test_backend_selected():
    forced = os.environ.get("GCPSEUDO_PURE_PYTHON") == "1"
    assert kernels.BACKEND == ("python" if forced else "cython")


def test_env_var_forces_numpy():
    env = {**os.environ, "GCPSEUDO_PURE_PYTHON": "1"}
    out = subprocess.run(
        [sys.executable, "-c", "from gcpseudo import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


@settings(max_examples=100, deadline=None)
@given(field_matrices(max_cols=4), st.integers(0, 2))
def test_cone_mask_backends_agree(H, bound):
    A = np.ascontiguousarray(cone_system(H).coefficient_matrix())
    X = np.ascontiguousarray(grid(H.q, H.cols, bound).reshape(-1, (H.q - 1) * H.cols))
    assert np.array_equal(ckernels.cone_mask(A, X), _pykernels.cone_mask(A, X))


@settings(max_examples=100, deadline=None)
@given(field_matrices(max_cols=4), st.integers(1, 3))
def test_codeword_pseudomatrices_backends_agree(H, M):
    # lift H to the trivial cover: the code is M interleaved copies
    Ht = np.kron(H.entries, np.eye(M, dtype=np.int64))
    basis = nullspace(FieldMatrix(H.q, Ht))
    a = ckernels.codeword_pseudomatrices(basis, H.q, H.cols, M)
    b = _pykernels.codeword_pseudomatrices(basis, H.q, H.cols, M)
    assert np.array_equal(a, b)


def test_codeword_pseudomatrices_on_example_cover():
    basis = nullspace(example_htilde())
    a = ckernels.codeword_pseudomatrices(basis, 3, 4, 4)
    b = _pykernels.codeword_pseudomatrices(basis, 3, 4, 4)
    assert np.array_equal(a, b)
    assert [2, 2, 2, 2, 2, 2, 0, 0] in a.tolist()


def test_empty_basis():
    basis = np.zeros((0, 6), dtype=np.int64)
    for mod in (ckernels, _pykernels):
        assert mod.codeword_pseudomatrices(basis, 3, 3, 2).tolist() == [[0] * 6]
