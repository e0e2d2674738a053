# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled versions of the hot kernels; same contracts as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libcpp.unordered_set cimport unordered_set
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()


def cone_mask(const int64_t[:, ::1] A, const int64_t[:, ::1] X):
    cdef Py_ssize_t N = X.shape[0], K = A.shape[0], D = A.shape[1]
    cdef Py_ssize_t s, r, d
    cdef int64_t acc
    out = np.ones(N, dtype=np.bool_)
    cdef cnp.npy_bool[::1] o = out
    with nogil:
        for s in range(N):
            for r in range(K):
                acc = 0
                for d in range(D):
                    acc = acc + A[r, d] * X[s, d]
                if acc < 0:
                    o[s] = 0
                    break
    return out


def codeword_pseudomatrices(basis, int q, int n, int M):
    cdef int64_t[:, ::1] B = np.ascontiguousarray(basis, dtype=np.int64) % q
    cdef Py_ssize_t k = B.shape[0], L = n * M
    cdef Py_ssize_t width = (q - 1) * n
    cdef uint64_t radix = M + 1
    if width and radix ** width >= (<uint64_t>1) << 63:
        raise OverflowError("pseudocodeword matrix key does not fit in 64 bits")
    # place value of count slot (alpha, i) in the packed key
    pw_np = np.zeros(max(width, 1), dtype=np.uint64)
    cdef uint64_t[::1] pw = pw_np
    cdef Py_ssize_t t
    cdef uint64_t acc = 1
    for t in range(width - 1, -1, -1):
        pw[t] = acc
        acc *= radix
    # sparse view of the basis rows: positions and their additive values
    nnz_np = np.count_nonzero(np.asarray(B), axis=1).astype(np.int64) if k else np.zeros(1, dtype=np.int64)
    cdef int64_t[::1] nnz = nnz_np
    cdef Py_ssize_t width_nz = max(int(nnz_np.max(initial=0)), 1)
    cdef int64_t[:, ::1] pos = np.zeros((max(k, 1), width_nz), dtype=np.int64)
    cdef int64_t[:, ::1] val = np.zeros((max(k, 1), width_nz), dtype=np.int64)
    cdef Py_ssize_t p, c
    for t in range(k):
        c = 0
        for p in range(L):
            if B[t, p]:
                pos[t, c] = p
                val[t, c] = B[t, p]
                c += 1
    cdef int64_t[::1] word = np.zeros(max(L, 1), dtype=np.int64)
    cdef int64_t[::1] digits = np.zeros(max(k, 1), dtype=np.int64)
    cdef unordered_set[uint64_t] seen
    cdef int64_t old, new
    cdef uint64_t key = 0
    with nogil:
        while True:
            seen.insert(key)
            # odometer step: adding basis row t advances digit t
            t = 0
            while t < k:
                for c in range(nnz[t]):
                    p = pos[t, c]
                    old = word[p]
                    new = (old + val[t, c]) % q
                    word[p] = new
                    if old:
                        key -= pw[(old - 1) * n + p // M]
                    if new:
                        key += pw[(new - 1) * n + p // M]
                digits[t] += 1
                if digits[t] < q:
                    break
                digits[t] = 0
                t += 1
            if t >= k:
                break
    out = np.empty((seen.size(), width), dtype=np.int64)
    cdef int64_t[:, ::1] o = out
    cdef Py_ssize_t r = 0
    for key in seen:
        for t in range(width - 1, -1, -1):
            o[r, t] = key % radix
            key = key // radix
        r += 1
    if len(out):
        out = out[np.lexsort(out.T[::-1])]
    return out
