"""numpy implementations of the hot kernels; used when the extension is unavailable."""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 16


def cone_mask(A: np.ndarray, X: np.ndarray) -> np.ndarray:
    """``all(A @ x >= 0)`` for every row ``x`` of ``X``."""
    out = np.empty(len(X), dtype=bool)
    for s in range(0, len(X), _CHUNK):
        out[s : s + _CHUNK] = ((X[s : s + _CHUNK] @ A.T) >= 0).all(axis=1)
    return out


def codeword_pseudomatrices(basis: np.ndarray, q: int, n: int, M: int) -> np.ndarray:
    """Distinct pseudocodeword matrices of the code spanned by ``basis``.

    ``basis`` holds codewords of length ``n*M`` in the ``(i, mu)`` flattening.
    Returns ``[U, (q-1)*n]`` count rows (row-major over alpha, then i), sorted.
    """
    k = basis.shape[0]
    width = (q - 1) * n
    seen = []
    total = q**k
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        coeffs = np.empty((idx.size, k), dtype=np.int64)
        rest = idx
        for t in range(k):
            coeffs[:, t] = rest % q
            rest = rest // q
        words = (coeffs @ basis) % q if k else np.zeros((idx.size, n * M), dtype=np.int64)
        words = words.reshape(-1, n, M)
        counts = np.concatenate([(words == a).sum(axis=2) for a in range(1, q)], axis=1)
        seen.append(np.unique(counts, axis=0))
    if not seen:
        return np.zeros((0, width), dtype=np.int64)
    return np.unique(np.concatenate(seen), axis=0).astype(np.int64)
