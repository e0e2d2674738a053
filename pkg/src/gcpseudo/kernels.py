"""Kernel dispatch: the compiled extension when it imports, numpy otherwise.

Set ``GCPSEUDO_PURE_PYTHON=1`` to force the numpy path.
"""

from __future__ import annotations

import os

from gcpseudo import _pykernels

BACKEND = "python"

if os.environ.get("GCPSEUDO_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from gcpseudo import _ckernels
    except ImportError:  # pragma: no cover - depends on the build
        _ckernels = None
else:
    _ckernels = None

if _ckernels is not None:
    cone_mask = _ckernels.cone_mask
    codeword_pseudomatrices = _ckernels.codeword_pseudomatrices
    BACKEND = "cython"
else:
    cone_mask = _pykernels.cone_mask
    codeword_pseudomatrices = _pykernels.codeword_pseudomatrices
