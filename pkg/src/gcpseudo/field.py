"""Exact arithmetic over F2 and F3, small-code plumbing, and exact rationals.

Matrices over the field are held as read-only ``numpy`` integer arrays with
entries in ``0..q-1``.  Nothing here touches floating point.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

SUPPORTED_FIELDS = (2, 3)
DEFAULT_CODEWORD_BOUND = 3**12


class FieldError(ValueError):
    """Raised on mismatched fields or dimensions."""


class BoundExceeded(RuntimeError):
    """Raised when an exhaustive scan would exceed its configured bound."""


def _check_q(q: int) -> int:
    if q not in SUPPORTED_FIELDS:
        raise FieldError(f"only F2 and F3 are supported, got q={q}")
    return q


@dataclass(frozen=True)
class FieldElement:
    value: int
    q: int

    def __post_init__(self) -> None:
        _check_q(self.q)
        if not 0 <= self.value < self.q:
            raise FieldError(f"{self.value} is not an element of F{self.q}")

    def _same(self, other: FieldElement) -> None:
        if self.q != other.q:
            raise FieldError(f"cannot mix F{self.q} and F{other.q}")

    def __add__(self, other: FieldElement) -> FieldElement:
        self._same(other)
        return FieldElement((self.value + other.value) % self.q, self.q)

    def __sub__(self, other: FieldElement) -> FieldElement:
        self._same(other)
        return FieldElement((self.value - other.value) % self.q, self.q)

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._same(other)
        return FieldElement((self.value * other.value) % self.q, self.q)

    def __neg__(self) -> FieldElement:
        return FieldElement((-self.value) % self.q, self.q)

    def __int__(self) -> int:
        return self.value


def add_table(q: int) -> np.ndarray:
    _check_q(q)
    a = np.arange(q)
    return (a[:, None] + a[None, :]) % q


def mul_table(q: int) -> np.ndarray:
    _check_q(q)
    a = np.arange(q)
    return (a[:, None] * a[None, :]) % q


def nonzero_elements(q: int) -> tuple[int, ...]:
    """The symbols alpha in F*, in the row order used by pseudocodeword matrices."""
    return tuple(range(1, _check_q(q)))


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.int64, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FieldMatrix:
    """An ``m x n`` matrix over F_q, e.g. a parity-check matrix."""

    q: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        _check_q(self.q)
        a = np.asarray(self.entries)
        if a.ndim != 2:
            raise FieldError(f"expected a 2-d array, got shape {a.shape}")
        if a.size and (a.min() < 0 or a.max() >= self.q):
            raise FieldError(f"entries must lie in 0..{self.q - 1}")
        object.__setattr__(self, "entries", _frozen(a))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], q: int) -> FieldMatrix:
        if len(rows) == 0:
            return cls(q, np.zeros((0, 0), dtype=np.int64))
        return cls(q, np.array(rows, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def row(self, j: int) -> FieldMatrix:
        """The single-row matrix ``H_j``."""
        return FieldMatrix(self.q, self.entries[j : j + 1])

    def support(self, j: int) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.entries[j]))

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.q, self.shape, self.entries.tobytes()))

    def __repr__(self) -> str:
        return f"FieldMatrix(q={self.q}, {self.tolist()})"

    def to_json(self) -> dict:
        return {"q": self.q, "rows": self.rows, "cols": self.cols, "entries": self.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> FieldMatrix:
        try:
            q = int(obj["q"])
            entries = obj["entries"]
        except (KeyError, TypeError) as exc:
            raise FieldError(f"matrix JSON needs 'q' and 'entries': {exc}") from None
        mat = cls.from_rows(entries, q)
        if "rows" in obj and int(obj["rows"]) != mat.rows:
            raise FieldError(f"'rows'={obj['rows']} disagrees with entries ({mat.rows})")
        if "cols" in obj and mat.rows and int(obj["cols"]) != mat.cols:
            raise FieldError(f"'cols'={obj['cols']} disagrees with entries ({mat.cols})")
        return mat

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _as_vector(c: Iterable[int] | np.ndarray) -> np.ndarray:
    return np.asarray([int(x) for x in c], dtype=np.int64)


def syndrome(H: FieldMatrix, c: Sequence[int] | np.ndarray, q: int | None = None) -> np.ndarray:
    """Return ``c H^T`` over F_q.

    ``q`` may be given to assert the field of ``c``; it must agree with ``H``.
    """
    if q is not None and q != H.q:
        raise FieldError(f"vector over F{q} does not match matrix over F{H.q}")
    v = _as_vector(c)
    if v.shape != (H.cols,):
        raise FieldError(f"vector of length {v.size} does not match n={H.cols}")
    if v.size and (v.min() < 0 or v.max() >= H.q):
        raise FieldError(f"vector entries must lie in 0..{H.q - 1}")
    return (H.entries @ v) % H.q


def is_codeword(H: FieldMatrix, c: Sequence[int] | np.ndarray) -> bool:
    return not syndrome(H, c).any()


def row_reduce(A: np.ndarray, q: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_q and the pivot columns."""
    R = np.array(A, dtype=np.int64) % q
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, col])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        R[[r, p]] = R[[p, r]]
        # in F2 and F3 every nonzero element is its own inverse
        R[r] = (R[r] * R[r, col]) % q
        for k in range(rows):
            if k != r and R[k, col]:
                R[k] = (R[k] - R[k, col] * R[r]) % q
        pivots.append(col)
        r += 1
    return R, pivots


def rank(H: FieldMatrix) -> int:
    if H.rows == 0:
        return 0
    return len(row_reduce(H.entries, H.q)[1])


def nullspace(H: FieldMatrix) -> np.ndarray:
    """A basis (one vector per row) of ``{c : c H^T = 0}``."""
    n = H.cols
    if H.rows == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = row_reduce(H.entries, H.q)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for b, f in enumerate(free):
        basis[b, f] = 1
        for r, p in enumerate(pivots):
            basis[b, p] = (-R[r, f]) % H.q
    return basis


def enumerate_codewords(H: FieldMatrix, bound: int = DEFAULT_CODEWORD_BOUND) -> set[tuple[int, ...]]:
    """All codewords of ``H`` by exhaustive scan of F_q^n."""
    total = H.q**H.cols
    if total > bound:
        raise BoundExceeded(f"q^n = {total} exceeds the bound {bound}")
    out = set()
    for c in itertools.product(range(H.q), repeat=H.cols):
        if is_codeword(H, c):
            out.add(c)
    return out


def integer_syndrome_mod(
    H: FieldMatrix | np.ndarray | Sequence[Sequence[int]],
    v: Sequence[int] | np.ndarray,
    modulus: int,
) -> np.ndarray:
    """``(H v) mod modulus`` with ``H`` read as an integer matrix."""
    A = H.entries if isinstance(H, FieldMatrix) else np.asarray(H, dtype=np.int64)
    vec = _as_vector(v)
    if A.ndim != 2 or (A.shape[0] and A.shape[1] != vec.size):
        raise FieldError(f"matrix shape {A.shape} does not match vector of length {vec.size}")
    if A.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    return (A.astype(object) @ vec.astype(object)).astype(np.int64) % modulus


def mod_residues(H: FieldMatrix, F: np.ndarray | Sequence[Sequence[int]]) -> np.ndarray:
    """Residues of the mod-q pseudocodeword condition.

    Binary: ``H F^T mod 2``.  Ternary: ``H (F_1^T + 2 F_2^T) mod 3``.
    """
    Fa = np.asarray(F, dtype=np.int64)
    if Fa.shape != (H.q - 1, H.cols):
        raise FieldError(f"pseudocodeword matrix shape {Fa.shape} != {(H.q - 1, H.cols)}")
    weights = np.arange(1, H.q, dtype=np.int64)
    v = weights @ Fa
    return integer_syndrome_mod(H, v, H.q)


@dataclass(frozen=True)
class RationalMatrix:
    """A matrix of exact rationals, stored in lowest terms."""

    entries: tuple[tuple[Fraction, ...], ...] = field()

    def __post_init__(self) -> None:
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.entries)
        if len({len(r) for r in rows}) > 1:
            raise FieldError("ragged rational matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_any(cls, data) -> RationalMatrix:
        if isinstance(data, RationalMatrix):
            return data
        return cls(tuple(tuple(_to_fraction(x) for x in r) for r in np.asarray(data, dtype=object).tolist()))

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    def scale(self, a: Fraction | int) -> RationalMatrix:
        a = Fraction(a)
        return RationalMatrix(tuple(tuple(a * x for x in r) for r in self.entries))

    def common_denominator(self) -> int:
        return lcm(1, *(x.denominator for r in self.entries for x in r))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.entries for x in r)

    def to_int_array(self) -> np.ndarray:
        if not self.is_integral():
            raise FieldError("matrix has non-integer entries")
        return np.array([[int(x) for x in r] for r in self.entries], dtype=np.int64).reshape(self.shape)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def to_json(self) -> list[list[int | str]]:
        return [[int(x) if x.denominator == 1 else str(x) for x in r] for r in self.entries]


def _to_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise FieldError(f"floating-point entry {x!r} refused; use an integer or 'p/q' string")
    try:
        return Fraction(x)
    except (TypeError, ValueError) as exc:
        raise FieldError(f"not a rational number: {x!r}") from exc
