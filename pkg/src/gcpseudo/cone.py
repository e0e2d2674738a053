"""Fundamental-cone inequality systems for binary and ternary parity-check matrices.

Every inequality is stored as ``lesser <= greater`` where each side is a short
list of weighted groups of ``f_i^{(alpha)}`` terms, the way the systems are
usually written out by hand.  The coefficient form ``sum a * f >= 0`` is
derived from that, so rendering and evaluation cannot drift apart.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from gcpseudo import kernels
from gcpseudo.field import FieldError, FieldMatrix, RationalMatrix, mod_residues
from gcpseudo.tanner import PseudoMatrix

SINGLE_1 = "single-type1"
SINGLE_2 = "single-type2"
PAIR_1 = "pair-type1"
PAIR_2 = "pair-type2"
NONNEG = "nonnegativity"
SUPPORT = "support"  # binary f_l <= sum of the other f_i

# (alpha, i): the entry f_i^{(alpha)}, alpha in 1..q-1, i 0-based
Term = tuple[int, int]
Group = tuple[int, tuple[Term, ...]]


@dataclass(frozen=True)
class ConeInequality:
    q: int
    n: int
    row: int | None
    kind: str
    indices: tuple[int, ...]
    lesser: tuple[Group, ...]
    greater: tuple[Group, ...]
    # each inner tuple is a set of terms whose sum must be >= 1 for the
    # inequality to count as critical
    guard: tuple[tuple[Term, ...], ...] = ()

    @property
    def coefficients(self) -> np.ndarray:
        a = np.zeros((self.q - 1, self.n), dtype=np.int64)
        for sign, side in ((1, self.greater), (-1, self.lesser)):
            for w, terms in side:
                for alpha, i in terms:
                    a[alpha - 1, i] += sign * w
        return a

    def slack(self, F) -> int | Fraction:
        """``greater - lesser`` evaluated exactly; the inequality holds iff this is >= 0."""
        total = 0
        for sign, side in ((1, self.greater), (-1, self.lesser)):
            for w, terms in side:
                for alpha, i in terms:
                    total += sign * w * F[alpha - 1][i]
        return total

    def holds(self, F) -> bool:
        return self.slack(F) >= 0

    def guard_met(self, F) -> bool:
        return all(sum(F[a - 1][i] for a, i in g) >= 1 for g in self.guard)

    def render(self, style: str = "text") -> str:
        rel = {"text": "<=", "latex": r"\le"}[style]
        return f"{_side(self.lesser, self.q)} {rel} {_side(self.greater, self.q)}"

    def tag(self) -> dict:
        return {
            "row": None if self.row is None else self.row + 1,
            "kind": self.kind,
            "indices": [i + 1 for i in self.indices],
        }

    def to_json(self) -> dict:
        return {**self.tag(), "coefficients": self.coefficients.tolist(), "text": self.render()}


def _term(t: Term, q: int) -> str:
    alpha, i = t
    return f"f_{i + 1}" if q == 2 else f"f_{i + 1}^{{({alpha})}}"


def _side(groups: tuple[Group, ...], q: int) -> str:
    groups = tuple(g for g in groups if g[1])
    if not groups:
        return "0"
    parts = []
    for w, terms in groups:
        body = " + ".join(_term(t, q) for t in terms)
        if len(terms) > 1 and (len(groups) > 1 or w != 1):
            body = f"( {body})"
        parts.append(body if w == 1 else f"{w} {body}")
    return " + ".join(parts)


@dataclass(frozen=True, eq=False)
class ConeSystem:
    H: FieldMatrix
    inequalities: tuple[ConeInequality, ...]

    def __len__(self) -> int:
        return len(self.inequalities)

    def __iter__(self):
        return iter(self.inequalities)

    @property
    def nontrivial(self) -> tuple[ConeInequality, ...]:
        return tuple(e for e in self.inequalities if e.kind != NONNEG)

    def coefficient_matrix(self) -> np.ndarray:
        """One row per inequality, over the row-major flattening of F."""
        width = (self.H.q - 1) * self.H.cols
        if not self.inequalities:
            return np.zeros((0, width), dtype=np.int64)
        return np.stack([e.coefficients.reshape(-1) for e in self.inequalities])

    def render(self, style: str = "text") -> str:
        return "\n".join(e.render(style) for e in self.inequalities)

    def to_json(self) -> dict:
        return {"H": self.H.to_json(), "inequalities": [e.to_json() for e in self.inequalities]}


def _nonneg(q: int, n: int) -> list[ConeInequality]:
    return [
        ConeInequality(q, n, None, NONNEG, (i,), (), ((1, ((alpha, i),)),))
        for i in range(n)
        for alpha in range(1, q)
    ]


def enumerate_k2(H: FieldMatrix) -> ConeSystem:
    if H.q != 2:
        raise FieldError(f"the binary cone needs a matrix over F2, got F{H.q}")
    n = H.cols
    out = []
    for j in range(H.rows):
        supp = H.support(j)
        for l in supp:
            others = tuple((1, i) for i in supp if i != l)
            out.append(
                ConeInequality(2, n, j, SUPPORT, (l,), ((1, ((1, l),)),), ((1, others),), (((1, l),),))
            )
    return ConeSystem(H, tuple(out + _nonneg(2, n)))


def _k3_row(h: np.ndarray, j: int, n: int) -> list[ConeInequality]:
    supp = [int(i) for i in np.flatnonzero(h)]
    a = {i: int(h[i]) for i in supp}  # symbol H_{j,i}
    b = {i: (2 * int(h[i])) % 3 for i in supp}  # symbol 2H_{j,i}, reduced in F3
    out = []
    for l in supp:
        rest = [i for i in supp if i != l]
        guard = (((1, l), (2, l)),)
        out.append(
            ConeInequality(
                3, n, j, SINGLE_1, (l,),
                ((2, ((a[l], l),)), (1, ((b[l], l),))),
                ((2, tuple((b[i], i) for i in rest)), (1, tuple((a[i], i) for i in rest))),
                guard,
            )
        )
        out.append(
            ConeInequality(
                3, n, j, SINGLE_2, (l,),
                ((2, ((b[l], l),)), (1, ((a[l], l),))),
                ((2, tuple((a[i], i) for i in rest)), (1, tuple((b[i], i) for i in rest))),
                guard,
            )
        )
    for k, l in itertools.combinations(supp, 2):
        rest = [i for i in supp if i not in (k, l)]
        for kind, s, t in ((PAIR_1, a, b), (PAIR_2, b, a)):
            out.append(
                ConeInequality(
                    3, n, j, kind, (k, l),
                    ((1, ((s[k], k), (s[l], l))),),
                    ((2, tuple((s[i], i) for i in rest)), (1, tuple((t[i], i) for i in supp))),
                    (((s[k], k),), ((s[l], l),)),
                )
            )
    return out


def enumerate_k3(H: FieldMatrix) -> ConeSystem:
    if H.q != 3:
        raise FieldError(f"the ternary cone needs a matrix over F3, got F{H.q}")
    out = []
    for j in range(H.rows):
        out.extend(_k3_row(H.entries[j], j, H.cols))
    return ConeSystem(H, tuple(out + _nonneg(3, H.cols)))


@functools.lru_cache(maxsize=128)
def cone_system(H: FieldMatrix) -> ConeSystem:
    return enumerate_k2(H) if H.q == 2 else enumerate_k3(H)


def expected_k3_count(H: FieldMatrix) -> int:
    """Number of non-trivial ternary inequalities: sum over rows of 2w + 2*C(w,2)."""
    w = (H.entries != 0).sum(axis=1)
    return int((2 * w + w * (w - 1)).sum())


# -- membership --------------------------------------------------------------


def as_exact(F, q: int, n: int) -> np.ndarray:
    """Integer array when every entry is integral, otherwise an object array of Fractions."""
    if isinstance(F, RationalMatrix):
        F = F.to_int_array() if F.is_integral() else np.array(F.tolist(), dtype=object)
    a = np.asarray(F)
    if a.dtype.kind == "f":
        raise FieldError("floating-point pseudocodeword matrices are refused; use Fractions")
    if a.dtype == object:
        a = np.array([[Fraction(x) for x in r] for r in a.tolist()], dtype=object).reshape(a.shape)
        if all(x.denominator == 1 for x in a.flat):
            a = np.array([[int(x) for x in r] for r in a.tolist()], dtype=np.int64).reshape(a.shape)
    else:
        a = a.astype(np.int64)
    if q == 2 and a.ndim == 1:
        a = a.reshape(1, -1)
    if a.shape != (q - 1, n):
        raise FieldError(f"expected a {(q - 1)}x{n} matrix, got shape {a.shape}")
    return a


def violated(H: FieldMatrix, F) -> list[ConeInequality]:
    a = as_exact(F, H.q, H.cols)
    return [e for e in cone_system(H) if not e.holds(a)]


def member(H: FieldMatrix, F) -> tuple[bool, list[ConeInequality]]:
    bad = violated(H, F)
    return (not bad, bad)


def member_k3(H: FieldMatrix, F) -> tuple[bool, list[ConeInequality]]:
    if H.q != 3:
        raise FieldError(f"K3 membership needs a matrix over F3, got F{H.q}")
    return member(H, F)


def member_k2(H: FieldMatrix, F) -> tuple[bool, list[ConeInequality]]:
    if H.q != 2:
        raise FieldError(f"K2 membership needs a matrix over F2, got F{H.q}")
    return member(H, F)


def member_by_rows(H: FieldMatrix, F) -> bool:
    if H.q != 3:
        raise FieldError(f"row-wise K3 membership needs a matrix over F3, got F{H.q}")
    as_exact(F, 3, H.cols)
    return all(member_k3(H.row(j), F)[0] for j in range(H.rows))


def member_mask(H: FieldMatrix, X: np.ndarray) -> np.ndarray:
    """Vectorized membership for a stack of integer matrices ``X[N, q-1, n]``."""
    X = np.ascontiguousarray(np.asarray(X, dtype=np.int64).reshape(len(X), -1))
    A = np.ascontiguousarray(cone_system(H).coefficient_matrix())
    return kernels.cone_mask(A, X)


# -- the psi remapping and H_s ---------------------------------------------------


def _row_vector(H_j) -> np.ndarray:
    if isinstance(H_j, FieldMatrix):
        if H_j.rows != 1:
            raise FieldError(f"expected a single row, got {H_j.rows} rows")
        return H_j.entries[0]
    return np.asarray(H_j, dtype=np.int64).reshape(-1)


def psi_map(H_j, F):
    """Swap ``f_i^{(1)}`` and ``f_i^{(2)}`` in every column where the row has a 2."""
    h = _row_vector(H_j)
    is_pm = isinstance(F, PseudoMatrix)
    a = np.array(F.entries if is_pm else F, copy=True)
    if a.shape != (2, h.size):
        raise FieldError(f"expected a 2x{h.size} matrix, got shape {a.shape}")
    cols = h == 2
    a[:, cols] = a[::-1, cols]
    return PseudoMatrix(3, a) if is_pm else a


def psi_map_batch(h: np.ndarray, X: np.ndarray) -> np.ndarray:
    """``psi_map`` applied to every matrix in ``X[N, 2, n]``."""
    Y = np.array(X, copy=True)
    cols = np.asarray(h).reshape(-1) == 2
    Y[:, :, cols] = X[:, ::-1, :][:, :, cols]
    return Y


def support_normalize(H_j) -> FieldMatrix:
    h = _row_vector(H_j)
    q = H_j.q if isinstance(H_j, FieldMatrix) else 3
    return FieldMatrix(q, (h != 0).astype(np.int64).reshape(1, -1))


# -- critical coordinates --------------------------------------------------------

_TYPE = {SINGLE_1: 1, SINGLE_2: 2, PAIR_1: 1, PAIR_2: 2}


@dataclass(frozen=True)
class CriticalReport:
    coordinates: frozenset[tuple[int, int]]  # (l, type)
    pairs_type1: frozenset[tuple[int, int]]  # (k, l), k < l
    pairs_type2: frozenset[tuple[int, int]]

    @property
    def critical_set(self) -> frozenset[int]:
        """S_c: coordinates critical of either type."""
        return frozenset(l for l, _ in self.coordinates)

    def __bool__(self) -> bool:
        return bool(self.coordinates or self.pairs_type1 or self.pairs_type2)


def _integer_matrix(F, n: int) -> np.ndarray:
    a = as_exact(F, 3, n)
    if a.dtype == object:
        raise FieldError("critical analysis needs an integer matrix")
    if a.min(initial=0) < 0:
        raise FieldError("critical analysis needs a nonnegative matrix")
    return a


class RowSystem:
    """The ternary inequalities of one row in array form, for repeated evaluation."""

    def __init__(self, h: Sequence[int]):
        self.h = tuple(int(x) for x in h)
        n = len(self.h)
        self.inequalities = tuple(_k3_row(np.asarray(self.h, dtype=np.int64), 0, n))
        K = len(self.inequalities)
        self.A = np.zeros((K, 2 * n), dtype=np.int64)
        # guard g of inequality r: sum of F entries with mask G[r, g] must be >= 1
        self.G = np.zeros((K, 2, 2 * n), dtype=np.int64)
        self.n_guards = np.zeros(K, dtype=np.int64)
        for r, e in enumerate(self.inequalities):
            self.A[r] = e.coefficients.reshape(-1)
            self.n_guards[r] = len(e.guard)
            for g, terms in enumerate(e.guard):
                for alpha, i in terms:
                    self.G[r, g, (alpha - 1) * n + i] = 1

    def slacks(self, F: np.ndarray) -> np.ndarray:
        return self.A @ F.reshape(-1)

    def critical(self, F: np.ndarray) -> list[tuple[ConeInequality, int]]:
        x = F.reshape(-1)
        s = self.A @ x
        g = self.G @ x
        ok = (g[:, 0] >= 1) & ((g[:, 1] >= 1) | (self.n_guards < 2))
        idx = np.flatnonzero((s < 3) & ok)
        return [(self.inequalities[r], int(s[r])) for r in idx]


@functools.lru_cache(maxsize=256)
def row_system(h: tuple[int, ...]) -> RowSystem:
    return RowSystem(h)


def critical_inequalities(H_j, F) -> list[tuple[ConeInequality, int]]:
    """Critical inequalities of a single row with their slacks (slack < 3, guard met)."""
    h = _row_vector(H_j)
    a = _integer_matrix(F, h.size)
    return row_system(tuple(int(x) for x in h)).critical(a)


def critical_analysis(H_j, F) -> CriticalReport:
    return report_from(critical_inequalities(H_j, F))


def report_from(critical: list[tuple[ConeInequality, int]]) -> CriticalReport:
    coords, t1, t2 = set(), set(), set()
    for e, _ in critical:
        if e.kind in (SINGLE_1, SINGLE_2):
            coords.add((e.indices[0], _TYPE[e.kind]))
        elif e.kind == PAIR_1:
            t1.add(e.indices)
        else:
            t2.add(e.indices)
    return CriticalReport(frozenset(coords), frozenset(t1), frozenset(t2))


def critical_slacks(H_j, F) -> list[tuple[ConeInequality, int]]:
    """Slacks of the critical inequalities of an in-cone matrix with zero mod-3 residue."""
    h = _row_vector(H_j)
    row = FieldMatrix(3, h.reshape(1, -1))
    a = _integer_matrix(F, h.size)
    if not member_k3(row, a)[0]:
        raise FieldError("matrix is not in the cone of this row")
    if mod_residues(row, a).any():
        raise FieldError("matrix violates the mod-3 condition for this row")
    return critical_inequalities(h, a)


# -- the full verdict ------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    in_cone: bool
    violated: tuple[ConeInequality, ...]
    integral: bool
    nonnegative: bool
    residues: tuple[int, ...] | None

    @property
    def is_pseudocodeword(self) -> bool:
        return (
            self.in_cone
            and self.integral
            and self.residues is not None
            and not any(self.residues)
        )


def verdict(H: FieldMatrix, F) -> Verdict:
    """Cone membership plus the mod-q condition; together they characterize unscaled pseudocodeword matrices."""
    a = as_exact(F, H.q, H.cols)
    bad = tuple(e for e in cone_system(H) if not e.holds(a))
    integral = a.dtype != object
    nonneg = bool((a >= 0).all()) if a.size else True
    residues = tuple(int(x) for x in mod_residues(H, a)) if integral else None
    return Verdict(not bad, bad, integral, nonneg, residues)


def residues_mask(H: FieldMatrix, X: np.ndarray) -> np.ndarray:
    """True where the stacked integer matrices ``X[N, q-1, n]`` satisfy the mod-q condition."""
    X = np.asarray(X, dtype=np.int64)
    w = np.arange(1, H.q, dtype=np.int64)
    v = np.einsum("a,kan->kn", w, X)
    if H.rows == 0:
        return np.ones(len(X), dtype=bool)
    return ~((v @ H.entries.T) % H.q).any(axis=1)


def grid(q: int, n: int, bound: int) -> np.ndarray:
    """All integer matrices ``(q-1) x n`` with entries in ``0..bound``, as ``[N, q-1, n]``."""
    d = (q - 1) * n
    if d == 0:
        return np.zeros((1, q - 1, n), dtype=np.int64)
    vals = np.indices((bound + 1,) * d, dtype=np.int64).reshape(d, -1).T
    return vals.reshape(-1, q - 1, n)


def condition_two_mask(H: FieldMatrix, X: np.ndarray) -> np.ndarray:
    return member_mask(H, X) & residues_mask(H, X)
