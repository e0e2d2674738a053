"""Brute-force ground truth for small codes.

Pseudocodeword matrices are enumerated directly from their definition: every
permutation assignment of a degree-M cover, every codeword of the lifted
code.  The cone side and the lifting side of the characterization are then
checked against that data, and the structural cone properties are checked over integer grids.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from gcpseudo import kernels
from gcpseudo.cone import (
    condition_two_mask,
    grid,
    member_mask,
    psi_map_batch,
    residues_mask,
    row_system,
    support_normalize,
)
from gcpseudo.field import FieldMatrix, nullspace
from gcpseudo.lift import LiftError, PreconditionError, decompose_one_type, lift_full
from gcpseudo.tanner import build_tanner, is_valid_cover, pseudocodeword_matrix, verify_pseudocodeword

DEFAULT_BUDGET = 10**8

Matrix = tuple[tuple[int, ...], ...]


class BudgetExceeded(RuntimeError):
    pass


def spanning_forest(H: FieldMatrix) -> list[tuple[int, int]]:
    """Edges ``(j, i)`` of a spanning forest of the Tanner graph, in edge order."""
    parent = list(range(H.cols + H.rows))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    for e in build_tanner(H).edges:
        a, b = find(e.i), find(H.cols + e.j)
        if a != b:
            parent[a] = b
            tree.append((e.j, e.i))
    return tree


def cover_assignments(H: FieldMatrix, M: int, canonical: bool = True):
    """Yield ``{(j, i): perm}`` for every cover of degree ``M``.

    With ``canonical`` the spanning-forest edges carry the identity.  Relabeling
    the copies inside each fiber turns any cover into one of that form without
    changing its multiset of labelings, so the set of pseudocodeword matrices
    is the same.
    """
    edges = [(e.j, e.i) for e in build_tanner(H).edges]
    fixed = set(spanning_forest(H)) if canonical else set()
    free = [e for e in edges if e not in fixed]
    ident = tuple(range(M))
    for choice in itertools.product(itertools.permutations(range(M)), repeat=len(free)):
        perms = {e: ident for e in fixed}
        perms.update(zip(free, choice))
        yield perms


def count_covers(H: FieldMatrix, M: int, canonical: bool = True) -> int:
    edges = len(build_tanner(H).edges)
    fixed = len(spanning_forest(H)) if canonical else 0
    return math.factorial(M) ** (edges - fixed)


def _lifted(H: FieldMatrix, M: int, perms: dict) -> FieldMatrix:
    Ht = np.zeros((H.rows * M, H.cols * M), dtype=np.int64)
    for (j, i), p in perms.items():
        Ht[j * M + np.asarray(p), i * M + np.arange(M)] = H.entries[j, i]
    return FieldMatrix(H.q, Ht)


def enumerate_pseudocodeword_matrices(
    H: FieldMatrix,
    M: int,
    *,
    canonical: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> set[Matrix]:
    """Every unscaled pseudocodeword matrix realized on some degree-``M`` cover.

    ``budget`` caps the number of lifted codewords evaluated; exceeding it
    raises :class:`BudgetExceeded`.
    """
    if M < 1:
        raise ValueError(f"cover degree must be positive, got {M}")
    q, n = H.q, H.cols
    covers = count_covers(H, M, canonical)
    if covers > budget:
        raise BudgetExceeded(f"{covers} covers exceed the budget of {budget} evaluations")
    width = (q - 1) * n
    # rows are packed as base-(M+1) integers; the kernels enforce the same 63-bit limit
    weights = (M + 1) ** np.arange(width - 1, -1, -1, dtype=np.int64)
    keys: set[int] = set()
    spent = 0
    for perms in cover_assignments(H, M, canonical):
        Ht = _lifted(H, M, perms)
        basis = nullspace(Ht)
        spent += q ** basis.shape[0]
        if spent > budget:
            raise BudgetExceeded(f"more than {budget} lifted codewords needed (degree {M})")
        rows = kernels.codeword_pseudomatrices(basis, q, n, M)
        keys.update((rows @ weights).tolist())
    out: set[Matrix] = set()
    for key in keys:
        digits = []
        for _ in range(width):
            key, d = divmod(key, M + 1)
            digits.append(d)
        digits.reverse()
        out.add(tuple(tuple(digits[a * n : (a + 1) * n]) for a in range(q - 1)))
    return out


@dataclass
class Report:
    check: str
    H: dict
    checked: int = 0
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return asdict(self)

    def summary(self) -> str:
        verdict = "ok" if self.ok else f"{len(self.violations)} violation(s)"
        extra = ", ".join(f"{k}={v}" for k, v in self.details.items() if not isinstance(v, (dict, list)))
        return f"[{self.check}] checked {self.checked}: {verdict}" + (f" ({extra})" if extra else "")


def _label(H: FieldMatrix, what: str) -> str:
    return f"{'binary' if H.q == 2 else 'ternary'}-{what}"


def check_necessity(
    H: FieldMatrix,
    M_max: int,
    *,
    canonical: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> Report:
    """Every enumerated pseudocodeword matrix must be in the cone and meet the mod-q condition."""
    rep = Report(_label(H, "necessity"), H.to_json(), details={"M_max": M_max, "canonical": canonical})
    per_degree = {}
    for M in range(1, M_max + 1):
        found = enumerate_pseudocodeword_matrices(H, M, canonical=canonical, budget=budget)
        X = np.array(sorted(found), dtype=np.int64).reshape(-1, H.q - 1, H.cols)
        in_cone = member_mask(H, X)
        mod_ok = residues_mask(H, X)
        for F, c, r in zip(X, in_cone, mod_ok):
            if not (c and r):
                rep.violations.append({"M": M, "F": F.tolist(), "in_cone": bool(c), "mod_ok": bool(r)})
        per_degree[M] = len(X)
        rep.checked += len(X)
    rep.details["per_degree"] = per_degree
    return rep


def realized_by_lift(H: FieldMatrix, F: np.ndarray) -> tuple[bool, str]:
    try:
        res = lift_full(H, F)
    except (LiftError, PreconditionError) as exc:
        return False, str(exc)
    if not is_valid_cover(res.cover):
        return False, "invalid cover"
    if not verify_pseudocodeword(res.labeling):
        return False, "parity checks fail"
    if not np.array_equal(pseudocodeword_matrix(res.labeling).entries, F):
        return False, "matrix does not round-trip"
    return True, ""


def check_sufficiency(H: FieldMatrix, entry_bound: int) -> Report:
    """Every integer matrix meeting cone + mod-q with entries <= bound must lift."""
    rep = Report(_label(H, "sufficiency"), H.to_json(), details={"entry_bound": entry_bound})
    X = grid(H.q, H.cols, entry_bound)
    cand = X[condition_two_mask(H, X)]
    rep.details["candidates"] = len(X)
    for F in cand:
        ok, why = realized_by_lift(H, F)
        if not ok:
            rep.violations.append({"F": F.tolist(), "reason": why})
    rep.checked = len(cand)
    return rep


def random_rows(seed: int, count: int, n: int, q: int = 3, min_weight: int = 2) -> list[FieldMatrix]:
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        h = rng.integers(0, q, size=n)
        if np.count_nonzero(h) >= min_weight:
            out.append(FieldMatrix(q, h.reshape(1, -1)))
    return out


def _nonzero_critical_slacks(h: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Indices of matrices (in cone and mod 3 for row h) having a critical inequality with nonzero slack."""
    sys_ = row_system(tuple(int(x) for x in h))
    flat = X.reshape(len(X), -1)
    S = flat @ sys_.A.T
    Gs = np.einsum("kgd,nd->nkg", sys_.G, flat)
    guard = (Gs[:, :, 0] >= 1) & ((Gs[:, :, 1] >= 1) | (sys_.n_guards < 2))
    critical = (S < 3) & guard
    return np.flatnonzero((critical & (S != 0)).any(axis=1))


def check_lemma_battery(pool: list[FieldMatrix], entry_bound: int = 4, seed: int | None = None) -> Report:
    """Structural cone properties over every integer matrix with entries <= bound, for each ternary matrix in the pool.

    Binary matrices skip these and get both directions of the binary
    characterization instead.
    """
    rep = Report("lemmas", {"pool": [H.to_json() for H in pool]}, details={"entry_bound": entry_bound, "seed": seed})
    counts = {"row-intersection": 0, "psi-membership": 0, "psi-involution": 0, "one-type-split": 0, "zero-slack": 0, "binary": 0}

    def bad(name: str, H: FieldMatrix, F, note: str = "") -> None:
        rep.violations.append({"check": name, "H": H.tolist(), "F": np.asarray(F).tolist(), "note": note})

    for H in pool:
        if H.q == 2:
            for sub in (check_necessity(H, 2), check_sufficiency(H, min(entry_bound, 3))):
                counts["binary"] += sub.checked
                for v in sub.violations:
                    bad(sub.check, H, v["F"], str(v))
            continue
        X = grid(3, H.cols, entry_bound)
        full = member_mask(H, X)
        by_rows = np.ones(len(X), dtype=bool)
        for j in range(H.rows):
            h = H.entries[j]
            row = H.row(j)
            Hs = support_normalize(h)
            in_row = member_mask(row, X)
            by_rows &= in_row

            Y = psi_map_batch(h, X)
            for idx in np.flatnonzero(in_row != member_mask(Hs, Y)):
                bad("psi-membership", row, X[idx])
            counts["psi-membership"] += len(X)

            back = psi_map_batch(h, Y)
            for idx in np.flatnonzero((back != X).any(axis=(1, 2)) | (Y.sum(axis=1) != X.sum(axis=1)).any(axis=1)):
                bad("psi-involution", row, X[idx])
            counts["psi-involution"] += len(X)

            good = in_row & residues_mask(row, X)
            for idx in _nonzero_critical_slacks(h, X[good]):
                bad("zero-slack", row, X[good][idx])
            counts["zero-slack"] += int(good.sum())

            counts["one-type-split"] += _one_type_split_failures(Hs, entry_bound, lambda F, note: bad("one-type-split", Hs, F, note))
        for idx in np.flatnonzero(full != by_rows):
            bad("row-intersection", H, X[idx])
        counts["row-intersection"] += len(X)
    rep.details["counts"] = counts
    rep.checked = sum(counts.values())
    return rep


def _one_type_split_failures(Hs: FieldMatrix, bound: int, bad) -> int:
    h = Hs.entries[0]
    support = np.flatnonzero(h)
    n = Hs.cols
    checked = 0
    for vals in itertools.product(range(bound + 1), repeat=len(support)):
        if sum(vals) % 3:
            continue
        for r in (0, 1):
            F = np.zeros((2, n), dtype=np.int64)
            F[r, support] = vals
            if not member_mask(Hs, F[None])[0]:
                continue
            checked += 1
            try:
                sets = decompose_one_type(Hs, F)
            except (AssertionError, PreconditionError) as exc:
                bad(F, str(exc))
                continue
            mult = np.zeros(n, dtype=np.int64)
            for s in sets:
                if len(s) % 3 or len(set(s)) != len(s):
                    bad(F, f"set {s} has size not divisible by 3")
                mult[list(s)] += 1
            if not np.array_equal(mult[support], F[r, support]):
                bad(F, f"multiplicities {mult.tolist()}")
    return checked
