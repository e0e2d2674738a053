"""Constructive lifting: build a graph cover that realizes a given pseudocodeword matrix.

The single-row ternary construction reduces ``F`` step by step: first pairs
(one symbol-1 unit and one symbol-2 unit) while both symbols have mass on the
support, then triples of the surviving symbol, attaching each reduced unit to a
fresh-for-those-variables check copy.  Zero-labeled copies fill the rest.
Matrices with 2s in the row go through ``psi_map``; several rows are lifted
separately on a shared degree and merged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from gcpseudo.cone import (
    CriticalReport,
    RowSystem,
    as_exact,
    member,
    psi_map,
    report_from,
    row_system,
    support_normalize,
)
from gcpseudo.field import FieldError, FieldMatrix, RationalMatrix, mod_residues
from gcpseudo.tanner import (
    CoverGraph,
    CoverLabeling,
    PseudoMatrix,
    build_cover,
    build_tanner,
)

STAGE2 = "stage2-pair"
STAGE3 = "stage3-triple"
STAGE4 = "stage4-fill"


class LiftError(RuntimeError):
    """A lift could not be completed; ``trace`` holds the steps taken so far."""

    def __init__(self, message: str, trace: Sequence[TraceStep] = ()):
        super().__init__(message)
        self.trace = list(trace)


class PreconditionError(ValueError):
    """The input matrix is not in the cone or fails the mod-q condition."""


@dataclass(frozen=True)
class TraceStep:
    kind: str
    row: int
    # (i, mu, symbol) per labeled copy; for stage 4, the copies attached
    labeled: tuple[tuple[int, int, int], ...]
    check_copy: int | None
    snapshot: tuple[tuple[int, ...], ...]
    critical: CriticalReport | None = None

    @property
    def coordinates(self) -> tuple[int, ...]:
        return tuple(i for i, _, _ in self.labeled)

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "row": self.row + 1,
            "labeled": [{"i": i + 1, "mu": mu + 1, "label": s} for i, mu, s in self.labeled],
            "check_copy": None if self.check_copy is None else self.check_copy + 1,
            "F": [list(r) for r in self.snapshot],
        }
        if self.critical is not None:
            c = self.critical
            out["critical"] = {
                "coordinates": sorted([l + 1, t] for l, t in c.coordinates),
                "pairs_type1": sorted([k + 1, l + 1] for k, l in c.pairs_type1),
                "pairs_type2": sorted([k + 1, l + 1] for k, l in c.pairs_type2),
            }
        return out


@dataclass(frozen=True)
class LiftResult:
    cover: CoverGraph
    labeling: CoverLabeling
    M: int
    M_prime: int
    trace: tuple[TraceStep, ...] = field(default=())


Chooser = Callable[[int, np.ndarray, CriticalReport, list[tuple[int, int]]], tuple[int, int]]


def cover_degree(F: np.ndarray, q: int = 3) -> tuple[int, int]:
    """``(M', M)`` with ``M'`` the largest column sum and ``M = (q M' - (q - 1))``, at least 1."""
    m_prime = int(np.asarray(F).sum(axis=0).max(initial=0))
    return m_prime, max(1, q * m_prime - (q - 1))


def admissible_pairs(F: np.ndarray, support: Sequence[int], report: CriticalReport) -> list[tuple[int, int]]:
    """All ``(k, l)`` a stage-2 step may reduce, in lexicographic order.

    ``f_k^{(1)}`` and ``f_l^{(2)}`` must be positive, every critical coordinate
    must be ``k`` or ``l``, every critical type-one pair must contain ``k`` and
    every critical type-two pair must contain ``l``.  ``k == l`` is excluded: a
    check copy meets each variable at most once.
    """
    out = []
    crit = report.critical_set
    for k in support:
        if F[0, k] < 1:
            continue
        if any(k not in p for p in report.pairs_type1):
            continue
        for l in support:
            if l == k or F[1, l] < 1:
                continue
            if not crit <= {k, l}:
                continue
            if any(l not in p for p in report.pairs_type2):
                continue
            out.append((k, l))
    return out


def _check_inputs(h: np.ndarray, F, q: int) -> np.ndarray:
    n = h.size
    a = as_exact(F, q, n)
    if a.dtype == object:
        raise FieldError("lifting needs an integer matrix")
    if a.min(initial=0) < 0:
        raise FieldError("lifting needs a nonnegative matrix")
    return a


class _Builder:
    """Incremental cover of a single check: variable copies, check copies, edges."""

    def __init__(self, n: int, M: int, support: Sequence[int]):
        self.n, self.M = n, M
        self.support = list(support)
        self.labels = np.zeros((n, M), dtype=np.int64)
        self.attached = np.zeros((n, M), dtype=bool)
        # check copy -> variables already attached to it
        self.check_vars = [set() for _ in range(M)]
        # (i, mu) -> check copy
        self.edge = {}

    def free_check(self, cols: Sequence[int]) -> int:
        for nu in range(self.M):
            if not self.check_vars[nu].intersection(cols):
                return nu
        raise LiftError(f"no check copy free of columns {[c + 1 for c in cols]} (M={self.M})")

    def attach(self, i: int, mu: int, nu: int) -> None:
        if self.attached[i, mu] or i in self.check_vars[nu]:
            raise LiftError(f"u_{i + 1},{mu + 1} cannot be attached to check copy {nu + 1}")
        self.attached[i, mu] = True
        self.check_vars[nu].add(i)
        self.edge[(i, mu)] = nu

    def fill(self) -> list[tuple[int, int, int]]:
        """Attach every unattached support copy; each is zero-labeled by construction.

        Per column, the unattached copies and the check copies missing that
        column are equinumerous and any pairing is allowed, so pairing them in
        index order is a perfect matching.
        """
        added = []
        for i in self.support:
            copies = [mu for mu in range(self.M) if not self.attached[i, mu]]
            checks = [nu for nu in range(self.M) if i not in self.check_vars[nu]]
            if len(copies) != len(checks):
                raise LiftError(f"column {i + 1}: {len(copies)} free copies vs {len(checks)} open check copies")
            for mu, nu in zip(copies, checks):
                if self.labels[i, mu] != 0:
                    raise LiftError(f"unattached copy u_{i + 1},{mu + 1} carries a nonzero label")
                self.attach(i, mu, nu)
                added.append((i, mu, 0))
        return added

    def permutations(self, row: int) -> dict[tuple[int, int], list[int]]:
        return {(row, i): [self.edge[(i, mu)] for mu in range(self.M)] for i in self.support}


def _init_outside(b: _Builder, F: np.ndarray, q: int) -> None:
    inside = set(b.support)
    for i in range(b.n):
        if i in inside:
            continue
        mu = 0
        for alpha in range(1, q):
            for _ in range(int(F[alpha - 1, i])):
                b.labels[i, mu] = alpha
                mu += 1


def _snapshot(F: np.ndarray) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in r) for r in F)


def _in_cone_and_mod(system: RowSystem, F: np.ndarray) -> bool:
    h = np.asarray(system.h)
    return bool((system.slacks(F) >= 0).all() and (F >= 0).all() and (h @ (F[0] + 2 * F[1])) % 3 == 0)


def lift_single_row(
    H_s,
    F,
    *,
    M: int | None = None,
    choose: Chooser | Sequence[tuple[int, int]] | None = None,
    row: int = 0,
    check_steps: bool = True,
) -> LiftResult:
    """Lift a 2 x n integer matrix on a {0,1} ternary row to a graph cover.

    ``choose`` overrides the stage-2 selection: either a callable
    ``(step, F, report, admissible) -> (k, l)`` or a sequence of ``(k, l)``
    used for the first steps (0-based columns).  The default picks the
    lexicographically smallest admissible pair.
    """
    Hs = H_s if isinstance(H_s, FieldMatrix) else FieldMatrix(3, np.asarray(H_s, dtype=np.int64).reshape(1, -1))
    if Hs.q != 3 or Hs.rows != 1 or Hs.entries.max(initial=0) > 1:
        raise FieldError("lift_single_row needs a single ternary row with entries in {0, 1}")
    h = Hs.entries[0]
    F0 = _check_inputs(h, F, 3)
    system = row_system(tuple(int(x) for x in h))
    if not (system.slacks(F0) >= 0).all():
        raise PreconditionError("matrix is not in the ternary cone of the row")
    if mod_residues(Hs, F0).any():
        raise PreconditionError("matrix violates H_s (F_1 + 2 F_2)^T = 0 mod 3")
    m_prime, m_min = cover_degree(F0)
    if M is None:
        M = m_min
    elif M < m_min:
        raise ValueError(f"cover degree {M} is below 3M'-2 = {m_min}")

    support = [int(i) for i in np.flatnonzero(h)]
    b = _Builder(Hs.cols, M, support)
    _init_outside(b, F0, 3)
    rem = F0.copy()
    trace: list[TraceStep] = []

    if callable(choose):
        chooser = choose
    else:
        seeded = list(choose or ())

        def chooser(step, _F, _report, options):
            return seeded[step] if step < len(seeded) else options[0]

    def colsum(i: int) -> int:
        return int(rem[0, i] + rem[1, i])

    step = 0
    while rem[0, support].sum() > 0 and rem[1, support].sum() > 0:
        report = report_from(system.critical(rem))
        options = admissible_pairs(rem, support, report)
        if not options:
            raise LiftError(f"no admissible (k, l) for F = {rem.tolist()}", trace)
        k, l = chooser(step, rem.copy(), report, options)
        if (k, l) not in options:
            raise LiftError(f"chosen pair ({k + 1}, {l + 1}) is not admissible; options {options}", trace)
        mu_k, mu_l = colsum(k) - 1, colsum(l) - 1
        rem[0, k] -= 1
        rem[1, l] -= 1
        b.labels[k, mu_k] = 1
        b.labels[l, mu_l] = 2
        nu = b.free_check([k, l])
        b.attach(k, mu_k, nu)
        b.attach(l, mu_l, nu)
        trace.append(TraceStep(STAGE2, row, ((k, mu_k, 1), (l, mu_l, 2)), nu, _snapshot(rem), report))
        if check_steps and not _in_cone_and_mod(system, rem):
            raise LiftError(f"stage 2 left the cone or broke mod 3: F = {rem.tolist()}", trace)
        step += 1

    live = [a for a in (1, 2) if rem[a - 1, support].sum() > 0]
    if len(live) > 1:
        raise LiftError("stage 2 ended with both symbols still present", trace)
    if live:
        beta = live[0]
        r = rem[beta - 1]
        while r[support].sum() > 0:
            ranked = sorted((i for i in support if r[i] > 0), key=lambda i: (-r[i], i))
            if len(ranked) < 3:
                raise LiftError(f"stage 3 needs three nonzero columns, F = {rem.tolist()}", trace)
            top = ranked[:3]
            mus = [int(r[i]) - 1 for i in top]
            nu = b.free_check(top)
            for i, mu in zip(top, mus):
                r[i] -= 1
                b.labels[i, mu] = beta
                b.attach(i, mu, nu)
            trace.append(
                TraceStep(STAGE3, row, tuple((i, mu, beta) for i, mu in zip(top, mus)), nu, _snapshot(rem))
            )
            if check_steps and not _in_cone_and_mod(system, rem):
                raise LiftError(f"stage 3 left the cone or broke mod 3: F = {rem.tolist()}", trace)

    added = b.fill()
    if added:
        trace.append(TraceStep(STAGE4, row, tuple(added), None, _snapshot(rem)))

    G = build_tanner(Hs)
    cover = build_cover(G, b.permutations(0), M)
    labeling = CoverLabeling(cover, b.labels)
    return LiftResult(cover, labeling, M, m_prime, tuple(trace))


def decompose_one_type(H_s, F) -> list[tuple[int, ...]]:
    """Split a one-symbol matrix into index sets of size divisible by 3.

    Column ``i`` of the support ends up in exactly ``f_i`` sets.  Built
    greedily: each set takes one unit from the three largest remaining
    columns (ties to the lowest index).
    """
    Hs = H_s if isinstance(H_s, FieldMatrix) else FieldMatrix(3, np.asarray(H_s, dtype=np.int64).reshape(1, -1))
    if Hs.q != 3 or Hs.rows != 1 or Hs.entries.max(initial=0) > 1:
        raise FieldError("decompose_one_type needs a single ternary row with entries in {0, 1}")
    h = Hs.entries[0]
    a = _check_inputs(h, F, 3)
    support = [int(i) for i in np.flatnonzero(h)]
    live = [r for r in (0, 1) if a[r, support].any()]
    if len(live) > 1:
        raise PreconditionError("both symbol rows are nonzero on the support")
    if not member(Hs, a)[0]:
        raise PreconditionError("matrix is not in the ternary cone of the row")
    r = a[live[0]].copy() if live else np.zeros(Hs.cols, dtype=np.int64)
    if int(r[support].sum()) % 3:
        raise PreconditionError("the support sum is not divisible by 3")
    sets = []
    while r[support].sum() > 0:
        ranked = sorted((i for i in support if r[i] > 0), key=lambda i: (-r[i], i))
        # unreachable for inputs in the cone: max f_i <= (sum f) / 3 is preserved
        assert len(ranked) >= 3, f"cone violation while decomposing: {r.tolist()}"
        top = tuple(sorted(ranked[:3]))
        for i in top:
            r[i] -= 1
        sets.append(top)
    return sets


def _binary_single_row(h: np.ndarray, F: np.ndarray, M: int, row: int) -> tuple[_Builder, list[TraceStep]]:
    support = [int(i) for i in np.flatnonzero(h)]
    b = _Builder(h.size, M, support)
    _init_outside(b, F, 2)
    rem = F.copy()
    r = rem[0]
    trace = []
    while r[support].sum() > 0:
        ranked = sorted((i for i in support if r[i] > 0), key=lambda i: (-r[i], i))
        if len(ranked) < 2:
            raise LiftError(f"binary lift needs two nonzero columns, F = {rem.tolist()}", trace)
        top = ranked[:2]
        mus = [int(r[i]) - 1 for i in top]
        nu = b.free_check(top)
        for i, mu in zip(top, mus):
            r[i] -= 1
            b.labels[i, mu] = 1
            b.attach(i, mu, nu)
        trace.append(TraceStep(STAGE3, row, tuple((i, mu, 1) for i, mu in zip(top, mus)), nu, _snapshot(rem)))
    added = b.fill()
    if added:
        trace.append(TraceStep(STAGE4, row, tuple(added), None, _snapshot(rem)))
    return b, trace


def lift_full(H: FieldMatrix, F, *, check_steps: bool = True) -> LiftResult:
    """Realize ``F`` as a pseudocodeword matrix on a cover of ``H``'s Tanner graph.

    Every row is lifted on its own (through ``psi_map`` for ternary rows with
    2s) on the shared degree ``M``; each row's copies of a column are then
    reordered so the labels read 0, 1, 2 in order, which lets the per-row
    check copies be glued into one cover.
    """
    q = H.q
    a = _check_inputs(H.entries[0] if H.rows else np.zeros(H.cols), F, q)
    if not member(H, a)[0]:
        raise PreconditionError("matrix is not in the fundamental cone")
    if mod_residues(H, a).any():
        raise PreconditionError(f"matrix violates the mod-{q} condition")
    m_prime, M = cover_degree(a, q)

    merged_labels = np.zeros((H.cols, M), dtype=np.int64)
    for i in range(H.cols):
        col = [alpha for alpha in range(1, q) for _ in range(int(a[alpha - 1, i]))]
        merged_labels[i, M - len(col) :] = col
    perms: dict[tuple[int, int], list[int]] = {}
    trace: list[TraceStep] = []

    for j in range(H.rows):
        h = H.entries[j]
        if not h.any():
            continue
        if q == 3:
            res = lift_single_row(support_normalize(h), psi_map(h, a), M=M, row=j, check_steps=check_steps)
            labels = res.labeling.labels.copy()
            flip = h == 2
            labels[flip] = (-labels[flip]) % 3
            row_perms = {i: res.cover.permutation(0, i) for i in np.flatnonzero(h)}
            trace.extend(res.trace)
        else:
            b, steps = _binary_single_row(h, a, M, j)
            labels = b.labels
            row_perms = {i: [b.edge[(i, mu)] for mu in range(M)] for i in np.flatnonzero(h)}
            trace.extend(steps)
        for i, old in row_perms.items():
            order = np.argsort(labels[i], kind="stable")  # new copy t was old copy order[t]
            if not np.array_equal(labels[i][order], merged_labels[i]):
                raise LiftError(f"row {j + 1} realizes a different column {i + 1}", trace)
            perms[(j, int(i))] = [old[int(order[t])] for t in range(M)]

    G = build_tanner(H)
    cover = build_cover(G, perms, M)
    return LiftResult(cover, CoverLabeling(cover, merged_labels), M, m_prime, tuple(trace))


def approximate_cone_point(H: FieldMatrix, Z, eps: Fraction | int = 0) -> tuple[Fraction, np.ndarray]:
    """``(c, F)`` with ``F`` an integer pseudocodeword matrix and ``c F = Z`` exactly.

    With ``d`` the least common denominator of ``Z``, ``F = q d Z`` is integral,
    stays in the cone, and meets the mod-q condition since every entry of
    ``sum alpha F_alpha`` is a multiple of ``q``.  The distance is 0, below any
    positive ``eps``.
    """
    if Fraction(eps) < 0:
        raise ValueError("eps must be nonnegative")
    Zr = RationalMatrix.from_any(np.asarray(Z, dtype=object).reshape(H.q - 1, H.cols))
    if not member(H, Zr)[0]:
        raise PreconditionError("Z is not in the fundamental cone")
    d = Zr.common_denominator()
    F = Zr.scale(H.q * d).to_int_array()
    return Fraction(1, H.q * d), F


def realizes(result: LiftResult, F) -> bool:
    got = np.stack([(result.labeling.labels == a).sum(axis=1) for a in range(1, result.cover.base.q)])
    return np.array_equal(got, np.asarray(F))

