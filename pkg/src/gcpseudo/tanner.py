"""Tanner graphs, their M-covers, lifted parity-check matrices and labelings.

Indices are 0-based in the Python API.  The JSON and DOT forms use the
1-based ``u_{i,mu}`` / ``v_{j,nu}`` numbering of the usual notation, and the
lifted matrix uses the flattening ``i' = i*M + mu`` (the 0-based form of
``(i-1)M + i*``).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from gcpseudo.field import FieldError, FieldMatrix, RationalMatrix


class CoverError(ValueError):
    """Raised when a cover cannot be constructed from the given data."""


class TannerEdge(NamedTuple):
    j: int
    i: int
    label: int


@dataclass(frozen=True)
class TannerGraph:
    H: FieldMatrix
    edges: tuple[TannerEdge, ...]

    @property
    def q(self) -> int:
        return self.H.q

    @property
    def n(self) -> int:
        return self.H.cols

    @property
    def m(self) -> int:
        return self.H.rows

    def check_neighbors(self, j: int) -> tuple[int, ...]:
        return tuple(e.i for e in self.edges if e.j == j)

    def variable_neighbors(self, i: int) -> tuple[int, ...]:
        return tuple(e.j for e in self.edges if e.i == i)

    def label(self, j: int, i: int) -> int:
        return int(self.H.entries[j, i])


def build_tanner(H: FieldMatrix) -> TannerGraph:
    edges = tuple(
        TannerEdge(int(j), int(i), int(H.entries[j, i]))
        for j, i in zip(*np.nonzero(H.entries))
    )
    return TannerGraph(H, edges)


class CoverEdge(NamedTuple):
    """Edge ``{u_{i,mu}, v_{j,nu}}`` carrying ``label``."""

    j: int
    nu: int
    i: int
    mu: int
    label: int


@dataclass(frozen=True)
class CoverGraph:
    """An explicit candidate M-cover; use :func:`is_valid_cover` to check it."""

    base: TannerGraph
    M: int
    edges: tuple[CoverEdge, ...]

    def permutation(self, j: int, i: int) -> tuple[int, ...]:
        """The map ``mu -> nu`` for base edge ``(j, i)``.

        Raises :class:`CoverError` if the cover edges over ``(j, i)`` do not
        form a perfect matching.
        """
        perm = [-1] * self.M
        for e in self.edges:
            if e.j == j and e.i == i:
                if not 0 <= e.mu < self.M or perm[e.mu] != -1:
                    raise CoverError(f"edge ({j},{i}) is not a matching in the cover")
                perm[e.mu] = e.nu
        if sorted(perm) != list(range(self.M)):
            raise CoverError(f"edge ({j},{i}) is not a perfect matching in the cover")
        return tuple(perm)

    def permutations(self) -> dict[tuple[int, int], tuple[int, ...]]:
        return {(e.j, e.i): self.permutation(e.j, e.i) for e in self.base.edges}


def build_cover(G: TannerGraph, perms: Mapping[tuple[int, int], Sequence[int]], M: int | None = None) -> CoverGraph:
    """Realize the cover given by one permutation per base edge.

    ``perms[(j, i)][mu] = nu`` connects ``u_{i,mu}`` to ``v_{j,nu}``.
    """
    base_keys = {(e.j, e.i) for e in G.edges}
    given = set(perms)
    if given - base_keys:
        raise CoverError(f"permutations given for non-edges: {sorted(given - base_keys)}")
    if base_keys - given:
        raise CoverError(f"missing permutations for edges: {sorted(base_keys - given)}")
    if M is None:
        if not perms:
            raise CoverError("cannot infer the degree of a cover of an edgeless graph")
        M = len(next(iter(perms.values())))
    if M < 1:
        raise CoverError(f"cover degree must be positive, got {M}")
    edges = []
    for e in G.edges:
        p = [int(x) for x in perms[(e.j, e.i)]]
        if sorted(p) != list(range(M)):
            raise CoverError(f"perms[{(e.j, e.i)}] = {p} is not a permutation of 0..{M - 1}")
        edges.extend(CoverEdge(e.j, nu, e.i, mu, e.label) for mu, nu in enumerate(p))
    return CoverGraph(G, M, tuple(sorted(edges)))


def trivial_cover(G: TannerGraph, M: int) -> CoverGraph:
    return build_cover(G, {(e.j, e.i): range(M) for e in G.edges}, M)


def cover_violations(cover: CoverGraph) -> list[str]:
    """Human-readable list of the structural rules a candidate cover breaks."""
    G, M = cover.base, cover.M
    problems = []
    if M < 1:
        return [f"degree M={M} is not positive"]
    seen: dict[tuple[int, int], list[CoverEdge]] = defaultdict(list)
    for e in cover.edges:
        if not (0 <= e.i < G.n and 0 <= e.j < G.m and 0 <= e.mu < M and 0 <= e.nu < M):
            problems.append(f"edge {_fmt_edge(e)} refers to a vertex outside the cover")
            continue
        base_label = G.label(e.j, e.i)
        if base_label == 0:
            problems.append(f"edge {_fmt_edge(e)} projects onto a non-edge of the Tanner graph")
            continue
        if e.label != base_label:
            problems.append(f"edge {_fmt_edge(e)} has label {e.label}, base edge label is {base_label}")
        seen[(e.j, e.i)].append(e)
    for be in G.edges:
        es = seen.get((be.j, be.i), [])
        mus = sorted(e.mu for e in es)
        nus = sorted(e.nu for e in es)
        if mus != list(range(M)) or nus != list(range(M)):
            problems.append(
                f"edges over base edge (v_{be.j + 1}, u_{be.i + 1}) do not form a perfect matching "
                f"of the {M} copies"
            )
    return problems


def is_valid_cover(cover: CoverGraph) -> bool:
    return not cover_violations(cover)


def lifted_parity_matrix(cover: CoverGraph) -> FieldMatrix:
    G, M = cover.base, cover.M
    Ht = np.zeros((M * G.m, M * G.n), dtype=np.int64)
    for e in cover.edges:
        Ht[e.j * M + e.nu, e.i * M + e.mu] = e.label
    return FieldMatrix(G.q, Ht)


@dataclass(frozen=True, eq=False)
class CoverLabeling:
    """Labels ``labels[i, mu] = lambda(u_{i,mu})`` on the variable copies."""

    cover: CoverGraph
    labels: np.ndarray

    def __post_init__(self) -> None:
        lab = np.array(self.labels, dtype=np.int64)
        G = self.cover.base
        if lab.shape != (G.n, self.cover.M):
            raise CoverError(f"labels have shape {lab.shape}, expected {(G.n, self.cover.M)}")
        if lab.size and (lab.min() < 0 or lab.max() >= G.q):
            raise CoverError(f"labels must lie in F{G.q}")
        lab.setflags(write=False)
        object.__setattr__(self, "labels", lab)

    @property
    def p(self) -> np.ndarray:
        """The label vector ``(p_{1,1}, ..., p_{1,M}, p_{2,1}, ...)``."""
        return self.labels.reshape(-1)

    @classmethod
    def from_vector(cls, cover: CoverGraph, p: Sequence[int]) -> CoverLabeling:
        return cls(cover, np.asarray(p, dtype=np.int64).reshape(cover.base.n, cover.M))


def failing_checks(lab: CoverLabeling) -> list[tuple[int, int]]:
    """Check copies ``(j, nu)`` whose labeled parity sum is nonzero."""
    G, M = lab.cover.base, lab.cover.M
    sums = np.zeros((G.m, M), dtype=np.int64)
    for e in lab.cover.edges:
        sums[e.j, e.nu] += e.label * lab.labels[e.i, e.mu]
    sums %= G.q
    return [(int(j), int(nu)) for j, nu in zip(*np.nonzero(sums))]


def verify_pseudocodeword(lab: CoverLabeling) -> bool:
    return not failing_checks(lab)


@dataclass(frozen=True, eq=False)
class PseudoMatrix:
    """Unscaled pseudocodeword matrix: row ``alpha - 1`` counts copies labeled ``alpha``."""

    q: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.entries, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != self.q - 1:
            raise FieldError(f"pseudocodeword matrix over F{self.q} needs {self.q - 1} rows, got shape {a.shape}")
        if a.size and a.min() < 0:
            raise FieldError("pseudocodeword matrix entries must be nonnegative")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PseudoMatrix):
            return self.q == other.q and np.array_equal(self.entries, other.entries)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.q, self.entries.shape, self.entries.tobytes()))

    def __repr__(self) -> str:
        return f"PseudoMatrix(q={self.q}, {self.entries.tolist()})"

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    def column_sums(self) -> np.ndarray:
        return self.entries.sum(axis=0)


def pseudocodeword_matrix(lab: CoverLabeling) -> PseudoMatrix:
    q = lab.cover.base.q
    counts = np.stack([(lab.labels == a).sum(axis=1) for a in range(1, q)])
    return PseudoMatrix(q, counts)


def normalize(F: PseudoMatrix | np.ndarray | Sequence[Sequence[int]], M: int) -> RationalMatrix:
    if M < 1:
        raise ValueError(f"cover degree must be positive, got {M}")
    a = np.asarray(F, dtype=np.int64)
    return RationalMatrix(tuple(tuple(Fraction(int(x), M) for x in row) for row in a))


def cover_from_lifted(H: FieldMatrix, Ht: FieldMatrix | np.ndarray, M: int) -> CoverGraph:
    """Read the per-edge permutations back out of the M x M blocks of a lifted matrix."""
    A = Ht.entries if isinstance(Ht, FieldMatrix) else np.asarray(Ht, dtype=np.int64)
    if A.shape != (H.rows * M, H.cols * M):
        raise CoverError(f"lifted matrix shape {A.shape} != {(H.rows * M, H.cols * M)}")
    G = build_tanner(H)
    perms = {}
    for j in range(H.rows):
        for i in range(H.cols):
            block = A[j * M : (j + 1) * M, i * M : (i + 1) * M]
            if H.entries[j, i] == 0:
                if block.any():
                    raise CoverError(f"block ({j + 1},{i + 1}) is nonzero over a zero entry of H")
                continue
            if set(np.unique(block)) - {0, int(H.entries[j, i])}:
                raise CoverError(f"block ({j + 1},{i + 1}) carries a label other than {H.entries[j, i]}")
            nz = block != 0
            if not ((nz.sum(axis=0) == 1).all() and (nz.sum(axis=1) == 1).all()):
                raise CoverError(f"block ({j + 1},{i + 1}) is not a permutation matrix")
            perms[(j, i)] = [int(np.flatnonzero(nz[:, mu])[0]) for mu in range(M)]
    return build_cover(G, perms, M)


# -- serialization -----------------------------------------------------------


def cover_to_json(obj: CoverGraph | CoverLabeling) -> dict:
    cover = obj.cover if isinstance(obj, CoverLabeling) else obj
    out = {
        "M": cover.M,
        "base": cover.base.H.to_json(),
        "perms": {
            f"{j + 1},{i + 1}": [nu + 1 for nu in perm]
            for (j, i), perm in cover.permutations().items()
        },
    }
    if isinstance(obj, CoverLabeling):
        out["labels"] = obj.labels.tolist()
    return out


def cover_from_json(obj: dict) -> CoverGraph | CoverLabeling:
    """Parse the cover JSON form.

    Malformed permutation arrays are kept as they are so that
    :func:`cover_violations` can report them; only the shape of the document
    is enforced here.
    """
    try:
        M = int(obj["M"])
        H = FieldMatrix.from_json(obj["base"])
        raw = obj["perms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise CoverError(f"cover JSON needs 'M', 'base' and 'perms': {exc}") from None
    G = build_tanner(H)
    edges = []
    for key, perm in raw.items():
        try:
            j, i = (int(t) - 1 for t in key.split(","))
        except ValueError:
            raise CoverError(f"bad permutation key {key!r}, expected 'j,i'") from None
        label = G.label(j, i) if 0 <= j < G.m and 0 <= i < G.n else 0
        edges.extend(CoverEdge(j, int(nu) - 1, i, mu, label) for mu, nu in enumerate(perm))
    cover = CoverGraph(G, M, tuple(sorted(edges)))
    if "labels" in obj and obj["labels"] is not None:
        return CoverLabeling(cover, np.array(obj["labels"], dtype=np.int64).reshape(G.n, M))
    return cover


def cover_to_dot(obj: CoverGraph | CoverLabeling) -> str:
    cover = obj.cover if isinstance(obj, CoverLabeling) else obj
    G, M = cover.base, cover.M
    lines = ["graph cover {"]
    for i in range(G.n):
        for mu in range(M):
            text = f"u{i + 1},{mu + 1}"
            if isinstance(obj, CoverLabeling):
                text += f" ({obj.labels[i, mu]})"
            lines.append(f'  "u_{i + 1}_{mu + 1}" [shape=circle, label="{text}"];')
    for j in range(G.m):
        for nu in range(M):
            lines.append(f'  "v_{j + 1}_{nu + 1}" [shape=square, label="v{j + 1},{nu + 1}"];')
    for e in cover.edges:
        lines.append(f'  "u_{e.i + 1}_{e.mu + 1}" -- "v_{e.j + 1}_{e.nu + 1}" [label="[{e.label}]"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _fmt_edge(e: CoverEdge) -> str:
    return f"{{u_{e.i + 1},{e.mu + 1}, v_{e.j + 1},{e.nu + 1}}}"
