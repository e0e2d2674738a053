import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gcpseudo.field import FieldMatrix, is_codeword
from gcpseudo.fixtures import P_VECTOR, example_cover, example_h, example_htilde
from gcpseudo.tanner import (
    CoverEdge,
    CoverError,
    CoverGraph,
    CoverLabeling,
    PseudoMatrix,
    build_cover,
    build_tanner,
    cover_from_json,
    cover_from_lifted,
    cover_to_dot,
    cover_to_json,
    cover_violations,
    failing_checks,
    is_valid_cover,
    lifted_parity_matrix,
    normalize,
    pseudocodeword_matrix,
    trivial_cover,
    verify_pseudocodeword,
)

from conftest import field_matrices


def test_tanner_graph_of_example(H42):
    G = build_tanner(H42)
    assert len(G.edges) == 7
    assert G.check_neighbors(1) == (0, 2, 3)
    assert G.variable_neighbors(1) == (0,)
    assert G.label(0, 1) == 2


def test_build_cover_validation(H42):
    G = build_tanner(H42)
    perms = {(e.j, e.i): [0, 1] for e in G.edges}
    with pytest.raises(CoverError, match="missing"):
        build_cover(G, {k: v for k, v in list(perms.items())[1:]})
    with pytest.raises(CoverError, match="non-edges"):
        build_cover(G, {**perms, (1, 1): [0, 1]})
    with pytest.raises(CoverError, match="not a permutation"):
        build_cover(G, {**perms, (0, 0): [0, 0]})
    with pytest.raises(CoverError):
        build_cover(G, perms, M=0)


def test_trivial_cover_lifts_to_block_diagonal(H42):
    cover = trivial_cover(build_tanner(H42), 3)
    Ht = lifted_parity_matrix(cover).entries
    assert Ht.shape == (6, 12)
    assert np.array_equal(Ht, np.kron(H42.entries, np.eye(3, dtype=np.int64)))


def test_example_cover_reproduces_lifted_matrix():
    lab = example_cover()
    assert lifted_parity_matrix(lab.cover) == example_htilde()
    assert lab.p.tolist() == P_VECTOR
    assert verify_pseudocodeword(lab)
    assert pseudocodeword_matrix(lab) == PseudoMatrix(3, [[2, 2, 2, 2], [2, 2, 0, 0]])


def test_normalize():
    R = normalize([[2, 2, 2, 2], [2, 2, 0, 0]], 4)
    assert R.to_json() == [["1/2", "1/2", "1/2", "1/2"], ["1/2", "1/2", 0, 0]]
    with pytest.raises(ValueError):
        normalize([[1]], 0)


def test_tampered_label_names_failing_checks():
    lab = example_cover()
    labels = lab.labels.copy()
    labels[0, 0] = 0
    bad = CoverLabeling(lab.cover, labels)
    assert not verify_pseudocodeword(bad)
    # u_{1,1} meets v_{1,3} and v_{2,3}
    assert failing_checks(bad) == [(0, 2), (1, 2)]


def test_labeling_validation():
    cover = example_cover().cover
    with pytest.raises(CoverError):
        CoverLabeling(cover, np.zeros((4, 3), dtype=int))
    with pytest.raises(CoverError):
        CoverLabeling(cover, np.full((4, 4), 3))


def test_cover_violations_detects_structure_errors(H42):
    cover = trivial_cover(build_tanner(H42), 2)
    edges = list(cover.edges)
    e = edges[0]
    edges[0] = CoverEdge(e.j, 1 - e.nu, e.i, e.mu, e.label)
    broken = CoverGraph(cover.base, 2, tuple(edges))
    msgs = cover_violations(broken)
    assert any("perfect matching" in m for m in msgs)
    relabeled = CoverGraph(cover.base, 2, (CoverEdge(e.j, e.nu, e.i, e.mu, 2),) + tuple(cover.edges[1:]))
    assert any("label" in m for m in cover_violations(relabeled))
    stray = CoverGraph(cover.base, 2, cover.edges + (CoverEdge(1, 0, 1, 0, 1),))
    assert any("non-edge" in m for m in cover_violations(stray))
    assert is_valid_cover(cover)


def test_json_round_trip_and_malformed_perm():
    lab = example_cover()
    doc = cover_to_json(lab)
    back = cover_from_json(doc)
    assert np.array_equal(back.labels, lab.labels)
    assert lifted_parity_matrix(back.cover) == example_htilde()
    doc["perms"]["1,1"] = [1, 1, 2, 3]
    assert not is_valid_cover(cover_from_json(doc).cover)
    with pytest.raises(CoverError):
        cover_from_json({"M": 2})


def test_cover_from_lifted_rejects_non_permutations():
    Ht = example_htilde().entries.copy()
    Ht[0, 2] = 0
    with pytest.raises(CoverError):
        cover_from_lifted(example_h(), Ht, 4)
    with pytest.raises(CoverError):
        cover_from_lifted(example_h(), Ht[:4], 4)


def test_dot_output():
    dot = cover_to_dot(example_cover())
    assert dot.startswith("graph cover {")
    assert dot.count("shape=circle") == 16
    assert dot.count("shape=square") == 8
    assert dot.count(" -- ") == 28


@st.composite
def labeled_covers(draw):
    H = draw(field_matrices(max_rows=2, max_cols=4))
    M = draw(st.integers(1, 3))
    G = build_tanner(H)
    perms = {(e.j, e.i): draw(st.permutations(range(M))) for e in G.edges}
    cover = build_cover(G, perms, M)
    labels = draw(st.lists(st.integers(0, H.q - 1), min_size=H.cols * M, max_size=H.cols * M))
    return CoverLabeling.from_vector(cover, labels)


@settings(max_examples=200, deadline=None)
@given(labeled_covers())
def test_graph_checks_agree_with_lifted_matrix(lab):
    # local parity checks on the graph vs p H~^T = 0 on the lifted matrix
    Ht = lifted_parity_matrix(lab.cover)
    assert verify_pseudocodeword(lab) == is_codeword(Ht, lab.p)
    assert is_valid_cover(lab.cover)


@settings(max_examples=100, deadline=None)
@given(labeled_covers())
def test_pseudomatrix_column_sums_bounded_by_degree(lab):
    F = pseudocodeword_matrix(lab)
    assert (F.column_sums() <= lab.cover.M).all()
    assert F.entries.shape == (lab.cover.base.q - 1, lab.cover.base.n)


def test_codeword_on_trivial_cover_scales(H42):
    cover = trivial_cover(build_tanner(H42), 3)
    lab = CoverLabeling(cover, np.repeat(np.array([[1], [0], [2], [1]]), 3, axis=1))
    assert verify_pseudocodeword(lab)
    assert pseudocodeword_matrix(lab).tolist() == [[3, 0, 0, 3], [0, 0, 3, 0]]


def test_binary_lifted_matrix():
    H = FieldMatrix.from_rows([[1, 1, 1]], 2)
    cover = build_cover(build_tanner(H), {(0, 0): [0, 1], (0, 1): [1, 0], (0, 2): [0, 1]})
    lab = CoverLabeling.from_vector(cover, [1, 0, 1, 0, 0, 0])
    assert not verify_pseudocodeword(lab)
    lab = CoverLabeling.from_vector(cover, [1, 0, 0, 1, 0, 0])
    assert verify_pseudocodeword(lab)
