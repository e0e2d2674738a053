
import numpy as np
import pytest

from gcpseudo.cone import condition_two_mask, grid
from gcpseudo.field import FieldMatrix, enumerate_codewords
from gcpseudo.oracle import (
    BudgetExceeded,
    check_lemma_battery,
    check_necessity,
    check_sufficiency,
    count_covers,
    cover_assignments,
    enumerate_pseudocodeword_matrices,
    random_rows,
    realized_by_lift,
    spanning_forest,
)

TRIANGLE = FieldMatrix.from_rows([[1, 1, 1]], 3)


def as_set(X):
    return {tuple(tuple(int(x) for x in r) for r in F) for F in X}


def test_spanning_forest(H42):
    tree = spanning_forest(H42)
    assert len(tree) == 5  # 6 vertices, connected
    assert len(spanning_forest(FieldMatrix.from_rows([[1, 1, 0], [0, 0, 1]], 3))) == 3


def test_cover_counts(H42):
    assert count_covers(H42, 2, canonical=False) == 2**7
    assert count_covers(H42, 3) == 6**2
    assert sum(1 for _ in cover_assignments(H42, 2)) == 4


def test_degree_one_matrices_are_codewords(H42):
    expected = set()
    for c in enumerate_codewords(H42):
        expected.add(tuple(tuple(int(x == a) for x in c) for a in (1, 2)))
    assert enumerate_pseudocodeword_matrices(H42, 1) == expected


def test_frozen_counts_per_degree(H42):
    # frozen from canonical enumeration; degree 2 also cross-checked without canonicalization
    assert [len(enumerate_pseudocodeword_matrices(H42, M)) for M in (1, 2, 3)] == [9, 81, 481]


@pytest.mark.parametrize("H,M", [(TRIANGLE, 2), (TRIANGLE, 3), (FieldMatrix.from_rows([[1, 2, 2, 1], [2, 0, 1, 2]], 3), 2),
                                 (FieldMatrix.from_rows([[1, 1, 1, 0], [0, 1, 1, 1]], 2), 2)])
def test_canonical_matches_full_enumeration(H, M):
    assert enumerate_pseudocodeword_matrices(H, M) == enumerate_pseudocodeword_matrices(H, M, canonical=False)


@pytest.mark.parametrize("M", [1, 2])
def test_doubling_degree_is_monotone(H42, M):
    small = enumerate_pseudocodeword_matrices(H42, M)
    big = enumerate_pseudocodeword_matrices(H42, 2 * M)
    # disjoint union with an all-zero copy, and with a second copy of the same cover
    assert small <= big
    assert {tuple(tuple(2 * x for x in r) for r in F) for F in small} <= big


@pytest.mark.slow
def test_enumeration_reaches_every_small_condition_two_matrix(H42):
    found = enumerate_pseudocodeword_matrices(H42, 4)
    assert len(found) == 2043
    X = grid(3, 4, 2)
    X = X[(X.sum(axis=1) <= 2).all(axis=1)]
    want = as_set(X[condition_two_mask(H42, X)])
    assert len(want) == 101
    assert want <= found
    # and nothing found breaks condition two
    F = np.array(sorted(found))
    assert condition_two_mask(H42, F).all()


def test_oracle_and_lift_agree(H42):
    for F in enumerate_pseudocodeword_matrices(H42, 3):
        ok, why = realized_by_lift(H42, np.array(F))
        assert ok, (F, why)


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_pseudocodeword_matrices(TRIANGLE, 2, canonical=False, budget=5)
    with pytest.raises(BudgetExceeded):
        enumerate_pseudocodeword_matrices(FieldMatrix.from_rows([[1, 1, 1], [1, 2, 1]], 3), 5, budget=100)
    with pytest.raises(ValueError):
        enumerate_pseudocodeword_matrices(TRIANGLE, 0)


def test_necessity_report(H42):
    rep = check_necessity(H42, 2, canonical=False)
    assert rep.ok and rep.checked == 90
    assert rep.details["per_degree"] == {1: 9, 2: 81}
    assert rep.check == "ternary-necessity"
    assert "checked 90: ok" in rep.summary()


def test_sufficiency_report(H42):
    rep = check_sufficiency(H42, 3)
    assert rep.ok
    assert rep.checked == 4916  # frozen: condition-two matrices with entries <= 3
    assert rep.details["candidates"] == 4**8


def test_binary_reports():
    H = FieldMatrix.from_rows([[1, 1, 1, 0], [0, 1, 1, 1]], 2)
    assert check_necessity(H, 3).check == "binary-necessity"
    assert check_necessity(H, 3).ok
    assert check_sufficiency(H, 3).ok


def test_random_rows_are_seeded():
    a = random_rows(7, 3, 4)
    assert a == random_rows(7, 3, 4)
    assert all((r.entries != 0).sum() >= 2 for r in a)


def test_lemma_battery_small():
    rep = check_lemma_battery([FieldMatrix.from_rows([[1, 2, 1]], 3), FieldMatrix.from_rows([[1, 1, 1]], 2)], 3)
    assert rep.ok
    assert set(rep.details["counts"]) == {"row-intersection", "psi-membership", "psi-involution", "one-type-split", "zero-slack", "binary"}
    assert all(v > 0 for v in rep.details["counts"].values())


def test_reports_catch_a_planted_failure(monkeypatch):
    # a broken lift must surface as a sufficiency violation
    import gcpseudo.oracle as oracle

    def broken(H, F):
        raise oracle.LiftError("planted")

    monkeypatch.setattr(oracle, "lift_full", broken)
    rep = check_sufficiency(TRIANGLE, 1)
    assert not rep.ok
    assert rep.violations[0]["reason"] == "planted"
