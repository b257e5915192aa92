import random
from fractions import Fraction as F

import pytest

from partreg.linalg import Matrix
from partreg.systems import (augment_neg_identity, chain_minus, chain_plus2,
                             dyadic_blocks, folkman, folkman_labels,
                             get_system, growing_diagonal, schur, truncate,
                             truncate_with_identity, truncated_block_system,
                             vdw)


def rows_of(m):
    return [[int(e) if e.denominator == 1 else e for e in row]
            for row in m.entries]


def test_schur_matrix():
    m = schur()
    assert rows_of(m) == [[1, 1, -1]]
    assert m.entry(0, 0) == 1 and m.entry(0, 2) == -1


def test_vdw3_display():
    assert rows_of(vdw(3)) == [[1, 1, -1, 0], [1, 0, 1, -1]]


def test_vdw4_by_hand():
    assert rows_of(vdw(4)) == [
        [1, 1, -1, 0, 0],
        [1, 0, 1, -1, 0],
        [1, 0, 0, 1, -1],
    ]


@pytest.mark.parametrize("m", range(2, 8))
def test_vdw_shape_and_row_pattern(m):
    mat = vdw(m)
    assert (mat.rows, mat.cols) == (m - 1, m + 1)
    for row in mat.entries:
        nonzeros = sorted(e for e in row if e != 0)
        assert nonzeros == [F(-1), F(1), F(1)]


def test_vdw_requires_two_terms():
    with pytest.raises(ValueError):
        vdw(1)


def test_folkman2_coincides_with_schur():
    assert rows_of(folkman(2)) == [[1, 1, -1]]


def test_folkman3_shape():
    m = folkman(3)
    assert (m.rows, m.cols) == (4, 7)
    # subsets in order {1,2},{1,3},{2,3},{1,2,3}
    assert folkman_labels(3) == ("x1", "x2", "x3", "y1.2", "y1.3", "y2.3",
                                 "y1.2.3")
    assert rows_of(m)[0] == [1, 1, 0, -1, 0, 0, 0]
    assert rows_of(m)[3] == [1, 1, 1, 0, 0, 0, -1]


@pytest.mark.parametrize("m", [2, 3, 4])
def test_folkman_rows_have_subset_size_plus_one_nonzeros(m):
    mat = folkman(m)
    sizes = sorted(sum(1 for e in row if e != 0) for row in mat.entries)
    from itertools import combinations
    expected = sorted(len(f) + 1 for k in range(2, m + 1)
                      for f in combinations(range(m), k))
    assert sizes == expected


def test_folkman_bounds():
    with pytest.raises(ValueError):
        folkman(1)
    with pytest.raises(ValueError):
        folkman(11)


def test_dyadic_entries():
    a = dyadic_blocks()
    assert a.entry(2, 5) == 1  # 4 <= 5 < 8
    assert a.entry(1, 1) == 2
    assert a.entry(0, 3) == 0
    assert a.column_support(0) == ((0, F(2)),)
    assert a.column_support(5) == ((2, F(1)), (5, F(2)))


def test_dyadic_truncation_golden():
    assert rows_of(truncate(dyadic_blocks(), 2, 4)) == [[2, 1, 0, 0],
                                                        [0, 2, 1, 1]]


def test_truncate_matches_entry_rule():
    a = chain_plus2()
    t = truncate(a, 5, 12)
    for i in range(5):
        for j in range(12):
            assert t.entry(i, j) == a.entry(i, j)


def test_truncate_with_identity_golden():
    got = truncate_with_identity(dyadic_blocks(), 2, 4)
    assert rows_of(got) == [[2, 1, 0, 0, -1, 0], [0, 2, 1, 1, 0, -1]]
    assert got == truncated_block_system(1)


def test_augmented_row_and_column_structure():
    aug = augment_neg_identity(dyadic_blocks())
    assert aug.y_support(3) == ((3, F(-1)),)
    # row 0 of (A|-I): 2 x0 + x1 = y0
    assert aug.row_support(0) == (("x0", F(2)), ("x1", F(1)), ("y0", F(-1)))
    for j in range(64):
        assert len(aug.x_support(j)) <= 2
        assert len(aug.y_support(j)) == 1


def test_chain_minus_display():
    assert rows_of(truncate(chain_minus(), 1, 7)) == [[1, -1, -1, 0, 0, 0, 0]]


def test_chain_plus2_display():
    t = truncate(chain_plus2(), 2, 7)
    assert rows_of(t)[1] == [0, 0, 1, -1, 2, 0, 0]


def test_growing_diagonal_entry():
    base = growing_diagonal()
    assert base.entry(1, 1) == -3
    assert base.entry(0, 0) == -2
    assert base.entry(2, 4) == 1
    # the registry's augmented system delegates entry() to the base block
    assert get_system("remark").matrix.entry(1, 1) == -3


def test_chain_plus2_column_sums():
    a = chain_plus2()
    sums = {sum(v for _, v in a.column_support(j)) for j in range(200)}
    assert sums == {F(1), F(-1), F(3)}


@pytest.mark.parametrize("R", range(1, 9))
def test_chain_minus_evens_partition_vanishes_on_prefix(R):
    # first R rows of the even-column sum are exactly zero once C >= 2R+2
    C = 2 * R + 2
    t = truncate(chain_minus(), R, C)
    total = [F(0)] * R
    for j in range(0, C, 2):
        col = t.column(j)
        total = [a + b for a, b in zip(total, col)]
    assert all(v == 0 for v in total)


@pytest.mark.parametrize("factory", [dyadic_blocks, growing_diagonal,
                                     chain_minus, chain_plus2])
def test_support_rules_agree_with_entry_rule(factory):
    view = factory()
    rng = random.Random(hash(view.name) & 0xFFFF)
    # probe 10^4 random cells, biased to include every support row
    for _ in range(2000):
        j = rng.randrange(0, 2048)
        support = dict(view.column_support(j))
        for i, val in support.items():
            assert view.entry(i, j) == val
        for _ in range(3):
            i = rng.randrange(0, 2048)
            assert view.entry(i, j) == support.get(i, F(0))
    for _ in range(500):
        i = rng.randrange(0, 10)
        row = dict(view.row_support(i))
        for j, val in row.items():
            assert view.entry(i, j) == val
        for _ in range(4):
            j = rng.randrange(0, 2048)
            assert view.entry(i, j) == row.get(j, F(0))


def test_every_row_support_is_finite_and_consistent():
    for factory in (dyadic_blocks, growing_diagonal, chain_minus, chain_plus2):
        view = factory()
        for i in range(8):
            support = view.row_support(i)
            assert len(support) == len(dict(support))
            assert all(v != 0 for _, v in support)


def test_registry_ids_resolve():
    for sid in ("schur", "vdw:4", "folkman:3", "sec2", "sec2-augmented",
                "chain-minus", "chain-plus2", "remark"):
        spec = get_system(sid)
        assert spec.id == sid
    with pytest.raises(KeyError):
        get_system("nope")


def test_registry_finite_labels_match_columns():
    for sid in ("schur", "vdw:4", "folkman:3"):
        spec = get_system(sid)
        assert isinstance(spec.matrix, Matrix)
        assert len(spec.labels) == spec.matrix.cols


def test_interleaved_labels():
    a = chain_plus2()
    assert [a.column_label(j) for j in range(4)] == ["x0", "y0", "x1", "y1"]
