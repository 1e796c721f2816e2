import random

import pytest

from facecover import (ColumnGrouping, ConstantColumnError, Dnf,
                       FewZeroFunction, NotProperError, PreconditionError,
                       SignedPermutation, apply_transform, classify_matrix,
                       complete_function, extract_reduced,
                       heavy_column_function, heavy_column_metadata,
                       heavy_column_threshold, lift_reduced_dnf, minimal_dnf,
                       not_all_equal_dnf, realizes, to_proper)

from oracles import brute_realizes


def random_function(rng, max_n=8, max_k=5, min_n=1):
    n = rng.randint(min_n, max_n)
    k = rng.randint(1, min(max_k, 1 << n))
    return FewZeroFunction.from_rows(rng.sample(range(1 << n), k), n=n)


def random_transform(rng, n):
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return SignedPermutation(tuple(perm), rng.randrange(1 << n))


def test_apply_transform_examples():
    f = FewZeroFunction.from_rows(["001", "010", "100"])
    ident = SignedPermutation.identity(3)
    assert apply_transform(f, ident) == f

    g = FewZeroFunction.from_rows(["01"])
    negated = apply_transform(g, SignedPermutation((1, 2), 0b11))
    assert negated.to_text() == "10\n"

    reversed_perm = SignedPermutation((3, 2, 1), 0)
    assert apply_transform(f, reversed_perm) == f  # row set is symmetric


def test_transform_roundtrip_and_compose():
    rng = random.Random(3)
    for _ in range(100):
        f = random_function(rng)
        t = random_transform(rng, f.n)
        assert apply_transform(apply_transform(f, t), t.inverse()) == f
        assert t.compose(t.inverse()).perm == SignedPermutation.identity(f.n).perm
        assert t.compose(t.inverse()).neg == 0


def test_transform_preserves_optima():
    # spans n <= 12, k <= 5; k shrinks as n grows so every instance is
    # proved optimal quickly
    rng = random.Random(17)
    for _ in range(200):
        n = rng.randint(1, 12)
        k_cap = 5 if n <= 8 else (4 if n <= 10 else 3)
        k = rng.randint(1, min(k_cap, 1 << n))
        f = FewZeroFunction.from_rows(rng.sample(range(1 << n), k), n=n)
        t = random_transform(rng, n)
        g = apply_transform(f, t)
        for objective in ("rank", "length"):
            a = minimal_dnf(f, objective)
            b = minimal_dnf(g, objective)
            assert a.proved_optimal and b.proved_optimal
            assert a.optimum == b.optimum, (f, t.perm, t.neg, objective)


def test_to_proper_examples():
    # a column with more ones than zeros is negated, landing on an equal
    # column that then forms a group
    f = FewZeroFunction.from_rows(["100", "101", "010"])
    assert [f.matrix.column(j).to01() for j in (1, 2, 3)] == ["011", "100", "001"]
    proper, t = to_proper(f)
    cols = [proper.matrix.column(j).to01() for j in (1, 2, 3)]
    assert cols == ["001", "100", "100"]
    assert apply_transform(f, t) == proper

    with pytest.raises(ConstantColumnError):
        to_proper(FewZeroFunction.from_rows(["11", "10"]))  # column 1 constant


def test_to_proper_properties():
    rng = random.Random(23)
    done = 0
    while done < 150:
        f = random_function(rng, max_n=9, max_k=5)
        cols = f.matrix.column_ints()
        full = (1 << f.k) - 1
        if any(c == 0 or c == full for c in cols):
            continue
        done += 1
        proper, t = to_proper(f)
        flags = classify_matrix(proper)
        assert flags.is_proper
        assert flags.ones_le_zeros_all_columns
        assert apply_transform(f, t) == proper


def test_to_proper_unifies_complementary_tie_pair():
    # columns 01 and 10 are complementary with equal weight; properness
    # forces them onto one representative
    f = FewZeroFunction.from_rows(["01", "10"])
    proper, _ = to_proper(f)
    assert classify_matrix(proper).is_proper
    assert len(set(proper.matrix.column_ints())) == 1


def test_extract_reduced_examples():
    f = FewZeroFunction.from_rows(["001", "010", "100"])
    reduced, grouping = extract_reduced(f)
    assert reduced == f
    assert grouping.groups == ((1, 1), (2, 2), (3, 3))

    g = FewZeroFunction.from_rows(["110", "000", "001"])
    assert [g.matrix.column(j).to01() for j in (1, 2, 3)] == ["001", "001", "010"]
    g2, grouping = extract_reduced(g)
    assert grouping.groups == ((1, 2), (3, 3))
    assert grouping.representatives == (1, 3)
    assert g2.n == 2

    allsame = FewZeroFunction.from_rows(["111", "000"])
    r, grouping = extract_reduced(allsame)
    assert r.n == 1 and grouping.groups == ((1, 3),)

    with pytest.raises(NotProperError):
        extract_reduced(FewZeroFunction.from_rows(["01", "10"]))


def test_not_all_equal_dnf():
    d = not_all_equal_dnf([1, 2])
    assert {c.signed() for c in d.conjunctions} == {(1, -2), (-1, 2)}
    assert d.length == 2 and d.rank == 4

    d3 = not_all_equal_dnf([1, 2, 3])
    assert d3.length == 3 and d3.rank == 6
    # evaluates to 1 exactly when the variables are not all equal
    for p in range(8):
        bits = [(p >> i) & 1 for i in range(3)]
        assert d3.evaluate(p) == (0 if len(set(bits)) == 1 else 1)

    d4 = not_all_equal_dnf([2, 5, 7, 9])
    assert d4.length == 4 and d4.rank == 8

    with pytest.raises(PreconditionError):
        not_all_equal_dnf([4])


def test_lift_reduced_dnf_examples():
    # single group of two equal columns, reduced DNF = x1
    grouping = ColumnGrouping(((1, 2),), (1,))
    lifted = lift_reduced_dnf(Dnf.from_signed([[1]]), grouping)
    assert sorted(c.signed() for c in lifted.conjunctions) == sorted(
        [(1,), (1, -2), (-1, 2)])

    # all singleton groups: plain renaming
    grouping = ColumnGrouping(((1, 1), (2, 2)), (1, 2))
    lifted = lift_reduced_dnf(Dnf.from_signed([[1, -2]]), grouping)
    assert lifted.signed() == [[1, -2]]


def test_lift_reduced_dnf_realizes_original():
    rng = random.Random(29)
    done = 0
    while done < 100:
        n = rng.randint(1, 12)
        k = rng.randint(1, min(4, 1 << n))
        f = FewZeroFunction.from_rows(rng.sample(range(1 << n), k), n=n)
        cols = f.matrix.column_ints()
        full = (1 << f.k) - 1
        if any(c == 0 or c == full for c in cols):
            continue
        done += 1
        proper, _ = to_proper(f)
        reduced, grouping = extract_reduced(proper)
        best = minimal_dnf(reduced, "rank")
        assert best.proved_optimal
        lifted = lift_reduced_dnf(best.dnf, grouping)
        assert realizes(proper, lifted)
        if proper.n <= 8:
            assert brute_realizes(proper, lifted)
        collapsed = sum(e - s + 1 for s, e in grouping.groups if e > s)
        assert lifted.rank <= best.optimum + 2 * collapsed


def test_complete_function_examples():
    f3 = complete_function(3)
    assert f3.to_text() == "001\n010\n100\n"
    f4 = complete_function(4)
    assert f4.n == 7
    weights = sorted(min(c.bit_count(), 4 - c.bit_count())
                     for c in f4.matrix.column_ints())
    assert weights == [1, 1, 1, 1, 2, 2, 2]
    f2 = complete_function(2)
    assert f2.n == 1
    assert f2.matrix.column(1).to01() == "01"
    with pytest.raises(PreconditionError):
        complete_function(1)


def test_heavy_column_function():
    assert heavy_column_threshold(5) == 1
    f5 = heavy_column_function(5)
    assert f5.n == 15
    f4 = heavy_column_function(4)
    assert f4.n == 7 and f4 == complete_function(4)
    meta = heavy_column_metadata(8)
    assert meta.column_count == 127 and meta.meets_bound
    flags = classify_matrix(heavy_column_function(6))
    assert not flags.has_constant_column
    with pytest.raises(PreconditionError):
        heavy_column_function(3)
