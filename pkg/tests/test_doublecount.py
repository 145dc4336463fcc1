from itertools import product
from math import prod

import pytest

from posetmatrix import (
    CapExceeded,
    InvariantError,
    PermutationPartition,
    SetFamily,
    all_prefix_union_masks,
    chain,
    count_partitions_with_prefix,
    diamond,
    dimension,
    double_count_identity,
    enumerate_partitions,
    format_partition,
    parse_partition,
    partition_count,
    prefix_matrix_freeness_check,
    prefix_union,
    prefix_union_matrix,
)


def test_partition_validation():
    PermutationPartition(3, ((2,), (), (1, 3)))
    with pytest.raises(InvariantError, match="permutation"):
        PermutationPartition(3, ((1, 2), (2, 3)))
    with pytest.raises(InvariantError, match="permutation"):
        PermutationPartition(2, ((1,),))
    with pytest.raises(InvariantError, match="part"):
        PermutationPartition(0, ())


def test_parse_and_format():
    q = parse_partition("142|5|3")
    assert q.n == 5 and q.parts == ((1, 4, 2), (5,), (3,))
    assert format_partition(q) == "142|5|3"
    assert parse_partition("|12").parts == ((), (1, 2))
    big = parse_partition("10,1,2|3,4,5,6,7,8,9")
    assert big.n == 10
    assert format_partition(big) == "10,1,2|3,4,5,6,7,8,9"
    with pytest.raises(InvariantError):
        parse_partition("11|2")


def test_prefix_union_frozen_example():
    q = parse_partition("142|5|3")
    assert prefix_union(q, (3, 1, 2)) == {1, 3, 4}
    assert prefix_union(q, (1, 1, 1)) == set()
    assert prefix_union(q, (4, 2, 2)) == {1, 2, 3, 4, 5}
    with pytest.raises(ValueError, match="out of range"):
        prefix_union(q, (5, 1, 1))
    with pytest.raises(ValueError, match="entries"):
        prefix_union(q, (1, 1))


def test_enumerate_partitions_small():
    got = {format_partition(q) for q in enumerate_partitions(2, 2)}
    assert got == {"12|", "1|2", "|12", "21|", "2|1", "|21"}
    for n, d in product(range(0, 4), range(1, 4)):
        seen = list(enumerate_partitions(n, d))
        assert len(seen) == partition_count(n, d)
        assert len({(q.parts) for q in seen}) == len(seen)


def test_enumerate_partitions_cap():
    with pytest.raises(CapExceeded, match="cap"):
        enumerate_partitions(10, 3, cap=1000)


def test_prefix_unions_are_distinct_per_partition():
    # one union per index vector: disjoint runs cannot collide
    for n, d in ((3, 2), (4, 2), (4, 3)):
        for q in enumerate_partitions(n, d):
            expect = prod(len(part) + 1 for part in q.parts)
            assert len(all_prefix_union_masks(q)) == expect


def test_prefix_unions_preserve_incomparability():
    q = parse_partition("14|23")
    vectors = list(product(range(1, 4), range(1, 4)))
    unions = {v: prefix_union(q, v) for v in vectors}
    for u in vectors:
        for v in vectors:
            le = all(a <= b for a, b in zip(u, v))
            assert le == (unions[u] <= unions[v])


def test_count_formula_matches_enumeration():
    for n, d in product(range(0, 4), range(1, 4)):
        counter = {}
        for q in enumerate_partitions(n, d):
            for mask in all_prefix_union_masks(q):
                counter[mask] = counter.get(mask, 0) + 1
        for mask in range(1 << n):
            assert counter.get(mask, 0) == count_partitions_with_prefix(
                n, d, mask.bit_count()
            )


def test_prefix_union_matrix_small():
    q = parse_partition("12|")
    fam = SetFamily.from_sets(2, [{1}])
    m = prefix_union_matrix(q, fam)
    assert m.dims == (3, 1)
    assert m.ones == ((2, 1),)
    with pytest.raises(ValueError, match="ground set"):
        prefix_union_matrix(q, SetFamily(3, ()))


def test_prefix_union_matrix_weight_counts_members():
    # distinct unions mean each family member is hit at most once per
    # partition, so the weight counts the members that occur as unions
    fam = SetFamily.from_sets(3, [set(), {1, 2}, {1, 2, 3}])
    for q in enumerate_partitions(3, 2):
        m = prefix_union_matrix(q, fam)
        hits = all_prefix_union_masks(q) & set(fam.masks)
        assert m.weight == len(hits)


def test_double_count_identity_exhaustive_tiny():
    for n in (0, 1, 2):
        for bits in range(1 << (1 << n)):
            masks = tuple(m for m in range(1 << n) if bits >> m & 1)
            res = double_count_identity(SetFamily(n, masks), 2)
            assert res.equal, (n, masks, res)


def test_double_count_identity_d3():
    fam = SetFamily.from_sets(3, [{1}, {2, 3}, {1, 2, 3}])
    res = double_count_identity(fam, 3)
    assert res.equal
    assert res.lhs == sum(
        count_partitions_with_prefix(3, 3, len(s)) for s in ({1}, {2, 3}, {1, 2, 3})
    )


def test_freeness_check_runs_clean():
    p = diamond()
    _, realizer = dimension(p)
    report = prefix_matrix_freeness_check(p, realizer, trials=25, n=4, seed=1)
    assert report.trials == 25
    assert report.violations == []


def test_freeness_check_needs_two_orders():
    p = chain(3)
    _, realizer = dimension(p)
    with pytest.raises(ValueError, match="2 linear orders"):
        prefix_matrix_freeness_check(p, realizer, trials=1)
