import pytest
from hypothesis import given
from hypothesis import strategies as st

from wsingular.partition import (
    Partition,
    parse_partition,
    partitions,
    rectangle,
    subpartitions_of_rectangle,
)

# number of partitions of n, n = 0..12
PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


@st.composite
def partition_st(draw, max_size=12):
    n = draw(st.integers(0, max_size))
    return draw(st.sampled_from(partitions(n)))


def test_construction_and_zeros():
    assert Partition([3, 1, 0, 0]) == Partition([3, 1])
    assert Partition([0]) == Partition()
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Partition([2, -1])


@pytest.mark.parametrize("text, parts", [("3,1,1", (3, 1, 1)), ("[2,1]", (2, 1)), ("", ()), ("4", (4,))])
def test_parse(text, parts):
    assert parse_partition(text) == Partition(parts)


@pytest.mark.parametrize("text", ["1,2", "a", "-1", "2,,1"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_partition(text)


def test_counts():
    assert [len(partitions(n)) for n in range(13)] == PARTITION_COUNTS


def test_partitions_sorted_and_unique():
    for n in range(9):
        ps = partitions(n)
        assert ps == sorted(set(ps))
        assert all(p.size == n for p in ps)


def test_cell_statistics():
    lam = Partition([3, 1, 1])
    assert list(lam.cells()) == [(1, 1), (1, 2), (1, 3), (2, 1), (3, 1)]
    assert (lam.arm(1, 1), lam.leg(1, 1)) == (2, 2)
    assert (lam.coarm(1, 3), lam.coleg(3, 1)) == (2, 2)
    with pytest.raises(ValueError):
        lam.arm(2, 2)


def test_zee():
    assert Partition([3, 1, 1]).zee() == 6
    assert Partition([2, 2]).zee() == 8
    assert Partition().zee() == 1


def test_dominance():
    assert Partition([2, 1]).dominates([1, 1, 1])
    assert not Partition([3, 1, 1, 1]).dominates([2, 2, 2])
    assert not Partition([2, 2, 2]).dominates([3, 1, 1, 1])


def test_rectangles():
    assert rectangle(3, 2) == Partition([3, 3])
    assert rectangle(2, 0) == Partition()
    assert Partition([2, 1]).add_rectangle(2, 2) == Partition([4, 3])
    assert Partition([2, 1]).add_rectangle(1, 3) == Partition([3, 2, 1])
    with pytest.raises(ValueError):
        Partition([1, 1, 1]).add_rectangle(1, 2)


def test_subpartitions_of_rectangle():
    subs = list(subpartitions_of_rectangle(2, 2, 2))
    assert len(subs) == 6
    assert all(rectangle(2, 2).contains(s) for s in subs)
    assert list(subpartitions_of_rectangle(2, 2, 1)) == [Partition(), Partition([1]), Partition([2])]


@given(partition_st())
def test_conjugate_involution(lam):
    assert lam.conjugate().conjugate() == lam
    assert lam.conjugate().size == lam.size


@given(partition_st(8), partition_st(8))
def test_dominance_reverses_under_conjugation(lam, mu):
    if lam.size == mu.size:
        assert lam.dominates(mu) == mu.conjugate().dominates(lam.conjugate())


@given(partition_st())
def test_hook_sum(lam):
    # arm + leg + 1 summed over cells is the sum of hook lengths
    total = sum(lam.arm(i, j) + lam.leg(i, j) + 1 for i, j in lam.cells())
    assert total == sum(lam.coarm(i, j) + lam.coleg(i, j) + 1 for i, j in lam.cells())
