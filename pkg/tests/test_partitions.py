import pytest
from hypothesis import given, strategies as st

from sympencil import IntegerPartition, dominated_by, partition_add, strictly_dominated_by


def partitions(max_total=20):
    return st.lists(st.integers(0, max_total), max_size=8).map(
        lambda xs: IntegerPartition(sorted(xs, reverse=True))
    )


def test_construction_and_trimming():
    assert IntegerPartition([3, 1, 0, 0]) == (3, 1)
    assert repr(IntegerPartition([3, 1])) == "IntegerPartition(3, 1)"
    with pytest.raises(ValueError):
        IntegerPartition([1, 2])
    with pytest.raises(ValueError):
        IntegerPartition([-1])


def test_from_counts_and_conjugate():
    assert IntegerPartition.from_counts([3, 1]) == (2, 1, 1)
    assert IntegerPartition.from_counts([1, 0], start=0) == (2, 1)
    assert IntegerPartition([2, 1, 1]).conjugate() == (3, 1)


def test_dominance_examples():
    assert dominated_by((2, 1), (2, 1))
    assert dominated_by((2, 1), (2, 2))
    assert not dominated_by((3,), (2, 1))
    assert strictly_dominated_by((2, 1), (2, 2))
    assert not strictly_dominated_by((2, 1), (2, 1))


def test_partition_add_examples():
    assert partition_add((2, 1), 0) == (2, 1)
    assert partition_add((2, 1), 1, length=3) == (3, 2, 1)
    assert partition_add((0,), 2, length=2) == (2, 2)
    with pytest.raises(ValueError):
        partition_add((2, 1), 1)
    with pytest.raises(ValueError):
        partition_add((2, 1), 1, length=1)


@given(partitions())
def test_reflexive(p):
    assert dominated_by(p, p)


@given(partitions(), partitions())
def test_antisymmetric(p, q):
    if dominated_by(p, q) and dominated_by(q, p):
        assert p == q


@given(partitions(), partitions(), partitions())
def test_transitive(p, q, r):
    if dominated_by(p, q) and dominated_by(q, r):
        assert dominated_by(p, r)


@given(partitions(), st.integers(0, 5))
def test_add_preserves_dominance(p, a):
    length = max(len(p), 1)
    assert dominated_by(p, partition_add(p, a, length))
