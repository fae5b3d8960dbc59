import math

import pytest
from hypothesis import given, strategies as st

from cyclespec.errors import DomainError
from cyclespec.partitions import (
    Partition,
    class_size,
    dimension,
    dominates,
    enumerate_partitions,
    hook_dimension_formula,
    hook_shape,
)

import oracles


def test_partition_is_canonical():
    assert Partition([3, 1, 0, 0]) == (3, 1)
    assert Partition([3, 1]).n == 4
    with pytest.raises(DomainError):
        Partition([1, 2])
    with pytest.raises(DomainError):
        Partition([2, -1])


def test_json_round_trip():
    lam = Partition([3, 2, 1])
    assert lam.to_json() == "[3, 2, 1]"
    assert Partition.from_json(lam.to_json()) == lam


def test_enumerate_small():
    assert enumerate_partitions(1) == [(1,)]
    assert enumerate_partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(enumerate_partitions(8)) == 22


@pytest.mark.parametrize("n", range(1, 13))
def test_enumerate_matches_brute_force(n):
    parts = enumerate_partitions(n)
    assert len(parts) == len(set(parts))
    assert set(parts) == oracles.brute_partitions(n)
    assert parts == sorted(parts, reverse=True)


@pytest.mark.parametrize("n", [0, 21, -3])
def test_enumerate_range_guard(n):
    with pytest.raises(DomainError):
        enumerate_partitions(n)


def test_dominates_examples():
    assert dominates(Partition([4]), Partition([2, 2]))
    assert not dominates(Partition([2, 2]), Partition([3, 1]))
    assert not dominates(Partition([4, 1, 1]), Partition([3, 3]))
    assert not dominates(Partition([3, 3]), Partition([4, 1, 1]))
    with pytest.raises(DomainError):
        dominates(Partition([3]), Partition([2]))


@pytest.mark.parametrize("n", [5, 6, 7])
def test_dominance_is_partial_order(n):
    parts = enumerate_partitions(n)
    for a in parts:
        assert dominates(a, a)
        for b in parts:
            if a != b and dominates(a, b):
                assert not dominates(b, a)
            for c in parts:
                if dominates(a, b) and dominates(b, c):
                    assert dominates(a, c)


def test_dimension_examples():
    assert dimension(Partition([6])) == 1
    assert dimension(Partition([2, 2])) == 2
    assert hook_dimension_formula(2, 2, 0) == 2
    assert dimension(Partition([3, 2, 1])) == 16
    assert hook_dimension_formula(3, 2, 1) == 16


@pytest.mark.parametrize("shape", [(3, 2, 1), (2, 2), (4, 1, 1), (3, 3), (2, 2, 1, 1)])
def test_dimension_counts_standard_tableaux(shape):
    assert dimension(Partition(shape)) == oracles.brute_standard_tableaux_count(shape)


@pytest.mark.parametrize("n", range(1, 11))
def test_burnside_and_class_sizes(n):
    parts = enumerate_partitions(n)
    assert sum(dimension(lam) ** 2 for lam in parts) == math.factorial(n)
    assert sum(class_size(mu) for mu in parts) == math.factorial(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_class_size_matches_enumeration(n):
    brute = oracles.brute_class_sizes(n)
    assert {mu: class_size(mu) for mu in enumerate_partitions(n)} == brute


def test_class_size_examples():
    assert class_size(Partition([1] * 5)) == 1
    assert class_size(Partition([4])) == 6
    assert class_size(Partition([2, 1, 1])) == 6


def test_hook_formula_everywhere():
    for n in range(2, 13):
        for a in range(1, n + 1):
            for b in range(1, a + 1):
                c = n - a - b
                if c >= 0:
                    assert hook_dimension_formula(a, b, c) == dimension(hook_shape(a, b, c))


def test_hook_shape_constructor():
    assert hook_shape(3, 0, 2) == (3, 1, 1)
    assert hook_shape(3, 2, 1) == (3, 2, 1)
    with pytest.raises(DomainError):
        hook_shape(2, 3, 0)


@given(st.lists(st.integers(1, 5), min_size=1, max_size=4))
def test_conjugate_is_involution(parts):
    lam = Partition(sorted(parts, reverse=True))
    assert lam.conjugate().conjugate() == lam
    assert lam.conjugate().n == lam.n
    assert dimension(lam) == dimension(lam.conjugate())
