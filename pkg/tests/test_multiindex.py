import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bergman_qgh.errors import InputError
from bergman_qgh.multiindex import (
    Enumeration,
    MultiIndex,
    count_of_degree,
    count_up_to_degree,
    index_of,
    multi_indices_up_to,
    multi_of,
)


def test_index_examples():
    assert index_of((0,)) == 1
    assert index_of((1, 1)) == 5
    assert index_of((0, 1)) == 2


def test_graded_lex_order_d2():
    assert [tuple(k) for k in multi_indices_up_to(2, 2)] == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]


def test_multi_of_examples():
    assert multi_of(1, 3) == (0, 0, 0)
    assert multi_of(4, 2) == (0, 2)
    assert multi_of(2, 1) == (1,)


def test_counts():
    assert count_up_to_degree(2, 2) == 6
    assert count_up_to_degree(0, 5) == 1
    assert count_up_to_degree(3, 1) == 4
    assert count_up_to_degree(-1, 3) == 0


def test_errors():
    with pytest.raises(InputError):
        multi_of(0, 2)
    with pytest.raises(InputError):
        index_of((1, -1))
    with pytest.raises(InputError):
        index_of((1, 0), d=3)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_round_trip(d):
    for j in range(1, 10_001):
        assert index_of(multi_of(j, d)) == j


@pytest.mark.parametrize("d", [1, 2, 3])
def test_degree_blocks_contiguous(d):
    for m in range(6):
        idx = [index_of(k) for k in multi_indices_up_to(6, d) if k.degree == m]
        assert idx == list(range(count_up_to_degree(m - 1, d) + 1, count_up_to_degree(m, d) + 1))
        assert len(idx) == count_of_degree(m, d)
        assert list(Enumeration(d).degree_block(m)) == idx


def test_d1_index():
    for k in range(50):
        assert index_of((k,)) == k + 1


def test_arithmetic_and_json():
    a = MultiIndex((1, 0, 2))
    assert a.degree == 3 and a.factorial == 2
    assert a + MultiIndex((0, 1, 0)) == (1, 1, 2)
    assert a.try_sub(MultiIndex((2, 0, 0))) is None
    assert a.to_json() == "[1,0,2]"
    assert MultiIndex.from_json("[1,0,2]") == a


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=4))
def test_property_index_bijection(k):
    assert multi_of(index_of(k), len(k)) == tuple(k)
