from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simcrit import linalg

from conftest import leibniz_det

entries = st.builds(Fraction, st.integers(-4, 4), st.sampled_from([1, 2, 3]))


@st.composite
def square(draw, max_n=5):
    n = draw(st.integers(0, max_n))
    return [draw(st.lists(entries, min_size=n, max_size=n)) for _ in range(n)]


@st.composite
def rect(draw):
    r, c = draw(st.integers(1, 5)), draw(st.integers(1, 6))
    return [draw(st.lists(entries, min_size=c, max_size=c)) for _ in range(r)]


def test_preset_basis_det():
    rows = [[0, 0, 1, 0], [3, 0, 0, 0], [0, 0, 0, 1], [2, -1, -2, -1]]
    assert linalg.det(rows) == 3


def test_needs_pivot_swap():
    assert linalg.bareiss_det([[0, 1], [1, 0]]) == -1


def test_non_square():
    with pytest.raises(ValueError):
        linalg.bareiss_det([[1, 2]])


@settings(max_examples=300)
@given(square())
def test_det_matches_permutation_expansion(rows):
    assert linalg.det(rows) == leibniz_det(rows)


@given(rect())
def test_nullspace_vectors_are_annihilated(rows):
    ns = linalg.nullspace(rows)
    assert len(ns) + linalg.rank(rows) == len(rows[0])
    for v in ns:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in rows)


def test_nullspace_empty_matrix():
    assert linalg.nullspace([], n_cols=2) == [[1, 0], [0, 1]]
