import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayleydih.errors import CapExceeded, DegreeMismatch
from cayleydih.groups import GroupType, classify
from cayleydih.perm import (
    PermSet,
    compose,
    format_perm,
    generate_closure,
    identity_perm,
    inverse,
    is_group_closed,
    is_regular,
    is_sharply_transitive,
    is_transitive,
    multiplication_table,
    orbit,
    parse_perm,
    perm_order,
    perm_power,
)

perms = st.integers(1, 7).flatmap(lambda n: st.permutations(range(n)).map(tuple))


def test_compose_applies_right_factor_first():
    p = (1, 2, 0)
    q = (0, 2, 1)
    assert compose(p, q) == (1, 0, 2)
    assert compose(q, p) == (2, 1, 0)


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose((0, 1), (0, 1, 2))


@given(perms)
def test_inverse_and_order(p):
    n = len(p)
    assert compose(p, inverse(p)) == identity_perm(n)
    assert compose(inverse(p), p) == identity_perm(n)
    k = perm_order(p)
    assert perm_power(p, k) == identity_perm(n)
    assert all(perm_power(p, j) != identity_perm(n) for j in range(1, k))


def test_format_parse_round_trip():
    assert format_perm((2, 0, 1)) == "[2,0,1]"
    assert parse_perm("[2,0,1]") == (2, 0, 1)
    assert parse_perm(" [ ] ") == ()
    with pytest.raises(ValueError):
        parse_perm("[0,0]")
    with pytest.raises(ValueError):
        parse_perm("0,1")


def test_permset_dedups_and_indexes():
    s = PermSet(3, ((0, 1, 2), (1, 2, 0), (0, 1, 2)))
    assert len(s) == 2
    assert (1, 2, 0) in s and [1, 2, 0] in s
    assert s.index((1, 2, 0)) == 1
    assert s.as_array().shape == (2, 3)
    with pytest.raises(DegreeMismatch):
        PermSet(3, ((0, 1),))


def test_closure_of_klein_group():
    a = (1, 0, 3, 2)
    b = (2, 3, 0, 1)
    g = generate_closure([a, b])
    assert g.element_set() == {(0, 1, 2, 3), a, b, compose(a, b)}
    assert is_group_closed(g) and is_regular(g)
    assert classify(multiplication_table(g)) == GroupType.abelian((2, 2))


def test_closure_of_symmetric_group():
    g = generate_closure([(1, 2, 3, 0), (1, 0, 2, 3)])
    assert len(g) == 24
    assert is_transitive(g) and not is_regular(g)
    assert not is_sharply_transitive(g)


def test_closure_cap():
    with pytest.raises(CapExceeded):
        generate_closure([(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)], cap=50)


def test_closure_without_generators_needs_degree():
    assert generate_closure([], n=3).elements == ((0, 1, 2),)
    with pytest.raises(ValueError):
        generate_closure([])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.permutations(range(5)).map(tuple), min_size=1, max_size=3))
def test_closure_is_a_group(gens):
    g = generate_closure(gens)
    assert is_group_closed(g)
    assert identity_perm(5) in g
    assert all(inverse(p) in g for p in g)
    assert all(p in g for p in gens)
    assert 120 % len(g) == 0


def _sharply_transitive_brute(elements, n):
    for u, v in itertools.product(range(n), repeat=2):
        if sum(p[u] == v for p in elements) != 1:
            return False
    return True


@settings(max_examples=40, deadline=None)
@given(st.lists(st.permutations(range(4)).map(tuple), min_size=1, max_size=6))
def test_sharp_transitivity_matches_brute_force(elements):
    s = PermSet(4, tuple(elements))
    assert is_sharply_transitive(s) == _sharply_transitive_brute(s.elements, 4)


def test_orbit():
    g = generate_closure([(1, 0, 2, 4, 3)])
    assert orbit(g, 0) == {0, 1}
    assert orbit(g, 2) == {2}
    assert not is_transitive(g)


def test_multiplication_table_of_cyclic_group():
    g = generate_closure([(1, 2, 3, 4, 5, 0)])
    t = multiplication_table(g)
    assert t.shape == (6, 6)
    assert classify(t) == GroupType.abelian((6,))
    # table entry (i, j) is the index of element i composed with element j
    for i, j in itertools.product(range(6), repeat=2):
        assert g.elements[t[i, j]] == compose(g.elements[i], g.elements[j])
    assert np.array_equal(np.sort(t, axis=1), np.tile(np.arange(6), (6, 1)))
