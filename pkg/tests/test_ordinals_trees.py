import pytest
from hypothesis import given, strategies as st

from kneading.ordinals import OMEGA, Ordinal
from kneading.trees import (UnknownNode, WFTree, build_tree, enumerate_path_labels,
                            label_tree, node_height, node_rank_of_label)

E = 5
coeffs = st.lists(st.integers(0, 4), min_size=E, max_size=E)


def from_vec(v):
    """v[i] is the coefficient of w^(E-1-i)."""
    return Ordinal(tuple((E - 1 - i, c) for i, c in enumerate(v) if c))


def vec_add(a, b):
    lead = next((i for i, c in enumerate(b) if c), None)
    if lead is None:
        return list(a)
    return a[:lead] + [a[lead] + b[lead]] + b[lead + 1:]


@given(coeffs, coeffs)
def test_order_matches_vector_oracle(a, b):
    x, y = from_vec(a), from_vec(b)
    assert (x < y) == (a < b)
    assert (x == y) == (a == b)


@given(coeffs, coeffs)
def test_addition_matches_vector_oracle(a, b):
    assert from_vec(a) + from_vec(b) == from_vec(vec_add(a, b))


@given(coeffs, coeffs, coeffs)
def test_addition_associative(a, b, c):
    x, y, z = from_vec(a), from_vec(b), from_vec(c)
    assert (x + y) + z == x + (y + z)


@given(coeffs)
def test_parse_round_trip(a):
    x = from_vec(a)
    assert Ordinal.parse(str(x)) == x
    assert Ordinal.from_json(x.to_json()) == x
    assert x + 1 == x.successor()


@given(coeffs, st.integers(1, 6))
def test_fundamental_sequences(a, k):
    x = from_vec(a)
    if not x.is_limit:
        return
    assert x.fundamental(k) < x.fundamental(k + 1) < x


def test_ordinal_examples():
    assert Ordinal.parse("omega") == OMEGA
    assert OMEGA.fundamental(3) == 3
    assert Ordinal.parse("w^2").fundamental(2) == Ordinal.parse("w*2")
    assert 1 + OMEGA == OMEGA
    assert str(OMEGA + 1) == "w*1+1"
    with pytest.raises(ValueError):
        Ordinal(((1, 1), (2, 1)))


def test_build_tree_examples():
    t = build_tree(0, 3)
    assert len(t) == 1 and node_height(t, ()) == 0
    t = build_tree(2, 3)
    assert len(t) == 1 + 3 + 9
    assert [t.intended_height(c) for c in t.children[()]] == [1, 1, 1]
    assert node_height(t, ()) == 2
    w = build_tree(OMEGA, 3)
    assert [w.intended_height(c) for c in w.children[()]] == [1, 2, 3]
    # truncation undershoot: the stored tree only reaches height 4
    assert node_height(w, ()) == 4 and w.intended_height(()) == OMEGA


@given(st.integers(0, 4), st.integers(1, 4))
def test_finite_tree_sizes(h, b):
    t = build_tree(h, b)
    assert len(t) == sum(b ** i for i in range(h + 1))
    for v in t.nodes_bfs():
        assert node_height(t, v) == t.intended_height(v)
        for c in t.children[v]:
            assert t.intended_height(c) < t.intended_height(v)


def test_tree_json_round_trip():
    t = build_tree(Ordinal.parse("w+1"), 2)
    u = WFTree.from_json(t.to_json())
    assert u.nodes_bfs() == t.nodes_bfs()
    assert all(u.intended_height(v) == t.intended_height(v) for v in t.nodes_bfs())


def test_labelings():
    t = build_tree(1, 3)
    lab = label_tree(t, "odd")
    assert [lab.phi[v] for v in t.nodes_bfs()[1:]] == [1, 3, 5]
    single = build_tree(1, 1)
    assert label_tree(single, "even").phi[(0,)] == 2
    paths, trunc = enumerate_path_labels(t, label_tree(t, "even"), 3)
    assert paths == [(2,), (4,), (6,)] and not trunc
    t2 = build_tree(2, 2)
    lab2 = label_tree(t2, "even")
    paths, trunc = enumerate_path_labels(t2, lab2, 100)
    assert trunc and (2,) in paths and any(len(p) == 2 and p[0] == 2 for p in paths)
    assert node_rank_of_label(t2, lab2, 2) == 1
    assert node_rank_of_label(t2, lab2, paths[-1][-1]) == 0
    with pytest.raises(UnknownNode):
        node_rank_of_label(t2, lab2, 3)
    with pytest.raises(ValueError):
        enumerate_path_labels(t2, lab2, 0)
