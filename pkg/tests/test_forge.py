import json

import pytest
from hypothesis import given, strategies as st

from kneading.forge import (ConstructionParams, FeasibilityQuery, Infeasible,
                            build_block_words, build_K_prefix, build_Kprime_prefix,
                            build_prefix, build_section7_prefix, compute_spacer,
                            fair_index, feasible, path_block, predicted_presentation,
                            select_words)
from kneading.schemas import section7_B
from kneading.words import is_admissible_kneading, max_zero_run_closure


def grid():
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            for n in range(1, 6):
                for m in range(1, 6):
                    if feasible(FeasibilityQuery(a, b, n, m)):
                        yield a, b, n, m


def test_feasibility_examples():
    assert not feasible(FeasibilityQuery(1, 1, 1, 2))
    assert feasible(FeasibilityQuery(0, 0, 3, 3))
    assert feasible(FeasibilityQuery(2, 5, 7, 1))
    assert not feasible(FeasibilityQuery(0, 1, 3, 3))
    assert not feasible(FeasibilityQuery(2, 1, 1, 1))
    assert len(list(grid())) == 106


def test_select_words_examples():
    w = select_words(1, 1, 1, 1)
    assert (w.U, w.V, w.W, w.kind) == ("1", "1", "1", "K_with_V")
    w = select_words(1, 2, 4, 1)
    assert (w.U, w.V, w.W, w.kind) == ("1", "011", "1", "K_with_V")
    w = select_words(2, 2, 2, 3)
    assert (w.U, w.W, w.kind) == ("01", "1", "K_prime")
    with pytest.raises(Infeasible, match="m != 2"):
        select_words(1, 1, 1, 2)


def test_spacer_and_schedule():
    assert compute_spacer(["1", "1", "1", "1"]) == "101"
    words = ["01", "011", "1", "101"]
    assert compute_spacer(words) == "1" + "0" * (max_zero_run_closure(words) + 1) + "1"
    assert [fair_index(k) for k in range(1, 9)] == [1, 2, 1, 3, 1, 2, 1, 4]
    for t in range(6):
        assert fair_index(2 ** t) == t + 1
    hits = [fair_index(k) for k in range(1, 33)]
    assert all(hits.count(i) >= 2 for i in range(1, 5))


@given(st.integers(1, 10 ** 6))
def test_fair_index_is_ruler(k):
    v = 0
    while k % 2 == 0:
        k //= 2
        v += 1
    assert fair_index(k * 2 ** v) == v + 1


def test_block_words():
    assert path_block("B", "V", (2,)) == "BVVB"
    assert path_block("B", "W", (1, 3), reverse=True) == "BWWWBWB"
    assert path_block("B", "U", (2, 4)) == "BUUBUUUUB"
    p = ConstructionParams.for_tuple(1, 1, 1, 1)
    bw = build_block_words(p)
    assert bw.U_i(1) == p.B + "1" * p.Lambda[0][0] + p.B


def test_prefix_layout():
    p = ConstructionParams.for_tuple(1, 1, 1, 1)
    K = build_K_prefix(p, 5000).prefix
    assert K.startswith(p.A * 2)
    assert K[2 * len(p.A):].startswith("1" + build_block_words(p).U_i(1) + "1")
    q = ConstructionParams.for_tuple(2, 2, 2, 3)
    K2 = build_Kprime_prefix(q, 5000).prefix
    bw = build_block_words(q)
    x1 = q.U + bw.U_i(1) + q.U
    assert K2.startswith(q.A * 2 + x1 + q.W + bw.W_i(1) + q.W)
    with pytest.raises(ValueError):
        build_K_prefix(p, 3)
    with pytest.raises(ValueError):
        build_K_prefix(q, 100)


def test_prefixes_admissible_and_synchronized():
    for a, b, n, m in grid():
        p = ConstructionParams.for_tuple(a, b, n, m)
        K = build_prefix(p, 20_000).prefix
        assert bool(is_admissible_kneading(K, max_block=64)), (a, b, n, m)
        r = len(p.A) - 2
        assert "0" * r not in K[2 * len(p.A):], (a, b, n, m)


def test_determinism_and_sidecar():
    p = ConstructionParams.for_tuple(2, 3, 3, 2)
    K1 = build_prefix(p, 30_000).prefix
    q = ConstructionParams.from_dict(json.loads(p.sidecar(30_000)))
    assert q == p
    assert build_prefix(q, 30_000).prefix == K1


def test_section7_blocks():
    assert section7_B(3) == "10111" and section7_B(4) == "1111" and section7_B(1) == "1"
    n = [i + 2 for i in range(1, 40)]
    K = build_section7_prefix(n, 300).prefix
    B = section7_B
    expect = "10001" * 2 + "".join(
        "1" * n[i - 1] + "".join(B(j) for j in path) for i, path in
        [(1, [1]), (2, [2, 1]), (3, [3, 1]), (4, [4, 2, 1]), (5, [5, 2, 1]), (6, [6, 3, 1])])
    assert K.startswith(expect)
    with pytest.raises(ValueError):
        build_section7_prefix([3, 3, 4], 100)
    s7 = ConstructionParams.section7()
    assert bool(is_admissible_kneading(build_prefix(s7, 50_000), max_block=64))


def test_predicted_presentations():
    p = ConstructionParams.for_tuple(1, 2, 3, 4)
    om, ih = predicted_presentation(p)
    names = {s.name for s in ih.schemas}
    assert {"U^Z", "V^Z", "W^Z"} <= names
    q = ConstructionParams.for_tuple(2, 2, 2, 3)
    om, ih = predicted_presentation(q)
    names = {s.name for s in ih.schemas}
    assert {"W^-inf.U^inf", "U^-inf.W^inf"} <= names and not any("V" in x for x in names)
    s7 = predicted_presentation(ConstructionParams.section7())[1]
    assert [s.name for s in s7.schemas] == ["1^Z", "1^-inf.01^inf", "B_gamma.1^inf"]
