import itertools

import pytest
from hypothesis import given, settings, strategies as st

from kneading.words import (BiInfWord, HorizonExhausted, InvalidWord, Order, SymbolStream,
                            is_admissible_kneading, is_primary, is_shift_maximal,
                            max_zero_run_closure, parity_lex_cmp, parse_word,
                            primitive_root, shift, word_conjugate_equiv, z_function)

binary = st.text(alphabet="01", min_size=1, max_size=40)


def naive_cmp(a, b):
    """Parity-lex order straight from the definition."""
    rank = {"0": 0, "*": 1, "1": 2}
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            less = rank[x] < rank[y]
            if a[:i].count("1") % 2:
                less = not less
            return Order.PRECEDES if less else Order.FOLLOWS
    return Order.EQUAL


def naive_shift_maximal(s):
    for j in range(1, len(s)):
        if naive_cmp(s[j:], s[:len(s) - j]) is Order.FOLLOWS:
            return j
    return None


def test_parity_lex_examples():
    assert parity_lex_cmp("10000", "10111") is Order.FOLLOWS
    assert parity_lex_cmp("0101", "0101") is Order.EQUAL
    assert parity_lex_cmp("0", "1") is Order.PRECEDES
    assert parity_lex_cmp("0*1", "011") is Order.PRECEDES


@given(binary, binary)
def test_parity_lex_matches_definition(a, b):
    assert parity_lex_cmp(a, b) is naive_cmp(a, b)


def test_shift():
    assert shift("1011", 1) == "011"
    x = BiInfWord("1", "0", "1")
    assert shift(x, 1).window(-3, 3) == x.window(-2, 4)
    with pytest.raises(HorizonExhausted):
        shift(SymbolStream("10000"), 6)


def test_shift_maximal_examples():
    assert is_shift_maximal("1" * 30).status == "yes_at_horizon"
    v = is_shift_maximal("011011")
    assert v.status == "no" and v.witness == 1
    s = "100" * 10
    v = is_shift_maximal(s)
    assert (v.status == "no") == (naive_shift_maximal(s) is not None)


@given(binary)
def test_shift_maximal_matches_brute_force(s):
    v = is_shift_maximal(s)
    j = naive_shift_maximal(s)
    if j is None:
        assert v.status == "yes_at_horizon"
    else:
        assert v.status == "no" and v.witness == j


@given(binary)
def test_z_function_matches_brute_force(s):
    z = z_function(s)
    for i in range(1, len(s)):
        k = 0
        while i + k < len(s) and s[k] == s[i + k]:
            k += 1
        assert z[i] == k


def test_is_primary():
    # W=10 glued with 1,0,1,... is a *-product
    assert is_primary(("101" + "100") * 8).status == "star_product"
    prefix = "1001" + "1000"
    assert is_primary(prefix * 3 + "10000" + "1001").status in ("primary_at_horizon", "unknown")
    assert is_primary("1011", max_block=8).status == "unknown"


def test_admissible_examples():
    assert bool(is_admissible_kneading("1" + "0" * 40))
    v = is_admissible_kneading("011" * 10)
    assert v.status == "rejected" and v.reason == "shift_maximality"
    # below 101^inf: 10011... starts like 101^inf then drops
    assert is_admissible_kneading("10011" * 6).status == "rejected"


def test_conjugacy_and_roots():
    assert word_conjugate_equiv("01", "10")
    assert word_conjugate_equiv("1", "11")
    assert not word_conjugate_equiv("01", "011")
    assert primitive_root("0101") == "01"
    assert primitive_root("011") == "011"
    assert primitive_root("1" * 6) == "1"
    with pytest.raises(InvalidWord):
        primitive_root("")


@given(binary)
def test_primitive_root_brute_force(w):
    r = min((w[:d] for d in range(1, len(w) + 1)
             if len(w) % d == 0 and w[:d] * (len(w) // d) == w), key=len)
    assert primitive_root(w) == r


def test_conjugacy_is_equivalence_exhaustive():
    words = ["".join(p) for n in range(1, 5) for p in itertools.product("01", repeat=n)]
    for a in words:
        assert word_conjugate_equiv(a, a)
        for b in words:
            ab = word_conjugate_equiv(a, b)
            assert ab == word_conjugate_equiv(b, a)
            if not ab:
                continue
            for c in words:
                if word_conjugate_equiv(b, c):
                    assert word_conjugate_equiv(a, c)


def test_max_zero_run_closure():
    assert max_zero_run_closure(["1"]) == 0
    assert max_zero_run_closure(["001", "100"]) == 4
    assert max_zero_run_closure(["011"]) == 1
    with pytest.raises(InvalidWord):
        max_zero_run_closure(["000"])


@settings(max_examples=200)
@given(st.lists(st.text(alphabet="01", min_size=1, max_size=6).filter(lambda w: "1" in w),
                min_size=1, max_size=4))
def test_zero_run_closure_bounds_concatenations(words):
    r = max_zero_run_closure(words)
    for x, y, z in itertools.product(words, repeat=3):
        assert "0" * (r + 1) not in (x + y + z).strip("0")
    # some pair (or single word) reaches the bound
    texts = [x + y for x in words for y in words]
    assert any("0" * r in t for t in texts)


def test_parse_word():
    assert parse_word("1(01)^2 (0)^3") == "10101000"


def test_biinf_canonical_equality():
    a = BiInfWord("01", "", "01")
    b = BiInfWord("10", "", "10", 1)
    assert a.window(-6, 6) == b.window(-6, 6)
    assert a == b
    c = BiInfWord("1", "0", "1")
    assert str(c).count(".") == 1
