import pytest
from hypothesis import given, settings, strategies as st

from kneading.forge import ConstructionParams, build_prefix
from kneading.language import (cantor_growth_test, central_cylinders, occurs_infinitely_often,
                               omega_words, schema_words, window_set)
from kneading.schemas import FreeDomain, PointSchema, SpacePresentation, pw, rtail
from kneading.tent import TentParam, kneading_prefix


def test_occurs_infinitely_often():
    p = ConstructionParams.for_tuple(1, 1, 1, 1)
    K = build_prefix(p, 20_000)
    assert occurs_infinitely_often("1", K) == "yes_evidence"
    r = len(p.A) - 2
    assert occurs_infinitely_often("0" * r, K) == "no_evidence"
    assert occurs_infinitely_often("0" * 30, "1" * 40, cutoff=30) == "insufficient"
    with pytest.raises(ValueError):
        occurs_infinitely_often("1", K, cutoff=20_000)


def test_omega_words_examples():
    K = kneading_prefix(TentParam.parse("2"), 400)
    for D in (1, 3, 5):
        assert omega_words(K, D) == {"0" * D}
    with pytest.raises(ValueError):
        omega_words(K, 100)
    p = ConstructionParams.for_tuple(1, 1, 1, 3)
    K = build_prefix(p, 100_000)
    assert all("1" * D in omega_words(K, D) for D in range(1, 11))
    assert central_cylinders(K, 0) == {"0", "1"}


@settings(max_examples=300)
@given(st.lists(st.text(alphabet="01", min_size=0, max_size=30), min_size=1, max_size=4),
       st.integers(1, 8))
def test_window_set_matches_naive(texts, D):
    naive = {t[i:i + D] for t in texts for i in range(len(t) - D + 1)}
    assert window_set(texts, D) == naive


def test_schema_words_examples():
    one = SpacePresentation("right", [PointSchema("1^inf", (rtail("1"),))], {})
    assert schema_words(one, 4, 3) == {"1111"}
    p = SpacePresentation("right", [PointSchema("0^n1^inf", (pw("0", "n"), rtail("1")))],
                          {"n": FreeDomain(10)})
    assert schema_words(p, 3, 3) == {"000", "001", "011", "111"}
    assert schema_words(SpacePresentation("right", [], {}), 3, 3) == set()
    with pytest.raises(ValueError):
        schema_words(one, 3, 0)


def test_growth_classifier():
    assert cantor_growth_test(dict(enumerate([2, 4, 8, 16, 32, 64], 1))) == "exponential"
    assert cantor_growth_test(dict(enumerate([5, 7, 9, 11, 13, 15], 1))) == "polynomial"
    assert cantor_growth_test({d: d ** 2 for d in range(3, 13)}) == "polynomial"
    with pytest.raises(ValueError):
        cantor_growth_test({1: 2, 2: 4})


def test_monotone_evidence():
    p = ConstructionParams.for_tuple(1, 2, 3, 4)
    short = build_prefix(p, 40_000).prefix
    long = build_prefix(p, 80_000).prefix
    for w in sorted(window_set([short[20_001:]], 6))[:50]:
        assert occurs_infinitely_often(w, long) == "yes_evidence"
