import itertools
import json
import warnings

import pytest

from kneading.analysis import (AmbiguousTable, NotHeightOne, counts_csv, cross_check_languages,
                               expected_top_count, finite_omega_case, projection_rank_check,
                               to_json)
from kneading.cb import space_signature
from kneading.forge import ConstructionParams, build_prefix, predicted_presentation
from kneading.schemas import PointSchema, SpacePresentation, ltail, rtail


def test_expected_top_count_examples():
    assert expected_top_count("1", "1", "011", "K_with_V", "omega", True) == 1
    assert expected_top_count("1", "1", "1", "K_with_V", "inhom", True) == 1
    assert expected_top_count("1", "1", "011", "K_with_V", "inhom", False) == 4
    assert expected_top_count("01", None, "1", "K_prime", "inhom", True) == 3
    assert expected_top_count("01", None, "011", "K_prime", "inhom", False) == 3
    assert expected_top_count("01", "10", "1", "K_with_V", "omega", False) == 2


def test_non_primitive_words_use_roots():
    with pytest.warns(UserWarning):
        assert expected_top_count("0101", "1", "1", "K_with_V", "omega", False) == 3


def test_table_rows_never_clash():
    # ~ is an equivalence, so overlapping rows always give the same value
    words = ["".join(p) for n in range(1, 4) for p in itertools.product("01", repeat=n)
             if "1" in "".join(p)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        warnings.simplefilter("error", AmbiguousTable)
        for U, V, W in itertools.product(words, repeat=3):
            expected_top_count(U, V, W, "K_with_V", "inhom", True)


def test_cross_check_clean_and_corrupted():
    p = ConstructionParams.for_tuple(1, 1, 1, 1)
    K = build_prefix(p, 200_000).prefix
    rep = cross_check_languages(p, 10, K=K)
    assert rep.ok
    i = K.index("10", 150_000)
    bad = K[:i] + "0" + K[i + 1:]
    rep = cross_check_languages(p, 10, K=bad)
    assert not rep.ok
    diff = rep.mismatches()[0]["sym_diff"][0]
    assert diff["side"] == "prefix_only" and diff["first_pos_past_cutoff"] >= 100_000
    json.loads(to_json(rep))


def test_section7_cross_check():
    p = ConstructionParams.section7()
    assert cross_check_languages(p, 10, 400_000).ok


def test_projection_rank_check():
    p = ConstructionParams.for_tuple(1, 2, 3, 4)
    om, ih = predicted_presentation(p)
    rep = projection_rank_check(ih, om)
    assert rep.ok and rep.top_omega == 2 and rep.top_inhom == 3
    assert rep.witnesses
    one_z = SpacePresentation("bi", [PointSchema("1^Z", (ltail("1"), rtail("1")))], {})
    one = SpacePresentation("right", [PointSchema("1^inf", (rtail("1"),))], {})
    assert projection_rank_check(one_z, one).ok


def test_projection_fault_injection():
    p = ConstructionParams.for_tuple(1, 1, 1, 1)
    om, ih = predicted_presentation(p)
    top = max(ih.engine().ranks().items(), key=lambda kv: kv[1])[0]
    _, ih2 = predicted_presentation(p)
    ih2.rank_override[top] = 0
    rep = projection_rank_check(ih2, om)
    assert not rep.ok
    assert rep.lift_failures[0]["point"] == "(1)^inf"


def _height_one(k_max, tail=lambda k: ""):
    return "10001" * 2 + "".join("1" * k + "01" * k + tail(k) for k in range(1, k_max))


def test_finite_omega_case():
    rep = finite_omega_case({"1", "01"}, _height_one(1500))
    assert rep.ok
    assert rep.omega_signature == rep.inhom_signature == "countable(1,3)"
    assert rep.connector_bound == 0
    with pytest.raises(NotHeightOne, match="connectors grow"):
        finite_omega_case({"1", "01"}, _height_one(800, lambda k: "0" * k))
    with pytest.raises(NotHeightOne):
        finite_omega_case(set(), _height_one(100))


def test_finite_omega_case_single_orbit():
    # eventually periodic: long runs of 011 separated by a fixed connector
    K = "10001" * 2 + "".join("011" * k + "1" for k in range(1, 700))
    rep = finite_omega_case({"011"}, K)
    assert rep.connector_bound == 1
    assert rep.omega_signature == rep.inhom_signature == "countable(1,3)"


def test_counts_csv():
    assert counts_csv({2: 4, 1: 2}) == "depth,count\n1,2\n2,4\n"


def test_signatures_match_claimed_counts_sample():
    for t in [(1, 1, 2, 3), (1, 3, 4, 3), (2, 2, 3, 5), (3, 3, 5, 5)]:
        p = ConstructionParams.for_tuple(*t)
        om, ih = predicted_presentation(p)
        so, si = space_signature(om), space_signature(ih)
        assert (so.gamma, so.count) == (t[0] + 1, t[2])
        assert (si.gamma, si.count) == (t[1] + 1, t[3])
