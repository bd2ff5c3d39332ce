import math
import random

import pytest
from hypothesis import given, strategies as st

from collabsim.corpus import PublicationRecord, RegionMap
from collabsim.profiles import PARTNER_SPACE, SUBJECT_SPACE, Profile, build_profiles
from collabsim.similarity import (
    INDICATORS,
    WorldBaseline,
    cosine,
    deviation,
    five_indicators,
    world_baseline,
)

from oracle import cosine_ref, random_records


def _p(counts, namespace=SUBJECT_SPACE):
    return Profile(namespace, counts)


def test_cosine_identity():
    assert cosine(_p({"a": 2, "b": 1}), _p({"a": 2, "b": 1})) == 1.0


def test_cosine_disjoint_supports():
    assert cosine(_p({"a": 3}), _p({"b": 5})) == 0.0


def test_cosine_half_overlap():
    # dot = 1, norms sqrt(2) * sqrt(2) -> 0.5
    assert cosine(_p({"s1": 1, "s2": 1}), _p({"s2": 1, "s3": 1})) == pytest.approx(0.5, abs=1e-15)


def test_cosine_scale_invariance():
    assert cosine(_p({"s1": 3, "s2": 3}), _p({"s1": 1, "s2": 1})) == 1.0


def test_cosine_zero_profile_undefined():
    assert cosine(_p({}), _p({"a": 1})) is None
    assert cosine(_p({"a": 1}), _p({})) is None


def test_cosine_namespace_mismatch():
    with pytest.raises(ValueError, match="namespace"):
        cosine(_p({"a": 1}), _p({"a": 1}, PARTNER_SPACE))


_counts = st.dictionaries(
    st.sampled_from([f"k{i}" for i in range(7)]),
    st.integers(1, 1000), min_size=1, max_size=6,
)


@given(_counts, _counts)
def test_cosine_symmetry_and_range(a, b):
    left = cosine(_p(a), _p(b))
    right = cosine(_p(b), _p(a))
    assert left == right
    assert -1e-12 <= left <= 1.0 + 1e-12
    assert left == pytest.approx(cosine_ref(a, b), abs=1e-12)


@given(_counts)
def test_cosine_self_similarity(a):
    assert cosine(_p(a), _p(a)) == pytest.approx(1.0, abs=1e-12)


@given(_counts, _counts, st.integers(2, 9))
def test_cosine_positive_scaling(a, b, c):
    scaled = {k: c * v for k, v in a.items()}
    assert cosine(_p(scaled), _p(b)) == pytest.approx(cosine(_p(a), _p(b)), abs=1e-12)


@given(_counts, _counts, st.integers(1, 5))
def test_cosine_proportional_addition(a, b, m):
    # folding in m more copies of a profile proportional to a leaves the
    # similarity against any fixed b unchanged
    grown = _p(a)
    for _ in range(m):
        grown = grown + _p(a)
    assert cosine(grown, _p(b)) == pytest.approx(cosine(_p(a), _p(b)), abs=1e-12)


# --- five_indicators ------------------------------------------------------

def _rec(rid, subjects, countries, year=2010):
    return PublicationRecord(rid, year, frozenset(subjects), frozenset(countries))


def _toy_table():
    records = [
        _rec("d1", {"PHYS"}, {"NL"}),
        _rec("d2", {"PHYS"}, {"NL"}),
        _rec("b1", {"PHYS"}, {"NL", "XA"}),
        _rec("m1", {"CHEM"}, {"NL", "XB", "XC"}),
    ]
    return build_profiles(records)


def test_five_indicators_toy_country():
    report = five_indicators(_toy_table()["NL"])
    assert report.sim_dom_birc == 1.0
    assert report.sim_dom_mirc == 0.0
    assert report.sim_birc_mirc_disc == 0.0
    # dom {PHYS:2} vs int {PHYS:1, CHEM:1}: 2 / (2 * sqrt(2))
    assert report.sim_dom_int == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    # partner profiles {XA:1} vs {XB:1, XC:1} are disjoint
    assert report.sim_birc_mirc_partner == 0.0
    assert (report.n_pub_total, report.n_dom, report.n_birc, report.n_mirc) == (4, 2, 1, 1)


def test_five_indicators_domestic_only_country():
    table = build_profiles([_rec("d", {"A"}, {"NL"})])
    report = five_indicators(table["NL"])
    for name in INDICATORS:
        assert report.indicator(name) is None


def test_five_indicators_region_lookup():
    table = _toy_table()
    rmap = RegionMap({"NL": "Europe & Central Asia"})
    assert five_indicators(table["NL"], rmap).region == "Europe & Central Asia"
    assert five_indicators(table["XA"], rmap).region == "UNKNOWN"
    assert five_indicators(table["NL"]).region == "UNKNOWN"


def test_proportional_birc_mirc_profiles_give_one():
    records = [
        _rec("b1", {"A"}, {"NL", "XA"}), _rec("b2", {"A"}, {"NL", "XA"}),
        _rec("b3", {"B"}, {"NL", "XA"}), _rec("b4", {"B"}, {"NL", "XA"}),
        _rec("m1", {"A"}, {"NL", "XB", "XC"}), _rec("m2", {"B"}, {"NL", "XB", "XC"}),
    ]
    report = five_indicators(build_profiles(records)["NL"])
    # birc {A:2, B:2} and mirc {A:1, B:1} are proportional
    assert report.sim_birc_mirc_disc == 1.0


def test_relabeling_dimensions_preserves_indicators():
    rng = random.Random(13)
    records = random_records(rng, 120)
    mapping = {f"S{i}": f"T{(i * 3) % 8}x{i}" for i in range(8)}
    relabeled = [PublicationRecord(r.id, r.year,
                                   frozenset(mapping[s] for s in r.subjects),
                                   r.countries)
                 for r in records]
    before = {c: five_indicators(ps) for c, ps in build_profiles(records).items()}
    after = {c: five_indicators(ps) for c, ps in build_profiles(relabeled).items()}
    assert set(before) == set(after)
    for country in before:
        for name in INDICATORS:
            x, y = before[country].indicator(name), after[country].indicator(name)
            if x is None:
                assert y is None
            else:
                assert y == pytest.approx(x, abs=1e-12)


# --- world baseline and deviations ----------------------------------------

def _report(country, region="R", n_pub=10, **sims):
    from collabsim.similarity import CountrySimilarityReport
    values = {name: None for name in INDICATORS}
    values.update(sims)
    return CountrySimilarityReport(
        country=country, region=region, n_pub_total=n_pub, n_dom=n_pub,
        n_birc=0, n_mirc=0, n_mega=0, **values)


def test_world_baseline_mean():
    reports = [_report("A", sim_dom_int=0.4), _report("B", sim_dom_int=0.6)]
    baseline = world_baseline(reports)
    assert baseline.means["sim_dom_int"] == pytest.approx(0.5)
    assert baseline.eligible["sim_dom_int"] == 2
    assert baseline.means["sim_dom_birc"] is None
    assert baseline.eligible["sim_dom_birc"] == 0


def test_world_baseline_skips_undefined():
    reports = [_report("A", sim_dom_int=0.7), _report("B")]
    baseline = world_baseline(reports)
    assert baseline.means["sim_dom_int"] == pytest.approx(0.7)
    assert baseline.eligible["sim_dom_int"] == 1


def test_world_baseline_empty():
    baseline = world_baseline([])
    assert all(v is None for v in baseline.means.values())


def test_world_baseline_min_pubs_floor():
    reports = [_report("A", n_pub=1, sim_dom_int=0.0),
               _report("B", n_pub=100, sim_dom_int=0.8)]
    baseline = world_baseline(reports, min_pubs=10)
    assert baseline.means["sim_dom_int"] == pytest.approx(0.8)
    assert baseline.eligible["sim_dom_int"] == 1
    assert world_baseline(reports, min_pubs=1).means["sim_dom_int"] == pytest.approx(0.4)


def test_deviation_labels():
    baseline = WorldBaseline(
        means={name: 0.8 for name in INDICATORS},
        eligible={name: 2 for name in INDICATORS}, min_pubs=1)
    above = deviation(_report("A", sim_dom_int=0.9), baseline)["sim_dom_int"]
    assert above.label == "above"
    assert above.delta == pytest.approx(0.1)
    at = deviation(_report("A", sim_dom_int=0.8), baseline)["sim_dom_int"]
    assert at.label == "at"
    assert at.delta == 0.0
    below = deviation(_report("A", sim_dom_int=0.5), baseline)["sim_dom_int"]
    assert below.label == "below"
    undefined = deviation(_report("A"), baseline)["sim_dom_int"]
    assert undefined.label == "undefined"
    assert undefined.delta is None


def test_deviation_undefined_baseline():
    baseline = world_baseline([])
    labels = deviation(_report("A", sim_dom_int=0.9), baseline)
    assert labels["sim_dom_int"].label == "undefined"
