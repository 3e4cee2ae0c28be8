import json

import pytest
from hypothesis import given, strategies as st

from nodalquartic.incidence import ConfigError, QuarticIncidence, clusters, make_config, validate

from support import small_configurations


def rules(config):
    return [v.rule for v in validate(config)]


def test_minimal_configuration_is_legal():
    assert validate(make_config(["P1"], {"L1": ["P1"]})) == []


def test_four_collinear_points_rejected():
    c = make_config(["P1", "P2", "P3", "P4"], {"L1": ["P1", "P2", "P3", "P4"]})
    assert "line with 4 points" in rules(c)


def test_eckardt_point_on_two_point_line_rejected():
    c = make_config([("P1", True), "P2"], {"L1": ["P1", "P2"]})
    assert "eckardt point on 2-point line" in rules(c)


def test_eckardt_point_on_three_point_line_is_stored():
    c = make_config([("P1", True), "P2", "P3"], {"L1": ["P1", "P2", "P3"]})
    assert validate(c) == []


def test_two_lines_sharing_two_points_rejected():
    c = make_config(["P1", "P2"], {"L1": ["P1", "P2"], "L2": ["P2", "P1"]})
    assert "two lines share more than one point" in rules(c)


def test_unknown_and_repeated_points_rejected():
    assert "unknown point P9" in rules(make_config(["P1"], {"L1": ["P1", "P9"]}))
    assert "repeated point on line" in rules(make_config(["P1"], {"L1": ["P1", "P1"]}))


def test_violations_name_the_offending_id():
    c = make_config(["P1", "P2", "P3", "P4"], {"L7": ["P1", "P2", "P3", "P4"]})
    assert [v.ident for v in validate(c)] == ["L7"]


def test_cluster_rules():
    c = make_config(
        ["P1", "P2", "P3", "Q1", "Q2", "R"],
        [("A", ["P1", "P2", "P3"], False), ("B", ["Q1", "Q2"], True), ("C", ["R"], False)],
    )
    by_line = {cl.line: cl for cl in clusters(c)}
    assert not by_line["A"].has_line_involution and not by_line["A"].regular_only
    assert by_line["B"].regular_only and not by_line["B"].has_line_involution
    assert by_line["C"].has_line_involution and by_line["C"].points == ("R",)


def test_clusters_of_invalid_configuration_raise():
    with pytest.raises(ConfigError):
        clusters(make_config(["P1"], {"L1": ["P1", "P2"]}))


def test_json_round_trip_and_duplicate_ids():
    doc = {
        "points": [{"id": "P1", "eckardt": False}, {"id": "P2", "eckardt": True}],
        "lines": [{"id": "L1", "points": ["P1"], "eckardt": False}],
    }
    c = QuarticIncidence.from_json(json.dumps(doc))
    assert c.to_json() == doc
    doc["lines"].append({"id": "P1", "points": ["P2"]})
    with pytest.raises(ConfigError, match="duplicate id"):
        QuarticIncidence.from_json(doc)
    with pytest.raises(ConfigError):
        QuarticIncidence.from_json({"points": [{"id": ""}]})


def test_automorphism_must_preserve_incidence():
    good = QuarticIncidence.from_json({
        "points": [{"id": "P1"}, {"id": "P2"}],
        "lines": [{"id": "L1", "points": ["P1", "P2"]}],
        "automorphisms": [{"label": "s", "points": {"P1": "P2", "P2": "P1"}, "inverse": "s"}],
    })
    assert validate(good) == []
    bad = QuarticIncidence.from_json({
        "points": [{"id": "P1"}, {"id": "P2"}],
        "lines": [{"id": "L1", "points": ["P1"]}],
        "automorphisms": [{"label": "s", "points": {"P1": "P2", "P2": "P1"}}],
    })
    assert "automorphism breaks incidence of L1" in rules(bad)


CONFIGS = list(small_configurations(3, 3))


@given(st.sampled_from(CONFIGS))
def test_validate_is_pure_and_clusters_cover_lines(c):
    assert validate(c) == validate(c)
    cl = clusters(c)
    assert [x.line for x in cl] == list(c.line_ids)
    for x in cl:
        assert set(x.points) <= set(c.point_ids)
        ln = c.line(x.line)
        assert x.has_line_involution == (len(ln.points) in (1, 2) and not ln.eckardt)
