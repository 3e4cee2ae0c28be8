import json
import random
from importlib import resources

import pytest
import sympy

from nodalquartic.incidence import QuarticIncidence
from nodalquartic.quartic import (
    HomogPoly,
    ProjLine,
    ProjPoint,
    QuarticError,
    eckardt_normal_form,
    is_node,
    is_singular,
    line_contained,
    parse_coordinates,
    plane_in_hyperplane,
    plane_section_line_multiplicity,
    tangent_hyperplane_along_line,
    verify_incidence,
)

x, y, z, t, w = sympy.symbols("x y z t w")
ECKARDT = HomogPoly.from_expr("w**2*(x*y+z*t) - (x**3*y+y**4+z**4+t**4)")
SMOOTH = HomogPoly.from_expr("w**3*x + w*x*(x*y+z*t) + (x**4+y**4+z**4+t*z**3)")
pt = ProjPoint.of
L_ECK = ProjLine(pt(1, 0, 0, 0, 1), pt(-1, 0, 0, 0, 1))


def load(name):
    return json.loads(resources.files("nodalquartic").joinpath("data", name).read_text())


def test_projective_normalization():
    assert pt(0, 2, 4, 0, 0) == pt(0, 1, 2, 0, 0)
    with pytest.raises(QuarticError):
        pt(0, 0, 0, 0, 0)
    with pytest.raises(QuarticError):
        ProjLine(pt(1, 0, 0, 0, 0), pt(3, 0, 0, 0, 0))


def test_json_round_trip():
    doc = load("eckardt_point_equation.json")
    F = HomogPoly.from_json(doc)
    assert F == ECKARDT and F.to_json() == doc and F.degree == 4
    with pytest.raises(QuarticError):
        HomogPoly.from_json({"vars": ["x"], "terms": [{"coef": "1", "exps": [1, 2]}]})
    with pytest.raises(QuarticError, match="homogeneous"):
        HomogPoly.from_expr("x**4 + y")


def test_singular_points_of_the_eckardt_example():
    for p in [pt(0, 0, 0, 0, 1), pt(1, 0, 0, 0, 1), pt(-1, 0, 0, 0, 1)]:
        assert is_singular(ECKARDT, p) and is_node(ECKARDT, p)
    with pytest.raises(QuarticError, match="point not on X"):
        is_singular(ECKARDT, pt(0, 1, 1, 0, 1))


def test_degenerate_local_quadratic_part_is_not_a_node():
    F = HomogPoly.from_expr("w**2*x**2 + x**4 + y**4 + z**4 + t**4")
    assert not is_node(F, pt(0, 0, 0, 0, 1))
    # (1:0:0:0:0) lies on X, where the y-partial is -1
    with pytest.raises(QuarticError, match="not singular"):
        is_node(ECKARDT, pt(1, 0, 0, 0, 0))


def test_smooth_eckardt_example_point_is_a_triple_point():
    # the printed equation has no quadratic terms at (0:0:0:1:0)
    p = pt(0, 0, 0, 1, 0)
    assert is_singular(SMOOTH, p)
    assert not is_node(SMOOTH, p)
    assert not is_singular(SMOOTH, pt(0, 0, 0, 0, 1))


def test_line_containment():
    assert line_contained(SMOOTH, ProjLine(pt(0, 0, 0, 1, 0), pt(0, 0, 0, 0, 1)))
    assert line_contained(ECKARDT, L_ECK)
    fermat = HomogPoly.from_expr("x**4+y**4+z**4+t**4+w**4")
    assert not line_contained(fermat, ProjLine(pt(1, 0, 0, 0, 0), pt(0, 1, 0, 0, 0)))


def test_eckardt_normal_form_of_the_example():
    r = eckardt_normal_form(ECKARDT, pt(0, 0, 0, 0, 1))
    y0, y1, y2, y3 = sympy.symbols("y0:4")
    assert r.is_eckardt and r.linear_form.is_zero
    assert r.q2.as_expr() == y0 * y1 + y2 * y3
    # the equation reads w^2 q2 + q4, so q4 carries the minus sign
    assert sympy.expand(r.q4.as_expr() + (y0**3 * y1 + y1**4 + y2**4 + y3**4)) == 0
    assert not eckardt_normal_form(ECKARDT, pt(1, 0, 0, 0, 1)).is_eckardt


def test_completing_the_square():
    F = HomogPoly.from_expr("w**2*(x*y+z*t) + w*(x*y+z*t)*(x+y) + x**4+y**4+z**4+t**4")
    r = eckardt_normal_form(F, pt(0, 0, 0, 0, 1))
    y0, y1, y2, y3, y4 = sympy.symbols("y0:5")
    assert r.is_eckardt and r.linear_form.as_expr() == y0 + y1
    q2 = y0 * y1 + y2 * y3
    assert sympy.expand(r.q4.as_expr() - (y0**4 + y1**4 + y2**4 + y3**4 - q2 * (y0 + y1) ** 2 / 4)) == 0
    T = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in row] for row in r.matrix])
    assert T.det() != 0
    back = F.substitute(list(T * sympy.Matrix([y0, y1, y2, y3, y4])), (y0, y1, y2, y3, y4))
    assert sympy.expand(back.as_expr() - (y4**2 * q2 + r.q4.as_expr())) == 0


def test_generic_cubic_term_is_not_eckardt():
    F = HomogPoly.from_expr("w**2*(x*y+z*t) + w*x**3 + x**4+y**4+z**4+t**4")
    assert not eckardt_normal_form(F, pt(0, 0, 0, 0, 1)).is_eckardt
    with pytest.raises(QuarticError):
        eckardt_normal_form(HomogPoly.from_expr("w**2*x**2 + x**4 + y**4 + z**4 + t**4"), pt(0, 0, 0, 0, 1))


def test_eckardt_normal_form_at_a_moved_point():
    # translate the Eckardt example so that P sits at (1:0:0:0:1)
    F = HomogPoly(ECKARDT.substitute([x - w, y, z, t, w], (x, y, z, t, w)))
    r = eckardt_normal_form(F, pt(1, 0, 0, 0, 1))
    assert r.is_eckardt


def test_plane_sections():
    e = [pt(*(int(i == j) for j in range(5))) for i in range(5)]
    # the plane y = t = 0 meets X in -z^4 = 0
    assert plane_section_line_multiplicity(ECKARDT, [e[0], e[4], e[2]], L_ECK) == 4
    with pytest.raises(QuarticError, match="line not contained in the plane"):
        plane_section_line_multiplicity(ECKARDT, [e[1], e[2], e[3]], L_ECK)
    with pytest.raises(QuarticError, match="line not on X"):
        plane_section_line_multiplicity(ECKARDT, [e[0], e[1], e[2]], ProjLine(e[0], e[1]))


def test_random_planes_through_a_contained_line():
    rng = random.Random(3)
    L = ProjLine(pt(0, 0, 0, 1, 0), pt(0, 0, 0, 0, 1))
    assert line_contained(SMOOTH, L)
    for _ in range(100):
        third = pt(*[rng.randint(-5, 5) for _ in range(3)], 0, 0) if rng.random() < 0.9 else pt(1, 0, 0, 0, 0)
        assert plane_section_line_multiplicity(SMOOTH, [L.a, L.b, third], L) >= 1


def test_tangent_hyperplane_along_the_three_node_line():
    h_tangent, h_other = [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]
    assert tangent_hyperplane_along_line(ECKARDT, h_tangent, L_ECK, nodes_on_line=3)
    assert not tangent_hyperplane_along_line(ECKARDT, h_other, L_ECK)
    for extra in [(1, 0), (0, 1), (1, 1), (2, -3), (5, 7)]:
        plane = plane_in_hyperplane(h_tangent, L_ECK, extra)
        assert plane_section_line_multiplicity(ECKARDT, plane, L_ECK) >= 2
    with pytest.raises(QuarticError, match="1 nodes"):
        tangent_hyperplane_along_line(ECKARDT, h_tangent, L_ECK, nodes_on_line=1)
    with pytest.raises(QuarticError, match="not contained in the hyperplane"):
        tangent_hyperplane_along_line(ECKARDT, [1, 0, 0, 0, 0], L_ECK)


def test_generic_hyperplane_through_a_one_node_line_is_not_tangent():
    L = ProjLine(pt(0, 0, 0, 1, 0), pt(0, 0, 0, 0, 1))
    assert not tangent_hyperplane_along_line(SMOOTH, [1, 2, 3, 0, 0], L)


def example(name):
    F = HomogPoly.from_json(load(f"{name}_equation.json"))
    config = QuarticIncidence.from_json(load(f"{name}_config.json"))
    return F, config, parse_coordinates(config, load(f"{name}_coords.json"))


def test_verify_incidence_of_the_eckardt_example():
    report = verify_incidence(*example("eckardt_point"))
    assert report.ok, report.mismatches


def test_mislabeled_eckardt_flag_is_reported():
    F, config, coords = example("eckardt_point")
    doc = config.to_json()
    doc["points"][0]["eckardt"] = False
    report = verify_incidence(F, QuarticIncidence.from_json(doc), coords)
    assert [(m["id"], m["check"]) for m in report.mismatches] == [("P", "eckardt flag")]


def test_wrong_incidence_is_reported():
    F, config, coords = example("eckardt_point")
    doc = config.to_json()
    doc["lines"][0]["points"] = ["P", "P1"]
    doc["points"][0]["eckardt"] = False
    doc["lines"][0]["eckardt"] = False
    report = verify_incidence(F, QuarticIncidence.from_json(doc), coords)
    assert any(m["check"] == "incidence with P2" for m in report.mismatches)


def test_smooth_eckardt_example_fails_only_the_node_check():
    report = verify_incidence(*example("smooth_eckardt"))
    assert [(m["id"], m["check"]) for m in report.mismatches] == [("P1", "node")]
    flag = [c for c in report.checks if c["id"] == "L" and c["check"] == "eckardt flag"]
    assert [c["detail"] for c in flag] == ["asserted, not verified"]


def test_missing_coordinates():
    _, config, _ = example("eckardt_point")
    with pytest.raises(QuarticError, match="no coordinates for P2"):
        parse_coordinates(config, {"P": ["0"] * 4 + ["1"], "P1": ["1", "0", "0", "0", "1"]})
