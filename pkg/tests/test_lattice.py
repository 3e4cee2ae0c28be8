import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from nodalquartic.corollary_cases import case_labels, corollary_case
from nodalquartic.lattice import (
    INDEF,
    NEG_DEF,
    NEG_SEMIDEF,
    CurveConfig,
    LatticeError,
    affine_a1,
    chain_pullback,
    check_star,
    check_star_by_recognition,
    classify_dynkin,
    definiteness,
    duval_point_bound,
    dynkin_diagram,
    imaginary_root,
    integrality_bound,
    intersection_matrix,
    tridiagonal_solve,
)


def graph(edges, extra=()):
    vs = sorted({v for e in edges for v in e} | set(extra))
    return CurveConfig.from_graph(vs, edges)


def test_intersection_matrix():
    g = CurveConfig.from_json({"vertices": [{"id": "a", "self": -2}, {"id": "b", "self": -3}], "edges": [["a", "b", 2]]})
    assert intersection_matrix(g) == [[-2, 2], [2, -3]]


def test_definiteness_kinds():
    assert definiteness([[-2]]).kind == NEG_DEF
    assert definiteness([]).kernel_dim == 0
    assert definiteness(intersection_matrix(affine_a1())).kind == NEG_SEMIDEF
    assert definiteness([[-2, 3], [3, -2]]).kind == INDEF
    assert definiteness([[0, 1], [1, 0]]).kind == INDEF
    report = definiteness(intersection_matrix(dynkin_diagram("D4^(1)")))
    assert report.kind == NEG_SEMIDEF and report.kernel_dim == 1


def test_classify_examples():
    star = graph([("c", "a"), ("c", "b"), ("c", "d")])
    assert classify_dynkin(star).labels == ["D4"]
    assert classify_dynkin(dynkin_diagram("E6^(1)")).labels == ["E6^(1)"]
    assert classify_dynkin(graph([("a", "b"), ("b", "c"), ("c", "a")])).labels == ["A2^(1)"]
    two = classify_dynkin(graph([("a", "b")], extra=["z"]))
    assert sorted(two.labels) == ["A1", "A2"]


def test_classify_rejects_non_simply_laced_input():
    with pytest.raises(LatticeError, match="not a simply-laced"):
        classify_dynkin(affine_a1())
    bad = CurveConfig((("a", -3),))
    with pytest.raises(LatticeError, match="not a simply-laced"):
        classify_dynkin(bad)


def test_hyperbolic_tree_is_not_dynkin():
    # T(2,3,7): arm lengths (1, 2, 6)
    edges = [("c", "x")] + [("c", "y1"), ("y1", "y2")] + [("c", "z1")] + [(f"z{i}", f"z{i + 1}") for i in range(1, 6)]
    g = graph(edges)
    assert classify_dynkin(g, check=False).labels == ["none"]
    assert definiteness(intersection_matrix(g)).kind == INDEF


def test_check_star_examples():
    assert check_star(dynkin_diagram("E6^(1)")).holds
    assert check_star(graph([], extra=["a", "b"])).holds
    affine = dynkin_diagram("D4^(1)")
    extra = CurveConfig(affine.vertices, affine.edges + (("v0", "v1", 1),))
    verdict = check_star(extra)
    assert not verdict.holds and verdict.clause == "semidefiniteness"


def test_check_star_uses_only_unmarked_curves():
    g = dynkin_diagram("E7^(1)")
    assert check_star(g).holds
    bigger = CurveConfig(g.vertices + (("m", -2),), g.edges + (("m", "c", 1),))
    assert not check_star(bigger).holds
    assert check_star(bigger, ["m"]).holds
    with pytest.raises(LatticeError):
        check_star(bigger, ["nope"])


@pytest.mark.parametrize("label", ["A4^(1)", "D6^(1)", "E6^(1)", "E7^(1)", "E8^(1)"])
def test_imaginary_root_spans_the_kernel(label):
    g = dynkin_diagram(label)
    M = sympy.Matrix(intersection_matrix(g))
    root = imaginary_root(label)
    vec = sympy.Matrix([root[v] for v in g.ids])
    assert M * vec == sympy.zeros(len(g.ids), 1)
    assert len(M.nullspace()) == 1


@given(st.integers(0, 10**6))
def test_star_implementations_agree_on_random_graphs(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 10)
    vs = [f"v{i}" for i in range(n)]
    p = rng.random() * 0.5
    edges = [(a, b) for i, a in enumerate(vs) for b in vs[i + 1 :] if rng.random() < p]
    g = CurveConfig.from_graph(vs, edges)
    marked = [v for v in vs if rng.random() < 0.2]
    assert check_star(g, marked).holds == check_star_by_recognition(g, marked)


def test_chain_pullback_examples():
    assert chain_pullback(1) == [Fraction(1, 2)]
    assert chain_pullback(2) == [Fraction(1, 3), Fraction(2, 3)]
    assert chain_pullback(20) == [Fraction(t, 21) for t in range(1, 21)]


@pytest.mark.parametrize("k", [1, 2, 5, 9])
def test_chain_pullback_against_sympy(k):
    A = sympy.zeros(k, k)
    for i in range(k):
        A[i, i] = -2
        if i:
            A[i, i - 1] = A[i - 1, i] = 1
    b = sympy.zeros(k, 1)
    b[k - 1] = -1
    expected = [Fraction(int(x.p), int(x.q)) for x in A.LUsolve(b)]
    assert chain_pullback(k) == expected


def test_tridiagonal_solve_general_system():
    # 2x + y = 3, x + 3y + z = 6, y + 4z = 9 -> (1, 1, 2)
    assert tridiagonal_solve([0, 1, 1], [2, 3, 4], [1, 1, 0], [3, 6, 9]) == [1, 1, 2]
    with pytest.raises(ZeroDivisionError):
        tridiagonal_solve([0, 1], [1, 1], [1, 0], [1, 1])


def test_integrality_and_point_bound():
    assert integrality_bound(3, 2) and not integrality_bound(2, 2) and integrality_bound(4, 1)
    assert [duval_point_bound(4, n) for n in (1, 2, 3)] == [2, 1, 0]
    with pytest.raises(ValueError, match="degenerate"):
        duval_point_bound(3, 3)


def test_corollary_case_examples():
    for label, expected in [
        ("3pts-generic-residual-line", ["E6^(1)"]),
        ("2lines-irreducible-conic-through-P", ["D5"]),
        ("line-point-three-concurrent-lines", ["A2", "A2", "A2"]),
    ]:
        g, marked, exp = corollary_case(label)
        assert exp == expected
        assert check_star(g, marked).holds
    assert len(case_labels()) == len(set(case_labels()))
    with pytest.raises(LatticeError):
        corollary_case("no-such-case")
