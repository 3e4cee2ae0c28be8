"""Maximal (-2)-curve configurations on a resolved hyperplane section through a plane.

Each case is pure data.  Curves are proper transforms of the plane curves
(``L*``, ``Q``, ``C``) and exceptional curves over singular points of the
section (``E_<point>`` for an A1 point, ``E_<point>.1 ... E_<point>.k`` for an
A_k chain, with ``.k`` the member met by the plane curves through the point).
``marked`` lists the curves attached to the simultaneous centers; the
remaining curves must satisfy condition (*) and decompose into the listed
Dynkin types (isolated curves are A1).
"""
from __future__ import annotations

from .lattice import CurveConfig, LatticeError


def _edges(text: str) -> list[tuple[str, str]]:
    out = []
    for chain in text.split():
        names = chain.split("-")
        out.extend(zip(names, names[1:]))
    return out


_RAW = [
    # three points P1, P2, P3; plane section L12 + L13 + L23 + residual line
    dict(
        label="3pts-residual-equals-Lij",
        setting="residual line equal to L12: 2 L12 + L13 + L23, A2 at P1 and P2, one extra A1 on L12",
        curves="L12 L13 L23 E_P1.1 E_P1.2 E_P2.1 E_P2.2 E_P3 E_R",
        edges="E_P1.1-E_P1.2 L12-E_P1.2-L13 E_P2.1-E_P2.2 L12-E_P2.2-L23 L13-E_P3-L23 L12-E_R",
        marked="E_P1.1 E_P1.2 E_P2.1 E_P2.2 E_P3",
        expected=["A1", "A1", "A2"],
    ),
    dict(
        label="3pts-residual-through-P1",
        setting="residual line L through P1 only, A2 at P1, node at L meet L23",
        curves="L L12 L13 L23 E_P1.1 E_P1.2 E_P2 E_P3 E_R",
        edges="E_P1.1-E_P1.2 L-E_P1.2 L12-E_P1.2-L13 L12-E_P2-L23 L13-E_P3-L23 L-E_R-L23",
        marked="E_P1.1 E_P1.2 E_P2 E_P3",
        expected=["A1", "A1", "A3"],
    ),
    dict(
        label="3pts-generic-residual-line",
        setting="residual line L4 through no P_i, nodes Q_i at L4 meet L_i",
        curves="L1 L2 L3 L4 E_P1 E_P2 E_P3 F1 F2 F3",
        edges="L2-E_P1-L3 L1-E_P2-L3 L1-E_P3-L2 L1-F1-L4 L2-F2-L4 L3-F3-L4",
        marked="E_P1 E_P2 E_P3",
        expected=["E6^(1)"],
    ),
    dict(
        label="3pts-generic-residual-line-smooth-meets",
        setting="residual line L4 through no P_i, the points L4 meet L_i smooth",
        curves="L1 L2 L3 L4 E_P1 E_P2 E_P3",
        edges="L2-E_P1-L3 L1-E_P2-L3 L1-E_P3-L2 L1-L4 L2-L4 L3-L4",
        marked="E_P1 E_P2 E_P3",
        expected=["D4"],
    ),
    # two lines L1, L2 meeting at P; plane section L1 + L2 + conic
    dict(
        label="2lines-irreducible-conic-through-P",
        setting="irreducible conic Q through P, A2 at P, nodes at the second meets of Q with L1 and L2",
        curves="L1 L2 Q E_P.1 E_P.2 E_A E_B",
        edges="E_P.1-E_P.2 L1-E_P.2-L2 Q-E_P.2 L1-E_A-Q L2-E_B-Q",
        marked="L1 L2",
        expected=["D5"],
    ),
    dict(
        label="2lines-irreducible-conic-not-through-P",
        setting="irreducible conic Q missing P, four nodes on Q meet (L1 + L2)",
        curves="L1 L2 Q E_P E_A1 E_A2 E_B1 E_B2",
        edges="L1-E_P-L2 L1-E_A1-Q L1-E_A2-Q L2-E_B1-Q L2-E_B2-Q",
        marked="L1 L2",
        expected=["A1", "D4^(1)"],
    ),
    dict(
        label="2lines-split-conic-singular-vertex",
        setting="Q = L3 + L4 missing P, vertex L3 meet L4 off L1, L2 and singular",
        curves="L1 L2 L3 L4 E_P E_V E_a E_b E_c E_d",
        edges="L1-E_P-L2 L3-E_V-L4 L1-E_a-L3 L2-E_b-L3 L1-E_c-L4 L2-E_d-L4",
        marked="L1 L2",
        expected=["A1", "D6^(1)"],
    ),
    dict(
        label="2lines-split-conic-smooth-vertex",
        setting="Q = L3 + L4 missing P, vertex L3 meet L4 off L1, L2 and smooth",
        curves="L1 L2 L3 L4 E_P E_a E_b E_c E_d",
        edges="L1-E_P-L2 L3-L4 L1-E_a-L3 L2-E_b-L3 L1-E_c-L4 L2-E_d-L4",
        marked="L1 L2",
        expected=["A1", "D5^(1)"],
    ),
    dict(
        label="2lines-split-conic-vertex-on-L1",
        setting="Q = L3 + L4 missing P, vertex V on L1, A2 at V",
        curves="L1 L2 L3 L4 E_P E_V.1 E_V.2 E_b E_d",
        edges="L1-E_P-L2 E_V.1-E_V.2 L1-E_V.2-L3 L4-E_V.2 L2-E_b-L3 L2-E_d-L4",
        marked="L1 L2",
        expected=["A1", "E6"],
    ),
    dict(
        label="2lines-split-conic-one-through-P",
        setting="Q = L3 + L4 with only L3 through P, A2 at P",
        curves="L1 L2 L3 L4 E_P.1 E_P.2 E_c E_d E_e",
        edges="E_P.1-E_P.2 L1-E_P.2-L2 L3-E_P.2 L1-E_c-L4 L2-E_d-L4 L3-E_e-L4",
        marked="L1 L2",
        expected=["D7"],
    ),
    dict(
        label="2lines-split-conic-both-through-P",
        setting="Q = L3 + L4 both through P, A3 at P",
        curves="L1 L2 L3 L4 E_P.1 E_P.2 E_P.3",
        edges="E_P.1-E_P.2-E_P.3 L1-E_P.3-L2 L3-E_P.3-L4",
        marked="L1 L2",
        expected=["D5"],
    ),
    dict(
        label="2lines-double-line-off-P",
        setting="Q = 2L missing P, A2 at L meet L1 and at L meet L2, one extra A1 on L",
        curves="L1 L2 L E_P E_A.1 E_A.2 E_B.1 E_B.2 E_R",
        edges="L1-E_P-L2 E_A.1-E_A.2 L1-E_A.2-L E_B.1-E_B.2 L2-E_B.2-L L-E_R",
        marked="L1 L2",
        expected=["A1", "E6"],
    ),
    dict(
        label="2lines-double-line-through-P",
        setting="Q = 2L through P, A3 at P, two extra A1 on L",
        curves="L1 L2 L E_P.1 E_P.2 E_P.3 E_R1 E_R2",
        edges="E_P.1-E_P.2-E_P.3 L1-E_P.3-L2 L-E_P.3 L-E_R1 L-E_R2",
        marked="L1 L2",
        expected=["D6"],
    ),
    dict(
        label="2lines-double-L1-residual-off-P",
        setting="Q = L1 + L with L missing P, A2 at P and at L meet L1, one extra A1 on L1",
        curves="L1 L2 L E_P.1 E_P.2 E_A.1 E_A.2 E_R E_c",
        edges="E_P.1-E_P.2 L1-E_P.2-L2 E_A.1-E_A.2 L1-E_A.2-L L1-E_R L-E_c-L2",
        marked="L1 L2",
        expected=["A1", "A2", "A4"],
    ),
    dict(
        label="2lines-double-L1-residual-through-P",
        setting="Q = L1 + L with L through P, A3 at P, two extra A1 on L1",
        curves="L1 L2 L E_P.1 E_P.2 E_P.3 E_R1 E_R2",
        edges="E_P.1-E_P.2-E_P.3 L1-E_P.3-L2 L-E_P.3 L1-E_R1 L1-E_R2",
        marked="L1 L2",
        expected=["A1", "A1", "A4"],
    ),
    # a line L and a point P outside it; plane section L + cubic C
    dict(
        label="line-point-irreducible-cubic",
        setting="C irreducible cubic with a node at P, nodes at the three meets of C with L",
        curves="L C E_P E_a E_b E_c",
        edges="C-E_P L-E_a-C L-E_b-C L-E_c-C",
        marked="L E_P",
        expected=["D4"],
    ),
    dict(
        label="line-point-conic-plus-line",
        setting="C = Q + L1 with Q and L1 through P, nodes at Q meet L, L1 meet L and the second Q meet L1",
        curves="L Q L1 E_P E_a E_b E_c E_d",
        edges="Q-E_P-L1 L-E_a-Q L-E_b-Q L-E_c-L1 Q-E_d-L1",
        marked="L E_P",
        expected=["D6"],
    ),
    dict(
        label="line-point-three-concurrent-lines",
        setting="C = L1 + L2 + L3 all through P, A2 at P, nodes at L_i meet L",
        curves="L L1 L2 L3 E_P.1 E_P.2 E_a1 E_a2 E_a3",
        edges="E_P.1-E_P.2 L1-E_P.2-L2 L3-E_P.2 L-E_a1-L1 L-E_a2-L2 L-E_a3-L3",
        marked="L E_P.1 E_P.2",
        expected=["A2", "A2", "A2"],
    ),
    dict(
        label="line-point-two-through-P-third-through-L-cap-L1",
        setting="L1, L2 through P, L3 through P1 = L meet L1, A2 at P1",
        curves="L L1 L2 L3 E_P E_1.1 E_1.2 E_b E_e",
        edges="L1-E_P-L2 E_1.1-E_1.2 L-E_1.2-L1 L3-E_1.2 L-E_b-L2 L2-E_e-L3",
        marked="L E_P",
        expected=["D7"],
    ),
    dict(
        label="line-point-two-through-P-third-generic",
        setting="L1, L2 through P, L3 in general position, all meets nodes",
        curves="L L1 L2 L3 E_P E_a E_b E_c E_e E_f",
        edges="L1-E_P-L2 L-E_a-L1 L-E_b-L2 L-E_c-L3 L1-E_e-L3 L2-E_f-L3",
        marked="L E_P",
        expected=["E7^(1)"],
    ),
    dict(
        label="line-point-double-line-plus-line",
        setting="C = 2 L1 + L2 with P on L1 only, A2 at L meet L1 and at L1 meet L2",
        curves="L L1 L2 E_P E_1.1 E_1.2 E_2.1 E_2.2 E_c",
        edges="L1-E_P E_1.1-E_1.2 L-E_1.2-L1 E_2.1-E_2.2 L1-E_2.2-L2 L-E_c-L2",
        marked="L E_P",
        expected=["E7"],
    ),
    dict(
        label="line-point-double-L-plus-line",
        setting="C = 2 L1 + L2 with P = L1 meet L2, A2 at P and at L meet L1, one extra A1 on L1",
        curves="L L1 L2 E_P.1 E_P.2 E_1.1 E_1.2 E_c E_R",
        edges="E_P.1-E_P.2 L1-E_P.2-L2 E_1.1-E_1.2 L-E_1.2-L1 L-E_c-L2 L1-E_R",
        marked="L E_P.1 E_P.2",
        expected=["A2", "A4"],
    ),
    dict(
        label="line-point-double-residual-line",
        setting="C = 2 L1 + L, A3 at L meet L1, one extra A1 on L1 and two on L",
        curves="L L1 E_P E_1.1 E_1.2 E_1.3 E_R E_S1 E_S2",
        edges="L1-E_P E_1.1-E_1.2-E_1.3 L-E_1.3-L1 L1-E_R L-E_S1 L-E_S2",
        marked="L E_P",
        expected=["A1", "A1", "A5"],
    ),
    dict(
        label="line-point-triple-line",
        setting="C = 3 L1, A2 at P, A3 at L meet L1, one extra A2 on L1",
        curves="L L1 E_P.1 E_P.2 E_1.1 E_1.2 E_1.3 E_R.1 E_R.2",
        edges="E_P.1-E_P.2-L1 E_1.1-E_1.2-E_1.3 L-E_1.3-L1 L1-E_R.1-E_R.2",
        marked="L E_P.1 E_P.2",
        expected=["A6"],
    ),
]


CASES: dict[str, dict] = {c["label"]: c for c in _RAW}


def case_labels() -> list[str]:
    return list(CASES)


def corollary_case(label: str) -> tuple[CurveConfig, list[str], list[str]]:
    """The configuration, its marked curves and the expected sorted Dynkin labels."""
    try:
        c = CASES[label]
    except KeyError:
        raise LatticeError(f"unknown case label {label!r}") from None
    g = CurveConfig.from_graph(c["curves"].split(), _edges(c["edges"]))
    return g, c["marked"].split(), sorted(c["expected"])
