"""Random and exhaustive test inputs shared across the test modules."""
from __future__ import annotations

import itertools
import random

import networkx as nx

from nodalquartic.dynamics import InvalidGenerator, Line, PairPoint, Point, check_generator
from nodalquartic.incidence import LineMark, QuarticIncidence, SingularPoint, make_config, validate
from nodalquartic.lattice import CurveConfig


def line_structures(max_points: int = 4, max_lines: int = 4):
    """Incidence structures (lines as point sets) up to relabeling of the points."""
    for n in range(1, max_points + 1):
        shapes = [s for k in (1, 2, 3) for s in itertools.combinations(range(n), k)]
        perms = list(itertools.permutations(range(n)))
        seen = set()
        for m in range(max_lines + 1):
            for lines in itertools.combinations_with_replacement(shapes, m):
                if any(len(set(a) & set(b)) > 1 for a, b in itertools.combinations(lines, 2)):
                    continue
                key = min(tuple(sorted(tuple(sorted(p[i] for i in s)) for s in lines)) for p in perms)
                if key not in seen:
                    seen.add(key)
                    yield n, lines


def small_configurations(max_points: int = 4, max_lines: int = 4):
    """Every structure with every choice of eckardt flags on its lines.

    Point flags never change an action matrix; they only remove generators,
    so leaving every point unflagged keeps the largest generator set.
    """
    for n, lines in line_structures(max_points, max_lines):
        pts = tuple(SingularPoint(f"P{i + 1}") for i in range(n))
        for flags in itertools.product((False, True), repeat=len(lines)):
            c = QuarticIncidence(
                pts,
                tuple(LineMark(f"L{j + 1}", tuple(f"P{i + 1}" for i in s), f) for j, (s, f) in enumerate(zip(lines, flags))),
            )
            if not validate(c):
                yield c


def generators(config: QuarticIncidence) -> list:
    """All valid involution generators of a configuration."""
    cands = [Point(p) for p in config.point_ids] + [Line(ln) for ln in config.line_ids]
    cands += [PairPoint(*ln.points, ln.id) for ln in config.lines if len(ln.points) == 2]
    out = []
    for g in cands:
        try:
            check_generator(config, g)
        except InvalidGenerator:
            continue
        out.append(g)
    return out


def random_config(rng: random.Random) -> QuarticIncidence:
    """A valid configuration with up to 4 points and 3 lines, no eckardt flags."""
    n = rng.randint(1, 4)
    pts = [f"P{i}" for i in range(1, n + 1)]
    lines: dict = {}
    for j in range(rng.randint(1, 3)):
        cand = rng.sample(pts, rng.randint(1, min(3, n)))
        if not validate(make_config(pts, {**lines, f"L{j + 1}": cand})):
            lines[f"L{j + 1}"] = cand
    return make_config(pts, lines)


def random_word(rng: random.Random, gens: list, max_len: int = 12) -> list:
    """A word without two equal adjacent letters."""
    w: list = []
    for _ in range(rng.randint(0, max_len)):
        choices = [g for g in gens if not w or g != w[-1]]
        if not choices:
            break
        w.append(rng.choice(choices))
    return w


def single_line(n: int, eckardt: bool = False) -> QuarticIncidence:
    pts = [f"P{i}" for i in range(1, n + 1)]
    return make_config(pts, [("L", pts, eckardt)])


def small_graphs():
    """Every simple graph on at most 8 vertices (with repetitions up to isomorphism).

    The atlas lists all graphs on at most 7 vertices; every graph on 8
    vertices arises from one on 7 by attaching an eighth vertex.
    """
    atlas = nx.graph_atlas_g()
    for G in atlas:
        yield CurveConfig.from_graph([str(v) for v in G.nodes], [(str(a), str(b)) for a, b in G.edges])
    for G in atlas:
        if G.number_of_nodes() == 7:
            nodes = [str(v) for v in G.nodes]
            edges = [(str(a), str(b)) for a, b in G.edges]
            for mask in range(128):
                yield CurveConfig.from_graph(nodes + ["7"], edges + [(nodes[i], "7") for i in range(7) if mask >> i & 1])
