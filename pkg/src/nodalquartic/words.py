"""Words in the generators modulo the relations between them.

Inside one cluster (a marked line with its nodes) every generator acts as a
reflection ``x -> -x + v`` of the general fiber of the elliptic fibration
obtained by projecting from the line.  The pair (sign, translation) with
translations written over the formal section symbols gives an exact normal
form there.  Words that spread over several clusters are compared with sound
invariants and a budgeted rewriting search.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from .dynamics import (
    Aut,
    DegreeVector,
    Generator,
    InsufficientData,
    InvalidGenerator,
    Line,
    PairPoint,
    Point,
    apply_word,
    check_generator,
)
from .incidence import QuarticIncidence, require_valid

EQUAL, DISTINCT, UNDECIDED = "equal", "distinct", "undecided"


class MixedCluster(ValueError):
    pass


@dataclass(frozen=True)
class ClusterElement:
    """The affine map ``x -> parity * x + translation`` on the fiber group."""

    parity: int
    translation: tuple[int, ...]

    def __mul__(self, other: "ClusterElement") -> "ClusterElement":
        t = tuple(a + self.parity * b for a, b in zip(self.translation, other.translation))
        return ClusterElement(self.parity * other.parity, t)

    @classmethod
    def one(cls, rank: int) -> "ClusterElement":
        return cls(1, (0,) * rank)

    def to_json(self, symbols: Sequence[str] | None = None) -> dict:
        doc = {"parity": self.parity, "translation": list(self.translation)}
        if symbols is not None:
            doc["symbols"] = list(symbols)
        return doc


# --------------------------------------------------------------------------
# free reduction

def _cancels(a: Generator, b: Generator, config: QuarticIncidence | None) -> bool:
    if not isinstance(a, Aut) and not isinstance(b, Aut):
        return a == b
    if isinstance(a, Aut) and isinstance(b, Aut) and config is not None:
        try:
            return config.automorphism(a.label).inverse == b.label
        except KeyError:
            return False
    return False


def free_reduce(word: Iterable[Generator], config: QuarticIncidence | None = None) -> list[Generator]:
    """Delete adjacent equal involutions and adjacent mutually inverse automorphisms."""
    out: list[Generator] = []
    for g in word:
        if out and _cancels(out[-1], g, config):
            out.pop()
        else:
            out.append(g)
    return out


# --------------------------------------------------------------------------
# single-cluster model

def letter_clusters(config: QuarticIncidence, g: Generator) -> set[str]:
    if isinstance(g, Point):
        return {ln.id for ln in config.lines_through(g.point)}
    if isinstance(g, (Line, PairPoint)):
        return {g.line}
    return set()


def common_cluster(config: QuarticIncidence, *words: Sequence[Generator]) -> str | None:
    """First line (document order) to which every letter of every word is attached."""
    letters = [g for w in words for g in w]
    if any(isinstance(g, Aut) for g in letters):
        return None
    candidates = set(config.line_ids)
    for g in letters:
        candidates &= letter_clusters(config, g)
    for ln in config.line_ids:
        if ln in candidates:
            return ln
    return None


def section_symbols(config: QuarticIncidence, line: str) -> tuple[str, ...]:
    """Formal section symbols of the cluster; on a 3-node line the third is eliminated."""
    pts = config.line(line).points
    return tuple(f"E_{p}" for p in pts[:2])


def _section(config: QuarticIncidence, line: str, point: str) -> tuple[int, ...]:
    pts = config.line(line).points
    if len(pts) == 3 and point == pts[2]:
        # E1 + E2 + E3 = 0: the three residual points are collinear
        return (-1, -1)
    return tuple(1 if q == point else 0 for q in pts[:2])


def letter_element(config: QuarticIncidence, line: str, g: Generator) -> ClusterElement:
    check_generator(config, g)
    ln = config.line(line)
    rank = min(len(ln.points), 2)
    if isinstance(g, Point) and g.point in ln.points:
        # galois involution of projection from P: x -> -E_P - x
        return ClusterElement(-1, tuple(-a for a in _section(config, line, g.point)))
    if isinstance(g, Line) and g.line == line:
        if len(ln.points) == 1:
            # reflection in the section of the node: x -> 2E_P - x
            return ClusterElement(-1, (2,))
        # reflection in (E1 + E2)/2: x -> E1 + E2 - x
        return ClusterElement(-1, (1, 1))
    if isinstance(g, PairPoint) and g.line == line:
        # reflection in the section E = -(E1 + E2) cut out by the line
        return ClusterElement(-1, (-2, -2))
    raise MixedCluster(f"mixed-cluster word: {g} is not attached to {line}")


def cluster_normal_form(
    config: QuarticIncidence, word: Sequence[Generator], line: str | None = None
) -> ClusterElement:
    require_valid(config)
    if line is None:
        line = common_cluster(config, word)
        if line is None:
            if not word:
                raise MixedCluster("empty word needs an explicit cluster")
            raise MixedCluster("mixed-cluster word")
    rank = min(len(config.line(line).points), 2)
    acc = ClusterElement.one(rank)
    for g in word:
        acc = acc * letter_element(config, line, g)
    return acc


# --------------------------------------------------------------------------
# automorphisms

def push_automorphisms(config: QuarticIncidence, word: Sequence[Generator]) -> tuple[list[str], list[Generator]]:
    """Rewrite ``word`` as ``A * U`` with all automorphism letters in ``A``.

    Uses ``w tau_Z w^-1 = tau_{w(Z)}``: moving ``a`` left past ``U`` turns
    each letter of ``U`` into its image under ``a^-1``.
    """
    auts: list[str] = []
    rest: list[Generator] = []
    for g in word:
        if isinstance(g, Aut):
            auto = config.automorphism(g.label)
            inv = {v: k for k, v in auto.points.items()}
            inv.update({v: k for k, v in auto.lines.items()})
            rest = [_relabel(h, inv) for h in rest]
            auts.append(g.label)
        else:
            rest.append(g)
    return auts, rest


def _relabel(g: Generator, m: dict[str, str]) -> Generator:
    f = lambda i: m.get(i, i)  # noqa: E731
    if isinstance(g, Point):
        return Point(f(g.point))
    if isinstance(g, Line):
        return Line(f(g.line))
    if isinstance(g, PairPoint):
        return PairPoint(f(g.p1), f(g.p2), f(g.line))
    return g


def _aut_permutation(config: QuarticIncidence, labels: Sequence[str]) -> tuple[tuple[str, str], ...]:
    ids = config.coordinates
    image = {i: i for i in ids}
    for lab in labels:
        auto = config.automorphism(lab)
        image = {i: image[auto.image(i)] for i in ids}
    return tuple(sorted(image.items()))


# --------------------------------------------------------------------------
# rewriting

def expand_pairs(config: QuarticIncidence, word: Iterable[Generator]) -> list[Generator]:
    out: list[Generator] = []
    for g in word:
        if isinstance(g, PairPoint):
            out.extend([Point(g.p1), Line(g.line), Point(g.p2)])
        else:
            out.append(g)
    return out


def relation_triples(config: QuarticIncidence) -> set[tuple[Generator, Generator, Generator]]:
    """Ordered triples (a, b, c) with (abc)^2 = 1, so that abc may be rewritten as cba."""
    triples = set()
    for ln in config.lines:
        if len(ln.points) == 3:
            letters = [Point(p) for p in ln.points]
        elif len(ln.points) == 2:
            letters = [Point(p) for p in ln.points] + [Line(ln.id)]
        else:
            continue
        try:
            for g in letters:
                check_generator(config, g)
        except InvalidGenerator:
            continue
        triples.update(permutations(letters, 3))
    return triples


def _neighbours(word: tuple, triples) -> Iterable[tuple]:
    for i in range(len(word) - 2):
        if word[i : i + 3] in triples:
            a, b, c = word[i : i + 3]
            yield tuple(free_reduce(word[:i] + (c, b, a) + word[i + 3 :]))


def _orbit(word: tuple, triples, budget: int) -> set[tuple]:
    seen = {word}
    queue = deque([word])
    while queue and len(seen) < budget:
        for nxt in _neighbours(queue.popleft(), triples):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


# --------------------------------------------------------------------------
# equality oracle

def _identity_image(config, word):
    try:
        return apply_word(config, word, strict=False)
    except InsufficientData:
        return None


def _degree_mismatch(a: DegreeVector | None, b: DegreeVector | None) -> bool:
    if a is None or b is None:
        return False
    if a.mu != b.mu:
        return True
    for k, x in a.nu.items():
        y = b.nu.get(k)
        if x is not None and y is not None and x != y:
            return True
    return False


def equal(config: QuarticIncidence, w1: Sequence[Generator], w2: Sequence[Generator], budget: int = 2000) -> str:
    """Decide whether two words define the same birational map.

    Returns ``equal`` only after an exact normal-form or rewriting match,
    ``distinct`` only on an exact invariant mismatch, else ``undecided``.
    """
    require_valid(config)
    for g in list(w1) + list(w2):
        check_generator(config, g)

    a1, u1 = push_automorphisms(config, w1)
    a2, u2 = push_automorphisms(config, w2)
    if _aut_permutation(config, a1) != _aut_permutation(config, a2):
        return DISTINCT
    same_aut = free_reduce([Aut(x) for x in a1], config) == free_reduce([Aut(x) for x in a2], config)

    u1 = free_reduce(expand_pairs(config, u1))
    u2 = free_reduce(expand_pairs(config, u2))
    if len(u1) % 2 != len(u2) % 2:
        return DISTINCT
    if _degree_mismatch(_identity_image(config, w1), _identity_image(config, w2)):
        return DISTINCT

    line = common_cluster(config, u1, u2)
    if line is not None:
        same = cluster_normal_form(config, u1, line) == cluster_normal_form(config, u2, line)
        if not same:
            return DISTINCT
        return EQUAL if same_aut else UNDECIDED
    if not same_aut:
        return UNDECIDED
    if u1 == u2:
        return EQUAL
    triples = relation_triples(config)
    if _orbit(tuple(u1), triples, budget) & _orbit(tuple(u2), triples, budget):
        return EQUAL
    return UNDECIDED
