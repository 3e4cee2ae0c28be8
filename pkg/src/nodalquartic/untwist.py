"""Non-canonical center detection and the degree-decreasing descent."""
from __future__ import annotations

from dataclasses import dataclass, field

from .dynamics import (
    MU,
    DegreeVector,
    Generator,
    InsufficientData,
    Line,
    PairPoint,
    Point,
    apply,
    format_rational,
)
from .incidence import QuarticIncidence


@dataclass(frozen=True)
class CenterSet:
    points: frozenset[str] = frozenset()
    lines: frozenset[str] = frozenset()
    # Unknown coordinates: possible centers we cannot rule out
    indeterminate: frozenset[str] = frozenset()
    # nu == mu exactly; reported, never untwisted
    canonical: frozenset[str] = frozenset()

    def __bool__(self) -> bool:
        return bool(self.points or self.lines)

    def to_json(self) -> dict:
        return {
            "points": sorted(self.points),
            "lines": sorted(self.lines),
            "indeterminate": sorted(self.indeterminate),
            "strictly_canonical": sorted(self.canonical),
        }


@dataclass(frozen=True)
class Verdict:
    ok: bool
    rule: str | None = None

    def to_json(self) -> dict:
        return {"ok": self.ok, "rule": self.rule}


class Inadmissible(ValueError):
    def __init__(self, rule: str):
        super().__init__(f"inadmissible center set: {rule}")
        self.rule = rule


@dataclass
class DescentTrace:
    steps: list[tuple[Generator, DegreeVector]] = field(default_factory=list)
    final: DegreeVector | None = None
    status: str = "complete"
    rule: str | None = None

    @property
    def word(self) -> list[Generator]:
        """The untwisting generators in the order they were applied."""
        return [g for g, _ in self.steps]

    @property
    def recovered(self) -> list[Generator]:
        """The factorization of the original map: the step list reversed."""
        return self.word[::-1]

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "rule": self.rule,
            "steps": [{"generator": g.to_json(), "vector": v.to_json()} for g, v in self.steps],
            "final": None if self.final is None else self.final.to_json(),
        }


def detect_centers(config: QuarticIncidence, v: DegreeVector) -> CenterSet:
    """Known coordinates with multiplicity strictly above ``mu``."""
    pts, lns, unknown, canon = set(), set(), set(), set()
    point_ids = set(config.point_ids)
    for c in config.coordinates:
        x = v[c]
        if x is None:
            unknown.add(c)
        elif x > v.mu:
            (pts if c in point_ids else lns).add(c)
        elif x == v.mu:
            canon.add(c)
    return CenterSet(frozenset(pts), frozenset(lns), frozenset(unknown), frozenset(canon))


def check_admissible(config: QuarticIncidence, centers: CenterSet) -> Verdict:
    """Is this set of simultaneous centers one the classification allows?"""
    pts, lns = sorted(centers.points), sorted(centers.lines)
    for p in pts:
        if config.point(p).eckardt:
            return Verdict(False, f"eckardt point {p} as center")
    for name in lns:
        ln = config.line(name)
        if ln.eckardt:
            return Verdict(False, f"eckardt line {name} as center")
        if len(ln.points) == 3:
            return Verdict(False, f"line {name} with three nodes as center")
    if len(lns) >= 2:
        return Verdict(False, "two lines")
    if len(pts) >= 3:
        return Verdict(False, "three points")
    if not pts and not lns:
        return Verdict(True)
    if len(pts) + len(lns) == 1:
        return Verdict(True)
    if len(pts) == 2 and not lns:
        ln = config.common_line(*pts)
        if ln is None:
            return Verdict(False, "two points not joined by a marked line")
        if ln.eckardt:
            return Verdict(False, f"two points on eckardt line {ln.id}")
        third = [q for q in ln.points if q not in pts]
        if third and config.point(third[0]).eckardt:
            return Verdict(False, f"two points collinear with eckardt point {third[0]}")
        return Verdict(True)
    if len(pts) == 2 and len(lns) == 1:
        ln = config.line(lns[0])
        if set(pts) <= set(ln.points):
            return Verdict(False, "two points and their line")
        return Verdict(False, "line and point outside it")
    # one point, one line
    (p,), (name,) = pts, lns
    ln = config.line(name)
    if p not in ln.points:
        return Verdict(False, "line and point outside it")
    if len(ln.points) != 2:
        return Verdict(False, "point and line without exactly one more node")
    return Verdict(True)


def choose_generator(config: QuarticIncidence, centers: CenterSet) -> Generator:
    verdict = check_admissible(config, centers)
    if not verdict.ok:
        raise Inadmissible(verdict.rule)
    pts, lns = sorted(centers.points), sorted(centers.lines)
    if lns:
        # a lone line, or a point+line pair: the line goes first
        return Line(lns[0])
    if len(pts) == 1:
        return Point(pts[0])
    ln = config.common_line(*pts)
    if len(ln.points) == 2:
        p1, p2 = ln.points
        return PairPoint(p1, p2, ln.id)
    # no pair involution on a 3-node line; a single point involution still lowers mu
    return Point(pts[0])


def untwist_step(config: QuarticIncidence, v: DegreeVector) -> tuple[Generator, DegreeVector]:
    centers = detect_centers(config, v)
    if not centers:
        raise ValueError("no non-canonical centers to untwist")
    g = choose_generator(config, centers)
    w = apply(config, g, v, strict=False)
    if not w.mu < v.mu:
        raise AssertionError(f"{g} did not lower mu: {format_rational(v.mu)} -> {format_rational(w.mu)}")
    return g, w


def untwist(config: QuarticIncidence, v: DegreeVector, max_steps: int = 10_000) -> DescentTrace:
    """Untwist until no centers remain.

    Stops with status ``stuck: ...`` when an Unknown multiplicity blocks a
    step, or when no Known center remains but ``mu > 1`` and some coordinate
    is Unknown.  Stops with status ``inadmissible`` on a forbidden center set.
    """
    trace = DescentTrace()
    cur = v
    for _ in range(max_steps):
        centers = detect_centers(config, cur)
        if not centers:
            if cur.mu != 1 and centers.indeterminate:
                trace.status = f"stuck: unknown multiplicity at {sorted(centers.indeterminate)[0]}"
            elif cur.mu != 1:
                trace.status = "stuck: no center but mu != 1"
            break
        try:
            g, cur2 = untwist_step(config, cur)
        except Inadmissible as exc:
            trace.status, trace.rule = "inadmissible", exc.rule
            break
        except InsufficientData as exc:
            trace.status = f"stuck: unknown multiplicity at {exc.coordinate}"
            break
        trace.steps.append((g, cur2))
        cur = cur2
    else:
        trace.status = "stuck: step limit"
    trace.final = cur
    return trace
