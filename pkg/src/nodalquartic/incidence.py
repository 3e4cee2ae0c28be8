"""Combinatorial incidence data of a factorial nodal quartic threefold.

A configuration lists the marked singular points, the marked lines with the
nodes they carry, and Eckardt flags.  Optionally it also lists abstract
automorphisms as permutations of the marked ids.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping


class ConfigError(ValueError):
    """Raised for malformed configuration documents or invalid configurations."""


@dataclass(frozen=True)
class SingularPoint:
    id: str
    eckardt: bool = False


@dataclass(frozen=True)
class LineMark:
    id: str
    points: tuple[str, ...]
    eckardt: bool = False


@dataclass(frozen=True)
class Automorphism:
    """An abstract automorphism, known only through its action on marked ids."""

    label: str
    points: Mapping[str, str]
    lines: Mapping[str, str]
    inverse: str | None = None

    def __hash__(self) -> int:
        return hash((self.label, tuple(sorted(self.points.items())), tuple(sorted(self.lines.items()))))

    def image(self, ident: str) -> str:
        if ident in self.points:
            return self.points[ident]
        return self.lines.get(ident, ident)


@dataclass(frozen=True)
class Violation:
    ident: str
    rule: str

    def to_json(self) -> dict:
        return {"id": self.ident, "rule": self.rule}


@dataclass(frozen=True)
class Cluster:
    line: str
    points: tuple[str, ...]
    has_line_involution: bool
    regular_only: bool = False

    def to_json(self) -> dict:
        return {
            "line": self.line,
            "points": list(self.points),
            "line_involution": self.has_line_involution,
            "regular_only": self.regular_only,
        }


@dataclass(frozen=True)
class QuarticIncidence:
    points: tuple[SingularPoint, ...]
    lines: tuple[LineMark, ...] = ()
    automorphisms: tuple[Automorphism, ...] = field(default=())

    # lookups ---------------------------------------------------------------
    def point(self, ident: str) -> SingularPoint:
        for p in self.points:
            if p.id == ident:
                return p
        raise KeyError(ident)

    def line(self, ident: str) -> LineMark:
        for ln in self.lines:
            if ln.id == ident:
                return ln
        raise KeyError(ident)

    def automorphism(self, label: str) -> Automorphism:
        for a in self.automorphisms:
            if a.label == label:
                return a
        raise KeyError(label)

    @property
    def point_ids(self) -> tuple[str, ...]:
        return tuple(p.id for p in self.points)

    @property
    def line_ids(self) -> tuple[str, ...]:
        return tuple(ln.id for ln in self.lines)

    @property
    def coordinates(self) -> tuple[str, ...]:
        """All multiplicity coordinates: points first, then lines, in document order."""
        return self.point_ids + self.line_ids

    def is_eckardt(self, ident: str) -> bool:
        for p in self.points:
            if p.id == ident:
                return p.eckardt
        return self.line(ident).eckardt

    def lines_through(self, point_id: str) -> tuple[LineMark, ...]:
        return tuple(ln for ln in self.lines if point_id in ln.points)

    def common_line(self, a: str, b: str) -> LineMark | None:
        for ln in self.lines:
            if a in ln.points and b in ln.points:
                return ln
        return None

    # serialization -----------------------------------------------------------
    @classmethod
    def from_json(cls, doc: Mapping | str) -> "QuarticIncidence":
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            points = tuple(
                SingularPoint(_ident(p["id"]), bool(p.get("eckardt", False))) for p in doc.get("points", [])
            )
            lines = tuple(
                LineMark(_ident(ln["id"]), tuple(_ident(q) for q in ln["points"]), bool(ln.get("eckardt", False)))
                for ln in doc.get("lines", [])
            )
            autos = tuple(
                Automorphism(
                    _ident(a["label"]),
                    dict(a.get("points", {})),
                    dict(a.get("lines", {})),
                    a.get("inverse"),
                )
                for a in doc.get("automorphisms", [])
            )
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"malformed configuration document: {exc!r}") from exc
        seen: set[str] = set()
        for ident in [p.id for p in points] + [ln.id for ln in lines]:
            if ident in seen:
                raise ConfigError(f"duplicate id {ident!r}")
            seen.add(ident)
        labels = [a.label for a in autos]
        if len(set(labels)) != len(labels):
            raise ConfigError("duplicate automorphism label")
        return cls(points, lines, autos)

    def to_json(self) -> dict:
        doc: dict = {
            "points": [{"id": p.id, "eckardt": p.eckardt} for p in self.points],
            "lines": [{"id": ln.id, "points": list(ln.points), "eckardt": ln.eckardt} for ln in self.lines],
        }
        if self.automorphisms:
            doc["automorphisms"] = [
                {"label": a.label, "points": dict(a.points), "lines": dict(a.lines), "inverse": a.inverse}
                for a in self.automorphisms
            ]
        return doc


def _ident(value) -> str:
    if not isinstance(value, str) or not value:
        raise ConfigError(f"ids must be nonempty strings, got {value!r}")
    return value


def make_config(
    points: Iterable[str | tuple[str, bool]],
    lines: Mapping[str, Iterable[str]] | Iterable[tuple[str, Iterable[str], bool]] = (),
) -> QuarticIncidence:
    """Small constructor for tests and scripts.

    ``points`` holds ids or ``(id, eckardt)`` pairs; ``lines`` maps line id to
    its points, or is a list of ``(id, points, eckardt)`` triples.
    """
    pts = tuple(SingularPoint(p) if isinstance(p, str) else SingularPoint(p[0], p[1]) for p in points)
    if isinstance(lines, Mapping):
        lns = tuple(LineMark(k, tuple(v)) for k, v in lines.items())
    else:
        lns = tuple(LineMark(k, tuple(v), e) for k, v, e in lines)
    return QuarticIncidence(pts, lns)


def validate(config: QuarticIncidence) -> list[Violation]:
    """Return every violated incidence rule; an empty list means the configuration is legal."""
    report: list[Violation] = []
    point_ids = set(config.point_ids)
    if len(point_ids) != len(config.points):
        report.append(Violation("points", "duplicate point id"))
    line_ids = [ln.id for ln in config.lines]
    if len(set(line_ids)) != len(line_ids):
        report.append(Violation("lines", "duplicate line id"))
    for ident in sorted(point_ids & set(line_ids)):
        report.append(Violation(ident, "id used for both a point and a line"))

    for ln in config.lines:
        n = len(ln.points)
        if n == 0:
            report.append(Violation(ln.id, "line without singular points"))
        elif n > 3:
            report.append(Violation(ln.id, f"line with {n} points"))
        if len(set(ln.points)) != n:
            report.append(Violation(ln.id, "repeated point on line"))
        for q in ln.points:
            if q not in point_ids:
                report.append(Violation(ln.id, f"unknown point {q}"))
        for q in ln.points:
            if q in point_ids and config.point(q).eckardt and n == 2:
                report.append(Violation(ln.id, "eckardt point on 2-point line"))
                break

    lines = list(config.lines)
    for i, a in enumerate(lines):
        for b in lines[i + 1 :]:
            shared = set(a.points) & set(b.points)
            if len(shared) > 1:
                report.append(Violation(f"{a.id},{b.id}", "two lines share more than one point"))

    for auto in config.automorphisms:
        report.extend(_check_automorphism(config, auto))
    return report


def _check_automorphism(config: QuarticIncidence, auto: Automorphism) -> list[Violation]:
    out: list[Violation] = []
    pids, lids = set(config.point_ids), set(config.line_ids)
    pmap = {p: auto.points.get(p, p) for p in pids}
    lmap = {ln: auto.lines.get(ln, ln) for ln in lids}
    if set(pmap.values()) != pids or set(auto.points) - pids:
        out.append(Violation(auto.label, "automorphism is not a permutation of the points"))
        return out
    if set(lmap.values()) != lids or set(auto.lines) - lids:
        out.append(Violation(auto.label, "automorphism is not a permutation of the lines"))
        return out
    for ln in config.lines:
        target = config.line(lmap[ln.id])
        if {pmap[q] for q in ln.points} != set(target.points):
            out.append(Violation(auto.label, f"automorphism breaks incidence of {ln.id}"))
        if ln.eckardt != target.eckardt:
            out.append(Violation(auto.label, f"automorphism breaks eckardt flag of {ln.id}"))
    for p in config.points:
        if p.eckardt != config.point(pmap[p.id]).eckardt:
            out.append(Violation(auto.label, f"automorphism breaks eckardt flag of {p.id}"))
    if auto.inverse is not None:
        try:
            inv = config.automorphism(auto.inverse)
        except KeyError:
            out.append(Violation(auto.label, f"unknown inverse {auto.inverse}"))
        else:
            if any(inv.image(auto.image(i)) != i for i in pids | lids):
                out.append(Violation(auto.label, f"{auto.inverse} is not an inverse"))
    return out


def require_valid(config: QuarticIncidence) -> None:
    report = validate(config)
    if report:
        first = report[0]
        raise ConfigError(f"invalid configuration: {first.ident}: {first.rule}")


def clusters(config: QuarticIncidence) -> list[Cluster]:
    """One cluster per marked line.

    A line involution exists only for 1- or 2-node lines that are not Eckardt;
    on a 3-node line it would coincide with a point involution.  Eckardt
    lines are marked regular-only.
    """
    require_valid(config)
    out = []
    for ln in config.lines:
        exists = len(ln.points) in (1, 2) and not ln.eckardt
        out.append(Cluster(ln.id, ln.points, exists, regular_only=ln.eckardt))
    return out
