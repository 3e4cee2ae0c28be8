"""Degree vectors and the linear action of the birational involutions on them.

A degree vector records the degree ``mu`` of the mobile linear system attached
to a birational map and its multiplicities at the marked points and lines.
Composing the map with an involution changes these numbers by an explicit
integer matrix; the formulas depend on how many nodes the relevant line
carries.  Multiplicities the formulas do not determine become Unknown (None).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .incidence import ConfigError, QuarticIncidence, require_valid

MU = "mu"

Multiplicity = Union[Fraction, None]  # None is Unknown


class InvalidGenerator(ValueError):
    pass


class InsufficientData(ValueError):
    """A coordinate needed by a formula is Unknown."""

    def __init__(self, coordinate: str):
        super().__init__(f"insufficient multiplicity data: {coordinate} is unknown")
        self.coordinate = coordinate


# --------------------------------------------------------------------------
# rationals on the wire

def parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or any(c in text for c in ".eE") or not text.strip():
        raise ValueError(f"rationals must be strings 'a' or 'a/b', got {text!r}")
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# --------------------------------------------------------------------------
# generators

@dataclass(frozen=True)
class Point:
    point: str

    def __str__(self) -> str:
        return f"tau_{self.point}"

    def to_json(self) -> dict:
        return {"type": "point", "id": self.point}


@dataclass(frozen=True)
class Line:
    line: str

    def __str__(self) -> str:
        return f"tau_{self.line}"

    def to_json(self) -> dict:
        return {"type": "line", "id": self.line}


@dataclass(frozen=True)
class PairPoint:
    p1: str
    p2: str
    line: str

    def __str__(self) -> str:
        return f"tau_{self.p1}{self.p2}"

    def to_json(self) -> dict:
        return {"type": "pair", "ids": [self.p1, self.p2], "line": self.line}


@dataclass(frozen=True)
class Aut:
    label: str

    def __str__(self) -> str:
        return self.label

    def to_json(self) -> dict:
        return {"type": "aut", "label": self.label}


Generator = Union[Point, Line, PairPoint, Aut]


def generator_from_json(doc: Mapping) -> Generator:
    kind = doc.get("type")
    if kind == "point":
        return Point(doc["id"])
    if kind == "line":
        return Line(doc["id"])
    if kind == "pair":
        a, b = doc["ids"]
        return PairPoint(a, b, doc["line"])
    if kind == "aut":
        return Aut(doc["label"])
    raise ConfigError(f"unknown generator type {kind!r}")


def word_from_json(doc: Mapping | str) -> list[Generator]:
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        return [generator_from_json(g) for g in doc["word"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed word document: {exc!r}") from exc


def word_to_json(word: Iterable[Generator]) -> dict:
    return {"word": [g.to_json() for g in word]}


def is_involution(g: Generator) -> bool:
    return not isinstance(g, Aut)


def check_generator(config: QuarticIncidence, g: Generator) -> None:
    """Raise InvalidGenerator unless ``g`` is a legal generator for ``config``."""
    try:
        if isinstance(g, Point):
            p = config.point(g.point)
            if p.eckardt:
                raise InvalidGenerator(f"{g}: {g.point} is an eckardt point (its involution is regular)")
            for ln in config.lines_through(g.point):
                if len(ln.points) == 3 and any(config.point(q).eckardt for q in ln.points):
                    raise InvalidGenerator(f"{g}: 3-node line {ln.id} carries an eckardt point")
        elif isinstance(g, Line):
            ln = config.line(g.line)
            if ln.eckardt:
                raise InvalidGenerator(f"{g}: {ln.id} is an eckardt line")
            if len(ln.points) not in (1, 2):
                raise InvalidGenerator(f"{g}: line {ln.id} has {len(ln.points)} nodes")
        elif isinstance(g, PairPoint):
            ln = config.line(g.line)
            if g.p1 == g.p2 or set(ln.points) != {g.p1, g.p2}:
                raise InvalidGenerator(f"{g}: {ln.id} must carry exactly the nodes {g.p1}, {g.p2}")
            if ln.eckardt:
                raise InvalidGenerator(f"{g}: {ln.id} is an eckardt line")
        elif isinstance(g, Aut):
            config.automorphism(g.label)
        else:
            raise InvalidGenerator(f"not a generator: {g!r}")
    except KeyError as exc:
        raise InvalidGenerator(f"{g}: unknown id {exc.args[0]}") from None


# --------------------------------------------------------------------------
# degree vectors

@dataclass(frozen=True)
class DegreeVector:
    mu: Fraction
    nu: Mapping[str, Multiplicity] = field(default_factory=dict)

    def __post_init__(self):
        if self.mu <= 0:
            raise ValueError("mu must be positive")

    def __getitem__(self, coord: str) -> Multiplicity:
        if coord == MU:
            return self.mu
        return self.nu.get(coord)

    def known(self) -> dict[str, Fraction]:
        return {k: v for k, v in self.nu.items() if v is not None}

    def is_identity(self) -> bool:
        """mu = 1 and every Known multiplicity vanishes."""
        return self.mu == 1 and all(v == 0 for v in self.known().values())

    @classmethod
    def identity(cls, config: QuarticIncidence) -> "DegreeVector":
        return cls(Fraction(1), {c: Fraction(0) for c in config.coordinates})

    @classmethod
    def from_json(cls, doc: Mapping | str, config: QuarticIncidence | None = None) -> "DegreeVector":
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            mu = parse_rational(doc["mu"])
            nu = {k: parse_rational(v) for k, v in doc.get("nu", {}).items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed degree vector: {exc}") from exc
        if config is not None:
            coords = set(config.coordinates)
            for k in nu:
                if k not in coords:
                    raise ConfigError(f"degree vector refers to unknown id {k!r}")
            for c in config.coordinates:
                nu.setdefault(c, None)
        return cls(mu, nu)

    def to_json(self) -> dict:
        return {
            "mu": format_rational(self.mu),
            "nu": {k: format_rational(v) for k, v in self.nu.items() if v is not None},
        }

    def __str__(self) -> str:
        parts = [f"mu={format_rational(self.mu)}"]
        for k, v in self.nu.items():
            parts.append(f"{k}={'?' if v is None else format_rational(v)}")
        return "(" + ", ".join(parts) + ")"


# --------------------------------------------------------------------------
# action matrices

@dataclass(frozen=True)
class ActionMatrix:
    basis: tuple[str, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    untouched: frozenset[str] = frozenset()

    def __post_init__(self):
        n = len(self.basis)
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise ValueError("action matrix must be square over its basis")

    def row(self, coord: str) -> dict[str, Fraction]:
        r = self.rows[self.basis.index(coord)]
        return {c: a for c, a in zip(self.basis, r) if a}

    def __matmul__(self, other: "ActionMatrix") -> "ActionMatrix":
        if self.basis != other.basis:
            raise ValueError("basis mismatch")
        n = len(self.basis)
        rows = tuple(
            tuple(sum((self.rows[i][k] * other.rows[k][j] for k in range(n)), Fraction(0)) for j in range(n))
            for i in range(n)
        )
        return ActionMatrix(self.basis, rows, self.untouched | other.untouched)

    def is_identity(self) -> bool:
        n = len(self.basis)
        return all(self.rows[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))

    def reorder(self, basis: Sequence[str]) -> "ActionMatrix":
        idx = [self.basis.index(c) for c in basis]
        rows = tuple(tuple(self.rows[i][j] for j in idx) for i in idx)
        return ActionMatrix(tuple(basis), rows, self.untouched)

    def as_ints(self) -> list[list[int | Fraction]]:
        return [[int(a) if a.denominator == 1 else a for a in r] for r in self.rows]

    def to_json(self) -> dict:
        return {
            "basis": list(self.basis),
            "rows": [[format_rational(a) for a in r] for r in self.rows],
            "untouched": sorted(self.untouched),
        }


def identity_matrix(basis: Sequence[str]) -> ActionMatrix:
    n = len(basis)
    return ActionMatrix(
        tuple(basis),
        tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)),
    )


def _matrix_from_rows(basis: list[str], formulas: Mapping[str, Mapping[str, int]], untouched) -> ActionMatrix:
    rows = []
    for c in basis:
        f = formulas.get(c, {c: 1})
        rows.append(tuple(Fraction(f.get(b, 0)) for b in basis))
    return ActionMatrix(tuple(basis), tuple(rows), frozenset(untouched))


def _point_formulas(config: QuarticIncidence, p: str) -> tuple[list[str], dict, set[str]]:
    basis = [MU, p]
    formulas: dict[str, dict[str, int]] = {
        MU: {MU: 3, p: -2},
        p: {MU: 4, p: -3},
    }
    blocked: set[str] = set()
    for ln in config.lines_through(p):
        others = [q for q in ln.points if q != p]
        coords = others + [ln.id]
        if len(ln.points) < 3 and ln.eckardt:
            # the per-line formulas assume a non-eckardt line
            blocked.update(coords)
            continue
        basis.extend(coords)
        L = ln.id
        if len(ln.points) == 1:
            formulas[L] = {MU: 1, p: -1, L: 1}
        elif len(ln.points) == 2:
            (q,) = others
            formulas[q] = {MU: 1, p: -1, L: 1}
            formulas[L] = {MU: 1, p: -1, q: 1}
        else:
            q1, q2 = others
            formulas[q1] = {MU: 1, p: -1, q2: 1}
            formulas[q2] = {MU: 1, p: -1, q1: 1}
            formulas[L] = {MU: 2, p: -2, L: 1}
    return basis, formulas, blocked


def action_matrix(config: QuarticIncidence, g: Generator) -> ActionMatrix:
    """The exact matrix by which ``g`` acts on its tracked coordinates.

    Rows are indexed by output coordinates and read input coordinates, so the
    new vector is ``M @ v``.  Every configuration coordinate outside the basis
    is listed in ``untouched`` and becomes Unknown under application.
    """
    check_generator(config, g)
    everything = [MU, *config.coordinates]
    if isinstance(g, Aut):
        auto = config.automorphism(g.label)
        rows = tuple(
            tuple(Fraction(1 if b == (c if c == MU else auto.image(c)) else 0) for b in everything)
            for c in everything
        )
        return ActionMatrix(tuple(everything), rows)

    if isinstance(g, Point):
        basis, formulas, _ = _point_formulas(config, g.point)
    elif isinstance(g, Line):
        ln = config.line(g.line)
        L = ln.id
        if len(ln.points) == 1:
            (p,) = ln.points
            basis = [MU, p, L]
            formulas = {
                MU: {MU: 11, L: -10},
                L: {MU: 12, L: -11},
                p: {MU: 6, L: -6, p: 1},
            }
        else:
            p1, p2 = ln.points
            basis = [MU, p1, p2, L]
            formulas = {
                MU: {MU: 5, L: -4},
                L: {MU: 6, L: -5},
                p1: {MU: 3, L: -3, p2: 1},
                p2: {MU: 3, L: -3, p1: 1},
            }
    else:
        p1, p2, L = g.p1, g.p2, g.line
        basis = [MU, p1, p2, L]
        formulas = {
            MU: {MU: 13, p1: -6, p2: -6},
            p1: {MU: 14, p1: -7, p2: -6},
            p2: {MU: 14, p1: -6, p2: -7},
            L: {MU: 8, p1: -4, p2: -4, L: 1},
        }
    untouched = set(everything) - set(basis)
    return _matrix_from_rows(basis, formulas, untouched)


def apply(config: QuarticIncidence, g: Generator, v: DegreeVector, *, strict: bool = True) -> DegreeVector:
    """Degree vector of ``chi o g`` given the degree vector ``v`` of ``chi``.

    With ``strict`` every coordinate read by the matrix must be Known.  The
    lenient mode only insists on the inputs of the ``mu`` row and lets the
    other outputs that read an Unknown become Unknown themselves.
    """
    m = action_matrix(config, g)
    if isinstance(g, Aut):
        # a relabeling moves Unknown entries along with the Known ones
        auto = config.automorphism(g.label)
        return DegreeVector(v.mu, {c: v[auto.image(c)] for c in v.nu})
    new_nu = dict(v.nu)
    values: dict[str, Multiplicity] = {}
    for c, r in zip(m.basis, m.rows):
        acc = Fraction(0)
        for b, a in zip(m.basis, r):
            if not a:
                continue
            x = v[b]
            if x is None:
                if strict or c == MU:
                    raise InsufficientData(b)
                acc = None
                break
            acc += a * x
        values[c] = acc
    for c in m.untouched:
        new_nu[c] = None
    for c, x in values.items():
        if c != MU:
            new_nu[c] = x
    return DegreeVector(values[MU], new_nu)


def apply_word(
    config: QuarticIncidence, word: Iterable[Generator], v: DegreeVector | None = None, *, strict: bool = True
) -> DegreeVector:
    """Apply the letters left to right: the result is the vector of ``chi o g1 o ... o gk``."""
    if v is None:
        v = DegreeVector.identity(config)
    for g in word:
        v = apply(config, g, v, strict=strict)
    return v


def compose(config: QuarticIncidence, word: Sequence[Generator]) -> ActionMatrix:
    """Matrix of the whole word over the union of the letters' bases.

    ``compose(w)`` applied to a vector equals applying the letters one by one,
    i.e. it is ``M_k @ ... @ M_1``.  A later letter reading a coordinate that
    an earlier letter made Unknown is an error.
    """
    require_valid(config)
    mats = [action_matrix(config, g) for g in word]
    seen = {MU}
    for m in mats:
        seen.update(m.basis)
    basis = [MU] + [c for c in config.coordinates if c in seen]
    unknown: set[str] = set()
    total = identity_matrix(basis)
    for g, m in zip(word, mats):
        if isinstance(g, Aut):
            auto = config.automorphism(g.label)
            total = m.reorder(basis) @ total
            unknown = {c for c in basis if c != MU and auto.image(c) in unknown}
            continue
        for c, r in zip(m.basis, m.rows):
            for b, a in zip(m.basis, r):
                if a and b in unknown:
                    raise InsufficientData(b)
        step_rows = []
        for c in basis:
            if c in m.basis:
                row = m.row(c)
                step_rows.append(tuple(Fraction(row.get(b, 0)) for b in basis))
            elif c in m.untouched:
                step_rows.append(tuple(Fraction(0) for _ in basis))
            else:
                step_rows.append(tuple(Fraction(1 if b == c else 0) for b in basis))
        step = ActionMatrix(tuple(basis), tuple(step_rows))
        total = step @ total
        unknown = (unknown - set(m.basis)) | (m.untouched & set(basis))
    untouched = frozenset(unknown | (set(config.coordinates) - set(basis)))
    return ActionMatrix(total.basis, total.rows, untouched)
