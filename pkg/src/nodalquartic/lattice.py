"""Intersection forms of (-2)-curve configurations and their Dynkin types.

Definiteness is decided by exact symmetric elimination over the rationals.
Dynkin recognition works on the dual graph alone (degree sequence plus arm
lengths), so the two can be cross-checked against each other.
"""
from __future__ import annotations

import json
from collections import Counter
from functools import cached_property
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import sympy

NEG_DEF = "negative_definite"
NEG_SEMIDEF = "negative_semidefinite"
INDEF = "indefinite_or_other"
NONE = "none"


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class CurveConfig:
    vertices: tuple[tuple[str, int], ...]
    edges: tuple[tuple[str, str, int], ...] = ()

    def __post_init__(self):
        ids = [v for v, _ in self.vertices]
        if len(set(ids)) != len(ids):
            raise LatticeError("duplicate vertex id")
        known = set(ids)
        seen = set()
        for a, b, m in self.edges:
            if a == b:
                raise LatticeError(f"self-edge at {a}")
            if a not in known or b not in known:
                raise LatticeError(f"edge ({a}, {b}) names an unknown vertex")
            if m < 1:
                raise LatticeError("edge multiplicity must be at least 1")
            key = frozenset((a, b))
            if key in seen:
                raise LatticeError(f"repeated edge ({a}, {b})")
            seen.add(key)

    @classmethod
    def from_graph(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> "CurveConfig":
        """All curves (-2), all intersections simple."""
        return cls(tuple((str(v), -2) for v in vertices), tuple((str(a), str(b), 1) for a, b in edges))

    @classmethod
    def from_json(cls, doc: Mapping | str) -> "CurveConfig":
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            verts = tuple((str(v["id"]), int(v.get("self", -2))) for v in doc["vertices"])
            edges = tuple(
                (str(e[0]), str(e[1]), int(e[2]) if len(e) > 2 else 1) for e in doc.get("edges", [])
            )
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise LatticeError(f"malformed lattice document: {exc!r}") from exc
        return cls(verts, edges)

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "self": s} for v, s in self.vertices],
            "edges": [[a, b, m] for a, b, m in self.edges],
        }

    @cached_property
    def ids(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.vertices)

    def adjacency(self) -> dict[str, set[str]]:
        return {v: set(s) for v, s in self._adjacency.items()}

    @cached_property
    def _adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.ids}
        for a, b, _ in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def induced(self, keep: Iterable[str]) -> "CurveConfig":
        keep = set(keep)
        return CurveConfig(
            tuple(v for v in self.vertices if v[0] in keep),
            tuple(e for e in self.edges if e[0] in keep and e[1] in keep),
        )

    def components(self) -> list[tuple[str, ...]]:
        """Connected components, each listed in vertex order, ordered by first vertex."""
        return list(self._components)

    @cached_property
    def _components(self) -> tuple[tuple[str, ...], ...]:
        adj = self._adjacency
        order = {v: i for i, v in enumerate(self.ids)}
        seen: set[str] = set()
        out = []
        for v in self.ids:
            if v in seen:
                continue
            comp, stack = [], [v]
            seen.add(v)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            out.append(tuple(sorted(comp, key=order.__getitem__)))
        return tuple(out)

    def is_simply_laced(self) -> bool:
        return all(s == -2 for _, s in self.vertices) and all(m == 1 for *_, m in self.edges)


def intersection_matrix(g: CurveConfig) -> list[list[int]]:
    idx = {v: i for i, v in enumerate(g.ids)}
    n = len(idx)
    M = [[0] * n for _ in range(n)]
    for v, s in g.vertices:
        M[idx[v]][idx[v]] = s
    for a, b, m in g.edges:
        M[idx[a]][idx[b]] = M[idx[b]][idx[a]] = m
    return M


# --------------------------------------------------------------------------
# definiteness

@dataclass(frozen=True)
class DefinitenessReport:
    kind: str
    kernel: tuple[tuple[Fraction, ...], ...] = ()

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "kernel_dim": self.kernel_dim,
            "kernel": [[str(x) for x in v] for v in self.kernel],
        }


def _elimination_kind(M: Sequence[Sequence[int]]) -> tuple[str, int]:
    """Classify ``-M`` as positive definite / semidefinite / other by symmetric elimination.

    Fraction-free (Bareiss) updates keep every entry an integer: after each
    positive pivot the remaining block is the Schur complement scaled by a
    positive factor, so pivot signs and zero rows are exactly those of the
    rational elimination.  Returns the kind and the number of skipped zero
    pivots.
    """
    A = [[-x for x in row] for row in M]
    alive = list(range(len(A)))
    zeros, prev = 0, 1
    while alive:
        i = alive.pop(0)
        row_i = A[i]
        piv = row_i[i]
        if piv < 0:
            return INDEF, 0
        if piv == 0:
            # a semidefinite form with a zero diagonal entry has a zero row there
            if any(row_i[j] for j in alive):
                return INDEF, 0
            zeros += 1
            continue
        for j in alive:
            row_j = A[j]
            f = row_j[i]
            for k in alive:
                row_j[k] = (piv * row_j[k] - f * row_i[k]) // prev
        prev = piv
    return (NEG_DEF if zeros == 0 else NEG_SEMIDEF), zeros


def definiteness(M: Sequence[Sequence[int]]) -> DefinitenessReport:
    kind, zeros = _elimination_kind(M)
    if kind != NEG_SEMIDEF:
        return DefinitenessReport(kind)
    basis = sympy.Matrix(M).nullspace()
    kernel = []
    for vec in basis:
        den = sympy.ilcm(*[sympy.fraction(x)[1] for x in vec])
        kernel.append(tuple(Fraction(int(x * den)) for x in vec))
    if len(kernel) != zeros:
        raise AssertionError("elimination and nullspace disagree on the kernel dimension")
    return DefinitenessReport(kind, tuple(kernel))


def is_negative_definite(M) -> bool:
    return _elimination_kind(M)[0] == NEG_DEF


def is_negative_semidefinite(M) -> bool:
    return _elimination_kind(M)[0] != INDEF


# --------------------------------------------------------------------------
# Dynkin recognition

FINITE_EXCEPTIONAL = {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}
AFFINE_EXCEPTIONAL = {(2, 2, 2): "E6^(1)", (1, 3, 3): "E7^(1)", (1, 2, 5): "E8^(1)"}


def is_affine(label: str) -> bool:
    return label.endswith("^(1)")


def is_finite(label: str) -> bool:
    return label != NONE and not is_affine(label)


def _arm_lengths(adj, center) -> list[int] | None:
    arms = []
    for start in adj[center]:
        prev, cur, length = center, start, 1
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                return None
            prev, cur, length = cur, nxt[0], length + 1
        arms.append(length)
    return sorted(arms)


def recognize(adj: Mapping[str, set[str]]) -> str:
    """Label of a connected simple graph given by adjacency sets."""
    n = len(adj)
    e = sum(len(s) for s in adj.values()) // 2
    deg = Counter(len(s) for s in adj.values())
    if n == 1:
        return "A1"
    if e == n and deg[2] == n and n >= 3:
        return f"A{n - 1}^(1)"
    if e != n - 1:
        return NONE
    high = [v for v, s in adj.items() if len(s) >= 3]
    if not high:
        return f"A{n}"
    if len(high) == 1:
        v = high[0]
        if len(adj[v]) == 4:
            return "D4^(1)" if n == 5 else NONE
        if len(adj[v]) != 3:
            return NONE
        arms = _arm_lengths(adj, v)
        if arms is None:
            return NONE
        if arms[0] == arms[1] == 1:
            return f"D{n}"
        key = tuple(arms)
        return FINITE_EXCEPTIONAL.get(key) or AFFINE_EXCEPTIONAL.get(key) or NONE
    if len(high) == 2 and all(len(adj[v]) == 3 for v in high):
        for v in high:
            if sum(1 for w in adj[v] if len(adj[w]) == 1) != 2:
                return NONE
        return f"D{n - 1}^(1)"
    return NONE


@dataclass(frozen=True)
class DynkinClass:
    components: tuple[tuple[tuple[str, ...], str], ...]

    @property
    def labels(self) -> list[str]:
        return [lab for _, lab in self.components]

    def to_json(self) -> dict:
        return {"components": [{"vertices": list(c), "label": lab} for c, lab in self.components]}


def classify_dynkin(g: CurveConfig, check: bool = True) -> DynkinClass:
    if not g.is_simply_laced():
        raise LatticeError("not a simply-laced (-2) configuration")
    adj = g.adjacency()
    out = []
    for comp in g.components():
        label = recognize({v: adj[v] for v in comp})
        if check:
            report = definiteness(intersection_matrix(g.induced(comp)))
            ok = (
                (is_finite(label) and report.kind == NEG_DEF)
                or (is_affine(label) and report.kind == NEG_SEMIDEF and report.kernel_dim == 1)
                or (label == NONE and report.kind == INDEF)
            )
            if not ok:
                raise AssertionError(f"label {label} contradicts {report.kind} on {comp}")
        out.append((comp, label))
    return DynkinClass(tuple(out))


# --------------------------------------------------------------------------
# condition (*)

@dataclass(frozen=True)
class StarVerdict:
    holds: bool
    component: tuple[str, ...] | None = None
    clause: str | None = None
    witness: str | None = None

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "component": None if self.component is None else list(self.component),
            "clause": self.clause,
            "witness": self.witness,
        }


def _unmarked(g: CurveConfig, marked: Iterable[str]) -> CurveConfig:
    marked = set(marked)
    if not marked:
        return g
    unknown = marked - set(g.ids)
    if unknown:
        raise LatticeError(f"marked ids not in configuration: {sorted(unknown)}")
    return g.induced(v for v in g.ids if v not in marked)


def check_star(g: CurveConfig, marked: Iterable[str] = ()) -> StarVerdict:
    """Condition (*) on the unmarked curves, straight from its definition.

    Each connected component of the unmarked curves must span a negative
    semidefinite lattice whose every delete-one-curve sublattice is negative
    definite.  Distinct components are orthogonal automatically.
    """
    rest = _unmarked(g, marked)
    M = intersection_matrix(rest)
    pos = {v: i for i, v in enumerate(rest.ids)}
    for comp in rest.components():
        idx = [pos[v] for v in comp]
        if not is_negative_semidefinite([[M[r][c] for c in idx] for r in idx]):
            return StarVerdict(False, comp, "semidefiniteness")
        for v, drop in zip(comp, idx):
            sub = [x for x in idx if x != drop]
            if not is_negative_definite([[M[r][c] for c in sub] for r in sub]):
                return StarVerdict(False, comp, "definiteness after deleting one curve", v)
    return StarVerdict(True)


def check_star_by_recognition(g: CurveConfig, marked: Iterable[str] = ()) -> bool:
    """Condition (*) as: every component is a finite or affine simply-laced Dynkin diagram."""
    rest = _unmarked(g, marked)
    if not rest.is_simply_laced():
        raise LatticeError("not a simply-laced (-2) configuration")
    adj = rest._adjacency
    return all(recognize({v: adj[v] for v in comp}) != NONE for comp in rest.components())


# --------------------------------------------------------------------------
# standard diagrams

def _path(names):
    return list(zip(names, names[1:]))


def dynkin_diagram(label: str) -> CurveConfig:
    """The standard diagram for labels like ``A5``, ``D4^(1)``, ``E8``."""
    affine = label.endswith("^(1)")
    kind, n = label[0], int(label[1:].removesuffix("^(1)"))
    if kind == "A":
        if affine:
            if n < 2:
                raise LatticeError("A1^(1) needs a double edge; use affine_a1()")
            vs = [f"v{i}" for i in range(n + 1)]
            return CurveConfig.from_graph(vs, _path(vs) + [(vs[-1], vs[0])])
        vs = [f"v{i}" for i in range(n)]
        return CurveConfig.from_graph(vs, _path(vs))
    if kind == "D":
        if n < 4:
            raise LatticeError(f"no diagram {label}")
        if affine:
            vs = [f"v{i}" for i in range(n + 1)]
            spine = vs[2 : n - 1]
            edges = _path(spine) + [(vs[0], spine[0]), (vs[1], spine[0]), (vs[n - 1], spine[-1]), (vs[n], spine[-1])]
            return CurveConfig.from_graph(vs, edges)
        vs = [f"v{i}" for i in range(n)]
        return CurveConfig.from_graph(vs, _path(vs[: n - 1]) + [(vs[n - 3], vs[n - 1])])
    if kind == "E":
        arms = {6: (1, 2, 2), 7: (1, 2, 3), 8: (1, 2, 4)} if not affine else {6: (2, 2, 2), 7: (1, 3, 3), 8: (1, 2, 5)}
        if n not in arms:
            raise LatticeError(f"no diagram {label}")
        vs, edges = ["c"], []
        for a, length in enumerate(arms[n]):
            prev = "c"
            for t in range(length):
                name = f"a{a}_{t}"
                vs.append(name)
                edges.append((prev, name))
                prev = name
        return CurveConfig.from_graph(vs, edges)
    raise LatticeError(f"unknown label {label}")


def affine_a1() -> CurveConfig:
    return CurveConfig((("v0", -2), ("v1", -2)), (("v0", "v1", 2),))


def standard_labels(max_rank: int = 10) -> list[str]:
    """All finite and affine simply-laced labels with index at most ``max_rank``."""
    out = [f"A{n}" for n in range(1, max_rank + 1)]
    out += [f"D{n}" for n in range(4, max_rank + 1)]
    out += [f"E{n}" for n in (6, 7, 8) if n <= max_rank]
    out += [f"A{n}^(1)" for n in range(2, max_rank + 1)]
    out += [f"D{n}^(1)" for n in range(4, max_rank + 1)]
    out += [f"E{n}^(1)" for n in (6, 7, 8) if n <= max_rank]
    return out


# the imaginary root of each affine diagram, keyed by vertex name
def imaginary_root(label: str) -> dict[str, int]:
    g = dynkin_diagram(label)
    kind, n = label[0], int(label[1:].removesuffix("^(1)"))
    if kind == "A":
        return {v: 1 for v in g.ids}
    if kind == "D":
        return {v: (2 if 2 <= i <= n - 2 else 1) for i, v in enumerate(g.ids)}
    centre = {6: 3, 7: 4, 8: 6}[n]
    root = {"c": centre}
    arms = {6: (2, 2, 2), 7: (1, 3, 3), 8: (1, 2, 5)}[n]
    table = {6: [[2, 1]] * 3, 7: [[2], [3, 2, 1], [3, 2, 1]], 8: [[3], [4, 2], [5, 4, 3, 2, 1]]}[n]
    for a, length in enumerate(arms):
        for t in range(length):
            root[f"a{a}_{t}"] = table[a][t]
    return root


# --------------------------------------------------------------------------
# Du Val chains

def tridiagonal_solve(lower: Sequence, diag: Sequence, upper: Sequence, rhs: Sequence) -> list[Fraction]:
    """Thomas algorithm in exact arithmetic; ``lower[0]`` and ``upper[-1]`` are ignored."""
    n = len(diag)
    c, d = [Fraction(0)] * n, [Fraction(0)] * n
    for i in range(n):
        denom = Fraction(diag[i]) - (Fraction(lower[i]) * c[i - 1] if i else 0)
        if denom == 0:
            raise ZeroDivisionError("singular tridiagonal system")
        c[i] = Fraction(upper[i]) / denom if i < n - 1 else Fraction(0)
        d[i] = (Fraction(rhs[i]) - (Fraction(lower[i]) * d[i - 1] if i else 0)) / denom
    x = [Fraction(0)] * n
    for i in reversed(range(n)):
        x[i] = d[i] - (c[i] * x[i + 1] if i < n - 1 else 0)
    return x


def chain_pullback(k_prime: int) -> list[Fraction]:
    """Coefficients of the exceptional chain of an A_{k'} point in the pull-back of a curve
    meeting the last chain member: ``a_{t-1} - 2 a_t + a_{t+1} = 0`` with ``a_0 = 0``, ``a_{k'+1} = 1``."""
    if k_prime < 1:
        raise ValueError("k' must be positive")
    n = k_prime
    rhs = [0] * (n - 1) + [-1]
    a = tridiagonal_solve([1] * n, [-2] * n, [1] * n, rhs)
    expected = [Fraction(t, n + 1) for t in range(1, n + 1)]
    if a != expected:
        raise AssertionError("chain coefficients differ from t/(k'+1)")
    return a


def integrality_bound(k: int, k_prime: int) -> bool:
    """Is ``k/(k'+1)`` an integer?  When it is, ``k' <= k - 1`` follows."""
    if k < 1 or k_prime < 1:
        raise ValueError("k and k' must be positive")
    ok = k % (k_prime + 1) == 0
    if ok and not k_prime <= k - 1:
        raise AssertionError("divisibility without the bound")
    return ok


def duval_point_bound(d: int, n: int) -> int:
    """Maximal number of extra singular points of a general section along a multiple line."""
    if d < 1 or not 0 <= n <= 3:
        raise ValueError("need d >= 1 and 0 <= n <= 3")
    bound = d - n - 1
    if bound < 0:
        raise ValueError("degenerate: line multiplicity impossible")
    return bound
