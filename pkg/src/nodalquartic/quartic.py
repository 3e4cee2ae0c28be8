"""Exact checks of incidence data against an explicit quartic equation.

Everything is verification of supplied data: points, lines and hyperplanes
are inputs, and each check is a finite computation with rational
polynomials (sympy ``Poly`` over ``QQ``).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import sympy
from sympy import QQ, Matrix, Poly, Rational

from .incidence import QuarticIncidence


class QuarticError(ValueError):
    pass


def _rat(x) -> Rational:
    if isinstance(x, Fraction):
        return Rational(x.numerator, x.denominator)
    if isinstance(x, str):
        return Rational(Fraction(x).numerator, Fraction(x).denominator)
    return Rational(x)


def _frac(x) -> Fraction:
    x = sympy.nsimplify(x)
    p, q = sympy.fraction(x)
    return Fraction(int(p), int(q))


# --------------------------------------------------------------------------
# data types

@dataclass(frozen=True)
class HomogPoly:
    poly: Poly

    def __post_init__(self):
        if not self.poly.is_homogeneous and not self.poly.is_zero:
            raise QuarticError("polynomial is not homogeneous")

    @classmethod
    def from_expr(cls, expr, gens: Sequence | str = "x y z t w") -> "HomogPoly":
        if isinstance(gens, str):
            gens = sympy.symbols(gens)
        return cls(Poly(sympy.sympify(expr), *gens, domain=QQ))

    @classmethod
    def from_json(cls, doc: Mapping | str) -> "HomogPoly":
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            gens = sympy.symbols(list(doc["vars"]))
            terms = {}
            for term in doc["terms"]:
                exps = tuple(int(e) for e in term["exps"])
                if len(exps) != len(gens) or min(exps, default=0) < 0:
                    raise QuarticError(f"bad exponent vector {exps}")
                c = _rat(term["coef"])
                terms[exps] = terms.get(exps, 0) + c
        except (KeyError, TypeError, ValueError) as exc:
            raise QuarticError(f"malformed polynomial document: {exc!r}") from exc
        return cls(Poly.from_dict({k: v for k, v in terms.items() if v != 0} or {(0,) * len(gens): 0}, *gens, domain=QQ))

    def to_json(self) -> dict:
        return {
            "vars": [str(g) for g in self.gens],
            "terms": [{"coef": str(_frac(c)), "exps": list(m)} for m, c in sorted(self.poly.terms())],
        }

    @property
    def gens(self) -> tuple:
        return self.poly.gens

    @property
    def nvars(self) -> int:
        return len(self.poly.gens)

    @property
    def degree(self) -> int:
        return self.poly.total_degree()

    def __call__(self, point: Sequence) -> Fraction:
        return _frac(self.poly.eval(dict(zip(self.gens, [_rat(c) for c in point]))))

    def diff(self, i: int) -> "HomogPoly":
        return HomogPoly(self.poly.diff(self.gens[i]))

    def substitute(self, images: Sequence, gens: Sequence) -> Poly:
        """``F(images)`` as a polynomial in ``gens``; images are expressions in those gens."""
        expr = self.poly.as_expr().xreplace({g: sympy.sympify(e) for g, e in zip(self.gens, images)})
        return Poly(expr, *gens, domain=QQ)


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coords)
        nz = [x for x in c if x != 0]
        if not nz:
            raise QuarticError("the zero vector is not a projective point")
        object.__setattr__(self, "coords", tuple(x / nz[0] for x in c))

    @classmethod
    def of(cls, *coords) -> "ProjPoint":
        return cls(tuple(Fraction(x) for x in coords))

    def to_json(self) -> list[str]:
        return [str(x) for x in self.coords]

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)


@dataclass(frozen=True)
class ProjLine:
    a: ProjPoint
    b: ProjPoint

    def __post_init__(self):
        if self.a == self.b:
            raise QuarticError("a line needs two distinct points")

    def contains_point(self, p: ProjPoint) -> bool:
        return Matrix([list(self.a), list(self.b), list(p)]).applyfunc(_rat).rank() == 2

    def to_json(self) -> list[list[str]]:
        return [self.a.to_json(), self.b.to_json()]


def _span_rank(rows) -> int:
    return Matrix([[_rat(x) for x in r] for r in rows]).rank()


# --------------------------------------------------------------------------
# points

def is_singular(F: HomogPoly, p: ProjPoint) -> bool:
    if F(p) != 0:
        raise QuarticError("point not on X")
    return all(F.diff(i)(p) == 0 for i in range(F.nvars))


def local_equation(F: HomogPoly, p: ProjPoint) -> tuple[Poly, tuple]:
    """Dehomogenize so that ``p`` is the origin of an affine chart."""
    i = next(k for k, c in enumerate(p.coords) if c != 0)
    us = sympy.symbols(f"u0:{F.nvars - 1}")
    images, it = [], iter(us)
    for k, c in enumerate(p.coords):
        images.append(Rational(1) if k == i else _rat(c) + next(it))
    return F.substitute(images, us), us


def local_hessian(F: HomogPoly, p: ProjPoint) -> Matrix:
    f, us = local_equation(F, p)
    origin = {u: 0 for u in us}
    return Matrix(len(us), len(us), lambda a, b: f.diff(us[a]).diff(us[b]).as_expr().subs(origin))


def is_node(F: HomogPoly, p: ProjPoint) -> bool:
    """A singular point with nondegenerate Hessian of the local equation."""
    if not is_singular(F, p):
        raise QuarticError("point is not singular on X")
    return local_hessian(F, p).rank() == F.nvars - 1


# --------------------------------------------------------------------------
# lines and planes

def restrict_to_line(F: HomogPoly, L: ProjLine) -> Poly:
    s, u = sympy.symbols("s u")
    images = [_rat(a) * s + _rat(b) * u for a, b in zip(L.a, L.b)]
    return F.substitute(images, (s, u))


def line_contained(F: HomogPoly, L: ProjLine) -> bool:
    return restrict_to_line(F, L).is_zero


def plane_section_line_multiplicity(F: HomogPoly, plane: Sequence[ProjPoint], L: ProjLine) -> int:
    """``k`` with ``F|plane = k L + C`` and ``L`` not a component of ``C``.

    ``plane`` is given by three points spanning it.
    """
    if _span_rank(plane) != 3:
        raise QuarticError("the plane points are not independent")
    for q in (L.a, L.b):
        if _span_rank(list(plane) + [q]) != 3:
            raise QuarticError("line not contained in the plane")
    if not line_contained(F, L):
        raise QuarticError("line not on X")
    third = next(q for q in plane if _span_rank([L.a, L.b, q]) == 3)
    s = sympy.symbols("s0:3")
    images = [_rat(a) * s[0] + _rat(b) * s[1] + _rat(c) * s[2] for a, b, c in zip(L.a, L.b, third)]
    G = F.substitute(images, s)
    if G.is_zero:
        raise QuarticError("plane lies on X")
    # in these coordinates L is s2 = 0
    return min(m[2] for m in G.monoms())


def _hyperplane_basis(h: Sequence, L: ProjLine) -> list[list[Rational]]:
    """Four vectors spanning ``h = 0``, the first two spanning ``L``."""
    hv = Matrix([[_rat(c) for c in h]])
    basis = [[_rat(c) for c in L.a], [_rat(c) for c in L.b]]
    for vec in hv.nullspace():
        cand = basis + [list(vec)]
        if Matrix(cand).rank() == len(cand):
            basis = cand
        if len(basis) == 4:
            break
    return basis


def tangent_hyperplane_along_line(F: HomogPoly, h: Sequence, L: ProjLine, nodes_on_line: int | None = None) -> bool:
    """Is the hyperplane ``sum h_i x_i = 0`` tangent to ``F = 0`` along ``L``?

    Restrict ``F`` to the hyperplane; tangency means the restricted surface
    is singular along ``L``, i.e. all its partials vanish on ``L``.  When
    the number of nodes on ``L`` is supplied, a tangent hyperplane on a line
    without three nodes is reported as an inconsistency.
    """
    hv = [_rat(c) for c in h]
    if all(c == 0 for c in hv):
        raise QuarticError("zero hyperplane")
    for q in (L.a, L.b):
        if sum(c * _rat(x) for c, x in zip(hv, q)) != 0:
            raise QuarticError("line not contained in the hyperplane")
    if not line_contained(F, L):
        raise QuarticError("line not on X")
    basis = _hyperplane_basis(hv, L)
    s = sympy.symbols("s0:4")
    images = [sum(b[i] * s[j] for j, b in enumerate(basis)) for i in range(F.nvars)]
    G = F.substitute(images, s)
    on_line = {s[2]: 0, s[3]: 0}
    tangent = all(sympy.expand(G.diff(v).as_expr().subs(on_line)) == 0 for v in s)
    if tangent and nodes_on_line is not None and nodes_on_line != 3:
        raise QuarticError(f"tangent hyperplane along a line with {nodes_on_line} nodes")
    return tangent


def plane_in_hyperplane(h: Sequence, L: ProjLine, extra: Sequence) -> list[ProjPoint]:
    """The plane spanned by ``L`` and ``extra``, projected into the hyperplane if needed."""
    basis = _hyperplane_basis(h, L)
    c = [sum(_rat(e) * b[i] for e, b in zip(extra, basis[2:])) for i in range(len(basis[0]))]
    return [L.a, L.b, ProjPoint(tuple(_frac(x) for x in c))]


# --------------------------------------------------------------------------
# Eckardt normal form

@dataclass(frozen=True)
class EckardtResult:
    is_eckardt: bool
    q2: Poly | None = None
    q4: Poly | None = None
    linear_form: Poly | None = None
    matrix: tuple[tuple[Fraction, ...], ...] | None = None

    def to_json(self) -> dict:
        doc: dict = {"is_eckardt": self.is_eckardt}
        if self.matrix is not None:
            doc["matrix"] = [[str(x) for x in row] for row in self.matrix]
        if self.is_eckardt:
            doc["q2"] = str(self.q2.as_expr())
            doc["q4"] = str(self.q4.as_expr())
            doc["l"] = str(self.linear_form.as_expr())
        return doc


def _move_to_last(p: ProjPoint) -> Matrix:
    """An invertible matrix whose last column is ``p``."""
    n = len(p)
    i = next(k for k, c in enumerate(p.coords) if c != 0)
    cols = [[Rational(int(r == k)) for r in range(n)] for k in range(n) if k != i]
    cols.append([_rat(c) for c in p.coords])
    return Matrix(cols).T


def eckardt_normal_form(F: HomogPoly, p: ProjPoint) -> EckardtResult:
    """Decide whether the node ``p`` is an Eckardt point.

    With ``p`` moved to ``(0:...:0:1)`` the equation reads
    ``w^2 q2 + w q3 + q4``.  ``p`` is Eckardt exactly when ``q3 = q2 * l``
    for a linear form ``l``; then ``w -> w - l/2`` removes the ``w``-linear
    term and the equation becomes ``w^2 q2 + (q4 - q2 l^2 / 4)``.  The
    returned matrix ``T`` satisfies ``F(T y) = w^2 q2 + q4`` in the new
    coordinates ``y``.
    """
    if not is_node(F, p):
        raise QuarticError("point is not a node")
    n = F.nvars
    ys = sympy.symbols(f"y0:{n}")
    A = _move_to_last(p)
    G = F.substitute(list(A * Matrix(ys)), ys)
    w, rest = ys[-1], ys[:-1]
    by_w = {k: Poly(G.as_expr().coeff(w, k) if k else G.as_expr().subs(w, 0), *rest, domain=QQ) for k in range(5)}
    if not (by_w[4].is_zero and by_w[3].is_zero):
        raise AssertionError("singular point with nonzero w^4 or w^3 term")
    q2, q3, q4 = by_w[2], by_w[1], by_w[0]
    ls = sympy.symbols(f"l0:{n - 1}")
    l_expr = sum(c * v for c, v in zip(ls, rest))
    residual = Poly(sympy.expand(q3.as_expr() - q2.as_expr() * l_expr), *rest)
    sol = sympy.solve(residual.coeffs(), ls, dict=True)
    if not sol:
        return EckardtResult(False, matrix=_fracs(A))
    values = {v: sol[0].get(v, 0) for v in ls}
    l_poly = Poly(l_expr.subs(values), *rest, domain=QQ)
    B = sympy.eye(n)
    for j, v in enumerate(rest):
        B[n - 1, j] = -l_poly.coeff_monomial(v) / 2
    T = A * B
    q4_new = Poly(sympy.expand(q4.as_expr() - q2.as_expr() * l_poly.as_expr() ** 2 / 4), *rest, domain=QQ)
    check = F.substitute(list(T * Matrix(ys)), ys)
    if sympy.expand(check.as_expr() - (w**2 * q2.as_expr() + q4_new.as_expr())) != 0:
        raise AssertionError("normal form does not reproduce the equation")
    return EckardtResult(True, q2, q4_new, l_poly, _fracs(T))


def _fracs(M: Matrix) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(_frac(M[i, j]) for j in range(M.cols)) for i in range(M.rows))


# --------------------------------------------------------------------------
# incidence against an equation

@dataclass
class IncidenceReport:
    checks: list[dict] = field(default_factory=list)

    def add(self, ident: str, check: str, ok: bool, detail: str | None = None) -> None:
        self.checks.append({"id": ident, "check": check, "ok": bool(ok), "detail": detail})

    @property
    def mismatches(self) -> list[dict]:
        return [c for c in self.checks if not c["ok"]]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "mismatches": self.mismatches}


def parse_coordinates(config: QuarticIncidence, doc: Mapping) -> dict[str, ProjPoint | ProjLine]:
    out: dict = {}
    try:
        for ident in config.point_ids:
            out[ident] = ProjPoint(tuple(Fraction(c) for c in doc[ident]))
        for ident in config.line_ids:
            a, b = doc[ident]
            out[ident] = ProjLine(ProjPoint(tuple(Fraction(c) for c in a)), ProjPoint(tuple(Fraction(c) for c in b)))
    except KeyError as exc:
        raise QuarticError(f"no coordinates for {exc.args[0]}") from exc
    except (TypeError, ValueError) as exc:
        raise QuarticError(f"malformed coordinates: {exc}") from exc
    return out


def verify_incidence(F: HomogPoly, config: QuarticIncidence, coords: Mapping[str, ProjPoint | ProjLine]) -> IncidenceReport:
    """Check every supplied point and line against the equation, one fact per entry.

    Global statements (no further singular points) are not checked.
    """
    report = IncidenceReport()
    eckardt_found: dict[str, bool] = {}
    for pt in config.points:
        p = coords[pt.id]
        if F(p) != 0:
            report.add(pt.id, "on X", False)
            continue
        if not is_singular(F, p):
            report.add(pt.id, "singular", False)
            continue
        node = is_node(F, p)
        report.add(pt.id, "node", node, None if node else "local quadratic part is degenerate")
        if not node:
            continue
        found = eckardt_normal_form(F, p).is_eckardt
        eckardt_found[pt.id] = found
        report.add(pt.id, "eckardt flag", found == pt.eckardt, f"computed {found}, flagged {pt.eckardt}")
    for ln in config.lines:
        L = coords[ln.id]
        report.add(ln.id, "contained in X", line_contained(F, L))
        for pt in config.points:
            on = L.contains_point(coords[pt.id])
            listed = pt.id in ln.points
            if on != listed:
                report.add(ln.id, f"incidence with {pt.id}", False, f"on line {on}, listed {listed}")
        through = [q for q in ln.points if eckardt_found.get(q)]
        if through:
            # every line of the cone at an Eckardt point meets this line
            report.add(ln.id, "eckardt flag", ln.eckardt, f"passes through eckardt point {through[0]}")
        elif ln.eckardt:
            # lines met at smooth points are not enumerated, so the flag is taken on trust
            report.add(ln.id, "eckardt flag", True, "asserted, not verified")
    return report
