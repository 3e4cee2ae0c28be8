"""Chord-tangent group law on nonsingular plane cubics over exact fields.

Points are normalized homogeneous triples (first nonzero coordinate 1).  The
group law never leaves projective coordinates, so no chart juggling is needed:
the third point on the line through ``a`` and ``b`` is read off from the
binary cubic obtained by restricting the equation to that line.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Mapping, Sequence

import sympy

from .dynamics import Generator, Line, PairPoint, Point
from .incidence import QuarticIncidence, require_valid
from .words import ClusterElement, letter_element

DEFAULT_PRIME = 1_000_000_007

Vec = tuple
MONOMIALS = [m for m in ((i, j, 3 - i - j) for i in range(4) for j in range(4 - i))]
_QUAD = list(combinations_with_replacement(range(3), 2))


class CurveError(ValueError):
    pass


# --------------------------------------------------------------------------
# fields

class PrimeField:
    """Integers modulo a prime ``p > 3``."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if p <= 3 or not sympy.isprime(p):
            raise ValueError(f"need a prime larger than 3, got {p}")
        self.p = p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    @property
    def name(self) -> str:
        return str(self.p)

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def reduce(self, x) -> int:
        return x % self.p

    def div(self, a, b) -> int:
        if b % self.p == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return a * pow(b, -1, self.p) % self.p

    def is_zero(self, x) -> bool:
        return x % self.p == 0

    def sqrt(self, x) -> int | None:
        x %= self.p
        if x == 0:
            return 0
        if self.p % 4 == 3:
            r = pow(x, (self.p + 1) // 4, self.p)
        else:
            roots = sympy.ntheory.residue_ntheory.sqrt_mod(x, self.p, all_roots=False)
            if roots is None:
                return None
            r = int(roots)
        return r if r * r % self.p == x else None

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def to_str(self, x) -> str:
        return str(x % self.p)


class RationalField:
    """The rationals, with exact ``Fraction`` elements."""

    name = "Q"

    def __repr__(self) -> str:
        return "RationalField()"

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def reduce(self, x) -> Fraction:
        return x

    def div(self, a, b) -> Fraction:
        return Fraction(a) / b

    def is_zero(self, x) -> bool:
        return x == 0

    def sqrt(self, x) -> Fraction | None:
        x = Fraction(x)
        if x < 0:
            return None
        n, d = sympy.integer_nthroot(x.numerator, 2), sympy.integer_nthroot(x.denominator, 2)
        if n[1] and d[1]:
            return Fraction(int(n[0]), int(d[0]))
        return None

    def random(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-9, 9))

    def to_str(self, x) -> str:
        return str(Fraction(x))


def make_field(choice: str | int | None):
    if choice in (None, "p"):
        return PrimeField()
    if choice in ("Q", "q"):
        return RationalField()
    return PrimeField(int(choice))


# --------------------------------------------------------------------------
# curves

def _cross(a: Sequence, b: Sequence) -> tuple:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


class PlaneCubic:
    """A nonsingular plane cubic with a designated inflection point as zero.

    ``coeffs`` maps exponent triples ``(i, j, k)`` of ``x^i y^j z^k`` to
    field elements.  Construction checks nonsingularity (unless
    ``assume_smooth``) and that the zero is a flex.
    """

    def __init__(self, field, coeffs: Mapping[tuple[int, int, int], object], zero: Sequence,
                 known_points: Iterable[Sequence] = (), assume_smooth: bool = False):
        self.field = field
        self.coeffs = {tuple(m): field(c) for m, c in coeffs.items() if not field.is_zero(field(c))}
        if any(sum(m) != 3 for m in self.coeffs):
            raise CurveError("coefficients must be of total degree 3")
        # partial derivatives as coefficient lists over x_i x_j, i <= j
        self._grad = []
        for k in range(3):
            row = []
            for i, j in _QUAD:
                e = [0, 0, 0]
                e[i] += 1
                e[j] += 1
                e[k] += 1
                row.append(self.coeffs.get(tuple(e), 0) * e[k])
            self._grad.append(row)
        if not assume_smooth and self.is_singular():
            raise CurveError("curve is singular")
        self.zero = self.normalize(zero)
        if not self.contains(self.zero):
            raise CurveError("zero is not on the curve")
        if not self.is_flex(self.zero):
            raise CurveError("zero is not an inflection point")
        self.known_points = [self.normalize(q) for q in known_points]
        for q in self.known_points:
            if not self.contains(q):
                raise CurveError(f"{q} is not on the curve")

    # evaluation ----------------------------------------------------------
    def normalize(self, v: Sequence) -> Vec:
        F = self.field
        v = [F(x) for x in v]
        for x in v:
            if not F.is_zero(x):
                inv = F.div(1, x)
                return tuple(F.reduce(y * inv) for y in v)
        raise CurveError("zero vector is not a projective point")

    def value(self, v: Sequence):
        total = 0
        for (i, j, k), c in self.coeffs.items():
            total += c * v[0] ** i * v[1] ** j * v[2] ** k
        return self.field.reduce(total)

    def gradient(self, v: Sequence) -> tuple:
        x, y, z = v
        q0, q1, q2, q3, q4, q5 = x * x, x * y, x * z, y * y, y * z, z * z
        red = self.field.reduce
        return tuple(
            red(r0 * q0 + r1 * q1 + r2 * q2 + r3 * q3 + r4 * q4 + r5 * q5)
            for r0, r1, r2, r3, r4, r5 in self._grad
        )

    def _dot(self, g, v):
        return self.field.reduce(g[0] * v[0] + g[1] * v[1] + g[2] * v[2])

    def contains(self, v: Sequence) -> bool:
        return self.field.is_zero(self.value(v))

    def is_flex(self, v: Sequence) -> bool:
        g = self.gradient(v)
        if all(self.field.is_zero(x) for x in g):
            return False
        return self.third_intersection(v, v) == self.normalize(v)

    def is_singular(self) -> bool:
        """Do the three partials have a common zero over the algebraic closure?"""
        x, y, z = sympy.symbols("x y z")
        f = sympy.Integer(0)
        for (i, j, k), c in self.coeffs.items():
            cc = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
            f += cc * x**i * y**j * z**k
        parts = [sympy.diff(f, s) for s in (x, y, z)]
        opts = {} if isinstance(self.field, RationalField) else {"modulus": self.field.p}
        # charts z = 1, then z = 0 and y = 1, then the single point (1:0:0)
        for sub, gens in (({z: 1}, (x, y)), ({z: 0, y: 1}, (x,))):
            eqs = [sympy.expand(q.subs(sub)) for q in parts]
            eqs = [q for q in eqs if q != 0]
            if not eqs:
                return True
            basis = sympy.groebner(eqs, *gens, order="grevlex", **opts)
            if list(basis.exprs) != [1]:
                return True
        return all(self.field.is_zero(c) for c in self.gradient((1, 0, 0)))

    # group law -----------------------------------------------------------
    def third_intersection(self, a: Sequence, b: Sequence) -> Vec:
        """Third point of the curve on the line through ``a`` and ``b`` (the tangent if equal)."""
        F = self.field
        if any(not F.is_zero(c) for c in _cross(a, b)):
            c21 = self._dot(self.gradient(a), b)
            c12 = self._dot(self.gradient(b), a)
            if F.is_zero(c21) and F.is_zero(c12):
                raise CurveError("line lies on the curve")
            return self.normalize([F.reduce(c12 * p - c21 * q) for p, q in zip(a, b)])
        tangent = self.gradient(a)
        for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
            d = tuple(F.reduce(x) for x in _cross(tangent, e))
            if any(not F.is_zero(c) for c in _cross(a, d)):
                break
        c = self._dot(self.gradient(d), a)
        fd = self.value(d)
        return self.normalize([F.reduce(-fd * p + c * q) for p, q in zip(a, d)])

    def neg(self, a: Sequence) -> Vec:
        return self.third_intersection(a, self.zero)

    def add(self, a: Sequence, b: Sequence) -> Vec:
        return self.neg(self.third_intersection(a, b))

    def mul(self, n: int, a: Sequence) -> Vec:
        if n < 0:
            return self.mul(-n, self.neg(a))
        acc, base = self.zero, self.normalize(a)
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc

    def reflection(self, p: Sequence, x: Sequence) -> Vec:
        """``x -> 2p - x``."""
        return self.add(p, self.add(p, self.neg(x)))

    def galois(self, p: Sequence, x: Sequence) -> Vec:
        """The involution ``x -> -(p + x)`` of projection from ``p``."""
        return self.neg(self.add(p, x))

    # sampling ------------------------------------------------------------
    def random_point(self, rng: random.Random, tries: int = 200) -> Vec:
        F = self.field
        if isinstance(F, PrimeField):
            g0 = self.gradient(self.zero)
            for _ in range(tries):
                d = tuple(F.random(rng) for _ in range(3))
                c1 = F.reduce(sum(g * q for g, q in zip(g0, d)))
                if F.is_zero(c1):
                    continue
                c2 = F.reduce(sum(g * q for g, q in zip(self.gradient(d), self.zero)))
                c3 = self.value(d)
                r = F.sqrt(F.reduce(c2 * c2 - 4 * c1 * c3))
                if r is None:
                    continue
                r = r if rng.random() < 0.5 else -r
                s = F.div(F.reduce(-c2 + r), F.reduce(2 * c1))
                return self.normalize([s * o + q for o, q in zip(self.zero, d)])
            raise CurveError("failed to sample a point")
        if not self.known_points:
            raise CurveError("no known points to sample from over Q")
        acc = self.zero
        for q in self.known_points:
            acc = self.add(acc, self.mul(rng.randint(-2, 2), q))
        return acc


def _poly_mul(a: dict, b: dict, F) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = F.reduce(out.get(m, 0) + ca * cb)
    return out


def _inverse3(A, F):
    det = F.reduce(
        A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
        - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
        + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0])
    )
    if F.is_zero(det):
        return None
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            minor = A[r[0]][c[0]] * A[r[1]][c[1]] - A[r[0]][c[1]] * A[r[1]][c[0]]
            cof[j][i] = F.div(F.reduce((-1) ** (i + j) * minor), det)
    return cof


def weierstrass_transform(field, a, b, matrix, known: Sequence = ()) -> PlaneCubic:
    """``y^2 z = x^3 + a x z^2 + b z^3`` pulled back along ``matrix``.

    Nonsingularity follows from ``4a^3 + 27b^2 != 0`` and invertibility of
    ``matrix``, so the Groebner check is skipped.
    """
    F = field
    a, b = F(a), F(b)
    if F.is_zero(F.reduce(4 * a**3 + 27 * b**2)):
        raise CurveError("singular Weierstrass cubic")
    A = [[F(x) for x in row] for row in matrix]
    inv = _inverse3(A, F)
    if inv is None:
        raise CurveError("matrix is not invertible")
    lin = [{(1, 0, 0): A[i][0], (0, 1, 0): A[i][1], (0, 0, 1): A[i][2]} for i in range(3)]
    X, Y, Z = lin
    terms = [
        (1, _poly_mul(_poly_mul(Y, Y, F), Z, F)),
        (-1, _poly_mul(_poly_mul(X, X, F), X, F)),
        (-a, _poly_mul(_poly_mul(X, Z, F), Z, F)),
        (-b, _poly_mul(_poly_mul(Z, Z, F), Z, F)),
    ]
    coeffs: dict = {}
    for s, poly in terms:
        for m, c in poly.items():
            coeffs[m] = F.reduce(coeffs.get(m, 0) + s * c)

    def pull(v):
        return [F.reduce(sum(inv[i][j] * v[j] for j in range(3))) for i in range(3)]

    return PlaneCubic(F, coeffs, pull((0, 1, 0)), [pull(q) for q in known], assume_smooth=True)


def sample_curve(field, rng: random.Random) -> PlaneCubic:
    """A random member of the built-in family, with one known point."""
    F = field
    while True:
        if isinstance(F, PrimeField):
            a, x0, y0 = F.random(rng), F.random(rng), F.random(rng)
        else:
            a, x0, y0 = (Fraction(rng.randint(-5, 5)) for _ in range(3))
        b = F.reduce(y0 * y0 - x0**3 - a * x0)
        if F.is_zero(F.reduce(4 * a**3 + 27 * b**2)):
            continue
        matrix = [[F.random(rng) for _ in range(3)] for _ in range(3)]
        if _inverse3(matrix, F) is None:
            continue
        return weierstrass_transform(F, a, b, matrix, known=[(x0, y0, 1)])


# --------------------------------------------------------------------------
# clusters on a curve

class FiberModel:
    """Sections of one cluster realized as points of a concrete cubic."""

    def __init__(self, curve: PlaneCubic, config: QuarticIncidence, line: str, sections: Sequence[Vec]):
        self.curve = curve
        self.config = config
        self.line = line
        pts = config.line(line).points
        self.sections = dict(zip(pts, sections))
        self._centers: dict = {}
        if len(pts) == 3:
            # the residual points of a 3-node line are collinear: E1 + E2 + E3 = 0
            e1, e2 = sections[0], sections[1]
            self.sections[pts[2]] = curve.neg(curve.add(e1, e2))

    @classmethod
    def sample(cls, curve, config, line, rng):
        n = min(len(config.line(line).points), 2)
        return cls(curve, config, line, [curve.random_point(rng) for _ in range(n)])

    def center(self, g: Generator) -> Vec:
        """The section ``c`` with ``g`` acting as ``x -> -c - x``, i.e. as projection from ``c``."""
        if g in self._centers:
            return self._centers[g]
        C = self.curve
        pts = self.config.line(self.line).points
        if isinstance(g, Point):
            c = self.sections[g.point]
        elif isinstance(g, Line) and len(pts) == 1:
            c = C.neg(C.mul(2, self.sections[pts[0]]))
        elif isinstance(g, Line):
            c = C.neg(C.add(self.sections[pts[0]], self.sections[pts[1]]))
        elif isinstance(g, PairPoint):
            c = C.mul(2, C.add(self.sections[g.p1], self.sections[g.p2]))
        else:
            raise TypeError(f"no fiber action for {g}")
        self._centers[g] = c
        return c

    def letter_map(self, g: Generator) -> Callable[[Vec], Vec]:
        c = self.center(g)
        return lambda x: self.curve.third_intersection(c, x)

    def evaluate(self, word: Sequence[Generator], x: Vec) -> Vec:
        # the word acts as the composite g1 o g2 o ... o gk
        for g in reversed(word):
            x = self.curve.third_intersection(self.center(g), x)
        return x

    def realize(self, element: ClusterElement, x: Vec) -> Vec:
        """``x -> parity * x + translation``, translation read over the section symbols."""
        C = self.curve
        pts = self.config.line(self.line).points
        acc = x if element.parity == 1 else C.neg(x)
        for coef, p in zip(element.translation, pts):
            acc = C.add(acc, C.mul(coef, self.sections[p]))
        return acc


def cluster_relations(config: QuarticIncidence, line: str) -> dict[str, tuple[list, list]]:
    """Relations of the presentation living on one cluster, as pairs of words equal as maps."""
    ln = config.line(line)
    pts = ln.points
    rel: dict[str, tuple[list, list]] = {}
    if len(pts) == 3:
        a, b, c = (Point(p) for p in pts)
        rel["(tP1 tP2 tP3)^2 = id"] = ([a, b, c, a, b, c], [])
        # the line-type reflection in (E1 + E2)/2 coincides with tau_{P3}
        rel["reflection in E1+E2 = tP3"] = (["sum-reflection"], [c])
    elif len(pts) == 2 and not ln.eckardt:
        a, b, l = Point(pts[0]), Point(pts[1]), Line(line)
        rel["(tP1 tP2 tL)^2 = id"] = ([a, b, l, a, b, l], [])
        rel["tP1P2 = tP1 tL tP2"] = ([PairPoint(pts[0], pts[1], line)], [a, l, b])
    elif len(pts) == 1 and not ln.eckardt:
        rel["tL^2 = id"] = ([Line(line), Line(line)], [])
    for p in pts:
        if not config.point(p).eckardt:
            rel[f"t{p}^2 = id"] = ([Point(p), Point(p)], [])
    return rel


def _evaluate_side(model: FiberModel, side, x):
    if side == ["sum-reflection"]:
        pts = model.config.line(model.line).points
        s = model.curve.add(model.sections[pts[0]], model.sections[pts[1]])
        return model.curve.add(s, model.curve.neg(x))
    return model.evaluate(side, x)


CHUNK = 1000


def _verify_chunk(config: QuarticIncidence, line: str, count: int, seed: str, field) -> dict[str, int]:
    rng = random.Random(seed)
    rels = cluster_relations(config, line)
    fails = {name: 0 for name in rels}
    curve = sample_curve(field, rng)
    for _ in range(count):
        model = FiberModel.sample(curve, config, line, rng)
        x = curve.random_point(rng)
        for name, (lhs, rhs) in rels.items():
            if _evaluate_side(model, lhs, x) != _evaluate_side(model, rhs, x):
                fails[name] += 1
    return fails


def verify_relations(config: QuarticIncidence, samples: int, seed: int, field=None, jobs: int = 1) -> dict:
    """Check every cluster relation pointwise on randomly sampled fibres.

    Samples are drawn in fixed-size chunks, each on a fresh curve with its own
    seed derived from ``(seed, line, chunk)``, so the report does not depend
    on ``jobs``.
    """
    require_valid(config)
    field = field or PrimeField()
    tasks = []
    for ln in config.lines:
        for i, start in enumerate(range(0, samples, CHUNK)):
            tasks.append((config, ln.id, min(CHUNK, samples - start), f"{seed}:{ln.id}:{i}", field))
    if jobs > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_chunk, *zip(*tasks)))
    else:
        results = [_verify_chunk(*t) for t in tasks]
    report: dict = {}
    for (_, line, _, _, _), fails in zip(tasks, results):
        entry = report.setdefault(line, {name: {"samples": 0, "failures": 0} for name in fails})
        for name, n in fails.items():
            entry[name]["failures"] += n
    for ln in config.lines:
        for name in report.get(ln.id, {}):
            report[ln.id][name]["samples"] = samples
    return report


def model_agrees(model: FiberModel, word: Sequence[Generator], x: Vec) -> bool:
    """Does the (parity, translation) prediction match pointwise evaluation?"""
    acc = ClusterElement.one(min(len(model.config.line(model.line).points), 2))
    for g in word:
        acc = acc * letter_element(model.config, model.line, g)
    return model.realize(acc, x) == model.evaluate(word, x)
