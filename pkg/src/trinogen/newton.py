"""phi-Newton polygons, residual polynomials and regularity.

Slopes are exact fractions.  Points whose coefficient vanishes are left out
of the point set; collinear points are absorbed into a single side.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .arith import INF, vp
from .gfpoly import ExtensionField, Poly, extension_field, factor as gf_factor, gfpoly
from .intpoly import (
    IntPoly,
    LiftingError,
    PhiDevelopment,
    ReducibleError,
    iter_liftings,
    lift,
    perturbed_lifts,
    phi_adic_development,
    truncated_development,
)

#: above this degree developments are computed modulo a prime power
EXACT_DEGREE_LIMIT = 256
#: most lifts tried per residue factor before settling for a non-regular polygon
LIFT_BUDGET = 12


class NPPoint(NamedTuple):
    abscissa: int
    ordinate: int


@dataclass(frozen=True)
class Side:
    start: NPPoint
    end: NPPoint

    @property
    def length(self) -> int:
        return self.end.abscissa - self.start.abscissa

    @property
    def slope(self) -> Fraction:
        return Fraction(self.end.ordinate - self.start.ordinate, self.length)

    @property
    def e(self) -> int:
        return self.slope.denominator

    @property
    def h(self) -> int:
        return -self.slope.numerator

    @property
    def degree(self) -> int:
        return self.length // self.e

    def height_at(self, x: int) -> Fraction:
        return self.start.ordinate + self.slope * (x - self.start.abscissa)

    def lattice_points(self) -> list[NPPoint]:
        s, y = self.start
        return [NPPoint(s + k * self.e, y - k * self.h) for k in range(self.degree + 1)]


@dataclass(frozen=True)
class NewtonPolygon:
    sides: tuple[Side, ...]
    phi_degree: int = 1
    points: tuple[NPPoint, ...] = ()

    @property
    def total_length(self) -> int:
        return sum(s.length for s in self.sides)

    @property
    def vertices(self) -> list[NPPoint]:
        if not self.sides:
            return []
        return [self.sides[0].start] + [s.end for s in self.sides]

    def principal(self) -> "NewtonPolygon":
        return NewtonPolygon(
            tuple(s for s in self.sides if s.slope < 0), self.phi_degree, self.points
        )

    def height_at(self, x: int) -> Optional[Fraction]:
        for s in self.sides:
            if s.start.abscissa <= x <= s.end.abscissa:
                return s.height_at(x)
        return None

    def is_empty(self) -> bool:
        return not self.sides


def lower_hull(points: Sequence[tuple[int, int]]) -> list[NPPoint]:
    """Vertices of the lower convex hull, left to right, collinear points dropped."""
    lowest: dict[int, int] = {}
    for x, y in points:
        if x not in lowest or y < lowest[x]:
            lowest[x] = y
    pts = sorted(lowest.items())
    hull: list[tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2:
            (ox, oy), (ax, ay) = hull[-2], hull[-1]
            if (ax - ox) * (pt[1] - oy) - (ay - oy) * (pt[0] - ox) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    return [NPPoint(*pt) for pt in hull]


def polygon_from_points(points: Sequence[tuple[int, int | float]], phi_degree: int = 1) -> NewtonPolygon:
    finite = [(int(i), int(u)) for i, u in points if u != INF]
    if not finite:
        raise ValueError("no point with finite valuation")
    verts = lower_hull(finite)
    sides = tuple(Side(a, b) for a, b in zip(verts, verts[1:]))
    return NewtonPolygon(sides, phi_degree, tuple(NPPoint(*pt) for pt in sorted(finite)))


def term_valuation(t: IntPoly, p: int) -> int | float:
    if t.is_zero():
        return INF
    return min(vp(c, p) for c in t.coeffs if c)


def development_points(dev: PhiDevelopment, p: int) -> list[tuple[int, int | float]]:
    return [(i, term_valuation(t, p)) for i, t in enumerate(dev.terms)]


def build_polygon(dev: PhiDevelopment, p: int) -> NewtonPolygon:
    """Full phi-Newton polygon of a development; call ``.principal()`` for N+."""
    if not dev.terms:
        raise ValueError("empty development")
    return polygon_from_points(development_points(dev, p), dev.phi.degree)


def phi_index(N: NewtonPolygon) -> int:
    """deg(phi) times the lattice points (x, y), x, y >= 1, on or under the principal polygon."""
    P = N.principal()
    if P.is_empty():
        return 0
    count = 0
    for x in range(max(1, P.sides[0].start.abscissa), P.sides[-1].end.abscissa + 1):
        count += max(0, math.floor(P.height_at(x)))
    return N.phi_degree * count


def residue_field(phi: IntPoly, p: int) -> ExtensionField:
    return extension_field(p, tuple(c % p for c in phi.coeffs))


def _residue(term: IntPoly, u: int, p: int, F: ExtensionField) -> tuple:
    scale = p**u
    return F.reduce([(c // scale) % p for c in term.coeffs])


@dataclass(frozen=True)
class ResidualPoly:
    side: Side
    poly: Poly

    @property
    def degree(self) -> int:
        return self.poly.degree


def residual_polynomial(dev: PhiDevelopment, p: int, side: Side) -> ResidualPoly:
    F = residue_field(dev.phi, p)
    vals = {i: u for i, u in development_points(dev, p)}
    coeffs = []
    for pt in side.lattice_points():
        i = pt.abscissa
        u = vals.get(i, INF)
        if u == INF or u > pt.ordinate:
            coeffs.append(F.zero)
        elif u < pt.ordinate:
            raise ValueError(f"point ({i}, {u}) lies below the side {side}")
        else:
            coeffs.append(_residue(dev.terms[i], u, p, F))
    poly = Poly(F, tuple(coeffs))
    if poly.degree != side.degree or not coeffs[0]:
        raise ValueError("side is not a side of this development's polygon")
    return ResidualPoly(side, poly)


def check_admissible(dev: PhiDevelopment, p: int) -> tuple[bool, NewtonPolygon]:
    """Admissibility of a (not necessarily adic) development.

    True iff phi mod p divides none of the unit-scaled vertex coefficients of
    the principal polygon; then that polygon is the phi-adic one.
    """
    N = build_polygon(dev, p).principal()
    F = residue_field(dev.phi, p)
    ok = True
    for v in N.vertices:
        t = dev.terms[v.abscissa]
        if not _residue(t, v.ordinate, p, F):
            ok = False
            break
    dev.admissible = ok
    return ok, N


# -- per-factor analysis -------------------------------------------------------


@dataclass
class SideAnalysis:
    side: Side
    residual: ResidualPoly
    factors: list[tuple[Poly, int]]

    @property
    def separable(self) -> bool:
        return all(mult == 1 for _, mult in self.factors)


@dataclass
class FactorAnalysis:
    """Polygon data of F for one irreducible factor ``g`` of F mod p."""

    g: Poly
    multiplicity: int
    phi: IntPoly
    polygon: Optional[NewtonPolygon]
    sides: list[SideAnalysis] = field(default_factory=list)
    lemtech: bool = False
    truncated: bool = False

    @property
    def index(self) -> int:
        return phi_index(self.polygon) if self.polygon is not None else 0

    @property
    def regular(self) -> bool:
        return all(s.separable for s in self.sides)

    def shape(self) -> list[tuple[int, int]]:
        d = self.g.degree
        if self.polygon is None:
            return [(1, d)]
        return [(s.side.e, d * psi.degree) for s in self.sides for psi, _ in s.factors]


def principal_development(F: IntPoly, phi: IntPoly, p: int, length: int) -> tuple[PhiDevelopment, bool]:
    """The first ``length + 1`` phi-adic coefficients of F, enough for N+.

    Small inputs are developed exactly.  Otherwise the constant coefficient is
    computed exactly and the rest modulo ``p^(u0+1)``: every coefficient that
    vanishes at that precision sits strictly above the principal polygon.
    """
    if F.degree <= EXACT_DEGREE_LIMIT:
        dev = phi_adic_development(F, phi)
        return PhiDevelopment(phi, dev.terms[: length + 1]), False
    a0 = F.divmod_monic(phi)[1]
    u0 = term_valuation(a0, p)
    if u0 == INF:
        raise ReducibleError(f"{phi} divides F", phi)
    terms = truncated_development(F, phi, length + 1, p ** (u0 + 1))
    terms[0] = a0
    return PhiDevelopment(phi, terms), True


def _analyze_with_phi(F: IntPoly, p: int, g: Poly, l: int, phi: IntPoly) -> FactorAnalysis:
    dev, truncated = principal_development(F, phi, p, l)
    if dev.terms[0].is_zero():
        raise ReducibleError(f"{phi} divides F", phi)
    N = build_polygon(dev, p).principal()
    if N.total_length != l:
        raise AssertionError(f"principal length {N.total_length} != multiplicity {l}")
    sides = []
    for side in N.sides:
        res = residual_polynomial(dev, p, side)
        sides.append(SideAnalysis(side, res, gf_factor(res.poly)))
    return FactorAnalysis(g, l, phi, N, sides, truncated=truncated)


def candidate_lifts(g: Poly, S: Optional[IntPoly], budget: int = LIFT_BUDGET) -> list[tuple[IntPoly, bool]]:
    """Lifts of ``g`` to try, each flagged with whether it satisfies the lifting lemma for S.

    Order: the plain lift, then lemma-conforming lifts, then the other
    perturbations ``lift(g) + p*w``; at most ``budget`` in all.
    """
    good: list[IntPoly] = []
    if S is not None:
        try:
            good = [phi for phi, _, _ in itertools.islice(iter_liftings(g, S, g.p), budget)]
        except LiftingError:
            good = []
    good_set = set(good)
    base = lift(g)
    ordered = [(base, base in good_set)]
    ordered += [(phi, True) for phi in good if phi != base]
    rest = (phi for phi in perturbed_lifts(g) if phi != base and phi not in good_set)
    ordered += [(phi, False) for phi in itertools.islice(rest, max(0, budget - len(ordered)))]
    return ordered[:budget]


def analyze_factor(F: IntPoly, p: int, g: Poly, l: int, S: Optional[IntPoly] = None) -> FactorAnalysis:
    """Polygon analysis for the factor ``g^l`` of F mod p.

    Tries candidate lifts until one makes F phi-regular; if none does, the
    analysis for the first candidate is returned.
    """
    # a simple factor is a prime of degree deg g; F mod p = g needs no polygon at all
    if l == 1 and (F.degree > EXACT_DEGREE_LIMIT or g.degree == F.degree):
        return FactorAnalysis(g, 1, lift(g), None, lemtech=True)
    first = None
    for phi, conforming in candidate_lifts(g, S):
        fa = _analyze_with_phi(F, p, g, l, phi)
        fa.lemtech = conforming
        if fa.regular:
            return fa
        if first is None:
            first = fa
    assert first is not None
    return first


def separable_companion(F: IntPoly, p: int, factors: list[tuple[Poly, int]]) -> IntPoly:
    """F itself when F mod p is squarefree, otherwise the lift of its radical."""
    if all(mult == 1 for _, mult in factors):
        return F
    rad = gfpoly(p, [1])
    for g, _ in factors:
        rad = rad * g
    return lift(rad)


def is_p_regular(F: IntPoly, p: int) -> tuple[bool, list[FactorAnalysis]]:
    Fbar = F.mod_p(p)
    if Fbar.is_zero():
        raise ValueError(f"F vanishes mod {p}")
    factors = gf_factor(Fbar)
    S = separable_companion(F, p, factors)
    report = [analyze_factor(F, p, g, l, S) for g, l in factors]
    return all(fa.regular for fa in report), report
