"""Per-prime analysis: polygons for every factor of F mod p, index bound, splitting shape."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .arith import require_prime
from .gfpoly import Poly, factor as gf_factor, gcd as gf_gcd, gfpoly
from .intpoly import IntPoly, lift
from .newton import FactorAnalysis, analyze_factor, separable_companion


@dataclass(frozen=True)
class FactorizationShape:
    """Multiset of (ramification index, residue degree) pairs, kept sorted."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        ents = tuple(sorted((int(e), int(f)) for e, f in self.entries))
        if any(e < 1 or f < 1 for e, f in ents):
            raise ValueError("ramification indices and residue degrees are positive")
        object.__setattr__(self, "entries", ents)

    @property
    def total_degree(self) -> int:
        return sum(e * f for e, f in self.entries)

    def count_degree(self, d: int) -> int:
        return sum(1 for _, f in self.entries if f == d)

    def as_lists(self) -> list[list[int]]:
        return [[e, f] for e, f in self.entries]

    def __str__(self) -> str:
        return " * ".join(f"P(e={e},f={f})" for e, f in self.entries)


@dataclass
class OreReport:
    F: IntPoly
    p: int
    factors: list[FactorAnalysis]

    @property
    def index_lower_bound(self) -> int:
        return sum(fa.index for fa in self.factors)

    @property
    def regular(self) -> bool:
        return all(fa.regular for fa in self.factors)

    @property
    def shape(self) -> Optional[FactorizationShape]:
        if not self.regular:
            return None
        return FactorizationShape(tuple(ef for fa in self.factors for ef in fa.shape()))

    @property
    def partial_shape(self) -> FactorizationShape:
        """Primes lying over the regular factors only.

        Each factor of F mod p is handled locally, so the primes above a
        regular factor are exact even when another factor is not regular.
        Counts taken from this shape are lower bounds for the true counts.
        """
        return FactorizationShape(tuple(ef for fa in self.factors if fa.regular for ef in fa.shape()))

    def to_dict(self) -> dict:
        shape = self.shape
        return {
            "schema": 1,
            "polynomial": [str(c) for c in self.F.coeffs],
            "prime": self.p,
            "factors": [_factor_dict(fa) for fa in self.factors],
            "index_lower_bound": self.index_lower_bound,
            "regular": self.regular,
            "shape": shape.as_lists() if shape is not None else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def _factor_dict(fa: FactorAnalysis) -> dict:
    out = {
        "residue_factor": list(fa.g.coeffs),
        "multiplicity": fa.multiplicity,
        "phi": [str(c) for c in fa.phi.coeffs],
        "lifting_lemma": fa.lemtech,
        "index": fa.index,
        "regular": fa.regular,
        "polygon": None,
    }
    if fa.polygon is not None:
        out["polygon"] = {
            "vertices": [list(v) for v in fa.polygon.vertices],
            "sides": [
                {
                    "start": list(s.side.start),
                    "end": list(s.side.end),
                    "slope": str(s.side.slope),
                    "e": s.side.e,
                    "h": s.side.h,
                    "degree": s.side.degree,
                    "residual": str(s.residual.poly),
                    "residual_factors": [[str(g), k] for g, k in s.factors],
                }
                for s in fa.sides
            ],
        }
    return out


def analyze_prime(F: IntPoly, p: int) -> OreReport:
    """Factor F mod p, build every phi-polygon, and collect index bound and shape."""
    require_prime(p)
    if not F.is_monic():
        raise ValueError("F must be monic")
    Fbar = F.mod_p(p)
    factors = gf_factor(Fbar)
    S = separable_companion(F, p, factors)
    return OreReport(F, p, [analyze_factor(F, p, g, l, S) for g, l in factors])


def dedekind_index_test(F: IntPoly, p: int) -> bool:
    """Dedekind's criterion: True iff p divides the index of Z[theta]."""
    require_prime(p)
    if not F.is_monic():
        raise ValueError("F must be monic")
    factors = gf_factor(F.mod_p(p))
    one = gfpoly(p, [1])
    rad, cof = one, one
    for g, e in factors:
        rad = rad * g
        cof = cof * g ** (e - 1)
    G = lift(rad) * lift(cof)
    Z = (G - F).exact_div(p).mod_p(p)
    common = gf_gcd(gf_gcd(rad, cof), Z) if not Z.is_zero() else gf_gcd(rad, cof)
    return common.degree > 0
