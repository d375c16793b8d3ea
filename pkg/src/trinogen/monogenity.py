"""Non-monogenity certificates for fields defined by trinomials x^n + a x^m + b.

Two independent routes decide whether a prime p divides the common index
i(K): congruence-condition checkers (:func:`check_thm_dn1`,
:func:`check_thm_dn2`, :func:`check_thm_d6`) and the Newton-polygon engine
followed by :func:`common_index_divisor_test`.  :func:`certify` runs both on
every candidate prime and records whether they agree.
"""

from __future__ import annotations

import json
import logging
import math
import os
import re
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .arith import INF, count_monic_irreducible, is_prime, lifted_val, primes_below, unit_part, vp
from .gfpoly import binomial_factors, count_factors_deg, count_factors_deg_excluding
from .intpoly import ReducibleError, ScreenResult, Trinomial, discriminant_mod, irreducibility_screen
from .ore import FactorizationShape, OreReport, analyze_prime

log = logging.getLogger(__name__)

ENGSTROM_ENV = "TRINOGEN_ENGSTROM_PATH"


@dataclass(frozen=True)
class CheckConfig:
    #: largest residue degree scanned by the theorem checkers (default n // 2)
    d_limit: Optional[int] = None
    #: decide dn2 condition 3 with the literal N_p(d, u, b) count
    dn2_literal_count: bool = False


DEFAULT_CONFIG = CheckConfig()


# -- common index divisors -----------------------------------------------------


def common_index_divisor_test(
    shape: FactorizationShape, p: int, n: int, partial: bool = False
) -> tuple[bool, Optional[int]]:
    """First residue degree d with more primes above p than monic irreducibles of degree d.

    With ``partial=True`` the shape may cover only part of the degree; its
    counts are then lower bounds, which is all the test needs.
    """
    if shape.total_degree > n or (not partial and shape.total_degree != n):
        raise ValueError(f"shape covers degree {shape.total_degree}, expected {n}")
    for d in sorted({f for _, f in shape.entries}):
        if shape.count_degree(d) > count_monic_irreducible(p, d):
            return True, d
    return False, None


# -- theorem checkers ----------------------------------------------------------


@dataclass(frozen=True)
class Dn1Params:
    p: int
    s: int
    r: int
    mu: int | float
    nu: int | float


@dataclass(frozen=True)
class Dn2Params:
    p: int
    u: int
    k: int
    delta: int | float
    kappa: int | float


@dataclass(frozen=True)
class TheoremMatch:
    theorem: str
    condition: int
    d: int
    multiplier: int
    count: int
    budget: int
    params: object
    alt_count: Optional[int] = None

    @property
    def source(self) -> str:
        return f"{self.theorem}.{self.condition}"

    @property
    def claimed(self) -> int:
        """Number of primes of residue degree d the theorem's proof exhibits."""
        return self.multiplier * self.count


def split_power(n: int, p: int) -> tuple[int, int]:
    """``(s, r)`` with ``n = s * p**r`` and p not dividing s."""
    r = vp(n, p)
    return n // p**r, r


def _case(x, y, bound) -> tuple[int, int | float]:
    """Which of the four valuation cases applies, and its multiplier."""
    if x < min(y, bound):
        return 1, x
    if y < min(x, bound):
        return 2, y
    if x == y and x < bound:
        return 3, x
    return 4, bound


def _unit_residue(value_mod: int, val: int, p: int) -> int:
    return (value_mod // p**val) % p


def _scan(p: int, limit: int, multiplier: int, counter) -> Optional[tuple[int, int, int]]:
    for d in range(1, limit + 1):
        count = counter(d)
        if count and count_monic_irreducible(p, d) < multiplier * count:
            return d, count, count_monic_irreducible(p, d)
    return None


def _degree_limit(T: Trinomial, base_degree: int, config: CheckConfig) -> int:
    limit = T.n // 2 if config.d_limit is None else config.d_limit
    # no factor of x^s + t has degree above s
    return min(limit, base_degree)


def check_thm_dn1(T: Trinomial, p: int, config: CheckConfig = DEFAULT_CONFIG) -> Optional[TheoremMatch]:
    if p == 2 or not is_prime(p) or p >= T.n:
        return None
    if T.a % p or T.b % p == 0 or T.n % p:
        return None
    s, r = split_power(T.n, p)
    mu = vp(T.a, p)
    nu = lifted_val(T.b, p, r)
    params = Dn1Params(p, s, r, mu, nu)
    cond, mult = _case(mu, nu, r + 1)
    limit = _degree_limit(T, s, config)
    if cond == 3:
        M = p ** (nu + 1)
        num = _unit_residue((T.b + pow(-T.b, p**r, M)) % M, nu, p)
        c = num * pow(unit_part(T.a, p) % p, -1, p) % p
        counter = lambda d: count_factors_deg_excluding(p, d, s, T.b, T.m, c)
    else:
        counter = lambda d: count_factors_deg(p, d, s, T.b)
    hit = _scan(p, limit, mult, counter)
    if hit is None:
        return None
    d, count, budget = hit
    return TheoremMatch("dn1", cond, d, int(mult), count, budget, params)


def check_thm_dn2(T: Trinomial, p: int, config: CheckConfig = DEFAULT_CONFIG) -> Optional[TheoremMatch]:
    if p == 2 or not is_prime(p) or p >= T.n:
        return None
    if T.a % p == 0 or T.b % p or (T.n - T.m) % p:
        return None
    u, k = split_power(T.n - T.m, p)
    delta = vp(T.b, p)
    kappa = lifted_val(T.a, p, k)
    params = Dn2Params(p, u, k, delta, kappa)
    cond, mult = _case(delta, kappa, k + 1)
    if cond == 3:
        # kappa < delta here, so the roles of (delta, kappa) in _case are swapped
        pass
    limit = _degree_limit(T, u, config)
    alt = None
    if cond in (1, 2, 4):
        counter = lambda d: count_factors_deg(p, d, u, T.a)
    else:
        M = p ** (kappa + 1)
        den = _unit_residue((T.a + pow(-T.a, p**k, M)) % M, kappa, p)
        c = unit_part(T.b, p) * pow(den, -1, p) % p
        intended = lambda d: count_factors_deg_excluding(p, d, u, T.a, T.m, c)
        literal = lambda d: count_factors_deg_excluding(p, d, u, T.b, T.m, c)
        counter = literal if config.dn2_literal_count else intended
        other = intended if config.dn2_literal_count else literal
    hit = _scan(p, limit, mult, counter)
    if hit is None:
        return None
    d, count, budget = hit
    if cond == 3:
        alt_value = other(d)
        alt = alt_value if alt_value != count else None
    return TheoremMatch("dn2", cond, d, int(mult), count, budget, params, alt)


class D6Match(NamedTuple):
    family: str  # "three_family" | "two_family"
    p: int
    index_congruence: str
    d: int
    claimed: int


def check_thm_d6(T: Trinomial) -> list[D6Match]:
    if T.n != 6:
        raise ValueError("the sextic criterion needs n = 6")
    out = []
    if T.a % 9 == 0 and T.b % 9 == 8:
        out.append(D6Match("three_family", 3, "i(K) = 3 or 6 mod 9", 1, 4))
    if T.a % 8 == 0 and T.b % 8 == 7:
        out.append(D6Match("two_family", 2, "i(K) = 4 mod 8", 2, 2))
    return out


# -- corollary families ----------------------------------------------------------


class CorollaryHit(NamedTuple):
    corollary: str
    clause: int
    p: int = 3


_3_7, _3_8 = 3**7, 3**8

# (k test, r test, modulus for a, residues of a, modulus for b, residues of b)
_CORDN1 = {
    1: (lambda k: k >= 1, lambda r: r >= 2, 27, {9, 18}, 27, {26}),
    2: (lambda k: k >= 1, lambda r: r >= 3, 81, {27, 54}, 81, {80}),
    3: (lambda k: k >= 1, lambda r: r >= 2, 27, {0}, 27, {8, 17}),
    4: (lambda k: k >= 1, lambda r: r >= 3, 81, {0}, 81, {26, 53}),
    5: (lambda k: k >= 1, lambda r: r == 1, 9, {0}, 9, {8}),
    6: (lambda k: k >= 1, lambda r: r == 2, 27, {0}, 27, {26}),
    7: (lambda k: k == 1, lambda r: r >= 7, _3_8, {_3_7, 2 * _3_7}, _3_8, {1}),
    8: (lambda k: k == 1, lambda r: r >= 7, _3_8, {0}, _3_8, {1 + _3_7, 1 + 2 * _3_7}),
    9: (lambda k: k == 1, lambda r: r == 6, _3_7, {0}, _3_7, {1}),
    10: (lambda k: k == 2, lambda r: r >= 4, 243, {81, 162}, 243, {1}),
    11: (lambda k: k == 2, lambda r: r >= 4, 243, {0}, 243, {82, 163}),
    12: (lambda k: k == 2, lambda r: r == 3, 81, {0}, 81, {1}),
}

# (r test on the power of 2, k test on the power of 3, a modulus, a residues, b modulus, b residues)
_CORDN2 = {
    1: (lambda r: r == 0, lambda k: k >= 5, 243, {1, 242}, 243, {81, 162}),
    2: (lambda r: r == 0, lambda k: k >= 5, 243, {80, 82, 161, 163}, 243, {0}),
    3: (lambda r: r == 0, lambda k: k == 3, 81, {1, 80}, 81, {0}),
    4: (lambda r: r >= 1, lambda k: k >= 2, 27, {26}, 27, {9, 18}),
    5: (lambda r: r >= 1, lambda k: k >= 2, 27, {8, 17}, 27, {0}),
    6: (lambda r: r >= 1, lambda k: k == 1, 9, {8}, 9, {0}),
    7: (lambda r: r == 1, lambda k: k >= 7, _3_8, {1}, _3_8, {_3_7, 2 * _3_7}),
    8: (lambda r: r == 1, lambda k: k >= 7, _3_8, {1 + _3_7, 1 + 2 * _3_7}, _3_8, {0}),
    9: (lambda r: r == 1, lambda k: k == 6, _3_7, {1}, _3_7, {0}),
    10: (lambda r: r == 2, lambda k: k >= 5, 243, {1}, 243, {81, 162}),
    11: (lambda r: r == 2, lambda k: k >= 5, 243, {82, 163}, 243, {0}),
    12: (lambda r: r == 2, lambda k: k == 3, 243, {1}, 243, {0}),
}


def _two_three_split(x: int) -> Optional[tuple[int, int]]:
    e2, e3 = vp(x, 2), vp(x, 3)
    if 2**e2 * 3**e3 != x:
        return None
    return e2, e3


def _gcd_corollary(T: Trinomial, p: int) -> Optional[int]:
    if T.a % p == 0 or T.b % p or (T.n - T.m) % p or p >= T.n:
        return None
    u, k = split_power(T.n - T.m, p)
    delta = vp(T.b, p)
    if math.gcd(delta, T.m) != 1:
        return None
    kappa = lifted_val(T.a, p, k)
    cond, mult = _case(delta, kappa, k + 1)
    if cond == 3:
        M = p ** (kappa + 1)
        den = _unit_residue((T.a + pow(-T.a, p**k, M)) % M, kappa, p)
        c = unit_part(T.b, p) * pow(den, -1, p) % p
        count = count_factors_deg_excluding(p, 1, u, T.a, T.m, c)
    else:
        count = count_factors_deg(p, 1, u, T.a)
    return cond if p < 1 + mult * count else None


def match_corollary_families(T: Trinomial) -> list[CorollaryHit]:
    """Corollary clauses whose congruence and shape conditions T satisfies."""
    hits: list[CorollaryHit] = []
    split = _two_three_split(T.n)
    if split is not None:
        k, r = split
        for clause, (ktest, rtest, ma, ra, mb, rb) in _CORDN1.items():
            if ktest(k) and rtest(r) and T.a % ma in ra and T.b % mb in rb:
                hits.append(CorollaryHit("cordn1", clause))
    g = T.n - T.m
    split = _two_three_split(g)
    if split is not None and T.m % g == 0:
        r, k = split
        for clause, (rtest, ktest, ma, ra, mb, rb) in _CORDN2.items():
            if rtest(r) and ktest(k) and T.a % ma in ra and T.b % mb in rb:
                hits.append(CorollaryHit("cordn2", clause))
    for p in primes_below(T.n):
        if p == 2:
            continue
        s, r = split_power(T.n, p)
        if s == 1 and r >= p:
            M = p ** (p + 1)
            if T.a % M == 0 and T.b % p and pow(T.b, p - 1, M) == 1:
                hits.append(CorollaryHit("fcom", 1, p))
        clause = _gcd_corollary(T, p)
        if clause is not None:
            hits.append(CorollaryHit("gcd_dn2", clause, p))
    return hits


def _smallest_two_three(test2, test3) -> int:
    return min(2**i * 3**j for i in range(8) for j in range(12) if test2(i) and test3(j))


def sample_family(corollary: str, clause: int, count: int, rng, bound: int = 4 * 3**8) -> list[Trinomial]:
    """``count`` members of a corollary clause with |a|, |b| <= bound (not screened).

    The degree is the smallest one the clause allows; for cordn1 the middle
    exponent m is random, for cordn2 it is m = s (n - m) with small s.
    """
    if corollary == "cordn1":
        ktest, rtest, ma, ra, mb, rb = _CORDN1[clause]
        n = _smallest_two_three(ktest, rtest)
    elif corollary == "cordn2":
        rtest, ktest, ma, ra, mb, rb = _CORDN2[clause]
        g = _smallest_two_three(rtest, ktest)
    else:
        raise ValueError(f"unknown corollary {corollary!r}")

    def draw(mod, residues, nonzero):
        while True:
            lo, hi = -((bound + mod) // mod), bound // mod
            v = rng.choice(sorted(residues)) + mod * rng.randint(lo, hi)
            if abs(v) <= bound and (v or not nonzero):
                return v

    out = []
    for _ in range(count):
        if corollary == "cordn1":
            m = rng.randint(1, n - 1)
            deg = n
        else:
            s = rng.randint(1, 3) if g <= 1000 else 1
            m, deg = s * g, (s + 1) * g
        out.append(Trinomial(deg, m, draw(ma, ra, True), draw(mb, rb, True)))
    return out


def corollary_clauses() -> list[tuple[str, int]]:
    return [("cordn1", c) for c in _CORDN1] + [("cordn2", c) for c in _CORDN2]


# -- Engstrom lookup -------------------------------------------------------------

Shape = tuple[tuple[int, int], ...]

_ENGSTROM_BUILTIN: dict[tuple[int, int, Shape], int] = {
    (6, 3, ((1, 1), (1, 1), (2, 1), (2, 1))): 1,
    (6, 2, ((1, 1), (1, 1), (1, 2), (1, 2))): 2,
}

_RECORD = re.compile(r"^\s*(\d+)\s+(\d+)\s+((?:\(\s*\d+\s*,\s*\d+\s*\)\s*)+)->\s*(\d+)\s*(?:#.*)?$")


def parse_engstrom_lines(lines) -> dict[tuple[int, int, Shape], int]:
    """Parse records ``n p (e1,f1)(e2,f2)... -> valuation # citation``."""
    table = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = _RECORD.match(line)
        if not match:
            raise ValueError(f"line {lineno}: cannot parse Engstrom record {line!r}")
        n, p = int(match.group(1)), int(match.group(2))
        pairs = tuple(sorted((int(e), int(f)) for e, f in re.findall(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", match.group(3))))
        if sum(e * f for e, f in pairs) != n:
            raise ValueError(f"line {lineno}: shape does not have total degree {n}")
        table[(n, p, pairs)] = int(match.group(4))
    return table


def load_engstrom_table(path: Optional[str] = None) -> dict[tuple[int, int, Shape], int]:
    table = dict(_ENGSTROM_BUILTIN)
    path = path or os.environ.get(ENGSTROM_ENV)
    if path:
        with open(path, encoding="utf-8") as fh:
            table.update(parse_engstrom_lines(fh))
    return table


def engstrom_index_valuation(n: int, p: int, shape: FactorizationShape, table=None) -> int | str:
    """nu_p(i(K)) from the embedded table, or ``"unknown"``."""
    if shape.total_degree != n:
        raise ValueError("incomplete shape")
    if table is None:
        table = load_engstrom_table()
    return table.get((n, p, shape.entries), "unknown")


# -- certificates ----------------------------------------------------------------


@dataclass
class Certificate:
    trinomial: Trinomial
    prime: int
    source: str
    witness_d: int
    primes_found: int
    irreducible_budget: int
    engine_shape: Optional[FactorizationShape]
    engine_agrees: bool
    index_valuation: int | str
    irreducibility: str  # "proved" | "unknown"
    warnings: list[str] = field(default_factory=list, compare=False)

    def to_dict(self) -> dict:
        T = self.trinomial
        return {
            "schema": 1,
            "trinomial": {"n": str(T.n), "m": str(T.m), "a": str(T.a), "b": str(T.b)},
            "prime": self.prime,
            "source": self.source,
            "witness_d": self.witness_d,
            "P_d": self.primes_found,
            "N_p_d": self.irreducible_budget,
            "shape": self.engine_shape.as_lists() if self.engine_shape is not None else None,
            "engine_agrees": self.engine_agrees,
            "index_valuation": self.index_valuation,
            "irreducibility": self.irreducibility,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        if d.get("schema") != 1:
            raise ValueError("unsupported certificate schema")
        t = d["trinomial"]
        shape = d["shape"]
        return cls(
            Trinomial(int(t["n"]), int(t["m"]), int(t["a"]), int(t["b"])),
            d["prime"],
            d["source"],
            d["witness_d"],
            d["P_d"],
            d["N_p_d"],
            FactorizationShape(tuple(tuple(x) for x in shape)) if shape is not None else None,
            d["engine_agrees"],
            d["index_valuation"],
            d["irreducibility"],
        )

    @classmethod
    def from_json(cls, line: str) -> "Certificate":
        return cls.from_dict(json.loads(line))


def candidate_primes(T: Trinomial) -> list[int]:
    """Primes p < n with p^2 dividing the discriminant."""
    return [p for p in primes_below(T.n) if discriminant_mod(T, p * p) == 0]


@dataclass
class PrimeVerdict:
    """Both routes' outcome at one prime; ``certificate`` is None when neither fires."""

    p: int
    theorems: list
    report: Optional[OreReport]
    engine_witness: Optional[int]
    certificate: Optional[Certificate]


def cross_check(
    T: Trinomial,
    p: int,
    screen: Optional[ScreenResult] = None,
    config: CheckConfig = DEFAULT_CONFIG,
    engstrom=None,
) -> PrimeVerdict:
    theorems: list = []
    for checker in (check_thm_dn1, check_thm_dn2):
        match = checker(T, p, config)
        if match is not None:
            theorems.append(match)
    if T.n == 6:
        theorems += [m for m in check_thm_d6(T) if m.p == p]

    report = analyze_prime(T.to_poly(), p)
    shape = report.shape
    # primes over the regular factors are exact, so a partial shape still bounds P_d from below
    seen = shape if shape is not None else report.partial_shape
    _, engine_d = common_index_divisor_test(seen, p, T.n, partial=shape is None)

    if not theorems and engine_d is None:
        return PrimeVerdict(p, theorems, report, None, None)

    warnings = []
    if theorems:
        first = theorems[0]
        source = first.source if isinstance(first, TheoremMatch) else f"d6.{1 if first.p == 3 else 2}"
        d = first.d
        claimed = first.claimed
    else:
        source, d, claimed = "ore.comindex", engine_d, None
    budget = count_monic_irreducible(p, d)
    engine_found = seen.count_degree(d)
    found = engine_found if shape is not None or claimed is None else max(engine_found, claimed)
    agrees = bool(theorems) and engine_found > budget and engine_found >= claimed
    if theorems and not agrees:
        msg = f"{source} fires at p={p} but the polygon engine does not confirm it"
        if shape is None:
            msg += " (F is not p-regular for the lifts tried)"
        warnings.append(msg)
        log.warning("%s: %s", T, msg)
    index_val: int | str = "unknown"
    if shape is not None and T.n <= 7:
        index_val = engstrom_index_valuation(T.n, p, shape, engstrom)
    cert = Certificate(
        T,
        p,
        source,
        d,
        found,
        budget,
        shape,
        agrees,
        index_val,
        "proved" if screen is not None and screen.proved else "unknown",
        warnings,
    )
    return PrimeVerdict(p, theorems, report, engine_d, cert)


def certify(
    T: Trinomial,
    primes: Optional[list[int]] = None,
    config: CheckConfig = DEFAULT_CONFIG,
    screen: Optional[ScreenResult] = None,
) -> list[Certificate]:
    """Certificates for every candidate prime at which either route proves p | i(K)."""
    if screen is None:
        screen = irreducibility_screen(T.to_poly())
    if screen.status == "reducible":
        raise ReducibleError(f"{T} is reducible ({screen.witness})", screen.factor)
    cands = candidate_primes(T)
    if primes is not None:
        cands = [p for p in cands if p in set(primes)]
    table = load_engstrom_table()
    out = []
    for p in cands:
        verdict = cross_check(T, p, screen, config, table)
        if verdict.certificate is not None:
            out.append(verdict.certificate)
    return out
