"""Integer polynomials, trinomials, discriminants and phi-adic developments."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

from . import fastpoly
from .arith import DeskScaleError, divisors, factorize, primes_below, require_prime
from .gfpoly import Poly, factor as gf_factor, gfpoly, is_separable


def _trim(seq) -> tuple:
    seq = list(seq)
    while seq and seq[-1] == 0:
        seq.pop()
    return tuple(seq)


@dataclass(frozen=True)
class IntPoly:
    """Polynomial in Z[x], coefficients lowest degree first."""

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def __add__(self, other: "IntPoly | int") -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly((other,))
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPoly(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    __radd__ = __add__

    def __sub__(self, other: "IntPoly | int") -> "IntPoly":
        return self + (-other)

    def __rsub__(self, other: int) -> "IntPoly":
        return (-self) + other

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "IntPoly":
        result, base = IntPoly((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod_monic(self, phi: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Euclidean division by a monic divisor; exact over Z."""
        if not phi.is_monic():
            raise ValueError("divisor must be monic")
        d = phi.degree
        r = list(self.coeffs)
        if len(r) <= d:
            return IntPoly(), self
        q = [0] * (len(r) - d)
        b = phi.coeffs
        for i in range(len(r) - 1, d - 1, -1):
            t = r[i]
            if t:
                q[i - d] = t
                for j in range(d + 1):
                    r[i - d + j] -= t * b[j]
        return IntPoly(q), IntPoly(r[:d])

    def exact_div(self, k: int) -> "IntPoly":
        if any(c % k for c in self.coeffs):
            raise ValueError(f"{k} does not divide every coefficient")
        return IntPoly(c // k for c in self.coeffs)

    def derivative(self) -> "IntPoly":
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def mod_p(self, p: int) -> Poly:
        return gfpoly(p, self.coeffs)

    def __str__(self) -> str:
        return format_poly(self.coeffs)


def format_poly(coeffs, var: str = "x") -> str:
    if not any(coeffs):
        return "0"
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def lift(g: Poly) -> IntPoly:
    """Canonical integer lift of a polynomial over F_p (coefficients in [0, p))."""
    return IntPoly(g.coeffs)


@dataclass(frozen=True)
class Trinomial:
    n: int
    m: int
    a: int
    b: int

    def __post_init__(self):
        if not (0 < self.m < self.n):
            raise ValueError(f"need 0 < m < n, got n={self.n}, m={self.m}")
        if self.b == 0:
            raise ValueError("b = 0 makes the trinomial reducible")

    @property
    def d0(self) -> int:
        return math.gcd(self.n, self.m)

    @property
    def n1(self) -> int:
        return self.n // self.d0

    @property
    def m1(self) -> int:
        return self.m // self.d0

    @property
    def is_binomial(self) -> bool:
        return self.a == 0

    def to_poly(self) -> IntPoly:
        c = [0] * (self.n + 1)
        c[self.n] = 1
        c[self.m] += self.a
        c[0] += self.b
        return IntPoly(c)

    def __str__(self) -> str:
        return format_poly(self.to_poly().coeffs)


def _closed_form_disc(T: Trinomial, modulus: Optional[int] = None) -> int:
    n, m, a, b = T.n, T.m, T.a, T.b
    n1, m1, d0 = T.n1, T.m1, T.d0
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    if modulus is None:
        inner = n**n1 * b ** (n1 - m1) - (-1) ** m1 * m**m1 * (m - n) ** (n1 - m1) * a**n1
        return sign * b ** (m - 1) * inner**d0
    M = modulus
    inner = (pow(n, n1, M) * pow(b, n1 - m1, M) - (-1) ** m1 * pow(m, m1, M) * pow(m - n, n1 - m1, M) * pow(a, n1, M)) % M
    return sign * pow(b, m - 1, M) * pow(inner, d0, M) % M


def trinomial_discriminant(T: Trinomial) -> int:
    """Discriminant of ``x^n + a x^m + b`` from the closed formula.

    For ``a = 0`` the formula's hypothesis fails, so the resultant oracle is used.
    """
    if T.is_binomial:
        return resultant_disc_oracle(T.to_poly())
    return _closed_form_disc(T)


def discriminant_mod(T: Trinomial, modulus: int) -> int:
    """Closed-form discriminant reduced mod ``modulus`` (also valid for ``a = 0``)."""
    return _closed_form_disc(T, modulus)


def _bareiss_det(mat: list[list[int]]) -> int:
    a = [row[:] for row in mat]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) as the determinant of the Sylvester matrix (fraction-free elimination)."""
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        return 0
    if m == 0 and n == 0:
        return 1
    size = m + n
    rows = []
    fc, gc = f.coeffs[::-1], g.coeffs[::-1]
    for i in range(n):
        rows.append([0] * i + list(fc) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(gc) + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def resultant_disc_oracle(F: IntPoly) -> int:
    if not F.is_monic():
        raise ValueError("resultant oracle expects a monic polynomial")
    n = F.degree
    if n < 2:
        raise ValueError("degree must be at least 2")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(F, F.derivative())


@dataclass
class PhiDevelopment:
    """``F = sum(terms[i] * phi**i)``; coefficients need not have degree < deg phi."""

    phi: IntPoly
    terms: list[IntPoly]
    admissible: Optional[bool] = None

    def reconstruct(self) -> IntPoly:
        acc = IntPoly()
        for t in reversed(self.terms):
            acc = acc * self.phi + t
        return acc

    def is_adic(self) -> bool:
        return all(t.degree < self.phi.degree for t in self.terms)


def phi_adic_development(F: IntPoly, phi: IntPoly) -> PhiDevelopment:
    if not phi.is_monic() or phi.degree < 1:
        raise ValueError("phi must be monic of positive degree")
    terms = []
    rest = F
    for _ in range(F.degree // phi.degree + 1):
        rest, r = rest.divmod_monic(phi)
        terms.append(r)
    assert rest.is_zero()
    return PhiDevelopment(phi, terms, admissible=True)


def truncated_development(F: IntPoly, phi: IntPoly, count: int, modulus: int) -> list[IntPoly]:
    """First ``count`` phi-adic coefficients of ``F``, reduced into ``[0, modulus)``."""
    digits = fastpoly.adic_digits_mod(list(F.coeffs), list(phi.coeffs), count, modulus)
    return [IntPoly(d) for d in digits]


class ReducibleError(ValueError):
    """The input polynomial was found to be reducible; ``factor`` divides it."""

    def __init__(self, message: str, factor: "IntPoly | None" = None):
        super().__init__(message)
        self.factor = factor


class LiftingError(ValueError):
    """No monic lifting with the required divisibility properties was found."""


def _check_lifting_inputs(g: Poly, S: IntPoly, p: int) -> Poly:
    require_prime(p)
    if g.p != p or not g.is_monic() or g.degree < 1:
        raise LiftingError("g must be a monic non-constant polynomial over F_p")
    Sbar = S.mod_p(p)
    if Sbar.is_zero() or not (Sbar % g).is_zero():
        raise LiftingError(f"{g} does not divide S mod {p}")
    # only a simple factor is needed; full separability of S is not
    if ((Sbar // g) % g).is_zero():
        raise LiftingError(f"{g} divides S mod {p} more than once")
    facs = gf_factor(g)
    if len(facs) != 1 or facs[0][1] != 1:
        raise LiftingError(f"{g} is reducible over F_{p}")
    return Sbar


def perturbed_lifts(g: Poly) -> Iterator[IntPoly]:
    """``lift(g) + p*w`` for every ``w`` of degree < deg g with digits in [0, p), w = 0 first."""
    p, d = g.p, g.degree
    base = lift(g)
    for w in itertools.product(range(p), repeat=d):
        yield base + IntPoly(p * c for c in w)


def iter_liftings(g: Poly, S: IntPoly, p: int) -> Iterator[tuple[IntPoly, IntPoly, IntPoly]]:
    """Every ``(phi, U, T)`` with ``S = phi*U + p*T``, ``phi = g`` mod p and g dividing neither U nor T mod p."""
    _check_lifting_inputs(g, S, p)
    for phi in perturbed_lifts(g):
        U, R = S.divmod_monic(phi)
        T = R.exact_div(p)
        if (T.mod_p(p) % g).is_zero() or (U.mod_p(p) % g).is_zero():
            continue
        yield phi, U, T


def select_lifting(g: Poly, S: IntPoly, p: int) -> tuple[IntPoly, IntPoly, IntPoly]:
    for found in iter_liftings(g, S, p):
        return found
    raise LiftingError(f"no admissible lifting of {g} within {p}^{g.degree} candidates")


# -- irreducibility screening --------------------------------------------------

#: modular factor-degree tests are skipped above this degree
MODULAR_DEGREE_LIMIT = 48
SCREEN_PRIMES = tuple(primes_below(102))
QUADRATIC_SEARCH_CAP = 200_000


@dataclass(frozen=True)
class ScreenResult:
    status: str  # "irreducible" | "reducible" | "unknown"
    witness: str = ""
    factor: Optional[IntPoly] = field(default=None, compare=False)

    @property
    def proved(self) -> bool:
        return self.status == "irreducible"


def _eisenstein_prime(F: IntPoly) -> Optional[int]:
    g = math.gcd(*F.coeffs[:-1])
    if g in (0, 1):
        return None
    try:
        primes = factorize(g)
    except DeskScaleError:
        return None
    for q in primes:
        if F.coeffs[0] % (q * q):
            return q
    return None


def _integer_root(F: IntPoly) -> Optional[int]:
    c0 = F.coeffs[0]
    if c0 == 0:
        return 0
    candidates = [1, -1]
    try:
        if abs(c0) <= 10**12:
            candidates = [s * d for d in divisors(c0) for s in (1, -1)]
    except DeskScaleError:
        pass
    for r in candidates:
        # cheap modular rejection before the exact evaluation
        if any(_eval_mod(F, r, q) for q in (1_000_003, 998_244_353)):
            continue
        if F(r) == 0:
            return r
    return None


def _eval_mod(F: IntPoly, x: int, q: int) -> int:
    acc = 0
    x %= q
    for c in reversed(F.coeffs):
        acc = (acc * x + c) % q
    return acc


def _subset_sums(degrees: list[int]) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def _quadratic_factor(F: IntPoly) -> Optional[IntPoly]:
    bound = 1 + max(abs(c) for c in F.coeffs[:-1])
    c0 = F.coeffs[0]
    try:
        consts = [s * d for d in divisors(c0) for s in (1, -1)]
    except DeskScaleError:
        return None
    cmax = 2 * bound
    if len(consts) * (2 * cmax + 1) > QUADRATIC_SEARCH_CAP:
        return None
    q = 1_000_003
    for e in consts:
        for c in range(-cmax, cmax + 1):
            # x^2 + c x + e must divide F modulo q as well
            quad = IntPoly((e, c, 1))
            if _eval_mod_quadratic(F, c, e, q):
                continue
            if F.divmod_monic(quad)[1].is_zero():
                return quad
    return None


def _eval_mod_quadratic(F: IntPoly, c: int, e: int, q: int) -> bool:
    """True if ``F mod (x^2 + c x + e)`` is nonzero modulo ``q``."""
    r1, r0 = 0, 0
    for coef in reversed(F.coeffs):
        # (r1 x + r0) * x + coef, reduced by x^2 = -c x - e
        r1, r0 = (r0 - r1 * c) % q, (coef - r1 * e) % q
    return bool(r1 or r0)


@lru_cache(maxsize=None)
def _cyclotomic(k: int) -> IntPoly:
    """k-th cyclotomic polynomial by exact division of x^k - 1."""
    f = IntPoly.monomial(k) - 1
    for d in range(1, k):
        if k % d == 0:
            f = f.divmod_monic(_cyclotomic(d))[0]
    return f


#: cyclotomic factors looked for in every input: trinomials pick these up often
CYCLOTOMIC_ORDERS = tuple(k for k in range(1, 31) if len([d for d in range(1, k + 1) if math.gcd(d, k) == 1]) <= 12)


def _cyclotomic_factor(F: IntPoly) -> Optional[IntPoly]:
    for k in CYCLOTOMIC_ORDERS:
        if k <= 2:
            continue  # roots +-1 are found by the integer root test
        # fold exponents mod k first: x^k = 1 modulo Phi_k
        folded = [0] * k
        for i, c in enumerate(F.coeffs):
            folded[i % k] += c
        phi = _cyclotomic(k)
        if phi.degree < F.degree and IntPoly(folded).divmod_monic(phi)[1].is_zero():
            return phi
    return None


def irreducibility_screen(F: IntPoly) -> ScreenResult:
    """Cheap sufficient tests for irreducibility or reducibility of a monic F."""
    if not F.is_monic():
        raise ValueError("screen expects a monic polynomial")
    n = F.degree
    if n < 1:
        raise ValueError("constant polynomial")
    if n == 1:
        return ScreenResult("irreducible", "degree 1")
    q = _eisenstein_prime(F)
    if q is not None:
        return ScreenResult("irreducible", f"Eisenstein at {q}")
    r = _integer_root(F)
    if r is not None:
        return ScreenResult("reducible", f"root {r}", IntPoly((-r, 1)))
    if n <= 3:
        return ScreenResult("irreducible", "no rational root, degree <= 3")
    cyc = _cyclotomic_factor(F)
    if cyc is not None:
        return ScreenResult("reducible", f"cyclotomic factor {cyc}", cyc)
    if n > MODULAR_DEGREE_LIMIT:
        return ScreenResult("unknown", "degree above modular screening limit")
    possible = set(range(n + 1))
    used = []
    for q in SCREEN_PRIMES:
        Fq = F.mod_p(q)
        if not is_separable(Fq):
            continue
        degs = [g.degree for g, _ in gf_factor(Fq)]
        if len(degs) == 1:
            return ScreenResult("irreducible", f"irreducible mod {q}")
        possible &= _subset_sums(degs)
        used.append(q)
        if possible == {0, n}:
            mods = ",".join(map(str, used))
            return ScreenResult("irreducible", f"factor degree patterns mod {mods}")
    if 2 in possible:
        quad = _quadratic_factor(F)
        if quad is not None:
            return ScreenResult("reducible", f"factor {quad}", quad)
    return ScreenResult("unknown", "no certificate found")
