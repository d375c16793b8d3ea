"""Dense polynomials over F_p and over F_q = F_p[x]/(g), with factorization.

Polynomials are immutable :class:`Poly` values tied to a field object.  Over
the prime field coefficients are plain ints in ``[0, p)``; over an extension
they are tuples of ints (the residue ``a_0 + a_1 x + ...`` mod ``g``, with no
trailing zeros, ``()`` being zero).

Factorization is the usual squarefree / distinct-degree / equal-degree
pipeline.  Equal-degree splitting draws random polynomials from a generator
seeded by a hash of the polynomial being split, so results are reproducible.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Iterator, Union

from .arith import require_prime


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        require_prime(self.p)

    @property
    def char(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p

    @property
    def degree(self) -> int:
        return 1

    zero = 0
    one = 1

    def reduce(self, a) -> int:
        return a % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, -1, self.p)

    def pth_root(self, a):
        return a

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def key(self, a):
        return a

    def fmt(self, a) -> str:
        return str(a)


def _trim(seq: list) -> tuple:
    while seq and not seq[-1]:
        seq.pop()
    return tuple(seq)


@dataclass(frozen=True)
class ExtensionField:
    """F_p[x]/(g) for a monic irreducible ``g`` given by its coefficients."""

    p: int
    modulus: tuple
    _checked: bool = dc_field(default=False, compare=False, repr=False)

    def __post_init__(self):
        require_prime(self.p)
        g = tuple(c % self.p for c in self.modulus)
        object.__setattr__(self, "modulus", g)
        if len(g) < 2 or g[-1] != 1:
            raise ValueError("extension modulus must be monic of degree >= 1")
        if not self._checked and not is_irreducible(Poly(PrimeField(self.p), g)):
            raise ValueError(f"modulus {g} is reducible over F_{self.p}")

    @property
    def char(self) -> int:
        return self.p

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def order(self) -> int:
        return self.p**self.degree

    zero = ()
    one = (1,)

    def reduce(self, a) -> tuple:
        if isinstance(a, int):
            return _trim([a % self.p])
        p, g, d = self.p, self.modulus, self.degree
        c = [x % p for x in a]
        for i in range(len(c) - 1, d - 1, -1):
            t = c[i]
            if t:
                for j in range(d):
                    c[i - d + j] = (c[i - d + j] - t * g[j]) % p
                c[i] = 0
        return _trim(c[:d])

    def add(self, a, b):
        n = max(len(a), len(b))
        return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % self.p for i in range(n)])

    def sub(self, a, b):
        n = max(len(a), len(b))
        return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % self.p for i in range(n)])

    def neg(self, a):
        return tuple(-x % self.p for x in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self.reduce(prod)

    def pow(self, a, e: int):
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of 0 in extension field")
        return self.pow(a, self.order - 2)

    def pth_root(self, a):
        return self.pow(a, self.order // self.p)

    def elements(self) -> Iterator[tuple]:
        d, p = self.degree, self.p
        for idx in range(self.order):
            digits = []
            for _ in range(d):
                idx, r = divmod(idx, p)
                digits.append(r)
            yield _trim(digits)

    def random(self, rng: random.Random) -> tuple:
        return _trim([rng.randrange(self.p) for _ in range(self.degree)])

    def key(self, a):
        return tuple(a) + (0,) * (self.degree - len(a))

    def fmt(self, a) -> str:
        if not a:
            return "0"
        parts = []
        for i, c in enumerate(a):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return parts[0] if len(parts) == 1 else "(" + " + ".join(parts) + ")"


Field = Union[PrimeField, ExtensionField]


@dataclass(frozen=True)
class Poly:
    """Polynomial over a finite field, coefficients lowest degree first."""

    field: Field
    coeffs: tuple = ()

    def __post_init__(self):
        F = self.field
        object.__setattr__(self, "coeffs", _trim([F.reduce(c) for c in self.coeffs]))

    # construction helpers
    @classmethod
    def _raw(cls, field: Field, coeffs: list) -> "Poly":
        obj = object.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "coeffs", _trim(coeffs))
        return obj

    def zero(self) -> "Poly":
        return Poly._raw(self.field, [])

    def one(self) -> "Poly":
        return Poly._raw(self.field, [self.field.one])

    def x(self) -> "Poly":
        return Poly._raw(self.field, [self.field.zero, self.field.one])

    @property
    def p(self) -> int:
        return self.field.char

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (self.field.one,)

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic associate")
        F = self.field
        inv = F.inv(self.lc)
        return Poly._raw(F, [F.mul(c, inv) for c in self.coeffs])

    def scale(self, c) -> "Poly":
        F = self.field
        return Poly._raw(F, [F.mul(x, c) for x in self.coeffs])

    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly._raw(F, out)

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly._raw(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self.zero()
        if isinstance(F, PrimeField):
            p = F.p
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return Poly._raw(F, [c % p for c in out])
        out = [F.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly._raw(F, out)

    def __pow__(self, e: int) -> "Poly":
        result, base = self.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return self.zero(), self
        inv = F.inv(other.lc)
        b = other.coeffs
        q = [F.zero] * (len(r) - db)
        prime = isinstance(F, PrimeField)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if not c:
                continue
            t = F.mul(c, inv)
            q[i - db] = t
            if prime:
                p = F.p
                for j in range(db + 1):
                    r[i - db + j] = (r[i - db + j] - t * b[j]) % p
            else:
                for j in range(db + 1):
                    r[i - db + j] = F.sub(r[i - db + j], F.mul(t, b[j]))
        return Poly._raw(F, q), Poly._raw(F, r[:db])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def derivative(self) -> "Poly":
        F = self.field
        return Poly._raw(F, [F.mul(F.reduce(i), c) for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, v):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, v), c)
        return acc

    def sort_key(self):
        return (self.degree, tuple(self.field.key(c) for c in self.coeffs))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        F = self.field
        var = "y" if isinstance(F, ExtensionField) else "x"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = F.fmt(c)
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                terms.append(cs)
            elif c == F.one:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms)


GFPoly = Poly
ExtGFPoly = Poly


def gfpoly(p: int, coeffs: Iterable[int]) -> Poly:
    return Poly(PrimeField(p), tuple(coeffs))


def extpoly(modulus: Poly, coeffs: Iterable) -> Poly:
    """Polynomial in ``y`` over F_p[x]/(modulus); coefficients are ints or int tuples."""
    F = extension_field(modulus.p, modulus.coeffs)
    return Poly(F, tuple(c if isinstance(c, tuple) else (c,) for c in coeffs))


@lru_cache(maxsize=None)
def extension_field(p: int, modulus: tuple) -> ExtensionField:
    return ExtensionField(p, tuple(modulus))


def reduce_mod_p(coeffs: Iterable[int], p: int) -> Poly:
    """Coefficientwise reduction of an integer polynomial (lowest degree first)."""
    return gfpoly(p, coeffs)


def gcd(f: Poly, g: Poly) -> Poly:
    while not g.is_zero():
        f, g = g, f % g
    return f.monic() if not f.is_zero() else f


def powmod(base: Poly, e: int, mod: Poly) -> Poly:
    result = base.one()
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def is_separable(f: Poly) -> bool:
    if f.is_zero():
        raise ValueError("zero polynomial")
    return gcd(f, f.derivative()).degree == 0


def _pth_root(f: Poly) -> Poly:
    F = f.field
    p = F.char
    return Poly._raw(F, [F.pth_root(c) for c in f.coeffs[::p]])


def _squarefree(f: Poly) -> list[tuple[Poly, int]]:
    """Squarefree decomposition of a monic ``f`` with ``f(0) != 0`` or general."""
    out: list[tuple[Poly, int]] = []
    if f.degree < 1:
        return out
    p = f.field.char
    d = f.derivative()
    if d.is_zero():
        return [(g, m * p) for g, m in _squarefree(_pth_root(f))]
    c = gcd(f, d)
    w = f // c
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        fac = w // y
        if fac.degree > 0:
            out.append((fac, i))
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        out.extend((g, m * p) for g, m in _squarefree(_pth_root(c)))
    return out


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split a monic squarefree ``f`` into products of equal-degree irreducibles."""
    out = []
    q = f.field.order
    x = f.x()
    h = x % f if f.degree > 1 else x
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = powmod(h, q, f)
        g = gcd(f, h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _seeded_rng(f: Poly) -> random.Random:
    blob = repr((f.field, f.coeffs)).encode()
    return random.Random(int.from_bytes(hashlib.sha256(blob).digest()[:8], "big"))


def _equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    if f.degree == d:
        return [f]
    F = f.field
    q = F.order
    while True:
        a = Poly._raw(F, [F.random(rng) for _ in range(f.degree)])
        if a.degree < 1:
            continue
        if q % 2:
            b = powmod(a, (q**d - 1) // 2, f) - f.one()
        else:
            k = q.bit_length() - 1  # q = 2^k
            b = a % f
            t = b
            for _ in range(k * d - 1):
                t = (t * t) % f
                b = b + t
        g = gcd(f, b)
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def factor(f: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, canonically sorted.

    The leading coefficient of ``f`` is dropped.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    f = f.monic()
    result: dict[Poly, int] = {}
    # strip x^k up front: keeps sparse high-degree inputs cheap
    k = next(i for i, c in enumerate(f.coeffs) if c)
    if k:
        result[f.x()] = k
        f = Poly._raw(f.field, list(f.coeffs[k:]))
    rng = _seeded_rng(f)
    for sqf, mult in _squarefree(f):
        for block, d in _distinct_degree(sqf):
            for g in _equal_degree(block, d, rng):
                result[g] = result.get(g, 0) + mult
    return sorted(result.items(), key=lambda item: item[0].sort_key())


gf_factor = factor


def is_irreducible(f: Poly) -> bool:
    if f.degree < 1:
        return False
    facs = factor(f)
    return len(facs) == 1 and facs[0][1] == 1


def ext_factor(f: Poly) -> list[tuple[Poly, int]]:
    """Factorization over an extension field; same contract as :func:`factor`."""
    if not isinstance(f.field, ExtensionField):
        raise TypeError("ext_factor expects a polynomial over an extension field")
    return factor(f)


@lru_cache(maxsize=4096)
def binomial_factors(p: int, s: int, t: int) -> tuple[Poly, ...]:
    """Distinct monic irreducible factors of ``x^s + t`` over F_p."""
    coeffs = [0] * (s + 1)
    coeffs[0] = t % p
    coeffs[s] = 1
    return tuple(g for g, _ in factor(gfpoly(p, coeffs)))


def count_factors_deg(p: int, d: int, s: int, t: int) -> int:
    """N_p(d, s, t): monic irreducible degree-``d`` factors of ``x^s + t`` over F_p."""
    return sum(1 for g in binomial_factors(p, s, t % p) if g.degree == d)


def count_factors_deg_excluding(p: int, d: int, s: int, t: int, m: int, c: int) -> int:
    """N_p(d, s, t)[m, c]: as :func:`count_factors_deg`, skipping divisors of ``x^m + c``."""
    target = [0] * (m + 1)
    target[0] = c % p
    target[m] = 1
    h = gfpoly(p, target)
    return sum(1 for g in binomial_factors(p, s, t % p) if g.degree == d and not (h % g).is_zero())
