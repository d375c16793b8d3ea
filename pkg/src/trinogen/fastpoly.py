"""Polynomial arithmetic over Z/MZ sized for trinomials of degree ~10^4.

Coefficient lists are lowest degree first with entries in ``[0, M)``.  Large
products go through Kronecker substitution (pack into one big integer,
multiply, unpack); quotients by monic divisors use Newton iteration on the
reversed divisor.  The only consumer is :func:`adic_digits_mod`, which returns
the first digits of a phi-adic expansion modulo ``M``.
"""

from __future__ import annotations

SCHOOLBOOK_CUTOFF = 48


def _pack(coeffs: list[int], nbytes: int) -> int:
    return int.from_bytes(b"".join(c.to_bytes(nbytes, "little") for c in coeffs), "little")


def _unpack(value: int, count: int, nbytes: int) -> list[int]:
    raw = value.to_bytes(count * nbytes, "little")
    return [int.from_bytes(raw[i : i + nbytes], "little") for i in range(0, count * nbytes, nbytes)]


def mul(f: list[int], g: list[int], M: int) -> list[int]:
    if not f or not g:
        return []
    n = len(f) + len(g) - 1
    if min(len(f), len(g)) < SCHOOLBOOK_CUTOFF:
        out = [0] * n
        if len(f) < len(g):
            f, g = g, f
        for j, y in enumerate(g):
            if y:
                for i, x in enumerate(f):
                    out[i + j] += x * y
        return [c % M for c in out]
    bits = 2 * (M - 1).bit_length() + min(len(f), len(g)).bit_length() + 1
    nbytes = (bits + 7) // 8
    prod = _pack(f, nbytes) * _pack(g, nbytes)
    return [c % M for c in _unpack(prod, n, nbytes)]


def series_inverse(h: list[int], prec: int, M: int) -> list[int]:
    """Inverse of ``h`` modulo ``x^prec``; requires ``h[0]`` a unit mod ``M``."""
    g = [pow(h[0], -1, M)]
    k = 1
    while k < prec:
        k = min(2 * k, prec)
        hg = mul(h[:k], g, M)[:k]
        corr = [(-c) % M for c in hg]
        corr[0] = (corr[0] + 2) % M
        g = mul(g, corr, M)[:k]
    return g + [0] * (prec - len(g))


class MonicDivisor:
    """A monic divisor with its reversed-series inverse cached per precision."""

    def __init__(self, coeffs: list[int], M: int):
        assert coeffs and coeffs[-1] % M == 1
        self.coeffs = coeffs
        self.M = M
        self.degree = len(coeffs) - 1
        self._rev = coeffs[::-1]
        self._inv: list[int] = []

    def _inverse(self, prec: int) -> list[int]:
        if len(self._inv) < prec:
            self._inv = series_inverse(self._rev, max(prec, 2 * len(self._inv)), self.M)
        return self._inv[:prec]

    def divmod(self, f: list[int]) -> tuple[list[int], list[int]]:
        D, M = self.degree, self.M
        if len(f) <= D:
            return [], list(f)
        qlen = len(f) - D
        if D < SCHOOLBOOK_CUTOFF or qlen < SCHOOLBOOK_CUTOFF:
            r = list(f)
            b = self.coeffs
            q = [0] * qlen
            for i in range(len(r) - 1, D - 1, -1):
                t = r[i] % M
                if t:
                    q[i - D] = t
                    base = i - D
                    for j in range(D):
                        r[base + j] -= t * b[j]
                r[i] = 0
            return q, [c % M for c in r[:D]]
        q_rev = mul(f[::-1][:qlen], self._inverse(qlen), M)[:qlen]
        q = q_rev[::-1]
        qb = mul(q, self.coeffs, M)
        return q, [(f[i] - qb[i]) % M for i in range(D)]


def adic_digits_mod(f: list[int], phi: list[int], count: int, M: int) -> list[list[int]]:
    """First ``count`` digits ``a_0, a_1, ...`` of ``f = sum a_i phi^i`` modulo ``M``.

    ``phi`` must be monic.  Digits are returned with length exactly ``deg phi``
    (zero padded).
    """
    d = len(phi) - 1
    if d < 1:
        raise ValueError("phi must have positive degree")
    f = [c % M for c in f]
    phi = [c % M for c in phi]
    # smallest J with 2^J >= count
    J = max(0, (count - 1).bit_length())
    powers = [MonicDivisor(phi, M)]
    for _ in range(J):
        sq = powers[-1].coeffs
        powers.append(MonicDivisor(mul(sq, sq, M), M))
    top = powers[J]
    if len(f) > top.degree:
        f = top.divmod(f)[1]

    def convert(g: list[int], j: int) -> list[list[int]]:
        # g has degree < 2^j * d; returns its 2^j digits
        if j == 0:
            return [g + [0] * (d - len(g))]
        if (1 << j) * d <= 4 * SCHOOLBOOK_CUTOFF:
            out = []
            div = powers[0]
            for _ in range(1 << j):
                g, r = div.divmod(g)
                out.append(r + [0] * (d - len(r)))
            return out
        q, r = powers[j - 1].divmod(g)
        return convert(r, j - 1) + convert(q, j - 1)

    return convert(f, J)[:count]
