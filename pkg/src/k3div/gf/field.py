"""GF(2^k) with elements encoded as ints (bit i = coefficient of g^i).

``g`` is the class of ``x`` modulo the defining polynomial. Multiplication
goes through exp/log tables built from a primitive element, which is found by
search and need not be ``g``.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

MAX_DEGREE = 16


# --- GF(2)[x] as int bitmasks -------------------------------------------


def gf2_deg(a: int) -> int:
    return a.bit_length() - 1


def gf2_mul(a: int, b: int) -> int:
    if a < b:
        a, b = b, a
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


def gf2_mod(a: int, m: int) -> int:
    dm = gf2_deg(m)
    while a and gf2_deg(a) >= dm:
        a ^= m << (gf2_deg(a) - dm)
    return a


def gf2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, gf2_mod(a, b)
    return a


def gf2_powmod(a: int, e: int, m: int) -> int:
    r = 1
    a = gf2_mod(a, m)
    while e:
        if e & 1:
            r = gf2_mod(gf2_mul(r, a), m)
        a = gf2_mod(gf2_mul(a, a), m)
        e >>= 1
    return r


def gf2_is_irreducible(m: int) -> bool:
    """Irreducibility over GF(2) for a polynomial of degree k >= 1.

    ``m`` is irreducible iff ``x^(2^k) = x mod m`` and
    ``gcd(m, x^(2^d) - x) = 1`` for every proper divisor ``d = k / prime``.
    """
    k = gf2_deg(m)
    if k < 1:
        return False
    if k == 1:
        return True
    if not m & 1:
        return False
    if gf2_powmod(0b10, 1 << k, m) != 0b10:
        return False
    for p in _prime_factors(k):
        d = k // p
        h = gf2_powmod(0b10, 1 << d, m) ^ 0b10
        if gf2_gcd(m, h) != 1:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def default_modulus(k: int) -> int:
    """Smallest irreducible polynomial of degree ``k`` (as a bitmask)."""
    for m in range((1 << k) | 1, 1 << (k + 1), 2):
        if gf2_is_irreducible(m):
            return m
    raise ValueError(f"no irreducible polynomial of degree {k}")  # unreachable


def format_gf2_poly(m: int, var: str = "x") -> str:
    if m == 0:
        return "0"
    terms = []
    for i in range(gf2_deg(m), -1, -1):
        if m >> i & 1:
            terms.append("1" if i == 0 else var if i == 1 else f"{var}^{i}")
    return "+".join(terms)


# --- the field ------------------------------------------------------------


class FiniteField2k:
    """The field with ``2**k`` elements, ``1 <= k <= 16``."""

    def __init__(self, k: int, modulus: int | None = None):
        if not 1 <= k <= MAX_DEGREE:
            raise ValueError(f"extension degree must be in 1..{MAX_DEGREE}, got {k}")
        if modulus is None:
            modulus = default_modulus(k)
        if gf2_deg(modulus) != k:
            raise ValueError(f"modulus {format_gf2_poly(modulus)} does not have degree {k}")
        if not gf2_is_irreducible(modulus):
            raise ValueError(f"modulus {format_gf2_poly(modulus)} is reducible over GF(2)")
        self.k = k
        self.modulus = modulus
        self.order = 1 << k
        self.exp, self.log = _tables(k, modulus)

    def __repr__(self):
        if self.k == 1:
            return "GF(2)"
        return f"GF(2^{self.k}; modulus={format_gf2_poly(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, FiniteField2k) and (self.k, self.modulus) == (other.k, other.modulus)

    def __hash__(self):
        return hash((self.k, self.modulus))

    @property
    def spec(self) -> str:
        if self.k == 1:
            return "gf2"
        return f"gf(2^{self.k}; modulus={format_gf2_poly(self.modulus)})"

    def elements(self):
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(2^k)")
        qm1 = self.order - 1
        return int(self.exp[(qm1 - self.log[a]) % qm1])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        qm1 = self.order - 1
        return int(self.exp[(int(self.log[a]) * e) % qm1])

    def sqrt(self, a: int) -> int:
        """Inverse Frobenius; every element of a finite field of char 2 is a square."""
        return self.pow(a, 1 << (self.k - 1))

    def format(self, a: int) -> str:
        return format_gf2_poly(a, "g")


@lru_cache(maxsize=None)
def _tables(k: int, modulus: int):
    q = 1 << k
    qm1 = q - 1
    factors = _prime_factors(qm1) if qm1 > 1 else []

    def is_primitive(a):
        return all(gf2_powmod(a, qm1 // p, modulus) != 1 for p in factors)

    gen = 1 if qm1 == 1 else next(a for a in range(2, q) if is_primitive(a))
    exp = np.zeros(2 * qm1, dtype=np.int64)
    log = np.zeros(q, dtype=np.int64)
    x = 1
    for i in range(qm1):
        exp[i] = x
        log[x] = i
        x = gf2_mod(gf2_mul(x, gen), modulus)
    exp[qm1:] = exp[:qm1]
    exp.setflags(write=False)
    log.setflags(write=False)
    return exp, log


GF2 = FiniteField2k(1)
