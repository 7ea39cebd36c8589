"""Univariate polynomials in ``t`` over GF(2^k) and their factorization."""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .. import kernels
from .field import GF2, FiniteField2k, gf2_mul


# over GF(2) a polynomial is packed into the bits of an int (bit i = coefficient of t^i)
def _bits(p) -> int:
    return int("".join("1" if c else "0" for c in reversed(p.coeffs)) or "0", 2)


def _unbits(x: int) -> tuple[int, ...]:
    return tuple(int(b) for b in reversed(bin(x)[2:])) if x else ()


@dataclass(frozen=True)
class Poly:
    """Polynomial with ascending coefficients; the zero polynomial has ``coeffs == ()``."""

    field: FiniteField2k
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, field=GF2):
        return cls(field, ())

    @classmethod
    def one(cls, field=GF2):
        return cls(field, (1,))

    @classmethod
    def const(cls, c: int, field=GF2):
        return cls(field, (c,))

    @classmethod
    def monomial(cls, n: int, c: int = 1, field=GF2):
        return cls(field, (0,) * n + (c,))

    @classmethod
    def t(cls, field=GF2):
        return cls(field, (0, 1))

    @classmethod
    def from_array(cls, field, arr):
        return cls(field, tuple(int(x) for x in arr))

    def as_array(self):
        return np.array(self.coeffs, dtype=np.int64)

    # basic properties -----------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return self.coeffs == (1,)

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, {self.field!r})"

    def __str__(self):
        return format_poly(self)

    # ring operations ----------------------------------------------------
    def _check(self, other):
        if isinstance(other, int):
            return Poly.const(other, self.field)
        if other.field != self.field:
            raise ValueError("polynomials over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, tuple(self[i] ^ other[i] for i in range(n)))

    __sub__ = __add__
    __radd__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._check(other)
        if not self or not other:
            return Poly.zero(self.field)
        F = self.field
        if F.k == 1:
            return Poly(F, _unbits(gf2_mul(_bits(self), _bits(other))))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] ^= F.mul(a, b)
        return Poly(F, tuple(out))

    __rmul__ = __mul__

    def scale(self, c: int):
        F = self.field
        return Poly(F, tuple(F.mul(c, a) for a in self.coeffs))

    def shift(self, n: int):
        return Poly(self.field, (0,) * n + self.coeffs) if self else self

    def __pow__(self, e: int):
        r = Poly.one(self.field)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __divmod__(self, other):
        other = self._check(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(F), self
        if F.k == 1:
            a, b = _bits(self), _bits(other)
            db = other.degree
            q = 0
            while a.bit_length() - 1 >= db:
                sh = a.bit_length() - 1 - db
                q |= 1 << sh
                a ^= b << sh
            return Poly(F, _unbits(q)), Poly(F, _unbits(a))
        q = [0] * (dq + 1)
        inv = F.inv(other.lead)
        db = other.degree
        for top in range(len(r) - 1, db - 1, -1):
            c = r[top]
            if c:
                s = F.mul(c, inv)
                q[top - db] = s
                for j, b in enumerate(other.coeffs):
                    if b:
                        r[top - db + j] ^= F.mul(s, b)
        return Poly(F, tuple(q)), Poly(F, tuple(r[:db]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other) -> bool:
        return not (other % self)

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self):
        if not self:
            return self
        return self.scale(self.field.inv(self.lead))

    def derivative(self):
        # char 2: only odd exponents survive, with coefficient 1
        return Poly(self.field, tuple(self.coeffs[i + 1] if (i + 1) % 2 else 0 for i in range(len(self.coeffs) - 1)))

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.mul(acc, x) ^ c
        return acc

    def compose(self, other):
        acc = Poly.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def reversed_to(self, n: int):
        """``t^n * self(1/t)``; requires ``n >= degree``."""
        if self.degree > n:
            raise ValueError(f"degree {self.degree} exceeds weight {n}")
        c = list(self.coeffs) + [0] * (n + 1 - len(self.coeffs))
        return Poly(self.field, tuple(reversed(c)))

    def is_square(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    def sqrt(self):
        if not self.is_square():
            raise ValueError(f"{self} is not a square")
        F = self.field
        return Poly(F, tuple(F.sqrt(c) for c in self.coeffs[0::2]))

    def valuation(self, p) -> int:
        """Multiplicity of the irreducible ``p`` in ``self`` (zero has infinite valuation)."""
        if not self:
            raise ValueError("valuation of the zero polynomial")
        v = 0
        f = self
        while True:
            q, r = divmod(f, p)
            if r:
                return v
            f = q
            v += 1


def gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


def xgcd(a: Poly, b: Poly):
    """``(g, s, u)`` with ``s*a + u*b == g`` monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    u0, u1 = Poly.zero(F), Poly.one(F)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 + q * s1
        u0, u1 = u1, u0 + q * u1
    if not r0:
        return r0, s0, u0
    inv = F.inv(r0.lead)
    return r0.scale(inv), s0.scale(inv), u0.scale(inv)


def format_poly(p: Poly, var: str = "t") -> str:
    if not p:
        return "0"
    F = p.field
    terms = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        if c == 1:
            terms.append(mono or "1")
        else:
            cs = F.format(c)
            if "+" in cs:
                cs = f"({cs})"
            terms.append(f"{cs}*{mono}" if mono else cs)
    return "+".join(terms)


# --- factorization ----------------------------------------------------------


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Pairs ``(g_i, i)`` with ``f = lead * prod g_i^i``, each ``g_i`` squarefree and monic.

    Characteristic-2 variant of Yun's algorithm: factors whose multiplicity is
    divisible by 2 hide from the derivative and are recovered by square roots.
    """
    if not f:
        raise ValueError("squarefree decomposition of the zero polynomial")
    f = f.monic()
    if f.degree <= 0:
        return []
    out: dict[int, Poly] = {}
    d = f.derivative()
    if not d:
        for g, m in squarefree_decomposition(f.sqrt()):
            out[2 * m] = g
        return sorted(((g, m) for m, g in out.items()), key=lambda x: x[1])
    c = gcd(f, d)
    w = f // c
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        z = w // y
        if z.degree > 0:
            out[i] = z
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        for g, m in squarefree_decomposition(c.sqrt()):
            m2 = 2 * m
            out[m2] = (out[m2] * g) if m2 in out else g
    return sorted(((g.monic(), m) for m, g in out.items()), key=lambda x: x[1])


def distinct_degree(f: Poly, backend=None) -> list[tuple[Poly, int]]:
    """Split a monic squarefree ``f`` into products of equal-degree irreducibles."""
    F = f.field
    exp, log = F.exp, F.log
    out = []
    t = Poly.t(F)
    h = t % f if f.degree > 1 else t
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = Poly.from_array(F, kernels.gf_poly_sqr_iter(h.as_array(), f.as_array(), F.k, exp, log, backend))
        g = gcd(f, h + t)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f.monic(), f.degree))
    return out


def equal_degree(f: Poly, d: int, rng: random.Random, backend=None) -> list[Poly]:
    """Cantor-Zassenhaus splitting in characteristic 2 using the absolute trace."""
    if f.degree == d:
        return [f.monic()]
    F = f.field
    n = f.degree
    while True:
        a = Poly(F, tuple(rng.randrange(F.order) for _ in range(n)))
        if a.degree < 1:
            continue
        tr = Poly.from_array(F, kernels.gf_poly_trace(a.as_array(), f.as_array(), F.k * d, F.exp, F.log, backend))
        g = gcd(f, tr)
        if 0 < g.degree < n:
            return equal_degree(g, d, rng, backend) + equal_degree(f // g, d, rng, backend)


def factor(f: Poly, backend=None) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients)."""
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(0x6B33)
    out = []
    for g, m in squarefree_decomposition(f):
        for h, d in distinct_degree(g, backend):
            for p in equal_degree(h, d, rng, backend):
                out.append((p, m))
    out.sort(key=lambda pm: (pm[0].degree, pm[0].coeffs[::-1], pm[1]))
    return out


def is_irreducible(f: Poly, backend=None) -> bool:
    if f.degree < 1:
        return False
    fac = factor(f, backend)
    return len(fac) == 1 and fac[0][1] == 1


def product(fs, field=GF2) -> Poly:
    acc = Poly.one(field)
    for f in fs:
        acc = acc * f
    return acc
