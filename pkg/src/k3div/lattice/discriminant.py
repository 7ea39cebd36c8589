"""Discriminant groups and quadratic forms of even lattices."""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .. import kernels
from .core import IntegerLattice, LatticeError
from .snf import smith_normal_form

GAUSS_LIMIT = 1 << 24
EXHAUSTIVE_LIMIT = 1 << 20


@dataclass(frozen=True)
class DiscriminantForm:
    """``A_L = L*/L`` with ``q`` (mod 2) and ``b`` (mod 1) on cyclic generators.

    ``generators[i]`` are rational coordinates (lattice basis) of a generator of
    order ``invariant_factors[i]``; only factors ``> 1`` are kept.
    """

    invariant_factors: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    q_values: tuple[Fraction, ...]
    b_matrix: tuple[tuple[Fraction, ...], ...]
    gauss_signature_mod8: int | None
    source_signature: tuple[int, int] | None = None

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def length(self) -> int:
        return len(self.invariant_factors)

    @property
    def type_I(self) -> bool:
        return is_type_I(self)

    @property
    def is_two_elementary(self) -> bool:
        return all(d == 2 for d in self.invariant_factors)

    def q(self, x) -> Fraction:
        """``q`` of the element ``sum x_i g_i``."""
        r = self.length
        v = Fraction(0)
        for i in range(r):
            if x[i]:
                v += x[i] * x[i] * self.q_values[i]
                for j in range(i + 1, r):
                    if x[j]:
                        v += 2 * x[i] * x[j] * self.b_matrix[i][j]
        return v % 2

    def b(self, x, y) -> Fraction:
        r = self.length
        return sum((x[i] * y[j] * self.b_matrix[i][j] for i in range(r) for j in range(r)), Fraction(0)) % 1

    def elements(self):
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def q_histogram(self, backend=None) -> dict[Fraction, int]:
        """Multiset of ``q`` values over the whole group (exhaustive)."""
        N = max(self.invariant_factors, default=1)
        qd, bm = _scaled(self, N)
        hist = kernels.form_histogram(np.array(self.invariant_factors, dtype=np.int64), qd, bm, 2 * N, backend)
        return {Fraction(j, N): int(c) for j, c in enumerate(hist) if c}

    def to_json(self) -> dict:
        return {
            "invariant_factors": list(self.invariant_factors),
            "generators": [[str(x) for x in g] for g in self.generators],
            "q_values": [str(x) for x in self.q_values],
            "b_matrix": [[str(x) for x in row] for row in self.b_matrix],
            "length": self.length,
            "type_I": self.type_I,
            "gauss_signature_mod8": self.gauss_signature_mod8,
        }


def _scaled(D: DiscriminantForm, N: int):
    r = D.length
    qd = np.zeros(r, dtype=np.int64)
    bm = np.zeros((r, r), dtype=np.int64)
    for i in range(r):
        v = D.q_values[i] * N
        if v.denominator != 1:
            raise LatticeError("q value not in (1/N)Z; invariant factors inconsistent")
        qd[i] = int(v) % (2 * N)
        for j in range(r):
            if i != j:
                w = 2 * N * D.b_matrix[i][j]
                bm[i, j] = int(w) % (2 * N)
    return qd, bm


def discriminant_form(L: IntegerLattice, backend=None, gauss_limit: int = GAUSS_LIMIT) -> DiscriminantForm:
    """Discriminant form from the Smith form ``U G V = diag(d)``.

    The columns ``V e_i / d_i`` generate ``L*/L``: ``G (V e_i / d_i) = U^{-1} e_i``.
    """
    sf = smith_normal_form(L.gram)
    if any(d == 0 for d in sf.diagonal):
        raise LatticeError("degenerate lattice has no finite discriminant group")
    n = L.rank
    gens, orders = [], []
    for i, d in enumerate(sf.diagonal):
        if d > 1:
            gens.append(tuple(Fraction(sf.V[k][i], d) for k in range(n)))
            orders.append(d)
    r = len(gens)
    q = tuple(L.pair_rational(g, g) % 2 for g in gens)
    b = tuple(tuple(L.pair_rational(gens[i], gens[j]) % 1 for j in range(r)) for i in range(r))
    D = DiscriminantForm(tuple(orders), tuple(gens), q, b, None, L.signature)
    sig = gauss_signature(D, backend) if D.order <= gauss_limit else None
    return DiscriminantForm(D.invariant_factors, D.generators, D.q_values, D.b_matrix, sig, L.signature)


def is_type_I(D: DiscriminantForm) -> bool:
    """``q`` takes values in ``Z/2Z``.

    Exact test on generators: ``q(g_i)`` integral and ``2 b(g_i, g_j)`` integral.
    Both are necessary (evaluate on ``g_i`` and ``g_i + g_j``) and together
    sufficient by expanding ``q`` on a general element.
    """
    r = D.length
    if any(x.denominator != 1 for x in D.q_values):
        return False
    return all((2 * D.b_matrix[i][j]).denominator == 1 for i in range(r) for j in range(i + 1, r))


def is_type_I_exhaustive(D: DiscriminantForm, backend=None) -> bool:
    if D.order > EXHAUSTIVE_LIMIT:
        raise LatticeError(f"group of order {D.order} too large for exhaustive check")
    return all(v.denominator == 1 for v in D.q_histogram(backend))


def _blocks(D: DiscriminantForm) -> list[list[int]]:
    """Generator indices split into components of the graph ``b_ij != 0``."""
    r = D.length
    seen = [False] * r
    out = []
    for s in range(r):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(r):
                if not seen[j] and D.b_matrix[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        out.append(sorted(comp))
    return out


def _restrict(D: DiscriminantForm, idx) -> DiscriminantForm:
    return DiscriminantForm(
        tuple(D.invariant_factors[i] for i in idx),
        tuple(D.generators[i] for i in idx),
        tuple(D.q_values[i] for i in idx),
        tuple(tuple(D.b_matrix[i][j] for j in idx) for i in idx),
        None,
    )


def gauss_sum(D: DiscriminantForm, backend=None) -> complex:
    """``sum_x exp(pi i q(x))`` (floating point), as a product over orthogonal blocks."""
    total = complex(1.0)
    for idx in _blocks(D):
        B = _restrict(D, idx)
        N = lcm(*B.invariant_factors)
        qd, bm = _scaled(B, N)
        hist = kernels.form_histogram(np.array(B.invariant_factors, dtype=np.int64), qd, bm, 2 * N, backend)
        s = sum(int(c) * cmath.exp(1j * math.pi * j / N) for j, c in enumerate(hist) if c)
        total *= s
    return total


def gauss_signature(D: DiscriminantForm, backend=None) -> int:
    """Signature mod 8 from ``gauss_sum = sqrt|A| * exp(2 pi i sig / 8)``.

    The sum is evaluated in floating point; the angle is rounded to the nearest
    eighth root of unity only after checking ``|S|^2 = |A|`` and the rounding
    residual, so a wrong answer would raise rather than pass silently.
    """
    if D.order == 1:
        return 0
    S = gauss_sum(D, backend)
    order = D.order
    if abs(abs(S) ** 2 - order) > 1e-6 * order:
        raise LatticeError(f"|Gauss sum|^2 = {abs(S) ** 2:.6g} differs from |A| = {order}: form is degenerate")
    ang = cmath.phase(S) / (2 * math.pi) * 8
    k = round(ang)
    if abs(ang - k) > 1e-6:
        raise LatticeError(f"Gauss sum phase {ang:.6g}/8 is not an eighth root of unity")
    return k % 8


def milgram_holds(L: IntegerLattice, D: DiscriminantForm | None = None) -> bool:
    D = D or discriminant_form(L)
    if D.gauss_signature_mod8 is None:
        raise LatticeError("Gauss signature not computed for this group")
    p, q = L.signature
    return D.gauss_signature_mod8 == (p - q) % 8


def forms_match(D1: DiscriminantForm, D2: DiscriminantForm) -> bool:
    """Equality of the invariant triple used for 2-elementary forms."""
    return (D1.invariant_factors, D1.type_I, D1.gauss_signature_mod8) == (
        D2.invariant_factors,
        D2.type_I,
        D2.gauss_signature_mod8,
    )
