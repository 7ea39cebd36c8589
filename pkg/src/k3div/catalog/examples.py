"""Lattice arithmetic behind the Enriques-quotient example with 12 curves."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..lattice.core import IntegerLattice, half_class_q_test, is_two_divisible
from ..lattice.discriminant import discriminant_form
from ..lattice.expr import build_lattice


def root_system(L: IntegerLattice) -> list[tuple[int, ...]]:
    """All roots of a negative definite root lattice given on a basis of simple roots.

    Closure of the simple roots under the simple reflections
    ``s_a(x) = x + (x.a) a`` (valid since ``a^2 = -2``).
    """
    n = L.rank
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    todo = list(simple)
    while todo:
        x = todo.pop()
        for a in simple:
            c = L.pair(x, a)
            if c:
                y = tuple(xi + c * ai for xi, ai in zip(x, a))
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
    return sorted(seen)


def orthogonal_roots(L: IntegerLattice, k: int) -> list[tuple[int, ...]] | None:
    """``k`` mutually orthogonal roots, found by depth-first search (positive roots only)."""
    roots = [r for r in root_system(L) if next(c for c in r if c) > 0]

    def dfs(start, chosen):
        if len(chosen) == k:
            return chosen
        for i in range(start, len(roots)):
            r = roots[i]
            if all(L.pair(r, c) == 0 for c in chosen):
                got = dfs(i + 1, chosen + [r])
                if got:
                    return got
        return None

    return dfs(0, [])


@dataclass(frozen=True)
class Example12Check:
    d4_q_values: tuple
    d_selfint: int
    in_dual: bool
    q_half: Fraction | None
    half_in_lattice: bool

    @property
    def passed(self) -> bool:
        return (
            self.d4_q_values == (1, 1, 1)
            and self.d_selfint == -24
            and self.in_dual
            and self.q_half == 0
            and self.half_in_lattice
        )

    def to_json(self) -> dict:
        return {
            "d4_nonzero_q": [str(x) for x in self.d4_q_values],
            "D^2": self.d_selfint,
            "half_D_in_dual": self.in_dual,
            "q(D/2)": None if self.q_half is None else str(self.q_half),
            "half_D_in_lattice": self.half_in_lattice,
            "passed": self.passed,
        }


def example12_check() -> Example12Check:
    """``D`` = 12 orthogonal roots (4 in ``D4``, 8 in one ``E8``) in ``U + D4 + E8^2``.

    ``D^2 = -24``, ``D/2`` lies in the dual and ``q(D/2) = -6 = 0 mod 2``; since
    the only class of ``A_L`` with ``q = 0`` is zero, ``D/2`` is a class.
    """
    D4 = discriminant_form(build_lattice("D4"))
    qs = tuple(sorted(D4.q(x) for x in D4.elements() if any(x)))
    L = build_lattice("U+D4+E8^2")
    r4 = orthogonal_roots(build_lattice("D4"), 4)
    r8 = orthogonal_roots(build_lattice("E8"), 8)
    coords = [0] * L.rank
    for r in r4:
        for i, c in enumerate(r):
            coords[2 + i] += c
    for r in r8:
        for i, c in enumerate(r):
            coords[6 + i] += c
    D = L.cls(coords)
    test = half_class_q_test(L, D)
    return Example12Check(qs, D.self_int, test.in_dual, test.q_value, bool(is_two_divisible(L, D)))
