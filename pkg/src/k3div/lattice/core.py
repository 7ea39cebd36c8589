"""Even integer lattices, divisor classes, overlattices and 2-divisibility.

A lattice carries its Gram matrix on a Z-basis together with that basis written
as rational rows in an *ambient* coordinate system (the lattice it was built
from). Overlattices and sublattices keep the ambient coordinates of their
parent, so a class written in, say, the labelled basis of a Picard model can
still be located after glue vectors have been adjoined.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .snf import (
    determinant,
    identity,
    inertia,
    integer_kernel,
    matmul,
    rational_row_space_basis,
    smith_normal_form,
    solve_integer,
)


class LatticeError(ValueError):
    pass


def _as_int_matrix(m):
    return tuple(tuple(int(x) for x in row) for row in m)


def _as_frac_matrix(m):
    return tuple(tuple(Fraction(x) for x in row) for row in m)


def _pair(u, G, v):
    return sum(u[i] * G[i][j] * v[j] for i in range(len(u)) if u[i] for j in range(len(v)) if v[j])


@dataclass(frozen=True, eq=False)
class IntegerLattice:
    """Even non-degenerate lattice.

    ``basis`` rows are the basis vectors in ambient coordinates and
    ``ambient_gram`` is the (rational) form there; both default to the
    identity basis of ``gram`` itself.
    """

    gram: tuple
    label: str = ""
    basis: tuple | None = None
    ambient_gram: tuple | None = None
    names: tuple | None = None

    def __post_init__(self):
        G = _as_int_matrix(self.gram)
        n = len(G)
        if n == 0:
            raise LatticeError("lattice of rank 0")
        if any(len(r) != n for r in G):
            raise LatticeError("Gram matrix is not square")
        for i in range(n):
            if G[i][i] % 2:
                raise LatticeError(f"odd diagonal entry {G[i][i]} at {i}: lattice is not even")
            for j in range(i):
                if G[i][j] != G[j][i]:
                    raise LatticeError(f"Gram matrix not symmetric at ({i},{j})")
        object.__setattr__(self, "gram", G)
        if self.basis is None:
            object.__setattr__(self, "basis", _as_frac_matrix(identity(n)))
            object.__setattr__(self, "ambient_gram", _as_frac_matrix(G))
        else:
            object.__setattr__(self, "basis", _as_frac_matrix(self.basis))
            object.__setattr__(self, "ambient_gram", _as_frac_matrix(self.ambient_gram))
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
        if self.det == 0:
            raise LatticeError("degenerate Gram matrix (determinant 0)")

    # invariants ---------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def det(self) -> int:
        d = self.__dict__.get("_det")
        if d is None:
            d = determinant(self.gram)
            object.__setattr__(self, "_det", d)
        return d

    @property
    def signature(self) -> tuple[int, int]:
        s = self.__dict__.get("_sig")
        if s is None:
            p, q, _ = inertia(self.gram)
            s = (p, q)
            object.__setattr__(self, "_sig", s)
        return s

    @property
    def ambient_dim(self) -> int:
        return len(self.ambient_gram)

    def __repr__(self):
        lab = f" {self.label!r}" if self.label else ""
        return f"<IntegerLattice{lab} rank={self.rank} det={self.det}>"

    def pair(self, x, y):
        """Pairing of two coordinate vectors in the lattice basis."""
        return _pair(x, self.gram, y)

    def pair_rational(self, x, y) -> Fraction:
        return Fraction(_pair([Fraction(a) for a in x], self.gram, [Fraction(b) for b in y]))

    def cls(self, coords) -> "DivisorClass":
        return DivisorClass.of(self, coords)

    def basis_class(self, name_or_index) -> "DivisorClass":
        i = self.names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        return self.cls([int(j == i) for j in range(self.rank)])

    # ambient coordinates ---------------------------------------------------
    def to_ambient(self, coords) -> list[Fraction]:
        out = [Fraction(0)] * self.ambient_dim
        for c, row in zip(coords, self.basis):
            if c:
                for j, x in enumerate(row):
                    out[j] += c * x
        return out

    def coords_of(self, ambient_vector) -> list[int] | None:
        """Integer coordinates of an ambient vector, or ``None`` if it is not in the lattice."""
        return solve_integer(self.basis, ambient_vector)

    def rational_coords_of(self, ambient_vector) -> list[Fraction] | None:
        from .snf import solve_rational

        return solve_rational(self.basis, ambient_vector)

    def from_ambient(self, ambient_vector) -> "DivisorClass":
        c = self.coords_of(ambient_vector)
        if c is None:
            raise LatticeError("vector does not lie in the lattice")
        return self.cls(c)

    def twist(self, m: int) -> "IntegerLattice":
        """``L(m)``: every pairing multiplied by ``m``."""
        if m == 0:
            raise LatticeError("twist by 0 gives a degenerate lattice")
        G = [[m * x for x in row] for row in self.gram]
        return IntegerLattice(G, label=f"{self.label}({m})" if self.label else "", names=self.names)

    def _relabel(self, label: str) -> "IntegerLattice":
        return IntegerLattice(self.gram, label, self.basis, self.ambient_gram, self.names)

    def to_json(self) -> dict:
        return {"gram": [list(r) for r in self.gram], "label": self.label}

    @classmethod
    def from_json(cls, d) -> "IntegerLattice":
        return cls(d["gram"], label=d.get("label", ""))


@dataclass(frozen=True)
class DivisorClass:
    coords: tuple
    self_int: int

    @classmethod
    def of(cls, L: IntegerLattice, coords) -> "DivisorClass":
        c = tuple(int(x) for x in coords)
        if len(c) != L.rank:
            raise LatticeError(f"class has {len(c)} coordinates, lattice rank is {L.rank}")
        return cls(c, L.pair(c, c))


# --- constructions --------------------------------------------------------


def direct_sum(*lattices: IntegerLattice, label: str | None = None) -> IntegerLattice:
    if not lattices:
        raise LatticeError("empty direct sum")
    n = sum(L.rank for L in lattices)
    na = sum(L.ambient_dim for L in lattices)
    G = [[0] * n for _ in range(n)]
    B = [[Fraction(0)] * na for _ in range(n)]
    AG = [[Fraction(0)] * na for _ in range(na)]
    r = a = 0
    names = []
    for L in lattices:
        for i in range(L.rank):
            for j in range(L.rank):
                G[r + i][r + j] = L.gram[i][j]
            for j in range(L.ambient_dim):
                B[r + i][a + j] = L.basis[i][j]
        for i in range(L.ambient_dim):
            for j in range(L.ambient_dim):
                AG[a + i][a + j] = L.ambient_gram[i][j]
        names.extend(L.names or [f"{L.label or 'b'}[{i}]" for i in range(L.rank)])
        r += L.rank
        a += L.ambient_dim
    if label is None:
        label = " + ".join(L.label or "?" for L in lattices)
    return IntegerLattice(G, label=label, basis=B, ambient_gram=AG, names=tuple(names))


def _sublattice(L: IntegerLattice, rows, label: str) -> IntegerLattice:
    """Lattice spanned by rational coordinate rows (w.r.t. ``L``'s basis)."""
    n = L.rank
    G = [[sum(r[i] * L.gram[i][j] * s[j] for i in range(n) if r[i] for j in range(n) if s[j]) for s in rows] for r in rows]
    for i, row in enumerate(G):
        for j, x in enumerate(row):
            if Fraction(x).denominator != 1:
                raise LatticeError(f"non-integral pairing {x} between new basis vectors {i}, {j}")
    G = [[int(x) for x in row] for row in G]
    amb = [L.to_ambient(r) for r in rows]
    return IntegerLattice(G, label=label, basis=amb, ambient_gram=L.ambient_gram)


def in_dual(L: IntegerLattice, v) -> bool:
    """``v`` (rational coordinates in the basis of ``L``) pairs integrally with ``L``."""
    v = [Fraction(x) for x in v]
    return all(sum(L.gram[i][j] * v[j] for j in range(L.rank)).denominator == 1 for i in range(L.rank))


def adjoin_glue(L: IntegerLattice, v, label: str | None = None) -> IntegerLattice:
    """Overlattice generated by ``L`` and one glue vector of order 2."""
    v = [Fraction(x) for x in v]
    if len(v) != L.rank:
        raise LatticeError("glue vector has the wrong length")
    if not in_dual(L, v):
        raise LatticeError("glue vector is not in the dual lattice")
    if any((2 * x).denominator != 1 for x in v):
        raise LatticeError("glue vector does not have order 2 modulo the lattice")
    if all(x.denominator == 1 for x in v):
        raise LatticeError("glue vector already lies in the lattice")
    norm = L.pair_rational(v, v)
    if norm.denominator != 1 or norm % 2:
        raise LatticeError(f"glue vector has norm {norm}, which is not even")
    rows = [list(map(Fraction, r)) for r in identity(L.rank)] + [v]
    B = rational_row_space_basis(rows)
    return _sublattice(L, B, label or f"{L.label}+glue")


@dataclass(frozen=True)
class GlueData:
    """Glue generators: ``source[i]`` in ``A_L`` is matched with ``target[i]`` in ``A_M``.

    Entries are rational coordinate vectors (in the basis of ``L`` and ``M``)
    representing classes of the dual modulo the lattice. ``target`` is
    ``None`` when the isotropic subgroup lives in ``A_L`` alone.
    """

    source: tuple
    target: tuple | None = None


def _q_mod2(L, v) -> Fraction:
    return L.pair_rational(v, v) % 2


def glue(L: IntegerLattice, M: IntegerLattice | None, g: GlueData, label: str | None = None) -> IntegerLattice:
    """Overlattice of ``L + M`` obtained by adjoining the diagonal glue vectors."""
    src = [[Fraction(x) for x in v] for v in g.source]
    tgt = None if g.target is None else [[Fraction(x) for x in v] for v in g.target]
    if M is None and tgt is not None or M is not None and tgt is None:
        raise LatticeError("glue targets must be given exactly when a second lattice is given")
    if tgt is not None and len(tgt) != len(src):
        raise LatticeError("glue source and target lists differ in length")
    for v in src:
        if not in_dual(L, v):
            raise LatticeError("glue source is not in the dual of L")
    if tgt is not None:
        for w in tgt:
            if not in_dual(M, w):
                raise LatticeError("glue target is not in the dual of M")
        for i, (v, w) in enumerate(zip(src, tgt)):
            if (_q_mod2(L, v) + _q_mod2(M, w)) % 2:
                raise LatticeError(
                    f"glue pair {i} is not anti-isometric: q_L = {_q_mod2(L, v)}, q_M = {_q_mod2(M, w)}; "
                    "the diagonal is not isotropic"
                )
    total = direct_sum(L, M) if M is not None else L
    vecs = [v + w for v, w in zip(src, tgt)] if tgt is not None else src
    for i, x in enumerate(vecs):
        for j, y in enumerate(vecs[: i + 1]):
            b = total.pair_rational(x, y)
            if i == j:
                if b.denominator != 1 or b % 2:
                    raise LatticeError(f"diagonal glue vector {i} has q = {b % 2}, not isotropic")
            elif b.denominator != 1:
                raise LatticeError(f"glue vectors {j}, {i} pair to {b}: diagonal not isotropic")
    rows = [list(map(Fraction, r)) for r in identity(total.rank)] + vecs
    B = rational_row_space_basis(rows)
    return _sublattice(total, B, label or f"glue({L.label}, {M.label if M else ''})")


def _check_independent(L, S):
    rows = [list(s.coords) for s in S]
    if not rows:
        raise LatticeError("empty class list")
    if smith_normal_form(rows).rank != len(rows):
        raise LatticeError("classes are linearly dependent")
    return rows


def orthogonal_complement(L: IntegerLattice, S: Sequence[DivisorClass], label: str | None = None) -> IntegerLattice:
    rows = _check_independent(L, S)
    sub = [[L.pair(r, s) for s in rows] for r in rows]
    if determinant(sub) == 0:
        raise LatticeError("classes span a degenerate sublattice")
    SG = matmul(rows, [list(r) for r in L.gram])
    K = integer_kernel(SG)
    if not K:
        raise LatticeError("orthogonal complement is zero")
    return _sublattice(L, K, label or f"{L.label}^perp")


class Closure(NamedTuple):
    lattice: IntegerLattice | None  # None when the span is degenerate (e.g. isotropic)
    index: int
    basis: tuple  # integral basis of the closure, coordinates in L


def primitive_closure(L: IntegerLattice, S: Sequence[DivisorClass], label: str | None = None) -> Closure:
    """``(span(S) (x) Q) & L`` and its index over ``span(S)``."""
    rows = _check_independent(L, S)
    sf = smith_normal_form(rows)
    k = len(rows)
    B = [sf.V_inv[i] for i in range(k)]
    index = 1
    for d in sf.diagonal[:k]:
        index *= d
    gram = [[L.pair(r, s) for s in B] for r in B]
    sub = _sublattice(L, B, label or f"sat({L.label})") if determinant(gram) else None
    return Closure(sub, index, tuple(tuple(r) for r in B))


# --- 2-divisibility ---------------------------------------------------------


@dataclass(frozen=True)
class TwoDivisibility:
    divisible: bool
    witness: tuple | None  # coordinates x with 2x = D
    residue: tuple | None  # D mod 2L when not divisible

    def __bool__(self):
        return self.divisible


def is_two_divisible(L: IntegerLattice, D: DivisorClass) -> TwoDivisibility:
    """Decide ``D in 2L`` for a class in the basis of ``L``."""
    if len(D.coords) != L.rank:
        raise LatticeError("class does not belong to this lattice")
    if all(c % 2 == 0 for c in D.coords):
        return TwoDivisibility(True, tuple(c // 2 for c in D.coords), None)
    return TwoDivisibility(False, None, tuple(c % 2 for c in D.coords))


def is_two_divisible_ambient(L: IntegerLattice, v) -> TwoDivisibility:
    """Same question for a vector in ambient coordinates (e.g. a labelled Picard basis).

    Solves ``2x = v`` over the integers with the Smith form of the basis.
    """
    c = L.coords_of(v)
    if c is None:
        raise LatticeError("class does not lie in the lattice")
    half = L.coords_of([Fraction(x) / 2 for x in v])
    if half is not None:
        return TwoDivisibility(True, tuple(half), None)
    return TwoDivisibility(False, None, tuple(x % 2 for x in c))


class HalfClassTest(NamedTuple):
    in_dual: bool
    q_value: Fraction | None


def half_class_q_test(L: IntegerLattice, D: DivisorClass) -> HalfClassTest:
    """Necessary condition for ``D/2`` to be a class: it must lie in ``L*``, with ``q(D/2) = D^2/4 mod 2``."""
    n = L.rank
    ok = all(sum(L.gram[i][j] * D.coords[j] for j in range(n)) % 2 == 0 for i in range(n))
    if not ok:
        return HalfClassTest(False, None)
    return HalfClassTest(True, Fraction(D.self_int, 4) % 2)


def even_unimodular_admissible(p: int, q: int) -> bool:
    """Signature test for an even unimodular lattice of signature ``(p, q)``."""
    if p < 0 or q < 0 or p + q == 0:
        raise LatticeError("signature must be non-negative with positive rank")
    return (p - q) % 8 == 0
