"""Double points ``z^2 = f(t, s)`` in characteristic 2.

The classifier follows the case analysis for isolated double points whose
Jacobian colength ``dim k[[t,s]]/(f_t, f_s)`` is at most 8: write
``f = f1^2 t + f2^2 s + f3^2 ts + f4^2``, absorb ``f4`` into ``z``, then look
at the constant term of ``f3`` and at the shape of the cubic part.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .gf.field import GF2, FiniteField2k
from .gf.parse import parse_expression
from .gf.poly import Poly, squarefree_decomposition

DEFAULT_PRECISION = 12
MAX_PRECISION = 48
COLENGTH_CAP = 9  # reported as ">=9"

A1, D4, D6, E7, D8, E8 = "A1", "D4^0", "D6^0", "E7^0", "D8^0", "E8^0"
NONSINGULAR, UNSUPPORTED = "nonsingular", "unsupported"
EXPECTED_COLENGTH = {A1: 1, D4: 4, D6: 6, E7: 7, D8: 8, E8: 8}


class BiSeries:
    """Bivariate polynomial ``sum c_(i,j) t^i s^j`` over GF(2^k), kept up to total degree ``precision``."""

    __slots__ = ("field", "terms", "precision")

    def __init__(self, field: FiniteField2k, terms=None, precision: int | None = None):
        self.field = field
        self.precision = precision
        self.terms = {}
        for (i, j), c in (terms or {}).items():
            if c and (precision is None or i + j <= precision):
                self.terms[(int(i), int(j))] = int(c)

    @classmethod
    def var(cls, name: str, field=GF2):
        return cls(field, {(1, 0): 1} if name == "t" else {(0, 1): 1})

    @classmethod
    def const(cls, c: int, field=GF2):
        return cls(field, {(0, 0): c})

    def _prec(self, other):
        ps = [p for p in (self.precision, other.precision) if p is not None]
        return min(ps) if ps else None

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) ^ c
        return BiSeries(self.field, out, self._prec(other))

    __sub__ = __add__

    def __mul__(self, other):
        F = self.field
        prec = self._prec(other)
        out = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                if prec is not None and i + j + k + l > prec:
                    continue
                key = (i + k, j + l)
                out[key] = out.get(key, 0) ^ F.mul(a, b)
        return BiSeries(F, out, prec)

    def __pow__(self, e: int):
        r = BiSeries.const(1, self.field)
        r.precision = self.precision
        for _ in range(e):
            r = r * self
        return r

    def __eq__(self, other):
        return isinstance(other, BiSeries) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def truncate(self, n: int) -> "BiSeries":
        return BiSeries(self.field, self.terms, n)

    def order(self) -> int:
        """Total degree of the lowest term (``-1``... large for zero)."""
        return min((i + j for i, j in self.terms), default=10**9)

    def homogeneous(self, d: int) -> dict:
        return {k: c for k, c in self.terms.items() if sum(k) == d}

    def const_term(self) -> int:
        return self.terms.get((0, 0), 0)

    def d_dt(self) -> "BiSeries":
        # only odd powers of t survive in characteristic 2
        return BiSeries(self.field, {(i - 1, j): c for (i, j), c in self.terms.items() if i % 2}, self.precision)

    def d_ds(self) -> "BiSeries":
        return BiSeries(self.field, {(i, j - 1): c for (i, j), c in self.terms.items() if j % 2}, self.precision)

    def substitute(self, t_img: "BiSeries", s_img: "BiSeries") -> "BiSeries":
        acc = BiSeries(self.field, {}, self.precision)
        tp = {0: BiSeries.const(1, self.field)}
        sp = {0: BiSeries.const(1, self.field)}
        for (i, j), c in sorted(self.terms.items()):
            for e, cache, base in ((i, tp, t_img), (j, sp, s_img)):
                while max(cache) < e:
                    m = max(cache)
                    cache[m + 1] = cache[m] * base
            acc = acc + BiSeries.const(c, self.field) * tp[i] * sp[j]
        return acc

    def __str__(self):
        return format_bipoly(self)

    def __repr__(self):
        return f"BiSeries({format_bipoly(self)!r})"


def format_bipoly(f: BiSeries) -> str:
    if not f.terms:
        return "0"
    out = []
    for (i, j) in sorted(f.terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
        c = f.terms[(i, j)]
        mono = []
        if i:
            mono.append("t" if i == 1 else f"t^{i}")
        if j:
            mono.append("s" if j == 1 else f"s^{j}")
        m = "*".join(mono)
        if c == 1:
            out.append(m or "1")
        else:
            cs = f.field.format(c)
            cs = f"({cs})" if "+" in cs else cs
            out.append(f"{cs}*{m}" if m else cs)
    return " + ".join(out)


def parse_bipoly(text: str, field: FiniteField2k = GF2) -> BiSeries:
    atoms = {"t": BiSeries.var("t", field), "s": BiSeries.var("s", field)}
    if field.k > 1:
        atoms["g"] = BiSeries.const(0b10, field)
    return parse_expression(text, atoms, lambda n: BiSeries.const(n & 1, field))


# --- decomposition ------------------------------------------------------------


def decompose(f: BiSeries) -> tuple[BiSeries, BiSeries, BiSeries, BiSeries]:
    """``(f1, f2, f3, f4)`` with ``f = f1^2 t + f2^2 s + f3^2 ts + f4^2``."""
    F = f.field
    parts = [{}, {}, {}, {}]
    for (i, j), c in f.terms.items():
        r = F.sqrt(c)
        slot = {(1, 0): 0, (0, 1): 1, (1, 1): 2, (0, 0): 3}[(i % 2, j % 2)]
        parts[slot][(i // 2, j // 2)] = r
    return tuple(BiSeries(F, p) for p in parts)


def recompose(f1, f2, f3, f4) -> BiSeries:
    F = f1.field
    t, s = BiSeries.var("t", F), BiSeries.var("s", F)
    return f1 * f1 * t + f2 * f2 * s + f3 * f3 * t * s + f4 * f4


# --- colength -------------------------------------------------------------------


def _monomials(n: int):
    return [(i, d - i) for d in range(n) for i in range(d, -1, -1)]


def _truncated_dimension(gens, n: int, backend=None) -> int:
    """``dim k[t,s] / (I + m^n)`` for ``I`` generated by ``gens``."""
    mons = _monomials(n)
    col = {m: k for k, m in enumerate(mons)}
    rows = []
    for g in gens:
        low = [(k, c) for k, c in g.terms.items() if sum(k) < n]
        if not low:
            continue
        for a, b in mons:
            row = np.zeros(len(mons), dtype=np.int64)
            hit = False
            for (i, j), c in low:
                if i + j + a + b < n:
                    row[col[(i + a, j + b)]] ^= c
                    hit = True
            if hit:
                rows.append(row)
    if not rows:
        return len(mons)
    F = gens[0].field
    return len(mons) - kernels.gf_rank(np.array(rows), F.exp, F.log, backend)


@dataclass(frozen=True)
class Colength:
    value: int | None  # None means ">= 9"
    precision: int

    def __str__(self):
        return ">=9" if self.value is None else str(self.value)

    def as_json(self):
        return ">=9" if self.value is None else self.value


def jacobian_colength(f: BiSeries, precision: int = DEFAULT_PRECISION, backend=None) -> Colength:
    """``dim k[[t,s]]/(f_t, f_s)``, or ``None`` (``>= 9``).

    ``d(N) = dim k[t,s]/(J + m^N)`` is a lower bound that increases with
    ``N``; ``d(N) = d(N+1)`` means ``m^N`` lies in ``J + m^(N+1)`` and hence,
    by Nakayama's lemma, in ``J``, so ``d(N)`` is the exact colength.
    """
    ft, fs = f.d_dt(), f.d_ds()
    if ft.const_term() or fs.const_term():
        return Colength(0, 0)
    n = precision
    while n <= MAX_PRECISION:
        d = _truncated_dimension([ft, fs], n, backend)
        if d >= COLENGTH_CAP:
            return Colength(None, n)
        if _truncated_dimension([ft, fs], n + 1, backend) == d:
            return Colength(d, n)
        n *= 2
    return Colength(None, MAX_PRECISION)


# --- classification -------------------------------------------------------------


@dataclass(frozen=True)
class SingularityVerdict:
    type: str
    colength: Colength | None
    normal_form_trace: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "type": self.type,
            "colength": None if self.colength is None else self.colength.as_json(),
            "trace": list(self.normal_form_trace),
        }


def _cubic_pattern(cubic: dict, F: FiniteField2k) -> tuple[int, ...]:
    """Multiplicities of the distinct linear factors of a binary cubic over the algebraic closure."""
    # dehomogenize at s = 1: x = t/s; degree drop = multiplicity of the factor s
    coeffs = [cubic.get((k, 3 - k), 0) for k in range(4)]
    p = Poly(F, tuple(coeffs))
    mult = [3 - p.degree] if p.degree < 3 else []
    for g, m in squarefree_decomposition(p):
        mult += [m] * g.degree
    return tuple(sorted((m for m in mult if m), reverse=True))


def classify(f: BiSeries, backend=None) -> SingularityVerdict:
    F = f.field
    trace = []
    f1, f2, f3, f4 = decompose(f)
    if f4:
        trace.append(f"z -> z + ({format_bipoly(f4)})")
    g = recompose(f1, f2, f3, BiSeries(F, {}))
    if f1.const_term() or f2.const_term():
        return SingularityVerdict(NONSINGULAR, Colength(0, 0), tuple(trace))
    col = jacobian_colength(f, backend=backend)
    if f3.const_term():
        trace.append("f3 is a unit: lowest term a*t*s")
        return _verdict(A1, col, trace)
    cubic = g.homogeneous(3)
    if not cubic:
        trace.append("cubic part vanishes (f1, f2 of order >= 2)")
        return SingularityVerdict(UNSUPPORTED, col, tuple(trace))
    pat = _cubic_pattern(cubic, F)
    trace.append(f"cubic part {format_bipoly(BiSeries(F, cubic))} has factor multiplicities {list(pat)}")
    if pat == (1, 1, 1):
        trace.append("three distinct lines: normal form ts(t+s) + ...")
        return _verdict(D4, col, trace)
    if pat == (2, 1):
        trace.append("double and single line: normal form t^2 s + ...")
        kind = {6: D6, 8: D8}.get(col.value)
        return _verdict(kind, col, trace)
    if pat == (3,):
        trace.append("triple line: normal form t^3 + ...")
        kind = {7: E7, 8: E8}.get(col.value)
        return _verdict(kind, col, trace)
    return SingularityVerdict(UNSUPPORTED, col, tuple(trace))  # pragma: no cover


def _verdict(kind, col, trace):
    if kind is None or col.value != EXPECTED_COLENGTH[kind]:
        trace.append(f"colength {col} outside the supported table")
        return SingularityVerdict(UNSUPPORTED, col, tuple(trace))
    return SingularityVerdict(kind, col, tuple(trace))


NORMAL_FORMS = {
    A1: "t*s",
    D4: "t*s*(t+s)",
    D6: "t^2*s + t*s^3",
    E7: "t^3 + s^3*t",
    D8: "t^2*s + t*s^4",
    E8: "t^3 + s^5",
}
