"""Lattice expressions such as ``U(2) + D4^2 + ~A1^12``.

Grammar (whitespace ignored, ``⊕`` accepted for ``+``)::

    expr  := term ('+' term)*
    term  := base ['(' int ')'] ['^' int]
    base  := 'U' | 'A' int | 'D' int | 'E6' | 'E7' | 'E8' | '~A1^' int | '(' expr ')'

``X(m)`` multiplies the form by ``m``; ``X^k`` is the orthogonal sum of ``k``
copies; ``~A1^4n`` is the index-2 overlattice of ``A1^4n`` obtained by
adjoining half the sum of the basis vectors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .core import IntegerLattice, LatticeError, adjoin_glue, direct_sum


class ExprError(LatticeError):
    pass


@dataclass(frozen=True)
class Atom:
    kind: str  # "U", "A", "D", "E", "~A1"
    n: int = 0

    def __str__(self):
        if self.kind == "U":
            return "U"
        if self.kind == "~A1":
            return f"~A1^{self.n}"
        return f"{self.kind}{self.n}"


@dataclass(frozen=True)
class Twist:
    child: object
    m: int

    def __str__(self):
        return f"{_paren(self.child)}({self.m})"


@dataclass(frozen=True)
class Power:
    child: object
    k: int

    def __str__(self):
        return f"{_paren(self.child)}^{self.k}"


@dataclass(frozen=True)
class Sum:
    terms: tuple

    def __str__(self):
        return "+".join(str(t) for t in self.terms)


def _paren(node):
    return f"({node})" if isinstance(node, Sum) else str(node)


_TOK = re.compile(r"\s*(~A1\^|\d+|[UADE]|[()+^⊕])")


def _tokens(text: str):
    pos = 0
    out = []
    text = text.replace("Ã", "~A").rstrip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m:
            raise ExprError(f"cannot parse lattice expression at {text[pos:]!r}")
        tok = m.group(1)
        out.append("+" if tok == "⊕" else tok)
        pos = m.end()
    return out


def parse_lattice_expr(text: str):
    toks = _tokens(text)
    if not toks:
        raise ExprError("empty lattice expression")
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ExprError(f"expected {expected or 'token'} in {text!r}, got {tok!r}")
        pos += 1
        return tok

    def integer():
        tok = take()
        if not tok.isdigit():
            raise ExprError(f"expected an integer in {text!r}, got {tok!r}")
        return int(tok)

    def expr():
        terms = [term()]
        while peek() == "+":
            take()
            terms.append(term())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term():
        node = base()
        if peek() == "(":
            take("(")
            m = integer()
            take(")")
            node = Twist(node, m)
        if peek() == "^":
            take()
            node = Power(node, integer())
        return node

    def base():
        tok = take()
        if tok == "U":
            return Atom("U")
        if tok in ("A", "D"):
            return Atom(tok, integer())
        if tok == "E":
            n = integer()
            if n not in (6, 7, 8):
                raise ExprError(f"E{n} is not a root lattice (use E6, E7 or E8)")
            return Atom("E", n)
        if tok == "~A1^":
            n = integer()
            if n == 0 or n % 4:
                raise ExprError(f"~A1^{n}: exponent must be a positive multiple of 4")
            return Atom("~A1", n)
        if tok == "(":
            node = expr()
            take(")")
            return node
        raise ExprError(f"unexpected {tok!r} in {text!r}")

    node = expr()
    if pos != len(toks):
        raise ExprError(f"trailing input {''.join(toks[pos:])!r} in {text!r}")
    return node


# --- elaboration ----------------------------------------------------------


def cartan_A(n: int):
    if n < 1:
        raise ExprError("A_n needs n >= 1")
    return [[-2 if i == j else 1 if abs(i - j) == 1 else 0 for j in range(n)] for i in range(n)]


def cartan_D(n: int):
    if n < 4:
        raise ExprError("D_n needs n >= 4")
    G = cartan_A(n - 1) + [[0] * (n - 1)]
    for row in G:
        row.append(0)
    G[n - 1][n - 1] = -2
    G[n - 3][n - 1] = G[n - 1][n - 3] = 1
    return G


def cartan_E(n: int):
    # chain of n-1 nodes, extra node on the third one: arms of length 1, 2, n-4
    G = cartan_A(n - 1) + [[0] * (n - 1)]
    for row in G:
        row.append(0)
    G[n - 1][n - 1] = -2
    G[2][n - 1] = G[n - 1][2] = 1
    return G


def tilde_A1(n: int) -> IntegerLattice:
    base = IntegerLattice([[-2 if i == j else 0 for j in range(n)] for i in range(n)], label=f"A1^{n}")
    return adjoin_glue(base, [Fraction(1, 2)] * n, label=f"~A1^{n}")


def elaborate(node) -> IntegerLattice:
    if isinstance(node, Atom):
        if node.kind == "U":
            return IntegerLattice([[0, 1], [1, 0]], label="U")
        if node.kind == "A":
            return IntegerLattice(cartan_A(node.n), label=f"A{node.n}")
        if node.kind == "D":
            return IntegerLattice(cartan_D(node.n), label=f"D{node.n}")
        if node.kind == "E":
            return IntegerLattice(cartan_E(node.n), label=f"E{node.n}")
        return tilde_A1(node.n)
    if isinstance(node, Twist):
        if node.m < 1:
            raise ExprError("twist must be a positive integer")
        return elaborate(node.child).twist(node.m)._relabel(str(node))
    if isinstance(node, Power):
        if node.k < 1:
            raise ExprError("power must be a positive integer")
        L = elaborate(node.child)
        return direct_sum(*([L] * node.k), label=str(node))
    if isinstance(node, Sum):
        return direct_sum(*(elaborate(t) for t in node.terms), label=str(node))
    raise ExprError(f"not a lattice expression: {node!r}")


def build_lattice(expr) -> IntegerLattice:
    """Build from an expression string or a parsed tree."""
    node = parse_lattice_expr(expr) if isinstance(expr, str) else expr
    return elaborate(node)
