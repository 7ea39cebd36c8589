"""Text formats for field specs and polynomials.

Polynomials are sums of products, e.g. ``t^5+t^2+1``, ``(g+1)*t^3 + g``,
``t^2*s + t*s^3``. Juxtaposition is not multiplication; use ``*``.
Integer literals are reduced mod 2. Coefficients in GF(2^k) are written in
the generator symbol ``g``.
"""

from __future__ import annotations

import re

from .field import GF2, FiniteField2k
from .poly import Poly


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def _tokenize(text: str):
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        elif sym is not None and not sym.isspace():
            if sym not in "+-*^()":
                raise ParseError(f"unexpected character {sym!r} in {text!r}")
            out.append(("op", sym))
        pos = m.end()
    return out


def parse_expression(text: str, atoms: dict, const):
    """Evaluate a ring expression.

    ``atoms`` maps variable names to ring values and ``const(int)`` lifts an
    integer. Values must support ``+``, ``*`` and ``**`` with int exponents.
    """
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty expression")
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take(kind=None, val=None):
        nonlocal pos
        tok = peek()
        if tok[0] is None or (kind and tok[0] != kind) or (val and tok[1] != val):
            raise ParseError(f"expected {val or kind} at token {pos} of {text!r}")
        pos += 1
        return tok

    def expr():
        v = term()
        while peek() in (("op", "+"), ("op", "-")):
            take()
            v = v + term()  # char 2: minus is plus
        return v

    def term():
        v = power()
        while peek() == ("op", "*"):
            take()
            v = v * power()
        return v

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            _, e = take("num")
            base = base**e
        return base

    def atom():
        kind, val = peek()
        if kind == "num":
            take()
            return const(val)
        if kind == "name":
            take()
            if val not in atoms:
                raise ParseError(f"unknown symbol {val!r} (allowed: {', '.join(sorted(atoms))})")
            return atoms[val]
        if (kind, val) == ("op", "("):
            take()
            v = expr()
            take("op", ")")
            return v
        if (kind, val) == ("op", "-"):
            take()
            return atom()
        raise ParseError(f"unexpected token {val!r} in {text!r}")

    v = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input after token {pos} in {text!r}")
    return v


def parse_poly(text: str, field: FiniteField2k = GF2, var: str = "t") -> Poly:
    atoms = {var: Poly.t(field)}
    if field.k > 1:
        atoms["g"] = Poly.const(0b10, field)
    return parse_expression(text, atoms, lambda n: Poly.const(n & 1, field))


_FIELD = re.compile(r"^gf\(\s*2\s*\^\s*(\d+)\s*(?:;\s*modulus\s*=\s*(.+?)\s*)?\)$")


def parse_field(spec: str) -> FiniteField2k:
    """``gf2``, ``gf(2^k)`` or ``gf(2^k; modulus=x^4+x+1)``."""
    s = spec.strip().lower()
    if s in ("gf2", "gf(2)"):
        return GF2
    m = _FIELD.match(s)
    if not m:
        raise ParseError(f"bad field spec {spec!r}; expected gf2 or gf(2^k; modulus=<poly in x>)")
    k = int(m.group(1))
    modulus = None
    if m.group(2):
        mp = parse_poly(m.group(2), GF2, var="x")
        modulus = sum(1 << i for i, c in enumerate(mp.coeffs) if c)
    try:
        return FiniteField2k(k, modulus)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
