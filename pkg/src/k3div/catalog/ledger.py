"""Numerical invariants attached to a 2-divisible set of ``n`` disjoint (-2)-curves."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

ALLOWED_N = (8, 12, 16, 20)


class LedgerError(ValueError):
    pass


@dataclass(frozen=True)
class FormulaLedger:
    """``chi = 4 - n/4`` and ``h1 = n/4 - 2`` always; ``deg<eta> = 24 - 2n`` when the
    conductrix is empty (possible only for n = 8, 12) and ``A^2 = (n - 12)/2``
    when it is not (possible only for n >= 12)."""

    n: int
    chi: int
    eta_iso_degree: int | None
    conductrix_selfint: int | None
    h1: int

    @property
    def cases(self) -> tuple[str, ...]:
        out = []
        if self.eta_iso_degree is not None:
            out.append("A empty")
        if self.conductrix_selfint is not None:
            out.append("A nonempty")
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "chi": self.chi,
            "eta_iso_degree": self.eta_iso_degree,
            "conductrix_selfint": self.conductrix_selfint,
            "h1": self.h1,
            "cases": list(self.cases),
        }


def formula_ledger(n: int) -> FormulaLedger:
    if n not in ALLOWED_N:
        raise LedgerError(
            f"n = {n} is impossible: a 2-divisible set of disjoint (-2)-curves on a K3 surface has n in {ALLOWED_N}"
        )
    chi = 4 - n // 4
    h1 = n // 4 - 2
    eta = 24 - 2 * n if n <= 12 else None  # A empty forces deg<eta> >= 0
    a2 = Fraction(n - 12, 2) if n >= 12 else None  # A nonempty: n - 2A^2 = 12 with A^2 >= 0
    if a2 is not None and a2.denominator != 1:  # pragma: no cover
        raise LedgerError("A^2 not integral")
    led = FormulaLedger(n, chi, eta, None if a2 is None else int(a2), h1)
    # h0 - h1 + h2 with h0 = h2 = 1
    if 1 - led.h1 + 1 != led.chi:  # pragma: no cover
        raise LedgerError("Euler characteristic mismatch")
    return led
