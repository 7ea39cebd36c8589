"""Quasi-elliptic Weierstrass data ``y^2 = x^3 + (t phi^2 + a^2) x + t psi^2`` in characteristic 2.

The place at infinity is handled by the weighted flip ``t = 1/u``::

    phi~(u) = u^3 phi(1/u),  a~(u) = u^4 a(1/u),  psi~(u) = u^5 psi(1/u),

which keeps the shape of the equation and sends ``Delta`` to ``u^20 Delta(1/u)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..gf.field import FiniteField2k
from ..gf.poly import Poly, factor, gcd

PHI_WEIGHT, A_WEIGHT, PSI_WEIGHT, DELTA_WEIGHT = 3, 4, 5, 20

III = "III"
I0STAR = "I0*"


class FibrationError(ValueError):
    pass


class OutOfScope(FibrationError):
    """Configuration outside the III / I0* setting."""


@dataclass(frozen=True)
class WeierstrassQE:
    phi: Poly
    a: Poly
    psi: Poly

    def __post_init__(self):
        if not (self.phi.field == self.a.field == self.psi.field):
            raise FibrationError("phi, a and psi must share a coefficient field")

    @property
    def field(self) -> FiniteField2k:
        return self.phi.field

    @property
    def A(self) -> Poly:
        """Coefficient of ``x``: ``t phi^2 + a^2``."""
        t = Poly.t(self.field)
        return t * self.phi * self.phi + self.a * self.a

    @property
    def B(self) -> Poly:
        """Constant term: ``t psi^2``."""
        return Poly.t(self.field) * self.psi * self.psi

    def flipped(self) -> "WeierstrassQE":
        """Data in the chart ``u = 1/t`` around infinity."""
        return WeierstrassQE(
            self.phi.reversed_to(PHI_WEIGHT),
            self.a.reversed_to(A_WEIGHT),
            self.psi.reversed_to(PSI_WEIGHT),
        )

    def change_coordinates(self, g: Poly) -> "WeierstrassQE":
        """``x = X + g^2, y = Y + g X + g^3 + a g``: sends ``a -> a + g^2``, ``psi -> psi + phi g``."""
        return WeierstrassQE(self.phi, self.a + g * g, self.psi + self.phi * g)

    def to_json(self) -> dict:
        return {"field": self.field.spec, "phi": str(self.phi), "a": str(self.a), "psi": str(self.psi)}


def discriminant(W: WeierstrassQE) -> Poly:
    """``Delta = (t phi^2 + a^2) phi^4 + psi^4``."""
    p2 = W.phi * W.phi
    p4 = W.psi * W.psi
    return W.A * p2 * p2 + p4 * p4


def discriminant_derivative(W: WeierstrassQE) -> Poly:
    """``dDelta/dt = phi^6`` (all other terms are squares)."""
    return W.phi**6


# --- places -----------------------------------------------------------------


@dataclass(frozen=True)
class Place:
    poly: Poly | None  # monic irreducible; None is the place at infinity

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def __str__(self):
        return "inf" if self.poly is None else str(self.poly)


@dataclass(frozen=True)
class FiberDatum:
    place: Place
    valuation: int
    fiber_type: str
    geometric_count: int

    def to_json(self) -> dict:
        return {
            "place": str(self.place),
            "degree": self.place.degree,
            "valuation": self.valuation,
            "fiber_type": self.fiber_type,
            "geometric_count": self.geometric_count,
        }


def _local(W: WeierstrassQE, place: Place) -> tuple[WeierstrassQE, Poly]:
    """Data and uniformizer in a chart containing ``place``."""
    if place.is_infinity:
        return W.flipped(), Poly.t(W.field)
    return W, place.poly


def valuation(f: Poly, place: Place, weight: int | None = None) -> int:
    """Valuation of ``f``; at infinity ``f`` is read as a form of the given weight."""
    if place.is_infinity:
        if weight is None:
            raise FibrationError("weight needed for a valuation at infinity")
        if not f:
            return 10**9
        return weight - f.degree
    if not f:
        return 10**9
    return f.valuation(place.poly)


def delta_valuations(W: WeierstrassQE, backend=None) -> list[tuple[Place, int]]:
    """Every place where ``Delta`` vanishes, with its order; finite places first."""
    D = discriminant(W)
    if not D:
        raise FibrationError("discriminant vanishes identically")
    out = [(Place(p), m) for p, m in factor(D, backend)]
    # the infinity chart is evaluated independently of deg(Delta)
    Dinf = discriminant(W.flipped())
    vinf = Dinf.valuation(Poly.t(W.field)) if Dinf else 10**9
    if vinf:
        out.append((Place(None), vinf))
    return out


def classify_fiber(v: int) -> str:
    if v == 1:
        return III
    if v == 4:
        return I0STAR
    raise OutOfScope(f"v(Delta) = {v} is neither 1 (III) nor 4 (I0*)")


def valuation_profile(W: WeierstrassQE, backend=None) -> list[FiberDatum]:
    out = []
    for place, v in delta_valuations(W, backend):
        try:
            ftype = classify_fiber(v)
        except OutOfScope as exc:
            raise OutOfScope(f"configuration outside the supported range at place {place}: {exc}") from None
        out.append(FiberDatum(place, v, ftype, place.degree))
    return out


# --- K3 conditions ----------------------------------------------------------


@dataclass(frozen=True)
class K3Check:
    ok: bool
    reasons: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


def _floor_div(deg: int, d: int) -> float:
    return float("-inf") if deg < 0 else deg // d


def is_k3(W: WeierstrassQE, backend=None) -> K3Check:
    """Degree bounds, the degree condition, and minimality at every root of ``Delta`` and at infinity.

    Minimality at a place means ``min(v(A) - 4, v(B) - 6) < 0`` for the data
    as given; a place where this fails can be scaled away.
    """
    reasons = []
    for name, p, bound in (("phi", W.phi, 3), ("a", W.a, 3), ("psi", W.psi, 5)):
        if p.degree > bound:
            reasons.append(f"deg({name}) = {p.degree} exceeds {bound}")
    if reasons:
        return K3Check(False, tuple(reasons))
    A, B = W.A, W.B
    m = max(_floor_div(A.degree, 4), _floor_div(B.degree, 6))
    if m != 1:
        reasons.append(f"degree condition: max(floor(deg A/4), floor(deg B/6)) = {m}, expected 1")
        return K3Check(False, tuple(reasons))
    D = discriminant(W)
    if not D:
        reasons.append("discriminant vanishes identically")
        return K3Check(False, tuple(reasons))
    places = [Place(p) for p, _ in factor(D, backend)] + [Place(None)]
    for place in places:
        vA = valuation(A, place, 2 * A_WEIGHT)
        vB = valuation(B, place, 12)
        if not min(vA - 4, vB - 6) < 0:
            reasons.append(f"non-minimal at place {place}: v(A) = {vA}, v(B) = {vB}")
    return K3Check(not reasons, tuple(reasons))


# --- the 2-torsion section ---------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    num: Poly
    den: Poly

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


@dataclass(frozen=True)
class SectionP:
    x: RationalFunction
    y: RationalFunction


def torsion_section(W: WeierstrassQE) -> SectionP:
    """``P = (psi^2/phi^2, psi^3/phi^3 + a psi/phi)``, checked against the equation."""
    if not W.phi:
        raise FibrationError("no 2-torsion section (phi vanishes)")
    phi, psi, a = W.phi, W.psi, W.a
    P = SectionP(
        RationalFunction(psi * psi, phi * phi),
        RationalFunction(psi**3 + a * psi * phi * phi, phi**3),
    )
    if not section_satisfies(W, P):  # pragma: no cover - an identity
        raise FibrationError("section fails the Weierstrass equation")
    return P


def section_satisfies(W: WeierstrassQE, P: SectionP) -> bool:
    """Clear denominators and compare ``y^2`` with ``x^3 + A x + B``."""
    xn, xd = P.x.num, P.x.den
    yn, yd = P.y.num, P.y.den
    # y^2 = x^3 + A x + B  <=>  yn^2 xd^3 = (xn^3 + A xn xd^2 + B xd^3) yd^2
    lhs = yn * yn * xd**3
    rhs = (xn**3 + W.A * xn * xd * xd + W.B * xd**3) * yd * yd
    return lhs == rhs


def common_zero_degree(W: WeierstrassQE) -> int:
    """Degree of the common zero locus of ``phi`` (weight 3) and ``psi`` (weight 5) on P^1."""
    if not W.phi:
        raise FibrationError("no 2-torsion section (phi vanishes)")
    g = gcd(W.phi, W.psi) if W.psi else W.phi.monic()
    at_inf = min(PHI_WEIGHT - W.phi.degree, PSI_WEIGHT - W.psi.degree if W.psi else PSI_WEIGHT)
    return g.degree + at_inf


def intersection_PO(W: WeierstrassQE) -> int:
    """``(P.O) = 3 - deg gcd(phi, psi)``, counting a common zero at infinity."""
    d = common_zero_degree(W)
    if d >= 2:
        raise FibrationError(f"deg gcd(phi, psi) = {d} is outside the proved range (0 or 1)")
    return 3 - d


SAME_AS_ZERO = "same_as_zero"
OPPOSITE = "opposite"


def component_at_I0star(W: WeierstrassQE, place: Place) -> str:
    """Component of an I0* fiber met by ``P``: ``opposite`` iff ``l^3 | psi^2 + a phi^2``.

    At a place with ``v(Delta) = 4`` that divisibility would force
    ``v(Delta) >= 6``; it is reported as a contradiction.
    """
    Wl, l = _local(W, place)
    D = discriminant(Wl)
    v = D.valuation(l) if D else 10**9
    if v != 4:
        raise FibrationError(f"place {place} has v(Delta) = {v}, not an I0* place")
    if not Wl.phi:
        raise FibrationError("no 2-torsion section (phi vanishes)")
    h = Wl.psi * Wl.psi + Wl.a * Wl.phi * Wl.phi
    if not h or h.valuation(l) >= 3:
        raise FibrationError(
            f"l^3 divides psi^2 + a phi^2 at {place}, which forces l^6 | Delta: contradiction with v(Delta) = 4"
        )
    return SAME_AS_ZERO


def passes_through_singular_point(W: WeierstrassQE, place: Place) -> bool:
    """Does ``P`` reduce to the singular point of the cuspidal fiber at ``place``?

    The singular point has ``x^2 = A``; ``P`` has ``x = psi^2/phi^2`` and
    ``x^2 + A = Delta/phi^4``, so the answer is yes exactly when ``phi`` is a
    unit at the place and ``Delta`` vanishes there.
    """
    Wl, l = _local(W, place)
    if not Wl.phi or Wl.phi.valuation(l) > 0:
        return False
    D = discriminant(Wl)
    return not D or D.valuation(l) > 0


# --- height ledger ----------------------------------------------------------


@dataclass(frozen=True)
class LedgerEntry:
    place: str
    fiber_type: str
    count: int
    contribution: Fraction  # per geometric fiber
    reason: str

    def to_json(self) -> dict:
        return {
            "place": self.place,
            "fiber_type": self.fiber_type,
            "count": self.count,
            "contribution": str(self.contribution),
            "reason": self.reason,
        }


@dataclass(frozen=True)
class HeightLedger:
    po: int
    entries: tuple[LedgerEntry, ...]

    @property
    def constant(self) -> int:
        return 4 + 2 * self.po

    @property
    def correction(self) -> Fraction:
        return sum((e.contribution * e.count for e in self.entries), Fraction(0))

    @property
    def total(self) -> Fraction:
        return self.constant - self.correction

    def identity(self) -> str:
        n3 = sum(e.count for e in self.entries if e.fiber_type == III and e.contribution)
        i0 = sum(e.contribution * e.count for e in self.entries if e.fiber_type == I0STAR)
        s = f"0 = 4 + {2 * self.po} - {n3}*1/2"
        if any(e.fiber_type == I0STAR for e in self.entries):
            s += f" - {i0}"
        return s

    def to_json(self) -> dict:
        return {
            "po": self.po,
            "constant": self.constant,
            "correction": str(self.correction),
            "total": str(self.total),
            "identity": self.identity(),
            "entries": [e.to_json() for e in self.entries],
        }


CONTR = {III: Fraction(1, 2), I0STAR: Fraction(1)}


def height_ledger(W: WeierstrassQE, fibers: list[FiberDatum] | None = None, backend=None) -> HeightLedger:
    """``h(P) = 4 + 2(P.O) - sum contr_v(P)``, which must vanish for the torsion section.

    Contributions are read off the geometry rather than solved for: at a III
    fiber ``P`` meets the non-identity component iff it passes through the
    singular point, and at an I0* fiber the component is decided by
    :func:`component_at_I0star`.
    """
    po = intersection_PO(W)
    if fibers is None:
        fibers = valuation_profile(W, backend)
    entries = []
    for fd in fibers:
        if fd.fiber_type == III:
            hit = passes_through_singular_point(W, fd.place)
            c = CONTR[III] if hit else Fraction(0)
            why = "P passes through the singular point" if hit else "P misses the singular point"
        else:
            side = component_at_I0star(W, fd.place)
            c = CONTR[I0STAR] if side == OPPOSITE else Fraction(0)
            why = f"P meets the {'identity' if side == SAME_AS_ZERO else 'non-identity'} component"
        entries.append(LedgerEntry(str(fd.place), fd.fiber_type, fd.geometric_count, c, why))
    ledger = HeightLedger(po, tuple(entries))
    if ledger.total != 0:
        raise FibrationError(f"height ledger inconsistent: total {ledger.total} != 0 ({ledger.identity()})")
    return ledger


@dataclass(frozen=True)
class AbstractLedger:
    po: int
    n_III: int
    half_count: int  # III fibers with contribution 1/2
    i0star_contributions: tuple[int, ...]

    @property
    def total(self) -> Fraction:
        return 4 + 2 * self.po - Fraction(self.half_count, 2) - sum(self.i0star_contributions)


def solve_height_ledger(n_III: int, po: int, i0star_contributions=()) -> AbstractLedger:
    """Check ``0 = 4 + 2(P.O) - n_III/2 - sum(I0* terms)`` for abstract data.

    Every III fiber contributes 1/2: ``v(Delta) = 1`` forces ``phi`` to be a
    unit there (``phi(alpha) = 0`` gives ``v(Delta)`` = 0 or >= 4), so ``P``
    passes through the singular point.  The I0* contributions must be 0 or 1.
    """
    if any(c not in (0, 1) for c in i0star_contributions):
        raise FibrationError("I0* contributions must be 0 or 1")
    led = AbstractLedger(po, n_III, n_III, tuple(i0star_contributions))
    if led.total != 0:
        raise FibrationError(
            f"no consistent assignment: 4 + {2 * po} - {n_III}*1/2"
            + (f" - {sum(i0star_contributions)}" if i0star_contributions else "")
            + f" = {led.total} != 0"
        )
    return led


# --- Ito's formula -----------------------------------------------------------


def ito_sigma(ell: int, r: int) -> int:
    """``sigma = 10 - ell - r``."""
    if not 0 <= ell <= 5 or r < 0:
        raise FibrationError(f"need 0 <= ell <= 5 and r >= 0, got ell={ell}, r={r}")
    s = 10 - ell - r
    if s < 1:
        raise FibrationError(f"sigma = {s} out of range")
    return s


@dataclass(frozen=True)
class ConfigCheck:
    valid: bool
    reason: str

    def __bool__(self):
        return self.valid


ALLOWED_N = (8, 12, 16, 20)


def validate_configuration(fibers, kind: str = "section") -> ConfigCheck:
    """``fibers`` is an iterable of ``"III"``/``"I0*"`` or a mapping type -> count."""
    if kind not in ("section", "two_section"):
        raise FibrationError(f"unknown kind {kind!r}")
    if isinstance(fibers, dict):
        counts = dict(fibers)
    else:
        counts = {}
        for f in fibers:
            counts[f] = counts.get(f, 0) + 1
    bad = set(counts) - {III, I0STAR}
    if bad:
        return ConfigCheck(False, f"fiber types {sorted(bad)} not in {{III, I0*}}")
    n3, ell = counts.get(III, 0), counts.get(I0STAR, 0)
    if n3 + 4 * ell != 20:
        return ConfigCheck(False, f"valuations sum to {n3 + 4 * ell}, not 20")
    if n3 and n3 not in ALLOWED_N:
        return ConfigCheck(
            False,
            f"the III components would give a 2-divisible set of {n3} disjoint (-2)-curves; "
            f"only n in {ALLOWED_N} is possible",
        )
    return ConfigCheck(True, f"{n3} III + {ell} I0*")
