from fractions import Fraction

import pytest

from k3div.fibration import (
    I0STAR,
    III,
    FibrationError,
    OutOfScope,
    Place,
    WeierstrassQE,
    component_at_I0star,
    discriminant,
    height_ledger,
    intersection_PO,
    is_k3,
    ito_sigma,
    solve_height_ledger,
    torsion_section,
    validate_configuration,
    valuation_profile,
)
from k3div.fibration.weierstrass import SAME_AS_ZERO, passes_through_singular_point, section_satisfies
from k3div.gf import GF2, FiniteField2k, Poly, factor, gcd, parse_poly

from _sweeps import weierstrass_sweep


def P(s, F=GF2):
    return parse_poly(s, F)


def W(phi, a, psi, F=GF2):
    return WeierstrassQE(P(phi, F), P(a, F), P(psi, F))


GENERIC = ("1", "0", "t^5+t^2+1")
SPECIAL = ("t", "0", "t^5+t^4+t")
FIVE_D4 = ("0", "t", "t^5+t^2+1")


# --- factorization --------------------------------------------------------------


def test_factor_examples():
    assert factor(P("t^2+t")) == [(P("t"), 1), (P("t+1"), 1)]
    assert factor(P("t^4+t^2+1")) == [(P("t^2+t+1"), 2)]
    assert factor(P("t^5+t^2+1")) == [(P("t^5+t^2+1"), 1)]
    with pytest.raises(Exception):
        factor(Poly.zero())


# --- discriminant and fibers -----------------------------------------------------


def test_discriminant_examples():
    assert discriminant(W(*GENERIC)) == P("t^20+t^8+t+1")
    psi = P("t^5+t^2+1")
    for a in ("0", "t", "t^3+1"):
        assert discriminant(W("0", a, "t^5+t^2+1")) == psi**4
    assert discriminant(W(*SPECIAL)) == P("t^7") + P("t^4") * P("t^4+t^3+1") ** 4


def test_generic_profile_is_twenty_III():
    Wg = W(*GENERIC)
    D = discriminant(Wg)
    assert gcd(D, D.derivative()).is_one()
    fibers = valuation_profile(Wg)
    assert all(f.fiber_type == III and f.valuation == 1 for f in fibers)
    assert sum(f.geometric_count for f in fibers) == 20
    assert all(not f.place.is_infinity for f in fibers)


def test_five_D4_profile():
    fibers = valuation_profile(W(*FIVE_D4))
    assert len(fibers) == 1
    (f,) = fibers
    assert (f.place.degree, f.valuation, f.fiber_type, f.geometric_count) == (5, 4, I0STAR, 5)


def test_special_profile():
    fibers = valuation_profile(W(*SPECIAL))
    star = [f for f in fibers if f.fiber_type == I0STAR]
    assert len(star) == 1 and star[0].place.poly == P("t")
    assert sum(f.geometric_count for f in fibers if f.fiber_type == III) == 16


def test_fiber_at_infinity_via_flip():
    # swapping t <-> 1/t moves the special I0* fiber to infinity
    Wf = W(*SPECIAL).flipped()
    fibers = valuation_profile(Wf)
    inf = [f for f in fibers if f.place.is_infinity]
    assert len(inf) == 1 and inf[0].fiber_type == I0STAR
    assert sum(f.geometric_count * f.valuation for f in fibers) == 20
    assert Wf.flipped() == W(*SPECIAL)


def test_non_squarefree_psi_is_out_of_scope():
    with pytest.raises(OutOfScope, match="place"):
        valuation_profile(W("0", "t", "t^5+t^3+t^2+1"))  # (t+1)^2 (t^3+t+1) -> v = 8


# --- K3 conditions --------------------------------------------------------------


def test_is_k3_examples():
    assert is_k3(W(*GENERIC))
    chk = is_k3(W("0", "0", "t"))
    assert not chk and any("degree" in r for r in chk.reasons)
    chk = is_k3(W("0", "t^4", "t^5+t^2+1"))
    assert not chk and any("deg" in r for r in chk.reasons)


def test_is_k3_minimality():
    # phi = a = 0 and t^2 | psi: B = t psi^2 has v_0 >= 5, A = 0, so the model is not minimal only if v(B) >= 6
    chk = is_k3(W("0", "0", "t^5+t^3"))
    assert not chk
    assert any("minimal" in r for r in chk.reasons)


# --- torsion section and (P.O) ---------------------------------------------------


def test_torsion_section_examples():
    psi = P("t^5+t^2+1")
    Sec = torsion_section(W(*GENERIC))
    assert Sec.x.num * P("1") == psi**2 * Sec.x.den
    assert Sec.y.num == psi**3 * Sec.y.den
    with pytest.raises(FibrationError, match="phi vanishes"):
        torsion_section(W(*FIVE_D4))
    Wt = W("t", "1", "t^5+t^2+1")
    Sec = torsion_section(Wt)
    assert section_satisfies(Wt, Sec)
    # y = psi^3/t^3 + psi/t
    assert Sec.y.num * P("t^3") == (psi**3 + psi * P("t^2")) * Sec.y.den


def test_torsion_section_random_identity():
    import random

    rng = random.Random(3)
    F = FiniteField2k(3)
    for _ in range(50):
        phi = Poly(F, tuple(rng.randrange(8) for _ in range(4)))
        if not phi:
            continue
        Wr = WeierstrassQE(phi, Poly(F, tuple(rng.randrange(8) for _ in range(4))), Poly(F, tuple(rng.randrange(8) for _ in range(6))))
        assert section_satisfies(Wr, torsion_section(Wr))


def test_intersection_PO():
    assert intersection_PO(W(*GENERIC)) == 3
    assert intersection_PO(W(*SPECIAL)) == 2
    with pytest.raises(FibrationError, match="outside"):
        intersection_PO(W("t^2+t", "0", "t^5+t"))  # gcd = t(t+1)


def test_component_at_I0star():
    Ws = W(*SPECIAL)
    assert component_at_I0star(Ws, Place(P("t"))) == SAME_AS_ZERO
    assert not passes_through_singular_point(Ws, Place(P("t")))
    with pytest.raises(FibrationError, match="not an I0"):
        component_at_I0star(Ws, Place(P("t+1")))
    with pytest.raises(FibrationError, match="not an I0"):
        component_at_I0star(W(*GENERIC), Place(P("t^5+t^2+1")))


def test_component_opposite_is_rejected_upstream():
    # l^3 | psi^2 + a phi^2 forces l^6 | Delta, so such a place is never an I0* place
    Wf = W("t", "0", "t^2")
    h = Wf.psi * Wf.psi + Wf.a * Wf.phi * Wf.phi
    assert h.valuation(P("t")) >= 3
    assert discriminant(Wf).valuation(P("t")) >= 6
    with pytest.raises(FibrationError):
        component_at_I0star(Wf, Place(P("t")))
    with pytest.raises(OutOfScope):
        valuation_profile(Wf)


# --- height ledger --------------------------------------------------------------


def test_height_ledger_examples():
    led = height_ledger(W(*GENERIC))
    assert led.total == 0 and led.po == 3
    assert led.identity() == "0 = 4 + 6 - 20*1/2"
    led = height_ledger(W(*SPECIAL))
    assert led.total == 0 and led.po == 2
    assert "0 = 4 + 4 - 16*1/2" in led.identity()
    star = [e for e in led.entries if e.fiber_type == I0STAR]
    assert [e.contribution for e in star] == [0]


def test_solve_height_ledger():
    assert solve_height_ledger(20, 3).half_count == 20
    assert solve_height_ledger(16, 2, (0,)).half_count == 16
    assert solve_height_ledger(16, 2, (0,)).total == 0
    with pytest.raises(FibrationError, match="no consistent assignment"):
        solve_height_ledger(20, 2)


# --- Ito, configurations --------------------------------------------------------


def test_ito_sigma():
    assert ito_sigma(0, 1) == 9
    assert ito_sigma(5, 0) == 5
    assert ito_sigma(3, 1) == 6
    with pytest.raises(FibrationError):
        ito_sigma(6, 0)
    with pytest.raises(FibrationError):
        ito_sigma(5, 5)


def test_validate_configuration():
    bad = validate_configuration({I0STAR: 4, III: 4})
    assert not bad and "4" in bad.reason
    assert validate_configuration({I0STAR: 5})
    assert validate_configuration([I0STAR] + [III] * 16)
    assert not validate_configuration({III: 19})
    assert not validate_configuration({"I1": 20})


@pytest.mark.parametrize("n3,ell", [(20 - 4 * e, e) for e in range(6)])
def test_configuration_oracle(n3, ell):
    assert bool(validate_configuration({III: n3, I0STAR: ell})) == (n3 in (0, 8, 12, 16, 20))


# --- invariant sweep --------------------------------------------------------------


def test_valuation_sum_sweep():
    counts, failures = weierstrass_sweep()
    assert counts["passing"] >= 10_000
    assert failures == ()


def test_phi_zero_is_fourth_power():
    import itertools

    for a, psi in itertools.product(range(16), range(64)):
        Wz = WeierstrassQE(Poly.zero(), Poly(GF2, tuple((a >> i) & 1 for i in range(4))), Poly(GF2, tuple((psi >> i) & 1 for i in range(6))))
        D = discriminant(Wz)
        assert D == Wz.psi**4
        assert all(m % 4 == 0 for _, m in (factor(D) if D else []))


def test_III_places_always_meet_singular_point():
    # phi is a unit at every III place, so the geometric ledger never assigns 0 there
    for args in (GENERIC, SPECIAL, ("t+1", "t", "t^5+t^3+1")):
        Wx = W(*args)
        if not is_k3(Wx):
            continue
        for e in height_ledger(Wx).entries:
            if e.fiber_type == III:
                assert e.contribution == Fraction(1, 2)
