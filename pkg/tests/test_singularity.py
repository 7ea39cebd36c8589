import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k3div.gf import GF2, FiniteField2k, ParseError
from k3div.singularity import (
    A1,
    D4,
    D6,
    D8,
    E7,
    E8,
    NONSINGULAR,
    NORMAL_FORMS,
    UNSUPPORTED,
    BiSeries,
    classify,
    decompose,
    jacobian_colength,
    parse_bipoly,
    recompose,
)

from _sweeps import coordinate_variant, singularity_sweep

EXPECTED = {A1: 1, D4: 4, D6: 6, E7: 7, D8: 8, E8: 8}


def B(text, F=GF2):
    return parse_bipoly(text, F)


def test_decompose_examples():
    f1, f2, f3, f4 = decompose(B("t*s"))
    assert not f1 and not f2 and f3 == B("1") and not f4
    f1, f2, f3, f4 = decompose(B("t^3 + s^5"))
    assert f1 == B("t") and f2 == B("s^2") and not f3 and not f4
    f1, f2, f3, f4 = decompose(B("t^2"))
    assert f4 == B("t") and not (f1 or f2 or f3)


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 7), st.integers(0, 7)), st.integers(1, 15), max_size=20))
def test_decompose_roundtrip(terms):
    F = FiniteField2k(4)
    f = BiSeries(F, terms)
    assert recompose(*decompose(f)) == f


def test_colength_examples():
    assert jacobian_colength(B("t*s")).value == 1
    assert jacobian_colength(B("t*s*(t+s)")).value == 4
    assert jacobian_colength(B("t^3 + s^5")).value == 8


@pytest.mark.parametrize("name", list(NORMAL_FORMS))
def test_normal_forms(name):
    v = classify(B(NORMAL_FORMS[name]))
    assert (v.type, v.colength.value) == (name, EXPECTED[name])
    assert v.colength == jacobian_colength(B(NORMAL_FORMS[name]))
    assert v.normal_form_trace


@pytest.mark.parametrize("name", list(NORMAL_FORMS))
def test_normal_forms_gf16(name):
    v = classify(B(NORMAL_FORMS[name], FiniteField2k(4)))
    assert (v.type, v.colength.value) == (name, EXPECTED[name])


def test_classify_spec_examples():
    assert (classify(B("t^2*s + t*s^3")).type, classify(B("t^3 + s^3*t")).type, classify(B("t^2*s + t*s^4")).type) == (D6, E7, D8)


def test_nonsingular_and_unsupported():
    assert classify(B("t + s^2")).type == NONSINGULAR
    assert jacobian_colength(B("t + s^2")).value == 0
    # higher colength: t^3 + s^7 has (t^2, s^6): colength 12
    v = classify(B("t^3 + s^7"))
    assert v.type == UNSUPPORTED and v.colength.value is None
    assert v.to_json()["colength"] == ">=9"
    # vanishing cubic part
    assert classify(B("t^5 + s^5")).type == UNSUPPORTED


def test_square_terms_are_absorbed():
    v = classify(B("t*s + t^2 + s^4"))
    assert v.type == A1
    assert any(step.startswith("z -> z +") for step in v.normal_form_trace)


def test_single_variant_is_stable():
    rng = random.Random(0)
    F = FiniteField2k(2)
    g = coordinate_variant(B(NORMAL_FORMS[E7], F), F, rng)
    assert classify(g).type == E7


def test_coordinate_changed_variants():
    out = singularity_sweep()
    for name, (n, bad) in out.items():
        assert n == 1000
        assert bad == (), f"{name}: {bad[:3]}"


def test_parse():
    assert B("t^2*s + t*s^3") == B("t*s^3+s*t^2")
    assert B("(t+s)^2") == B("t^2+s^2")
    F = FiniteField2k(2)
    assert B("g*t", F).terms == {(1, 0): 2}
    with pytest.raises(ParseError):
        B("t^^2")
    with pytest.raises(ParseError):
        B("x*t")
