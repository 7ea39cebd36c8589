import pytest

from k3div.lattice import ExprError, build_lattice, parse_lattice_expr


@pytest.mark.parametrize("text", ["U(2)+D4+D4+~A1^12", "U + E8(2) + ~A1^12", "U⊕D4^5", "(U+A1)(2)"])
def test_parse_round_trip(text):
    node = parse_lattice_expr(text)
    assert parse_lattice_expr(str(node)) == node


@pytest.mark.parametrize("bad", ["~A1^6", "E5", "A0", "U+", "X3", "D4)", "D3"])
def test_malformed(bad):
    with pytest.raises(ExprError):
        build_lattice(bad)


def test_twist_and_power():
    L = build_lattice("A1(3)^2")
    assert L.gram == ((-6, 0), (0, -6))
    assert build_lattice("D4^5").rank == 20
    assert build_lattice("D4+D4").gram == build_lattice("D4^2").gram


def test_e8_is_unimodular_negative_definite():
    L = build_lattice("E8")
    assert L.det == 1 and L.signature == (0, 8)
