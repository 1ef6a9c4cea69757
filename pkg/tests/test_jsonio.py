from fractions import Fraction

from htgroth import jsonio
from htgroth.jl_red import red_tau
from htgroth.modl import FieldData, SupercuspidalData
from htgroth.segments import (
    CuspidalLabel,
    GrothElement,
    make_speh_st,
    make_steinberg,
)
from htgroth.symbolic import atom, integer

PI = CuspidalLabel("pi", g=1)


def test_multisegment_round_trip():
    ms = make_speh_st(PI, 3, 2).multisegments()[0]
    data = jsonio.multisegment_to_json(ms)
    assert data == [["pi", -3, 2], ["pi", -1, 2], ["pi", 1, 2]]
    assert jsonio.multisegment_from_json(data, {"pi": PI}) == ms


def test_groth_round_trip_integer_coeffs():
    x = GrothElement.of(make_steinberg(PI, 2), Fraction(1, 2), -3)
    data = jsonio.groth_to_json(x)
    assert jsonio.groth_from_json(data, {"pi": PI}) == x


def test_groth_round_trip_symbolic_coeffs():
    c = atom("m(Pi)") * atom("dxi") * 2 + integer(1)
    x = GrothElement.of(make_speh_st(PI, 2, 1), 0, c)
    data = jsonio.groth_to_json(x)
    assert jsonio.groth_from_json(data, {"pi": PI}) == x


def test_transfer_output_round_trips():
    x = GrothElement.of(make_speh_st(PI, 2, 2))
    out = red_tau(PI, 1, x)
    data = jsonio.groth_to_json(out)
    assert jsonio.groth_from_json(data, {"pi": PI}) == out


def test_supercuspidal_round_trip():
    sc = SupercuspidalData(CuspidalLabel("rho", g=2), FieldData(4, 3), 1)
    data = jsonio.supercuspidal_to_json(sc)
    back = jsonio.supercuspidal_from_json(data)
    assert back.label.id == "rho" and back.label.g == 2
    assert back.field == sc.field and back.epsilon == 1


def test_sym_power_round_trip():
    c = atom("x") * atom("x") * atom("y")
    assert jsonio.sym_from_json(jsonio.sym_to_json(c)) == c
