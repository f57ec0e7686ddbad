from fractions import Fraction

from borel_descent.sequences import GenSequence, validate_sequence


def test_hazewinkel_valid():
    assert validate_sequence(GenSequence.hazewinkel(3)).valid


def test_corrected_sequence_valid():
    u = GenSequence.from_polys(2, [{(1, 0): Fraction(3)}, {(0, 1): Fraction(1), (3, 0): Fraction(1)}])
    assert validate_sequence(u).valid
    assert u.leading(1) == 3


def test_even_leading_coefficient_rejected():
    u = GenSequence.from_polys(1, [{(1,): Fraction(2)}])
    rep = validate_sequence(u)
    assert not rep.valid and "unit" in rep.diagnostics[0]


def test_inhomogeneous_rejected():
    u = GenSequence.from_polys(2, [{(1, 0): Fraction(1)}, {(0, 1): Fraction(1), (1, 0): Fraction(1)}])
    assert not validate_sequence(u).valid


def test_json_roundtrip_and_inverse():
    u = GenSequence.from_polys(2, [{(1, 0): Fraction(3)}, {(0, 1): Fraction(1), (3, 0): Fraction(1)}])
    w = GenSequence.from_json(2, u.to_json())
    assert [w.poly(k) for k in (1, 2)] == [u.poly(k) for k in (1, 2)]
    inv = u.inverse()
    assert inv.leading(1) == Fraction(1, 3)
