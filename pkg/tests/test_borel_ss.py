from fractions import Fraction

import pytest

import oracles
from borel_descent.borel_ss import (SSError, Window, build_e1, check_d_squared, check_degrees, compare_einfty,
                                    compare_pages, comparison_ring, group_cohomology_c2, rule_text, run_to_einfty,
                                    sigma_module, turn_page)
from borel_descent.ro2_ring import ROdeg
from borel_descent.sequences import GenSequence

U_ALT = GenSequence.from_polys(2, [{(1, 0): Fraction(3)}, {(0, 1): Fraction(1), (3, 0): Fraction(1)}])


def pages(window, u=None):
    p = build_e1(window, u)
    out = [p]
    while not p.is_final:
        p = turn_page(p)
        out.append(p)
    return out


def test_rules():
    assert rule_text(GenSequence.hazewinkel(0), 0) == "d_1(s^-1) = 2*a^1 = (2)*a^1"
    alt = GenSequence.from_polys(1, [{(1,): Fraction(3)}])
    assert rule_text(alt, 1).startswith("d_3(s^-2) = 3^-1*u1*a^3")


def test_c2_cohomology_trivial_and_sign():
    triv = group_cohomology_c2([[1]], 5)
    sign = group_cohomology_c2([[-1]], 5)
    for s in range(6):
        assert tuple(triv[s]) == oracles.c2_sigma_cohomology(0, s)
        assert tuple(sign[s]) == oracles.c2_sigma_cohomology(1, s)


def test_c2_cohomology_rejects_non_involution():
    with pytest.raises(SSError):
        group_cohomology_c2([[2]], 2)


def test_page_after_d1_matches_hand_oracle():
    W = Window(0, -6, 6, 6, 0)
    p = turn_page(build_e1(W))
    for blk in p.report_blocks():
        J, w, e = blk
        assert tuple(p.group(blk).orders) == oracles.e2_after_d1(J, e), blk


def test_einfty_n1_hand_oracle():
    W = Window(1, -12, 12, 8, 1)
    p = run_to_einfty(W)
    assert p.is_final
    for blk in p.report_blocks():
        J, w, e = blk
        assert tuple(p.group(blk).orders) == oracles.e_infinity_n1(J, w, e), blk


def test_d_squared_on_all_pages():
    for W, u in ((Window(1, -16, 16, 8, 3), None), (Window(2, -12, 12, 8, 4), U_ALT)):
        assert all(check_d_squared(p) for p in pages(W, u))


def test_d_squared_detects_corruption():
    p = build_e1(Window(1, -8, 8, 6, 2))
    p = turn_page(p)  # now on the d_3 page
    blk = next(b for b in sorted(p.Z) if b[0] % 4 == 2 and p.Z[b] and b[1] == 1 and 0 < b[2] < 3
               and (b[0] + 2, b[1] + 1, b[2] + 3) in p.Z)
    tgt = (blk[0] + 2, blk[1] + 1, blk[2] + 3)
    p.Z[tgt] = ()  # pretend nothing in the target is a cycle
    assert not check_d_squared(p)


def test_degrees_of_differentials():
    assert check_degrees(Window(2, -8, 8, 8, 3))


def test_compare_small_windows():
    for W, u in ((Window(1, -8, 8, 8, 3), None), (Window(2, -8, 8, 8, 4), U_ALT)):
        rep = compare_einfty(run_to_einfty(W, u), comparison_ring(W, u))
        assert rep.match, rep.first_mismatch
        assert rep.checked_products >= 100


def test_compare_detects_wrong_presentation():
    W = Window(1, -8, 8, 8, 3)
    R = comparison_ring(W).with_annihilator(1, 2)
    assert not compare_einfty(run_to_einfty(W), R).match


def test_pad_stability():
    W = Window(1, -8, 8, 6, 3)
    assert compare_pages(run_to_einfty(W), run_to_einfty(W, pad=2)) is None


def test_dump_format():
    d = run_to_einfty(Window(1, -4, 4, 4, 1)).dump()
    assert set(d) == {"r", "classes", "edge_flagged"}
    assert d["r"] == 4
    c = d["classes"][0]
    assert set(c) == {"s", "deg", "name", "group"}
    assert c["group"] == "Z" or c["group"].startswith("Z/")


def test_window_validation():
    with pytest.raises(SSError):
        Window(1, 4, -4, 2)
    with pytest.raises(SSError):
        build_e1(Window(2, -4, 4, 2), GenSequence.hazewinkel(1))


def test_sigma_module_grades():
    T, grades = sigma_module(-3, 3)
    gc = group_cohomology_c2(T, 3, grades)
    for (s, g), orders in gc.items():
        assert tuple(orders) == oracles.c2_sigma_cohomology(g, s)
