import pytest

import oracles
from borel_descent.jw_invariants import (invariants_table, lam, nilpotency_order, periodicity_check, profile,
                                         ring_for, tate_trivial_check, x_class, y_class, y_inverse,
                                         y_sigma_exponent)
from borel_descent.ro2_ring import ROdeg, en_ring


@pytest.mark.parametrize("n", [1, 2])
def test_profile_published(n):
    p = profile(n)
    assert (p.lam, p.nilpotency, p.period) == oracles.PROFILE_PUBLISHED[n]


@pytest.mark.parametrize("n", [3, 4])
def test_profile_derived(n):
    p = profile(n)
    assert (p.lam, p.nilpotency, p.period) == oracles.PROFILE_DERIVED[n]


def test_profile_rejects_zero():
    with pytest.raises(ValueError):
        profile(0)


def test_periodicity_identity():
    assert all(periodicity_check(n) for n in range(1, 65))
    assert lam(64) + 1 == 2 * (2 ** 64 - 1) ** 2


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_y_and_x_degrees(n):
    R = ring_for(n)
    assert y_sigma_exponent(n) == oracles.Y_SIGMA_EXPONENT[n]
    assert R.degree_of(y_class(n, R)) == ROdeg(*oracles.Y_DEGREE[n])
    assert R.degree_of(x_class(n, R)) == ROdeg(oracles.Y_DEGREE[n][0], 0)
    assert y_class(n, R) * y_inverse(n, R) == R.one()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_x_nilpotency_sharp(n):
    R = ring_for(n, 2 ** (n + 1))
    x = x_class(n, R)
    assert nilpotency_order(x, 2 ** (n + 2)) == 2 ** (n + 1) - 1


def test_x2_seventh_power():
    R = ring_for(2, 7)
    assert not R.power(x_class(2, R), 7)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_tate_trivial(n):
    assert tate_trivial_check(n)


def test_tate_negative_control():
    R = en_ring(1).with_annihilator(1, None)
    assert not tate_trivial_check(1, R)


def test_table_rows():
    rows = invariants_table(2)
    assert [(r["n"], r["lambda"], r["nilpotency"], r["period"], r["periodicity_check"]) for r in rows] == [
        (1, 1, 3, 2, True), (2, 17, 7, 6, True)]
