import pytest

import oracles
from borel_descent.descent_lab.corpus import by_name, load_corpus
from borel_descent.descent_lab.cosimplicial import amitsur_complex, cobar_complex, comparison
from borel_descent.descent_lab.rings import DescentError


@pytest.fixture(scope="module")
def f4():
    return by_name("F2->F4")


def test_level_orders(f4):
    A = amitsur_complex(f4.f, 3)
    C = cobar_complex(f4.act, 3)
    assert [R.size for R in A.levels] == oracles.AMITSUR_F4_ORDERS
    assert [R.size for R in C.levels] == oracles.COBAR_F4_ORDERS


def test_identities_hold(f4):
    assert amitsur_complex(f4.f, 3).identity_failures() == []
    assert cobar_complex(f4.act, 3).identity_failures() == []


def test_comparison_bijective(f4):
    comp = comparison(amitsur_complex(f4.f, 3), cobar_complex(f4.act, 3), f4.act)
    assert [c.ok for c in comp] == [True] * 4


def test_identity_failure_detected(f4):
    C = cobar_complex(f4.act, 2)
    C.cofaces[(2, 0)], C.cofaces[(2, 1)] = C.cofaces[(2, 1)], C.cofaces[(2, 0)]
    assert C.identity_failures()


def test_comparison_fails_for_non_galois():
    e = by_name("F2->F2[x]/(x^2) (trivial C2)")
    comp = comparison(amitsur_complex(e.f, 1), cobar_complex(e.act, 1), e.act)
    assert not comp[1].bijective


def test_level_cap(f4):
    with pytest.raises(DescentError):
        amitsur_complex(f4.f, 4)


def test_corpus_loads():
    names = [e.name for e in load_corpus()]
    assert "F3->F9" in names and len(names) == 9
