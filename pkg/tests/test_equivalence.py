import numpy as np
import pytest

import oracles
from borel_descent.descent_lab.corpus import by_name
from borel_descent.descent_lab.equivalence import (a_modules, equivalence_report, is_semisimple,
                                                   primitive_idempotents, roundtrip_sweep)
from borel_descent.descent_lab.rings import DescentError


def test_f4_report():
    e = by_name("F2->F4")
    rep = equivalence_report(e.f, e.act, 64)
    assert rep.complete and not rep.unmatched
    assert rep.a_classes == rep.semilinear_classes == 3
    got = {r.shape[0]: r.structures for r in rep.rows}
    assert got == oracles.F4_STRUCTURES
    assert all(r.structures == r.orbit for r in rep.rows)


def test_f4_bound_16():
    e = by_name("F2->F4")
    rep = equivalence_report(e.f, e.act, 16)
    assert rep.complete and rep.a_classes == rep.semilinear_classes == 2


def test_trivial_extension_report():
    e = by_name("F2->F2xF2")
    rep = equivalence_report(e.f, e.act, 64)
    assert rep.complete and rep.a_classes == rep.semilinear_classes


def test_idempotents():
    e = by_name("F2->F2xF2")
    assert len(primitive_idempotents(e.B)) == 2
    assert is_semisimple(e.B)
    assert not is_semisimple(by_name("F2[x]/(x^2)->(F2[x]/(x^2))^2").B)


def test_roundtrips_all_small_modules():
    for name in ("F2->F4", "F2->F2xF2"):
        e = by_name(name)
        sweep = roundtrip_sweep(e.f, e.act, 64)
        assert len(sweep) == 6 and all(sweep.values())


def test_refuses_non_galois():
    e = by_name("F2->F2[x]/(x^2) (trivial C2)")
    with pytest.raises(DescentError):
        equivalence_report(e.f, e.act, 16)


def test_a_modules_sizes():
    e = by_name("F2->F4")
    sizes = sorted(M.size for M in a_modules(e.f, 64))
    assert sizes == [2, 4, 8, 16, 32, 64]
