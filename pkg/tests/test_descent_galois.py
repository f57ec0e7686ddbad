import numpy as np
import pytest

from borel_descent.descent_lab.galois import (SemilinearAction, action_to_datum, canonical_datum, check_cocycle,
                                              datum_to_action, descend, descend_extend_iso, extend,
                                              extend_descend_iso, find_non_datum, is_galois, require_galois)
from borel_descent.descent_lab.modules import free_module, module_iso_type
from borel_descent.descent_lab.rings import (DescentError, FiniteGroup, GroupAction, gf, map_from_images,
                                             quotient, zmod)

F2, F4 = zmod(2), gf(2, [1, 1, 1])


@pytest.fixture(scope="module")
def frob():
    f = map_from_images(F2, F4, {})
    return f, GroupAction.cyclic_from_generator(F4, 2, {"x": F4.gens["x"] + F4.one}, f)


def test_galois_verdicts(frob):
    f, act = frob
    rep = is_galois(f, act)
    assert rep.galois and rep.tensor_order == 16 and rep.fixed_order == 2
    D = quotient(F2, [[0, 0, 1]])
    g = map_from_images(F2, D, {})
    triv = GroupAction(FiniteGroup.cyclic(2), D, [np.eye(2, dtype=np.int64)] * 2, g)
    bad = is_galois(g, triv)
    assert not bad.galois and not bad.h_bijective
    with pytest.raises(DescentError):
        require_galois(g, triv)


def test_canonical_datum_and_action(frob):
    f, act = frob
    M = free_module(F2, 2)
    d = canonical_datum(M, f)
    assert check_cocycle(d)
    s = datum_to_action(d, act)
    e = extend(M, f, act)
    assert np.array_equal(s.sigma[1], e.action.sigma[1])
    back = action_to_datum(s, f)
    assert np.array_equal(back.phi, d.phi) and check_cocycle(back)


def test_non_datum_fails_cocycle(frob):
    f, _ = frob
    found = find_non_datum(canonical_datum(free_module(F2, 1), f))
    assert found is not None
    bad, _alpha = found
    assert not check_cocycle(bad)


def test_swapped_frobenius_datum(frob):
    f, act = frob
    N = free_module(F4, 2)
    fr = act.mats[1]
    sw = np.zeros((4, 4), dtype=np.int64)
    sw[0:2, 2:4] = fr
    sw[2:4, 0:2] = fr
    sa = SemilinearAction(act, N, [np.eye(4, dtype=np.int64), sw])
    assert check_cocycle(action_to_datum(sa, f))
    assert module_iso_type(descend(sa, f).module) == (2, 2)
    assert extend_descend_iso(sa, f).ok


def test_twisted_rank_one_descends(frob):
    f, act = frob
    N = free_module(F4, 1)
    sa = SemilinearAction(act, N, [np.eye(2, dtype=np.int64), act.mats[1]])
    assert descend(sa, f).module.size == 2


def test_roundtrip_f2_square(frob):
    f, act = frob
    M = free_module(F2, 2)
    assert descend_extend_iso(M, f, act).ok


def test_semilinear_action_rejects_linear_twist(frob):
    f, act = frob
    N = free_module(F4, 1)
    with pytest.raises(DescentError):
        SemilinearAction(act, N, [np.eye(2, dtype=np.int64), np.eye(2, dtype=np.int64)])
