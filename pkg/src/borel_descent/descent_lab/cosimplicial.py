"""Truncated cosimplicial rings: the Amitsur complex of A -> B and the group cobar
complex Map(G^q, B), with the levelwise comparison between them.

Coface ``d^i`` goes from level q-1 to level q (0 <= i <= q), codegeneracy
``s^j`` from level q+1 to level q (0 <= j <= q). Maps are RingMaps with row
convention matrices, so "first F then G" is ``F @ G``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .galois import is_bijective
from .modules import TensorRing
from .rings import DescentError, FRing, GroupAction, RingMap, mat_compose, mat_reduce, product

MAX_LEVEL = 3
FULL_CHECK_LEVEL = 2  # ring-map axioms on all basis pairs up to here, sampled above


@dataclass
class CosimplicialRing:
    name: str
    levels: List[FRing]
    cofaces: Dict[Tuple[int, int], RingMap] = field(default_factory=dict)
    codegeneracies: Dict[Tuple[int, int], RingMap] = field(default_factory=dict)

    @property
    def L(self) -> int:
        return len(self.levels) - 1

    def d(self, q: int, i: int) -> np.ndarray:
        return self.cofaces[(q, i)].F

    def s(self, q: int, j: int) -> np.ndarray:
        return self.codegeneracies[(q, j)].F

    def identity_failures(self) -> List[str]:
        """Every cosimplicial identity among the stored maps; returns the failing ones."""
        bad = []
        L = self.L
        lv = self.levels

        def eq(F, G, q):
            return np.array_equal(mat_reduce(F, lv[q].orders), mat_reduce(G, lv[q].orders))

        # d^j d^i = d^i d^{j-1} for i < j, as maps level q-1 -> q+1
        for q in range(1, L):
            for j in range(q + 2):
                for i in range(j):
                    lhs = mat_compose(self.d(q, i), self.d(q + 1, j), lv[q + 1].orders)
                    rhs = mat_compose(self.d(q, j - 1), self.d(q + 1, i), lv[q + 1].orders)
                    if not eq(lhs, rhs, q + 1):
                        bad.append(f"d^{j} d^{i} = d^{i} d^{j - 1} at level {q - 1}")
        # s^j d^i on level q (d^i: q -> q+1, s^j: q+1 -> q)
        for q in range(0, L):
            ident = np.eye(lv[q].n, dtype=np.int64)
            for j in range(q + 1):
                for i in range(q + 2):
                    lhs = mat_compose(self.d(q + 1, i), self.s(q, j), lv[q].orders)
                    if i < j:
                        rhs = mat_compose(self.s(q - 1, j - 1), self.d(q, i), lv[q].orders)
                    elif i in (j, j + 1):
                        rhs = ident
                    else:
                        rhs = mat_compose(self.s(q - 1, j), self.d(q, i - 1), lv[q].orders)
                    if not eq(lhs, rhs, q):
                        bad.append(f"s^{j} d^{i} at level {q}")
        # s^j s^i = s^i s^{j+1} for i <= j, as maps level q+2 -> q
        for q in range(0, L - 1):
            for j in range(q + 1):
                for i in range(j + 1):
                    lhs = mat_compose(self.s(q + 1, i), self.s(q, j), lv[q].orders)
                    rhs = mat_compose(self.s(q + 1, j + 1), self.s(q, i), lv[q].orders)
                    if not eq(lhs, rhs, q):
                        bad.append(f"s^{j} s^{i} = s^{i} s^{j + 1} at level {q + 2}")
        return bad

    def ring_map_failures(self, sample: int = 40) -> List[str]:
        bad = []
        for label, maps in (("d", self.cofaces), ("s", self.codegeneracies)):
            for (q, i), m in sorted(maps.items()):
                full = m.source.mult is not None and m.target.mult is not None
                ok, why = m.verify(sample=None if full else sample)
                if not ok:
                    bad.append(f"{label}^{i} at level {q}: {why}")
        return bad

    def verify(self) -> None:
        bad = self.identity_failures() + self.ring_map_failures()
        if bad:
            raise DescentError(f"{self.name}: cosimplicial construction failed: {bad[0]}")


def _check_level(L: int) -> None:
    if not 0 <= L <= MAX_LEVEL:
        raise DescentError(f"levels are truncated at {MAX_LEVEL}, got {L}")


# --------------------------------------------------------------- Amitsur
def amitsur_complex(f: RingMap, L: int = 2, verify: bool = True) -> CosimplicialRing:
    """C(B/A): level q is B^{(x)(q+1)} over A."""
    _check_level(L)
    B = f.target
    rings = [TensorRing([f] * (q + 1)) for q in range(L + 1)]
    C = CosimplicialRing(f"C({B.name}/{f.source.name})", rings)
    one = B.one
    MB = B.mult
    for q in range(1, L + 1):
        src, tgt = rings[q - 1].tensor, rings[q].tensor
        for i in range(q + 1):
            def insert(arr, i=i):
                out = np.multiply.outer(arr, one)
                return np.moveaxis(out, -1, i + 1)

            C.cofaces[(q, i)] = RingMap(rings[q - 1], rings[q], src.slot_map(tgt, insert), check=False)
    for q in range(0, L):
        src, tgt = rings[q + 1].tensor, rings[q].tensor
        for j in range(q + 1):
            def merge(arr, j=j):
                moved = np.moveaxis(arr, (j + 1, j + 2), (-2, -1))
                out = np.einsum("...ab,abc->...c", moved, MB)
                return np.moveaxis(out, -1, j + 1)

            C.codegeneracies[(q, j)] = RingMap(rings[q + 1], rings[q], src.slot_map(tgt, merge), check=False)
    if verify:
        C.verify()
    return C


# ----------------------------------------------------------------- cobar
def _tuples(G, q):
    return list(itertools.product(range(G.order), repeat=q))


def cobar_complex(act: GroupAction, L: int = 2, verify: bool = True) -> CosimplicialRing:
    """C(G; B): level q is Map(G^q, B), a product of |G|^q copies of B (lexicographic)."""
    _check_level(L)
    B, G = act.B, act.G
    nB = B.n
    rings = [B] + [product([B] * (G.order ** q)) for q in range(1, L + 1)]
    C = CosimplicialRing(f"C({G.name}; {B.name})", rings)
    index = {q: {t: k for k, t in enumerate(_tuples(G, q))} for q in range(L + 2)}
    I = np.eye(nB, dtype=np.int64)
    for q in range(1, L + 1):
        for i in range(q + 1):
            F = np.zeros((rings[q - 1].n, rings[q].n), dtype=np.int64)
            for t in _tuples(G, q):
                if i == 0:
                    s, M = t[1:], act.mats[t[0]]
                elif i < q:
                    s, M = t[: i - 1] + (G.mul(t[i - 1], t[i]),) + t[i + 1:], I
                else:
                    s, M = t[:-1], I
                a, b = index[q - 1][s], index[q][t]
                F[a * nB:(a + 1) * nB, b * nB:(b + 1) * nB] += M
            C.cofaces[(q, i)] = RingMap(rings[q - 1], rings[q], F, check=False)
    for q in range(0, L):
        for j in range(q + 1):
            F = np.zeros((rings[q + 1].n, rings[q].n), dtype=np.int64)
            for t in _tuples(G, q):
                s = t[:j] + (0,) + t[j:]
                a, b = index[q + 1][s], index[q][t]
                F[a * nB:(a + 1) * nB, b * nB:(b + 1) * nB] += I
            C.codegeneracies[(q, j)] = RingMap(rings[q + 1], rings[q], F, check=False)
    if verify:
        C.verify()
    return C


# ------------------------------------------------------------ comparison
@dataclass
class LevelComparison:
    q: int
    source_order: int
    target_order: int
    bijective: bool
    ring_map: bool
    commutes_with_cofaces: bool

    @property
    def ok(self) -> bool:
        return self.bijective and self.ring_map and self.commutes_with_cofaces

    def to_json(self) -> dict:
        return {"q": self.q, "source_order": self.source_order, "target_order": self.target_order,
                "bijective": self.bijective, "ring_map": self.ring_map,
                "commutes_with_cofaces": self.commutes_with_cofaces}


def comparison_map(amitsur: CosimplicialRing, cobar: CosimplicialRing, act: GroupAction, q: int) -> RingMap:
    """h^q(b_0 (x) ... (x) b_q)(g_1..g_q) = b_0 g_1(b_1) (g_1 g_2)(b_2) ... ."""
    B, G = act.B, act.G
    nB = B.n
    src = amitsur.levels[q]
    tgt = cobar.levels[q]
    tuples = _tuples(G, q)
    H = np.zeros((nB,) * (q + 1) + (len(tuples) * nB,), dtype=np.int64)
    for k, t in enumerate(tuples):
        arr = np.eye(nB, dtype=np.int64)  # b_{i0}
        c = 0
        for slot in range(q):
            c = G.mul(c, t[slot])
            imgs = act.mats[c]  # row x: c(b_x)
            arr = np.einsum("...a,xb,abm->...xm", arr, imgs, B.mult) % B.orders
        H[..., k * nB:(k + 1) * nB] = arr
    F = mat_reduce(src.tensor.E @ H.reshape(-1, len(tuples) * nB), tgt.orders)
    return RingMap(src, tgt, F, check=False, name=f"h^{q}")


def comparison(amitsur: CosimplicialRing, cobar: CosimplicialRing, act: GroupAction,
               L: Optional[int] = None, sample: int = 40) -> List[LevelComparison]:
    L = min(amitsur.L, cobar.L) if L is None else L
    out = []
    maps = {}
    for q in range(L + 1):
        h = comparison_map(amitsur, cobar, act, q)
        maps[q] = h
        bij = is_bijective(h.F, h.source.orders, h.target.orders)
        full = h.source.mult is not None and h.target.mult is not None and q <= FULL_CHECK_LEVEL
        ring_ok, _ = h.verify(sample=None if full else sample)
        comm = True
        if q >= 1:
            for i in range(q + 1):
                lhs = mat_compose(amitsur.d(q, i), h.F, h.target.orders)
                rhs = mat_compose(maps[q - 1].F, cobar.d(q, i), h.target.orders)
                comm = comm and np.array_equal(lhs, rhs)
        out.append(LevelComparison(q, h.source.size, h.target.size, bij, ring_ok, comm))
    return out
