"""Evidence that extension of scalars is an equivalence, by exhaustive counting.

Scope: B semisimple (a product of finite fields K_j = e_j B) and G cyclic
with generator g. A B-module is then ``N = sum_j K_j^{m_j}`` and every
semilinear action has the form ``sigma = S o sigma_0`` where ``sigma_0``
applies g coordinatewise (moving block j to block pi(j)) and S is a
B-linear automorphism. The g-action is determined by S subject to
``S g(S) ... g^{r-1}(S) = 1``. Isomorphism classes of semilinear structures
on N are the orbits of GL_B(N) acting by ``P . sigma = P sigma P^{-1}``.

For each shape the report counts all structures T(N) and compares with the
orbit of the extended module ``sigma_0`` (size |GL_B(N)| / |Stab(sigma_0)|).
Equality means every semilinear module of that shape is extended, and the
descent round trips are then run on explicit modules.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .galois import (SemilinearAction, descend, descend_extend_iso, extend, extend_descend_iso, is_galois,
                     subgroup_module)
from .modules import FModule, regular_module
from .rings import DescentError, FRing, GroupAction, RingMap

ENUM_CAP = 2_000_000


def idempotents(R: FRing) -> List[np.ndarray]:
    els = R.element_array()
    sq = np.mod(np.einsum("ai,aj,ijk->ak", els, els, R.mult), R.orders)
    return [e for e, s in zip(els, sq) if np.array_equal(e, s)]


def primitive_idempotents(R: FRing) -> List[np.ndarray]:
    """Nonzero idempotents e with no idempotent strictly below them (f e = f)."""
    ids = [e for e in idempotents(R) if e.any()]
    out = []
    for e in ids:
        below = [f for f in ids if not np.array_equal(f, e) and np.array_equal(R.mul(f, e), f)]
        if not below:
            out.append(e)
    return out


def is_semisimple(R: FRing) -> bool:
    if any(not _is_prime(int(o)) for o in R.orders):
        return False
    els = R.element_array()
    sq = np.mod(np.einsum("ai,aj,ijk->ak", els, els, R.mult), R.orders)
    return int((~sq.any(axis=1)).sum()) == 1


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


class FieldBlock:
    """K = eB with element tables indexed by F_p-digit combinations."""

    def __init__(self, B: FRing, e: np.ndarray):
        self.B = B
        self.e = e
        els = {}
        for x in B.element_array():
            y = B.mul(e, x)
            els[B.index_of(y)] = y
        self.p = int(next(o for o, v in zip(B.orders, e) if v))
        basis: List[np.ndarray] = []
        span = {B.index_of(B.zero())}
        for idx, y in sorted(els.items()):
            if idx not in span:
                basis.append(y)
                span = {B.index_of(v) for v in self._span_elems(basis)}
        self.basis = basis
        self.d = len(basis)
        self.q = self.p ** self.d
        self.elems = []
        self.index = {}
        for k, digits in enumerate(itertools.product(range(self.p), repeat=self.d)):
            v = B.reduce(sum((c * b for c, b in zip(digits, basis)), B.zero()))
            self.elems.append(v)
            self.index[B.index_of(v)] = k
        if len(self.index) != self.q or len(els) != self.q:
            raise DescentError("block basis computation failed")
        self.digits = np.array(list(itertools.product(range(self.p), repeat=self.d)), dtype=np.int64).reshape(self.q, self.d)
        q = self.q
        self.add = np.array([[self.lookup(B.add(self.elems[a], self.elems[b])) for b in range(q)] for a in range(q)])
        self.mul = np.array([[self.lookup(B.mul(self.elems[a], self.elems[b])) for b in range(q)] for a in range(q)])
        self.neg = np.array([self.lookup(B.reduce(-self.elems[a])) for a in range(q)])
        self.one = self.lookup(e)

    def _span_elems(self, basis):
        out = []
        for digits in itertools.product(range(self.p), repeat=len(basis)):
            out.append(self.B.reduce(sum((c * b for c, b in zip(digits, basis)), self.B.zero())))
        return out

    def lookup(self, v) -> int:
        return self.index[self.B.index_of(v)]


def _matmul(A, Bm, K: FieldBlock):
    """Batched matrix product over K with index tables; shapes (..., m, m)."""
    m = A.shape[-1]
    out = None
    for j in range(m):
        term = K.mul[A[..., :, j][..., :, None], Bm[..., j, :][..., None, :]]
        out = term if out is None else K.add[out, term]
    return out


def _det(A, K: FieldBlock):
    m = A.shape[-1]
    total = np.zeros(A.shape[:-2], dtype=np.int64)
    for perm in itertools.permutations(range(m)):
        sign = 1
        for i in range(m):
            for j in range(i + 1, m):
                if perm[i] > perm[j]:
                    sign = -sign
        term = np.full(A.shape[:-2], K.one, dtype=np.int64)
        for i in range(m):
            term = K.mul[term, A[..., i, perm[i]]]
        if sign < 0:
            term = K.neg[term]
        total = K.add[total, term]
    return total


def general_linear(K: FieldBlock, m: int) -> np.ndarray:
    if m == 0:
        return np.zeros((1, 0, 0), dtype=np.int64)
    count = K.q ** (m * m)
    if count > ENUM_CAP:
        raise DescentError(f"GL_{m} over a field of order {K.q} is too large to enumerate")
    allm = np.array(list(itertools.product(range(K.q), repeat=m * m)), dtype=np.int64).reshape(count, m, m)
    return allm[_det(allm, K) != 0]


@dataclass
class ShapeRow:
    shape: Tuple[int, ...]
    size: int
    structures: int  # T(N)
    gl_order: int
    stabilizer: int  # |Stab(sigma_0)|
    orbit: int
    descended_order: Optional[int]
    a_module: Optional[Tuple[int, ...]]
    round_trips: int
    matched: bool
    partial: bool = False

    def to_json(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


@dataclass
class EquivalenceReport:
    complete: bool
    size_bound: int
    rows: List[ShapeRow] = field(default_factory=list)
    a_classes: int = 0
    semilinear_classes: int = 0
    unmatched: List[str] = field(default_factory=list)
    partial: bool = False
    empty_shapes: int = 0

    def to_json(self) -> dict:
        return {"complete": self.complete, "size_bound": self.size_bound, "a_classes": self.a_classes,
                "semilinear_classes": self.semilinear_classes, "partial": self.partial,
                "empty_shapes": self.empty_shapes,
                "unmatched": self.unmatched, "rows": [r.to_json() for r in self.rows]}


class _Setup:
    def __init__(self, f: RingMap, act: GroupAction):
        self.f, self.act = f, act
        B, A, G = f.target, f.source, act.G
        self.B, self.A = B, A
        gens = [g for g in G.elements() if _element_order(G, g) == G.order]
        if not gens:
            raise DescentError("equivalence_report handles cyclic groups only")
        self.g = gens[0]
        self.r = G.order
        if not is_semisimple(B):
            raise DescentError("equivalence_report needs a semisimple B (product of fields)")
        self.es = primitive_idempotents(B)
        self.blocks = [FieldBlock(B, e) for e in self.es]
        M = act.mats[self.g]
        self.pi = []
        for e in self.es:
            ge = B.reduce(e @ M)
            self.pi.append(next(k for k, e2 in enumerate(self.es) if np.array_equal(ge, e2)))
        # g: K_j -> K_{pi(j)} on element indices
        self.gmap = []
        for j, K in enumerate(self.blocks):
            K2 = self.blocks[self.pi[j]]
            self.gmap.append(np.array([K2.lookup(B.reduce(K.elems[a] @ M)) for a in range(K.q)]))
        self.fs = primitive_idempotents(A)

    def ginv(self, j):
        return self.pi.index(j)


def _element_order(G, g) -> int:
    k, x = 1, g
    while x != 0:
        x = G.mul(x, g)
        k += 1
    return k


def _shapes(sizes: Sequence[int], bound: int):
    def rec(j, acc, size):
        if j == len(sizes):
            yield tuple(acc), size
            return
        m = 0
        s = size
        while s <= bound:
            yield from rec(j + 1, acc + [m], s)
            m += 1
            s *= sizes[j]

    yield from rec(0, [], 1)


def _build_module(st: _Setup, shape, S) -> SemilinearAction:
    """Explicit module sum_j K_j^{m_j} and sigma = S o sigma_0 as additive matrices."""
    B = st.B
    offs, orders = [], []
    for j, K in enumerate(st.blocks):
        offs.append(len(orders))
        orders += [K.p] * (shape[j] * K.d)
    n = len(orders)

    def coords(j, value_idx):
        return st.blocks[j].digits[value_idx]

    def pos(j, c):
        return offs[j] + c * st.blocks[j].d

    acts = []
    for i in range(B.n):
        b = B.basis(i)
        mat = np.zeros((n, n), dtype=np.int64)
        for j, K in enumerate(st.blocks):
            for c in range(shape[j]):
                for t, beta in enumerate(K.basis):
                    v = K.lookup(B.mul(b, beta))
                    mat[pos(j, c) + t, pos(j, c):pos(j, c) + K.d] = coords(j, v)
        acts.append(mat)
    N = FModule(B, orders, acts, name="N")
    G = st.act.G
    sigma_g = np.zeros((n, n), dtype=np.int64)
    for j, K in enumerate(st.blocks):
        k = st.pi[j]
        K2 = st.blocks[k]
        for c in range(shape[j]):
            for t, beta in enumerate(K.basis):
                gb = st.gmap[j][K.lookup(beta)]
                for i in range(shape[k]):
                    v = K2.mul[S[k][i, c], gb]
                    sigma_g[pos(j, c) + t, pos(k, i):pos(k, i) + K2.d] = coords(k, v)
    mats = [np.eye(n, dtype=np.int64)]
    # group element g^k acts by sigma^k; index the cyclic group by powers of the generator
    power = {0: mats[0]}
    cur = np.eye(n, dtype=np.int64)
    x = 0
    for _ in range(1, st.r):
        cur = np.mod(cur @ sigma_g, orders)
        x = G.mul(st.g, x)
        power[x] = cur
    return SemilinearAction(st.act, N, [power[h] for h in G.elements()])


def equivalence_report(f: RingMap, act: GroupAction, size_bound: int, samples: int = 3, seed: int = 0) -> EquivalenceReport:
    rep = is_galois(f, act, with_inverse=False)
    if not rep.galois:
        raise DescentError("equivalence_report refuses non-Galois input: " + "; ".join(rep.notes))
    st = _Setup(f, act)
    out = EquivalenceReport(True, size_bound)
    rng = np.random.default_rng(seed)
    nblocks = len(st.blocks)
    shapes_hit = {}
    for shape, size in _shapes([K.q for K in st.blocks], size_bound):
        if size == 1:
            continue
        if any(shape[j] != shape[st.pi[j]] for j in range(nblocks)):
            # sigma would move a block onto one of different size: no structures, no extended module
            out.empty_shapes += 1
            continue
        try:
            gls = [general_linear(K, shape[j]) for j, K in enumerate(st.blocks)]
        except DescentError as exc:
            out.partial = True
            out.unmatched.append(f"shape {shape}: {exc}")
            out.rows.append(ShapeRow(shape, size, -1, -1, -1, -1, None, None, 0, False, True))
            continue
        total = int(np.prod([len(g) for g in gls], dtype=object))
        if total > ENUM_CAP:
            out.partial = True
            out.unmatched.append(f"shape {shape}: {total} automorphisms exceed the cap")
            out.rows.append(ShapeRow(shape, size, -1, total, -1, -1, None, None, 0, False, True))
            continue
        grids = np.meshgrid(*[np.arange(len(g)) for g in gls], indexing="ij")
        choice = [gr.ravel() for gr in grids]
        Ssel = [gls[j][choice[j]] for j in range(nblocks)]
        T_ok = np.ones(total, dtype=bool)
        stab = np.ones(total, dtype=bool)
        for k in range(nblocks):
            K = st.blocks[k]
            if shape[k] == 0:
                continue
            prod = Ssel[k]
            src = k
            applied = [np.arange(K.q)]
            # g^t(S_{pi^{-t} k}) for t = 1..r-1
            for t in range(1, st.r):
                src = st.ginv(src)
                mat = Ssel[src]
                j = src
                for _ in range(t):
                    mat = st.gmap[j][mat]
                    j = st.pi[j]
                prod = _matmul(prod, mat, K)
            eye = np.where(np.eye(shape[k], dtype=bool), K.one, 0)
            T_ok &= np.all(prod == eye, axis=(1, 2))
            # Stab(sigma_0): P_{pi(j)} = g(P_j)
            j = st.ginv(k)
            stab &= np.all(Ssel[k] == st.gmap[j][Ssel[j]], axis=(1, 2))
        T = int(T_ok.sum())
        S0 = int(stab.sum())
        orbit = total // S0
        idx0 = [np.eye(shape[j], dtype=np.int64) * st.blocks[j].one for j in range(nblocks)]
        sl = _build_module(st, shape, idx0)
        D = descend(sl, f)
        dorder = 1 if D.module is None else D.module.size
        trips = 0
        ok_trips = extend_descend_iso(sl, f).ok
        trips += 1
        valid = np.nonzero(T_ok)[0]
        for k in rng.choice(valid, size=min(samples, len(valid)), replace=False):
            Sk = [Ssel[j][k] for j in range(nblocks)]
            ok_trips = ok_trips and extend_descend_iso(_build_module(st, shape, Sk), f).ok
            trips += 1
        if D.module is not None:
            ok_trips = ok_trips and descend_extend_iso(D.module, f, act).ok
            trips += 1
        a_type = tuple(D.module.invariant_factors()) if D.module is not None else ()
        matched = (T == orbit) and ok_trips
        row = ShapeRow(shape, size, T, total, S0, orbit, dorder, a_type, trips, matched)
        out.rows.append(row)
        out.semilinear_classes += 1 if T else 0
        shapes_hit[shape] = row
        if not matched:
            out.complete = False
            out.unmatched.append(f"shape {shape}: {T} structures, orbit of the extended one has {orbit}")
    # A-module side: sum_i (A f_i)^{k_i}, mapped to shapes
    Bsz = [K.q for K in st.blocks]
    for ks in itertools.product(*[range(0, 13) for _ in st.fs]):
        shape = [0] * nblocks
        for i, fi in enumerate(st.fs):
            img = f(fi)
            for j, e in enumerate(st.es):
                if np.array_equal(st.B.mul(img, e), e):
                    shape[j] += ks[i]
        shape = tuple(shape)
        size = int(np.prod([Bsz[j] ** shape[j] for j in range(nblocks)], dtype=object))
        if size == 1 or size > size_bound:
            continue
        out.a_classes += 1
        row = shapes_hit.get(shape)
        if row is None or not row.matched:
            out.complete = False
            out.unmatched.append(f"A-module with multiplicities {ks} has no matching semilinear class")
    if out.a_classes != out.semilinear_classes:
        out.complete = False
        out.unmatched.append(f"{out.a_classes} A-module classes vs {out.semilinear_classes} semilinear classes")
    if out.partial:
        out.complete = False
    return out


def a_modules(f: RingMap, size_bound: int) -> List[FModule]:
    """Representatives of A-module classes with |M| <= size_bound (A semisimple)."""
    A = f.source
    if not is_semisimple(A):
        raise DescentError("module enumeration needs a semisimple A")
    fs = primitive_idempotents(A)
    reg = regular_module(A)
    pieces = []
    for fi in fs:
        gens = np.array([A.mul(fi, A.basis(k)) for k in range(A.n)], dtype=np.int64)
        gens = gens[gens.any(axis=1)]
        Mi, _ = subgroup_module(reg, gens, A, reg.acts, name="Af")
        pieces.append(Mi)
    out = []
    for ks in itertools.product(*[range(0, 13) for _ in fs]):
        size = int(np.prod([P.size ** k for P, k in zip(pieces, ks)], dtype=object))
        if size == 1 or size > size_bound:
            continue
        M = None
        for P, k in zip(pieces, ks):
            for _ in range(k):
                M = P if M is None else M.direct_sum(P)
        M.name = "+".join(f"(Af{i})^{k}" for i, k in enumerate(ks) if k)
        out.append(M)
    return out


def roundtrip_sweep(f: RingMap, act: GroupAction, size_bound: int) -> Dict[str, bool]:
    """descend(extend(M)) = M for every A-module class with |M| <= size_bound."""
    out = {}
    for M in a_modules(f, size_bound):
        out[M.name] = descend_extend_iso(M, f, act).ok and extend_descend_iso(extend(M, f, act).action, f).ok
    return out
