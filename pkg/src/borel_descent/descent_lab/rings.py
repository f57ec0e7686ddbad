"""Finite commutative rings, ring maps, finite groups and group actions.

A ring is stored by its additive group ``Z/o_1 + ... + Z/o_n`` together with
multiplication structure constants on that basis: ``mult[i, j]`` is the
coordinate vector of ``b_i b_j``. Elements are integer numpy vectors reduced
mod the orders. Every axiom is bilinear, so checking it on basis vectors
decides it for all elements.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .. import intlin

ELEMENT_CAP = 4096
FULL_AXIOM_CHECK = 64  # above this rank associativity is checked on sampled triples


class DescentError(ValueError):
    pass


def _reduce(x, orders):
    return np.mod(x, orders)


def mat_reduce(F, orders):
    return np.mod(np.asarray(F, dtype=np.int64), np.asarray(orders, dtype=np.int64))


def mat_compose(F, G, orders):
    """Row convention: first F then G."""
    F = np.asarray(F, dtype=np.int64)
    G = np.asarray(G, dtype=np.int64)
    if F.shape[0] == 0 or G.shape[1] == 0:
        return np.zeros((F.shape[0], G.shape[1]), dtype=np.int64)
    return np.mod(F @ G, orders)


class FRing:
    """A finite commutative unital ring.

    ``basis_exprs[i]`` writes basis vector i as an integer combination of
    words in the named generators, which is how ring maps are specified by
    generator images.
    """

    def __init__(self, orders, mult, one, name="R", gens=None, basis_exprs=None,
                 lazy_mul: Optional[Callable[[int, int], np.ndarray]] = None, check=True):
        self.orders = np.asarray(orders, dtype=np.int64)
        if any(o < 2 for o in self.orders):
            raise DescentError(f"{name}: additive orders must be >= 2, got {list(self.orders)}")
        self.n = len(self.orders)
        self.mult = None if mult is None else np.mod(np.asarray(mult, dtype=np.int64), self.orders)
        self._lazy = lazy_mul
        self.one = np.mod(np.asarray(one, dtype=np.int64), self.orders)
        self.name = name
        self.gens: Dict[str, np.ndarray] = dict(gens or {})
        self.basis_exprs = basis_exprs or [[(1, ())] if i == 0 else [] for i in range(self.n)]
        if self.mult is None and lazy_mul is None:
            raise DescentError("ring needs structure constants or a product rule")
        if check and self.mult is not None:
            self.check_axioms()

    # ------------------------------------------------------------ basics
    @property
    def size(self) -> int:
        return int(np.prod([int(o) for o in self.orders], dtype=object)) if self.n else 1

    @property
    def exponent(self) -> int:
        out = 1
        for o in self.orders:
            out = np.lcm(out, int(o))
        return int(out)

    def zero(self):
        return np.zeros(self.n, dtype=np.int64)

    def basis(self, i):
        v = self.zero()
        v[i] = 1
        return v

    def reduce(self, x):
        return _reduce(np.asarray(x, dtype=np.int64), self.orders)

    def add(self, x, y):
        return self.reduce(np.asarray(x) + np.asarray(y))

    def sub(self, x, y):
        return self.reduce(np.asarray(x) - np.asarray(y))

    def basis_product(self, i, j):
        if self.mult is not None:
            return self.mult[i, j]
        return self.reduce(self._lazy(i, j))

    def mul(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.mult is not None:
            xi, yj = np.nonzero(x)[0], np.nonzero(y)[0]
            if len(xi) == 0 or len(yj) == 0:
                return self.zero()
            block = self.mult[np.ix_(xi, yj)]
            return self.reduce(np.einsum("i,j,ijk->k", x[xi], y[yj], block))
        acc = self.zero()
        for i in np.nonzero(x)[0]:
            for j in np.nonzero(y)[0]:
                acc = acc + x[i] * y[j] * self.basis_product(i, j)
        return self.reduce(acc)

    def mult_matrix(self, x):
        """Matrix (row convention) of multiplication by x."""
        x = np.asarray(x, dtype=np.int64)
        if self.mult is not None:
            return self.reduce(np.einsum("i,kij->kj", x, self.mult))
        return np.array([self.mul(self.basis(k), x) for k in range(self.n)], dtype=np.int64).reshape(self.n, self.n)

    def equal(self, x, y) -> bool:
        return bool(np.all(self.reduce(np.asarray(x) - np.asarray(y)) == 0))

    def elements(self):
        if self.size > ELEMENT_CAP:
            raise DescentError(f"{self.name} has {self.size} elements, above the enumeration cap")
        for t in itertools.product(*[range(int(o)) for o in self.orders]):
            yield np.array(t, dtype=np.int64)

    def element_array(self) -> np.ndarray:
        if self.size > ELEMENT_CAP:
            raise DescentError(f"{self.name} has {self.size} elements, above the enumeration cap")
        grids = np.meshgrid(*[np.arange(int(o)) for o in self.orders], indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=1).astype(np.int64) if self.n else np.zeros((1, 0), np.int64)

    def index_of(self, x) -> int:
        idx = 0
        for v, o in zip(self.reduce(x), self.orders):
            idx = idx * int(o) + int(v)
        return idx

    # ----------------------------------------------------------- axioms
    def check_axioms(self) -> None:
        M, o, n = self.mult, self.orders, self.n
        if not np.all(M == M.transpose(1, 0, 2)):
            raise DescentError(f"{self.name}: multiplication not commutative")
        g = np.gcd.outer(o, o)
        if np.any(np.mod(g[:, :, None] * M, o)):
            raise DescentError(f"{self.name}: a basis product has larger order than its factors")
        # associativity: (b_i b_j) b_k == b_i (b_j b_k), exhaustive for small rings
        if n <= FULL_AXIOM_CHECK:
            left = np.mod(np.einsum("ija,akl->ijkl", M, M), o)
            right = np.mod(np.einsum("jka,ial->ijkl", M, M), o)
            ok = np.array_equal(left, right)
        else:
            rng = np.random.default_rng(0)
            ok = True
            for i, j, k in rng.integers(0, n, size=(2000, 3)):
                if np.any(np.mod(M[i, j] @ M[:, k] - M[j, k] @ M[i], o)):
                    ok = False
                    break
        if not ok:
            raise DescentError(f"{self.name}: multiplication not associative")
        unit = np.mod(np.einsum("i,ijk->jk", self.one, M), o)
        if not np.array_equal(unit, np.eye(n, dtype=np.int64) % o):
            raise DescentError(f"{self.name}: the given one is not a unit")

    def __repr__(self):
        return f"FRing({self.name}, orders={list(self.orders)})"


# ------------------------------------------------------------ presentations
def zmod(n: int) -> FRing:
    if n < 2:
        raise DescentError(f"Zmod needs n >= 2, got {n}")
    return FRing([n], [[[1]]], [1], name=f"Z/{n}", basis_exprs=[[(1, ())]])


def _poly_ring_constants(d: int, f: Sequence[int], base: FRing):
    """Structure constants of base[x]/(f) with f monic of degree d (integer coefficients)."""
    nb = base.n
    n = d * nb
    orders = np.tile(base.orders, d)

    def reduce_power(k):
        # x^k as integer coefficients on x^0..x^{d-1}
        vec = [0] * max(k + 1, d)
        vec[k] = 1
        for top in range(len(vec) - 1, d - 1, -1):
            c = vec[top]
            if c:
                vec[top] = 0
                for i in range(d):
                    vec[top - d + i] -= c * f[i]
        return vec[:d]

    powers = [reduce_power(k) for k in range(2 * d - 1)]
    M = np.zeros((n, n, n), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            for a in range(nb):
                for b in range(nb):
                    prod = base.mult[a, b]
                    for t, c in enumerate(powers[i + j]):
                        if c:
                            M[i * nb + a, j * nb + b, t * nb:(t + 1) * nb] += c * prod
    one = np.zeros(n, dtype=np.int64)
    one[:nb] = base.one
    return orders, M, one


def gf(p: int, poly: Sequence[int]) -> FRing:
    """F_p[x]/(poly) for a monic irreducible ``poly`` given low degree first."""
    poly = [int(c) for c in poly]
    if len(poly) < 2 or poly[-1] % p != 1:
        raise DescentError(f"GF polynomial must be monic of degree >= 1: {poly}")
    d = len(poly) - 1
    base = zmod(p)
    orders, M, one = _poly_ring_constants(d, poly, base)
    x = _unit(d, 1) if d > 1 else np.mod(np.array([-poly[0]]), p)
    R = FRing(orders, M, one, name=f"F_{p ** d}", gens={"x": x}, basis_exprs=[[(1, ("x",) * i)] for i in range(d)])
    if not is_field(R):
        raise DescentError(f"GF({p}, {poly}) is not a field: polynomial reducible")
    return R


def _unit(n, i):
    v = np.zeros(n, dtype=np.int64)
    v[i] = 1
    return v


def is_field(R: FRing) -> bool:
    els = R.element_array()
    nz = els[np.any(els != 0, axis=1)]
    prods = np.mod(np.einsum("ai,bj,ijk->abk", nz, nz, R.mult), R.orders)
    has_inv = np.all(prods == R.one, axis=2).any(axis=1)
    return bool(has_inv.all())


def product(factors: Sequence[FRing]) -> FRing:
    if not factors:
        raise DescentError("product of no factors")
    sizes = [F.n for F in factors]
    n = sum(sizes)
    offs = np.cumsum([0] + sizes)
    orders = np.concatenate([F.orders for F in factors])
    M = np.zeros((n, n, n), dtype=np.int64)
    one = np.concatenate([F.one for F in factors])
    gens: Dict[str, np.ndarray] = {}
    exprs = []
    for k, F in enumerate(factors):
        s = slice(offs[k], offs[k + 1])
        M[s, s, s] = F.mult
        e = np.zeros(n, dtype=np.int64)
        e[s] = F.one
        gens[f"e{k}"] = e
        for g, v in F.gens.items():
            w = np.zeros(n, dtype=np.int64)
            w[s] = v
            gens[f"f{k}.{g}"] = w
        for ex in F.basis_exprs:
            exprs.append([(c, (f"e{k}",) + tuple(f"f{k}.{g}" for g in word)) for c, word in ex])
    return FRing(orders, M, one, name=" x ".join(F.name for F in factors), gens=gens, basis_exprs=exprs)


def quotient(base: FRing, ideal: Sequence[Sequence[int]], var: str = "x") -> FRing:
    """base[var]/(ideal) where one generator is monic (integer coefficients, low degree first)."""
    polys = [[int(c) for c in p] for p in ideal]
    monic = [p for p in polys if len(p) >= 2 and p[-1] == 1]
    if not monic:
        raise DescentError("quotient ideal needs a monic generator of degree >= 1")
    f = min(monic, key=len)
    d = len(f) - 1
    orders, M, one = _poly_ring_constants(d, f, base)
    nb = base.n
    exprs = []
    for i in range(d):
        for ex in base.basis_exprs:
            exprs.append([(c, (var,) * i + word) for c, word in ex])
    gens = {var: np.zeros(d * nb, dtype=np.int64)}
    if d > 1:
        gens[var][nb:2 * nb] = base.one
    else:
        gens[var][:nb] = np.mod(-f[0] * base.one, base.orders)
    for g, v in base.gens.items():
        w = np.zeros(d * nb, dtype=np.int64)
        w[:nb] = v
        gens[g] = w
    R = FRing(orders, M, one, name=f"{base.name}[{var}]/({_poly_str(f, var)})", gens=gens, basis_exprs=exprs)
    extra = [p for p in polys if p is not f]
    if not extra:
        return R
    # additive subgroup generated by the ideal, then the induced ring structure
    gen_elems = []
    for p in extra:
        g = R.zero()
        xpow = R.one.copy()
        for c in p:
            g = R.add(g, c * xpow)
            xpow = R.mul(xpow, gens[var])
        for k in range(R.n):
            gen_elems.append(R.mul(g, R.basis(k)))
    return additive_quotient(R, gen_elems, name=f"{R.name}/({len(extra)} more)")


def _poly_str(f, var):
    terms = [(f"{c}" if i == 0 else (f"{c}*" if c != 1 else "") + var + (f"^{i}" if i > 1 else "")) for i, c in enumerate(f) if c]
    return " + ".join(reversed(terms))


def additive_quotient(R: FRing, ideal_elems, name=None) -> FRing:
    rel = [list(map(int, v)) for v in ideal_elems] + [[int(o) if i == j else 0 for j in range(R.n)] for i, o in enumerate(R.orders)]
    q = intlin.Quotient(R.n, rel)
    if any(o == 0 for o in q.orders):
        raise DescentError("quotient is not finite")
    lifts = np.array([q.lift(j) for j in range(len(q.orders))], dtype=np.int64).reshape(len(q.orders), R.n)

    def proj(v):
        return np.array(q.project([int(x) for x in v]), dtype=np.int64)

    n = len(q.orders)
    M = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            M[i, j] = proj(R.mul(lifts[i], lifts[j]))
    exprs = []
    for j in range(n):
        ex = []
        for i, c in enumerate(lifts[j]):
            ex += [(int(c) * cc, w) for cc, w in R.basis_exprs[i]] if c else []
        exprs.append(ex)
    gens = {g: proj(v) for g, v in R.gens.items()}
    return FRing(q.orders, M, proj(R.one), name=name or R.name, gens=gens, basis_exprs=exprs)


def ring_from_json(spec) -> FRing:
    t = spec.get("type")
    try:
        if t == "Zmod":
            return zmod(int(spec["n"]))
        if t == "GF":
            return gf(int(spec["p"]), spec["poly"])
        if t == "product":
            return product([ring_from_json(f) for f in spec["factors"]])
        if t == "quotient":
            return quotient(ring_from_json(spec["base"]), spec["ideal"], spec.get("var", "x"))
    except KeyError as exc:
        raise DescentError(f"ring spec of type {t!r} is missing field {exc}") from exc
    raise DescentError(f"unknown ring type {t!r}")


# ----------------------------------------------------------------- maps
class RingMap:
    """A ring homomorphism, stored as the matrix of basis images (row convention)."""

    def __init__(self, source: FRing, target: FRing, F, check=True, name="f"):
        self.source = source
        self.target = target
        self.F = mat_reduce(np.asarray(F, dtype=np.int64).reshape(source.n, target.n), target.orders)
        self.name = name
        if check:
            ok, why = self.verify()
            if not ok:
                raise DescentError(f"{name}: not a ring map ({why})")

    def __call__(self, x):
        return self.target.reduce(np.asarray(x, dtype=np.int64) @ self.F)

    def verify(self, sample: Optional[int] = None, seed: int = 0) -> Tuple[bool, str]:
        S, T, F = self.source, self.target, self.F
        for i, o in enumerate(S.orders):
            if np.any(np.mod(int(o) * F[i], T.orders)):
                return False, f"basis {i} of order {o} maps to an element of larger order"
        if not T.equal(self(S.one), T.one):
            return False, "unit not preserved"
        small = max(S.n, T.n) <= FULL_AXIOM_CHECK
        if S.mult is not None and T.mult is not None and (sample is None and small):
            lhs = np.mod(np.einsum("ija,ak->ijk", S.mult, F), T.orders)
            tmp = np.einsum("ia,abk->ibk", F, T.mult)
            rhs = np.mod(np.einsum("jb,ibk->ijk", F, tmp), T.orders)
            if not np.array_equal(lhs, rhs):
                i, j = [int(v[0]) for v in np.nonzero(np.any(lhs != rhs, axis=2))]
                return False, f"product of basis {i},{j} not preserved"
            return True, ""
        rng = np.random.default_rng(seed)
        pairs = [(i, j) for i in range(S.n) for j in range(i, S.n)]
        sample = sample if sample is not None else 200
        if len(pairs) > sample:
            pairs = [pairs[k] for k in rng.choice(len(pairs), sample, replace=False)]
        for i, j in pairs:
            if not T.equal(self(S.basis_product(i, j)), T.mul(F[i], F[j])):
                return False, f"product of basis {i},{j} not preserved"
        return True, ""

    def compose(self, other: "RingMap") -> "RingMap":
        """``other`` after ``self``."""
        return RingMap(self.source, other.target, mat_compose(self.F, other.F, other.target.orders), check=False)

    def image_order(self) -> int:
        return intlin.hom_image_order(self.F.tolist(), self.source.orders.tolist(), self.target.orders.tolist())

    def is_injective(self) -> bool:
        return self.image_order() == self.source.size

    def is_bijective(self) -> bool:
        return self.source.size == self.target.size and self.image_order() == self.target.size


def evaluate_word(R: FRing, images: Dict[str, np.ndarray], word) -> np.ndarray:
    out = R.one.copy()
    for g in word:
        if g not in images:
            raise DescentError(f"no image given for generator {g!r}")
        out = R.mul(out, images[g])
    return out


def map_from_images(source: FRing, target: FRing, images: Dict[str, Sequence[int]], name="f") -> RingMap:
    imgs = {g: target.reduce(np.asarray(v, dtype=np.int64)) for g, v in images.items()}
    rows = []
    for ex in source.basis_exprs:
        acc = target.zero()
        for c, word in ex:
            acc = acc + c * evaluate_word(target, imgs, word)
        rows.append(target.reduce(acc))
    return RingMap(source, target, np.array(rows, dtype=np.int64).reshape(source.n, target.n), name=name)


def identity_map(R: FRing) -> RingMap:
    return RingMap(R, R, np.eye(R.n, dtype=np.int64), check=False, name="id")


# --------------------------------------------------------------- groups
@dataclass
class FiniteGroup:
    table: np.ndarray  # table[g, h] = g h
    name: str = "G"

    def __post_init__(self):
        self.table = np.asarray(self.table, dtype=np.int64)
        n = self.order
        if self.table.shape != (n, n):
            raise DescentError("group table must be square")
        if not np.array_equal(self.table[0], np.arange(n)) or not np.array_equal(self.table[:, 0], np.arange(n)):
            raise DescentError("element 0 must be the identity")
        for row in self.table:
            if sorted(row) != list(range(n)):
                raise DescentError("group table is not a Latin square")
        T = self.table
        for a in range(n):
            for b in range(n):
                if not np.array_equal(T[T[a, b]], T[a][T[b]]):
                    raise DescentError("group table is not associative")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, g, h) -> int:
        return int(self.table[g, h])

    def inverse(self, g) -> int:
        return int(np.nonzero(self.table[g] == 0)[0][0])

    def elements(self):
        return range(self.order)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls(np.mod(np.add.outer(np.arange(n), np.arange(n)), n), name=f"C{n}")


class GroupAction:
    """G acting on B by ring automorphisms; ``mats[g]`` is the matrix of x -> g(x)."""

    def __init__(self, G: FiniteGroup, B: FRing, mats, f: Optional[RingMap] = None, check=True):
        self.G = G
        self.B = B
        self.mats = [mat_reduce(m, B.orders) for m in mats]
        self.f = f
        if check:
            ok, why = self.verify()
            if not ok:
                raise DescentError(f"bad group action: {why}")

    def act(self, g, x):
        return self.B.reduce(np.asarray(x, dtype=np.int64) @ self.mats[g])

    def verify(self) -> Tuple[bool, str]:
        B, G = self.B, self.G
        if len(self.mats) != G.order:
            return False, "one matrix per group element needed"
        if not np.array_equal(self.mats[0], mat_reduce(np.eye(B.n, dtype=np.int64), B.orders)):
            return False, "identity acts nontrivially"
        for g in G.elements():
            ok, why = RingMap(B, B, self.mats[g], check=False).verify()
            if not ok:
                return False, f"element {g}: {why}"
            for h in G.elements():
                gh = G.mul(g, h)
                # (gh)(x) = g(h(x)): first h then g
                if not np.array_equal(mat_compose(self.mats[h], self.mats[g], B.orders), self.mats[gh]):
                    return False, f"action not multiplicative at ({g},{h})"
        if self.f is not None:
            for g in G.elements():
                if not np.array_equal(mat_compose(self.f.F, self.mats[g], B.orders), self.f.F):
                    return False, f"element {g} moves the image of A"
        return True, ""

    @classmethod
    def cyclic_from_generator(cls, B: FRing, n: int, gen_images: Dict[str, Sequence[int]],
                              f: Optional[RingMap] = None) -> "GroupAction":
        g = map_from_images(B, B, gen_images, name="generator")
        mats = [np.mod(np.eye(B.n, dtype=np.int64), B.orders)]
        for _ in range(1, n):
            mats.append(mat_compose(mats[-1], g.F, B.orders))
        if not np.array_equal(mat_compose(mats[-1], g.F, B.orders), mats[0]):
            raise DescentError(f"generator does not have order dividing {n}")
        return cls(FiniteGroup.cyclic(n), B, mats, f)
