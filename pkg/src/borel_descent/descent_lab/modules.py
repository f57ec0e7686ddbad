"""Finite modules and tensor products over a finite commutative ring.

A module is an additive group ``Z/o_1 + ... + Z/o_n`` plus one matrix per
additive basis vector of the ring (row convention, ``r . x = x @ acts[r]``).

Tensor products are quotients of the free group on pairs of basis vectors by
order, bilinearity and balancing relations, reduced with a Smith form.
A multi-factor tensor product also keeps two integer matrices: ``E``
expands a basis vector into pure tensors of factor basis vectors, ``Pi``
projects a pure basis tensor back to coordinates. Any map defined slotwise
on pure tensors is then a composite ``E . (slot map) . Pi``.
"""
from __future__ import annotations

from math import gcd
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .. import intlin
from .rings import DescentError, FRing, RingMap, mat_compose, mat_reduce


def _prime_power(n: int) -> Optional[Tuple[int, int]]:
    if n < 2:
        return None
    p = next(q for q in range(2, n + 1) if n % q == 0)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


def local_smith_quotient(n: int, relations: np.ndarray, p: int, k: int):
    """``(Z/p^k)^n / rowspan(relations)`` by elimination over the local ring Z/p^k.

    Returns ``(orders, P, L)``: coordinates of an ambient row vector x are
    ``x @ P`` reduced mod orders, and ``L[j]`` lifts new basis vector j.
    """
    N = p ** k
    R = np.mod(np.asarray(relations, dtype=np.int64).reshape(-1, n), N)
    m = R.shape[0]
    V = np.eye(n, dtype=np.int64)
    Vinv = np.eye(n, dtype=np.int64)
    pivots = []
    t = 0
    while t < min(m, n):
        sub = R[t:, t:]
        nz = sub != 0
        if not nz.any():
            break
        val = np.full(sub.shape, k, dtype=np.int64)
        val[nz] = 0
        q = p
        for _ in range(k - 1):
            val[nz & (sub % q == 0)] += 1
            q *= p
        i, j = np.unravel_index(np.argmin(val), val.shape)
        v = int(val[i, j])
        i += t
        j += t
        if i != t:
            R[[t, i]] = R[[i, t]]
        if j != t:
            R[:, [t, j]] = R[:, [j, t]]
            V[:, [t, j]] = V[:, [j, t]]
            Vinv[[t, j]] = Vinv[[j, t]]
        pv = p ** v
        u = int(R[t, t]) // pv
        R[t] = np.mod(R[t] * pow(u, -1, N), N)
        f = R[t + 1:, t] // pv
        if f.any():
            R[t + 1:] = np.mod(R[t + 1:] - np.outer(f, R[t]), N)
        qrow = R[t, t + 1:] // pv
        if qrow.any():
            R[:, t + 1:] = np.mod(R[:, t + 1:] - np.outer(R[:, t], qrow), N)
            V[:, t + 1:] = np.mod(V[:, t + 1:] - np.outer(V[:, t], qrow), N)
            Vinv[t] = np.mod(Vinv[t] + qrow @ Vinv[t + 1:], N)
        pivots.append(pv)
        t += 1
    full = pivots + [N] * (n - len(pivots))
    keep = [i for i, d in enumerate(full) if d != 1]
    orders = np.array([full[i] for i in keep], dtype=np.int64)
    return orders, V[:, keep], Vinv[keep]


def quotient_group(n: int, relations, exponent: int):
    """Finite quotient ``Z^n / (rowspan(relations) + exponent Z^n)`` as (orders, P, L)."""
    rel = np.asarray(relations, dtype=np.int64).reshape(-1, n)
    pk = _prime_power(exponent)
    if pk is not None:
        return local_smith_quotient(n, rel, *pk)
    rows = rel.tolist() + [[exponent if i == j else 0 for j in range(n)] for i in range(n)]
    q = intlin.Quotient(n, rows)
    P = np.array(q._V, dtype=np.int64)[:, q._keep] if n else np.zeros((0, 0), np.int64)
    L = np.array([q.lift(j) for j in range(len(q.orders))], dtype=np.int64).reshape(len(q.orders), n)
    return np.array(q.orders, dtype=np.int64), P, L


class FModule:
    """A finite module over ``ring``; ``acts[i]`` is the action of ring basis vector i."""

    def __init__(self, ring: FRing, orders, acts, name="M", check=True):
        self.ring = ring
        self.orders = np.asarray(orders, dtype=np.int64)
        self.n = len(self.orders)
        self.acts = [mat_reduce(np.asarray(a, dtype=np.int64).reshape(self.n, self.n), self.orders) for a in acts]
        self.name = name
        if len(self.acts) != ring.n:
            raise DescentError(f"{name}: need one action matrix per ring basis vector")
        if check:
            ok, why = self.verify()
            if not ok:
                raise DescentError(f"{name}: not a module ({why})")

    @property
    def size(self) -> int:
        return int(np.prod([int(o) for o in self.orders], dtype=object)) if self.n else 1

    @property
    def exponent(self) -> int:
        out = 1
        for o in self.orders:
            out = out * int(o) // gcd(out, int(o))
        return out

    def reduce(self, x):
        return np.mod(np.asarray(x, dtype=np.int64), self.orders)

    def scalar_matrix(self, r):
        r = np.asarray(r, dtype=np.int64)
        acc = np.zeros((self.n, self.n), dtype=np.int64)
        for i in np.nonzero(r)[0]:
            acc = acc + int(r[i]) * self.acts[i]
        return mat_reduce(acc, self.orders)

    def scalar(self, r, x):
        return self.reduce(np.asarray(x, dtype=np.int64) @ self.scalar_matrix(r))

    def verify(self) -> Tuple[bool, str]:
        R, o = self.ring, self.orders
        for i, a in enumerate(self.acts):
            for k in range(self.n):
                if np.any(np.mod(int(o[k]) * a[k], o)):
                    return False, f"action of basis {i} not well defined on generator {k}"
            if np.any(np.mod(int(R.orders[i]) * a, o)):
                return False, f"ring relation {R.orders[i]} * b_{i} not respected"
        if not np.array_equal(self.scalar_matrix(R.one), mat_reduce(np.eye(self.n, dtype=np.int64), o)):
            return False, "unit does not act as identity"
        for i in range(R.n):
            for j in range(R.n):
                lhs = mat_compose(self.acts[j], self.acts[i], o)
                if not np.array_equal(lhs, self.scalar_matrix(R.basis_product(i, j))):
                    return False, f"(b_{i} b_{j}) x != b_{i} (b_{j} x)"
        return True, ""

    def invariant_factors(self) -> List[int]:
        rows = [[int(o) if i == j else 0 for j in range(self.n)] for i, o in enumerate(self.orders)]
        return sorted(d for d in intlin.rank_and_diag(rows, self.n) if d != 1)

    def direct_sum(self, other: "FModule") -> "FModule":
        if other.ring is not self.ring:
            raise DescentError("direct sum over different rings")
        n1, n2 = self.n, other.n
        acts = []
        for a, b in zip(self.acts, other.acts):
            m = np.zeros((n1 + n2, n1 + n2), dtype=np.int64)
            m[:n1, :n1] = a
            m[n1:, n1:] = b
            acts.append(m)
        return FModule(self.ring, np.concatenate([self.orders, other.orders]), acts, name=f"{self.name}+{other.name}")

    def __repr__(self):
        return f"FModule({self.name} over {self.ring.name}, orders={[int(o) for o in self.orders]})"


def regular_module(R: FRing) -> FModule:
    return FModule(R, R.orders, [R.mult_matrix(R.basis(i)) for i in range(R.n)], name=R.name)


def restrict(N: FModule, f: RingMap) -> FModule:
    """N over B viewed as a module over A through f."""
    return FModule(f.source, N.orders, [N.scalar_matrix(f.F[i]) for i in range(f.source.n)], name=f"{N.name}|A", check=False)


def free_module(R: FRing, rank: int) -> FModule:
    M = regular_module(R)
    out = FModule(R, np.zeros(0, dtype=np.int64), [np.zeros((0, 0), np.int64)] * R.n, name="0", check=False)
    for _ in range(rank):
        out = out.direct_sum(M) if out.n else M
    out.name = f"{R.name}^{rank}"
    return out


# ---------------------------------------------------------------- tensors
class TensorProduct:
    """``F_1 (x)_A F_2 (x)_A ... (x)_A F_k`` for modules over the same ring A."""

    def __init__(self, factors: Sequence[FModule], name: Optional[str] = None):
        if not factors:
            raise DescentError("empty tensor product")
        A = factors[0].ring
        for F in factors:
            if F.ring is not A:
                raise DescentError(f"base-ring mismatch: {F.ring.name} vs {A.name}")
        self.factors = list(factors)
        self.ring = A
        self.dims = tuple(F.n for F in factors)
        F0 = factors[0]
        self.module = F0
        self.E = np.eye(F0.n, dtype=np.int64)
        self.Pi = np.eye(F0.n, dtype=np.int64)
        self.steps = []  # per extra factor: (n_prev, n_new_factor, L, P)
        for F in factors[1:]:
            self._extend(F)
        self.module.name = name or " (x) ".join(F.name for F in factors)

    @property
    def n(self) -> int:
        return self.module.n

    @property
    def orders(self):
        return self.module.orders

    def _extend(self, F: FModule) -> None:
        M = self.module
        n1, n2 = M.n, F.n
        npair = n1 * n2
        expo = M.exponent * F.exponent // gcd(M.exponent, F.exponent)
        rels = []
        for i in range(n1):
            for j in range(n2):
                r = np.zeros(npair, dtype=np.int64)
                r[i * n2 + j] = gcd(int(M.orders[i]), int(F.orders[j]))
                rels.append(r)
        I1 = np.eye(n1, dtype=np.int64)
        I2 = np.eye(n2, dtype=np.int64)
        for a1, a2 in zip(M.acts, F.acts):
            rels.extend(list(np.kron(a1, I2) - np.kron(I1, a2)))
        orders, P, L = quotient_group(npair, np.array(rels, dtype=np.int64).reshape(-1, npair), expo)
        r = len(orders)
        acts = [mat_reduce(L @ np.kron(a1, I2) @ P, orders) if r else np.zeros((0, 0), np.int64) for a1 in M.acts]
        D = self.E.shape[1]
        L3 = L.reshape(r, n1, n2)
        E = np.einsum("kpj,pd->kdj", L3, self.E).reshape(r, D * n2)
        Pi = np.einsum("Ip,pjm->Ijm", self.Pi, P.reshape(n1, n2, r)).reshape(D * n2, r)
        self.E = np.mod(E, expo)
        self.Pi = np.mod(Pi, orders) if r else Pi
        self.steps.append((n1, n2, L, P))
        self.module = FModule(self.ring, orders, acts, check=False)

    # -- pure tensors
    def pure(self, vectors: Sequence) -> np.ndarray:
        """Coordinates of v_1 (x) ... (x) v_k."""
        arr = np.ones((), dtype=np.int64)
        for v in vectors:
            arr = np.multiply.outer(arr, np.asarray(v, dtype=np.int64))
        return self.reduce(arr.reshape(-1) @ self.Pi)

    def expand(self, x) -> np.ndarray:
        """Multi-index array of pure basis tensors representing x."""
        return (np.asarray(x, dtype=np.int64) @ self.E).reshape(self.dims)

    def reduce(self, x):
        return np.mod(np.asarray(x, dtype=np.int64), self.orders)

    def slot_map(self, target: "TensorProduct", fn) -> np.ndarray:
        """Matrix of the map induced by ``fn`` on pure-tensor arrays.

        ``fn`` takes an array of shape ``(batch, *self.dims)`` and returns
        one of shape ``(batch, *target.dims)``; it must be multilinear and
        respect the relations (the caller's responsibility).
        """
        arr = self.E.reshape((self.n,) + self.dims)
        out = np.asarray(fn(arr), dtype=np.int64).reshape(self.n, -1)
        if target.n == 0:
            return np.zeros((self.n, 0), dtype=np.int64)
        return mat_reduce(out @ target.Pi, target.orders)

    def slot_action(self, slot: int, matrix) -> np.ndarray:
        """Matrix of applying ``matrix`` (row convention) to one tensor slot."""
        matrix = np.asarray(matrix, dtype=np.int64)

        def fn(arr):
            moved = np.moveaxis(arr, slot + 1, -1)
            return np.moveaxis(moved @ matrix, -1, slot + 1)

        return self.slot_map(self, fn)


def tensor(M: FModule, N: FModule) -> Tuple[FModule, TensorProduct]:
    """M (x)_A N with the bilinear map available as ``T.pure([m, n])``."""
    T = TensorProduct([M, N])
    return T.module, T


def ring_as_module(f: RingMap) -> FModule:
    """B as an A-module through f."""
    B = f.target
    return FModule(f.source, B.orders, [B.mult_matrix(f.F[i]) for i in range(f.source.n)], name=B.name, check=False)


class TensorRing(FRing):
    """``B_1 (x)_A ... (x)_A B_k`` as a ring; factors given by their structure maps from A."""

    CONSTANT_CAP = 64

    def __init__(self, maps: Sequence[RingMap], name: Optional[str] = None):
        self.maps = list(maps)
        self.tensor = TensorProduct([ring_as_module(f) for f in maps])
        T = self.tensor
        self._prefix: Optional[TensorRing] = None
        if len(maps) > 1:
            self._prefix = TensorRing(maps[:-1])
        last = maps[-1].target
        n = T.n
        one = T.pure([f.target.one for f in maps])
        mult = None
        if len(maps) == 1:
            mult = last.mult
        elif n <= self.CONSTANT_CAP and self._prefix.mult is not None:
            mult = self._batched_constants()
        super().__init__(T.orders, mult, one, name=name or " (x) ".join(f.target.name for f in maps),
                         lazy_mul=self._pair_product, check=False)

    def _pieces(self):
        n1, n2, L, P = self.tensor.steps[-1]
        return n1, n2, L.reshape(-1, n1, n2), P.reshape(n1, n2, -1)

    def _batched_constants(self):
        n1, n2, L3, P3 = self._pieces()
        M1 = self._prefix.mult
        M2 = self.maps[-1].target.mult
        T = np.einsum("kpj,pqa->kqja", L3, M1)
        U = np.einsum("kqja,lqi->klija", T, L3)
        Z = np.einsum("klija,jib->klab", U, M2)
        return np.mod(np.einsum("klab,abm->klm", Z, P3), self.tensor.orders)

    def _pair_product(self, i, j):
        n1, n2, L3, P3 = self._pieces()
        pre = self._prefix
        M2 = self.maps[-1].target.mult
        X, Y = L3[i], L3[j]
        Z = np.zeros((n1, n2), dtype=np.int64)
        for p, jj in zip(*np.nonzero(X)):
            for q, ii in zip(*np.nonzero(Y)):
                Z += int(X[p, jj] * Y[q, ii]) * np.multiply.outer(pre.basis_product(p, q), M2[jj, ii])
        return np.einsum("ab,abm->m", Z, P3)

    def structure_map(self) -> RingMap:
        """A -> tensor ring, a -> f(a) (x) 1 (x) ... (x) 1."""
        A = self.maps[0].source
        rows = [self.tensor.pure([self.maps[0].F[i]] + [f.target.one for f in self.maps[1:]]) for i in range(A.n)]
        return RingMap(A, self, np.array(rows, dtype=np.int64).reshape(A.n, self.n), check=False)


def module_iso_type(M: FModule) -> Tuple[int, ...]:
    """Invariant factors of the underlying group (a necessary isomorphism test)."""
    return tuple(M.invariant_factors())
