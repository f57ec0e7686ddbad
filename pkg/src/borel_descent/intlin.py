"""Exact integer linear algebra: Smith normal form and the lattice helpers built on it.

Matrices are lists of lists of Python ints and vectors act on the left
(row vectors), so ``x A`` is the image of ``x`` under ``A``.
"""
from __future__ import annotations

from typing import List, Optional, Sequence

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * cols
        for a, brow in zip(row, B):
            if a:
                for j, b in enumerate(brow):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def vecmat(x: Sequence[int], A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> List[int]:
    if ncols is None:
        ncols = len(A[0]) if A else 0
    acc = [0] * ncols
    for a, row in zip(x, A):
        if a:
            for j, b in enumerate(row):
                if b:
                    acc[j] += a * b
    return acc


def smith(A: Sequence[Sequence[int]], ncols: Optional[int] = None):
    """Smith normal form of an integer matrix.

    Returns ``(diag, U, V, Vinv)`` with ``U A V`` diagonal, the diagonal
    entries ``diag`` nonnegative and each dividing the next. ``U`` and ``V``
    are unimodular and ``Vinv`` is the inverse of ``V``.
    """
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if m else 0)
    D = [list(row) for row in A]
    U = identity(m)
    V = identity(n)
    Vinv = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        if q:
            rd, rs = D[dst], D[src]
            for k in range(n):
                if rs[k]:
                    rd[k] += q * rs[k]
            ud, us = U[dst], U[src]
            for k in range(m):
                if us[k]:
                    ud[k] += q * us[k]

    def add_col(dst, src, q):  # col_dst += q * col_src
        if q:
            for row in D:
                if row[src]:
                    row[dst] += q * row[src]
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]
            vs, vd = Vinv[src], Vinv[dst]
            for k in range(n):
                if vd[k]:
                    vs[k] -= q * vd[k]

    diag = []
    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = D[i]
                for j in range(t, n):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                return diag, U, V, Vinv
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        dirty = True
            if dirty:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]
        diag.append(D[t][t])
    return diag, U, V, Vinv


def rank_and_diag(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> List[int]:
    """Nonzero invariant factors of ``A``."""
    return [d for d in smith(A, ncols)[0] if d]


def row_kernel(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Basis of the integer lattice ``{x : x A = 0}``."""
    m = len(A)
    if m == 0:
        return []
    diag, U, _, _ = smith(A, ncols)
    r = sum(1 for d in diag if d)
    return [list(U[i]) for i in range(r, m)]


def row_basis(A: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """A basis of the row lattice of ``A`` (rows linearly independent)."""
    if not A:
        return []
    diag, _, _, Vinv = smith(A, ncols)
    return [[d * v for v in Vinv[i]] for i, d in enumerate(diag) if d]


def solve_row(A: Sequence[Sequence[int]], t: Sequence[int], ncols: Optional[int] = None) -> Optional[List[int]]:
    """Integer ``x`` with ``x A = t``, or None when no integer solution exists."""
    m = len(A)
    n = ncols if ncols is not None else len(t)
    if m == 0:
        return [] if not any(t) else None
    diag, U, V, _ = smith(A, n)
    tv = vecmat(t, V, n)
    y = [0] * m
    for i in range(n):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if tv[i]:
                return None
        else:
            if tv[i] % d:
                return None
            y[i] = tv[i] // d
    return vecmat(y, U, m)


class Quotient:
    """The finitely generated abelian group ``Z^n / rowspan(relations)``.

    ``orders`` lists the cyclic orders of the new basis (0 for a free
    summand); ``project`` sends an ambient vector to normalized coordinates
    and ``lift`` returns an ambient representative of a new basis vector.
    """

    def __init__(self, n: int, relations: Sequence[Sequence[int]]):
        self.n = n
        rel = [list(r) for r in relations if any(r)]
        if rel:
            diag, _, V, Vinv = smith(rel, n)
        else:
            diag, V, Vinv = [], identity(n), identity(n)
        full = list(diag) + [0] * (n - len(diag))
        self._V = V
        self._keep = [i for i, d in enumerate(full) if d != 1]
        self.orders = [full[i] for i in self._keep]
        self._lifts = [list(Vinv[i]) for i in self._keep]

    @property
    def size(self) -> Optional[int]:
        out = 1
        for d in self.orders:
            if d == 0:
                return None
            out *= d
        return out

    def project(self, x: Sequence[int]) -> tuple:
        y = vecmat(x, self._V, self.n)
        return tuple(y[i] % d if d else y[i] for i, d in zip(self._keep, self.orders))

    def lift(self, j: int) -> List[int]:
        return list(self._lifts[j])


def normalize(v: Sequence[int], orders: Sequence[int]) -> tuple:
    return tuple(x % d if d else x for x, d in zip(v, orders))


def hom_image_order(F: Sequence[Sequence[int]], src_orders: Sequence[int], tgt_orders: Sequence[int]) -> int:
    """Order of the image of a homomorphism between finite abelian groups.

    ``F`` has one row per source basis vector giving its image in target
    coordinates. The image is ``(rowspan F + K) / K`` with ``K`` the
    target relation lattice.
    """
    k = len(tgt_orders)
    K = [[d if i == j else 0 for j in range(k)] for i, d in enumerate(tgt_orders)]
    total = 1
    for d in tgt_orders:
        total *= d
    stacked = [list(r) for r in F] + K
    idx = 1
    for d in rank_and_diag(stacked, k):
        idx *= d
    return total // idx


def subgroup_kernel(F: Sequence[Sequence[int]], src_orders: Sequence[int], tgt_orders: Sequence[int]) -> Matrix:
    """Generators (in source coordinates) of the kernel of a homomorphism."""
    k = len(tgt_orders)
    p = len(src_orders)
    K = [[d if i == j else 0 for j in range(k)] for i, d in enumerate(tgt_orders)]
    stacked = [list(r) for r in F] + K
    gens = [row[:p] for row in row_kernel(stacked, k)]
    gens = [list(normalize(g, src_orders)) for g in gens]
    return [g for g in gens if any(g)]


def two_adic_valuation(n: int) -> int:
    n = abs(n)
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    return v
