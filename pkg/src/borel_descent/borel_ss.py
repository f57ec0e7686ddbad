"""The Borel spectral sequence for Z/2 acting on truncated BP_*[sigma^+-].

E_1 is the free Z_(2)-module on ``v^m sigma^J a^e`` with ``a`` in filtration 1.
The differentials are the standard rules

    d_{2^{k+1}-1}(sigma^{-2^k}) = alpha_k^{-1} u_k a^{2^{k+1}-1},    k = 0 .. n_max,

with ``u_0 = v_0 = 2``, extended multiplicatively: a class ``sigma^J m a^e``
with ``J = 2^k (mod 2^{k+1})`` hits ``sigma^{J+2^k} alpha_k^{-1} u_k m a^{e+r}``.
The k = 0 rule turns E_1 into Z[v, sigma^{+-2}, a]/(2a), the twisted group
cohomology. All other differentials are zero.

A page stores, for every tri-degree block ``(J, w, e)`` (w the v-weight in
units of 1 + alpha), a cycle lattice Z and a boundary lattice B inside the
free module on the v-monomials of weight w, so E_r = Z/B blockwise.
Lattices are kept over Z; everything reported is 2-local (odd torsion is
discarded), which is exact because localization commutes with kernels,
images and sums.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

from . import intlin
from .ro2_ring import DivisibilityError, Monomial, PresRing, ROdeg, WindowError, bp_ring
from .sequences import Exps, GenSequence, Poly, poly_mul, poly_pow, v_weight

Block = Tuple[int, int, int]  # (J, w, e)


class SSError(ValueError):
    pass


@dataclass(frozen=True)
class Window:
    """Report window: generator indices, sigma range, a-cap and v-weight cap."""

    n_max: int
    sigma_lo: int
    sigma_hi: int
    a_max: int
    max_weight: int = 0

    def __post_init__(self):
        if self.n_max < 0 or self.a_max < 0 or self.max_weight < 0 or self.sigma_lo > self.sigma_hi:
            raise SSError(f"malformed window {self}")

    def contains(self, blk: Block) -> bool:
        J, w, e = blk
        return self.sigma_lo <= J <= self.sigma_hi and 0 <= e <= self.a_max and 0 <= w <= self.max_weight

    def padded(self, factor: int = 1) -> "Window":
        """Enlarge so every report class has its whole differential history inside."""
        N = self.n_max
        pj = factor * 2 ** (N + 1)
        pe = factor * sum(2 ** (k + 1) - 1 for k in range(N + 1))
        pw = factor * sum(2 ** k - 1 for k in range(N + 1))
        return Window(N, self.sigma_lo - pj, self.sigma_hi + pj, self.a_max + pe, self.max_weight + pw)


def schedule(n_max: int) -> List[int]:
    return [2 ** (k + 1) - 1 for k in range(n_max + 1)]


@lru_cache(maxsize=None)
def v_monomials(n_max: int, w: int) -> Tuple[Exps, ...]:
    """v-exponent tuples (v_1..v_N) of weight w, in a fixed order."""
    out = []

    def rec(k, rem, acc):
        if k == n_max:
            if rem == 0:
                out.append(tuple(acc))
            return
        wk = 2 ** (k + 1) - 1
        for x in range(rem // wk + 1):
            rec(k + 1, rem - x * wk, acc + [x])

    rec(0, w, [])
    return tuple(out)


def block_degree(blk: Block) -> ROdeg:
    J, w, e = blk
    return ROdeg(w - J, w + J - e)


def mono_name(exps: Exps, J: int, e: int) -> str:
    parts = [f"v{k + 1}" + (f"^{x}" if x != 1 else "") for k, x in enumerate(exps) if x]
    if J:
        parts.append(f"s^{J}")
    if e:
        parts.append("a" + (f"^{e}" if e != 1 else ""))
    return "*".join(parts) or "1"


def vector_name(vec: Sequence, basis: Sequence[Exps], J: int, e: int) -> str:
    terms = []
    for c, exps in zip(vec, basis):
        if c:
            m = mono_name(exps, J, e)
            terms.append(m if c == 1 else f"{c}*{m}")
    return " + ".join(terms) or "0"


# ----------------------------------------------------------------- pages
@dataclass
class SSClass:
    s: int
    deg: ROdeg
    name: str
    group: str
    block: Block

    def to_json(self) -> dict:
        return {"s": self.s, "deg": [self.deg.one, self.deg.alpha], "name": self.name, "group": self.group}


@dataclass
class BlockGroup:
    """2-local invariants of Z/B in one block with representatives."""

    orders: List[int]  # 0 = Z_(2), 2^j = Z/2^j
    reps: List[List[Fraction]]  # ambient representatives, one per summand

    def type(self) -> Tuple[int, ...]:
        return tuple(sorted(self.orders))


@dataclass
class SSPage:
    r: int
    window: Window
    compute_window: Window
    sequence: GenSequence
    Z: Dict[Block, Tuple[Tuple[int, ...], ...]]
    B: Dict[Block, Tuple[Tuple[int, ...], ...]]
    edge: set = field(default_factory=set)
    rules: List[str] = field(default_factory=list)
    step: int = 0  # index into the differential schedule

    @property
    def active(self) -> Optional[int]:
        sch = schedule(self.window.n_max)
        return sch[self.step] if self.step < len(sch) else None

    @property
    def is_final(self) -> bool:
        return self.active is None

    def basis(self, blk: Block) -> Tuple[Exps, ...]:
        return v_monomials(self.window.n_max, blk[1])

    def report_blocks(self) -> List[Block]:
        return sorted(b for b in self.Z if self.window.contains(b) and b not in self.edge)

    def group(self, blk: Block) -> BlockGroup:
        return _block_group(self.Z[blk], self.B[blk], len(self.basis(blk)))

    def class_of(self, blk: Block, vec: Sequence) -> Optional[tuple]:
        """Coordinates of an ambient vector in E_r at ``blk`` (None if not a cycle)."""
        return _classify(self.Z[blk], self.B[blk], len(self.basis(blk)), vec)

    def classes(self, include_zero: bool = False) -> List[SSClass]:
        out = []
        for blk in self.report_blocks():
            g = self.group(blk)
            for order, rep in zip(g.orders, g.reps):
                name = vector_name(rep, self.basis(blk), blk[0], blk[2])
                grp = "Z" if order == 0 else f"Z/{order}"
                out.append(SSClass(blk[2], block_degree(blk), name, grp, blk))
        return out

    def isomorphism_types(self) -> Dict[Tuple[ROdeg, int], Tuple[int, ...]]:
        """Per (bidegree, filtration) multiset of cyclic orders, nonzero groups only."""
        out: Dict[Tuple[ROdeg, int], List[int]] = {}
        for blk in self.report_blocks():
            t = self.group(blk).orders
            if t:
                out.setdefault((block_degree(blk), blk[2]), []).extend(t)
        return {k: tuple(sorted(v)) for k, v in out.items()}

    def dump(self) -> dict:
        return {
            "r": self.r,
            "classes": [c.to_json() for c in self.classes()],
            "edge_flagged": [list(b) for b in sorted(self.edge) if self.window.contains(b)],
        }


def _rational_coords(Z, vec) -> Optional[List[Fraction]]:
    """Solve c Z = vec over Q for independent rows Z; None if vec is not in the span."""
    m = len(Z)
    n = len(vec)
    if m == 0:
        return [] if not any(vec) else None
    # Gaussian elimination on the transposed system
    rows = [[Fraction(Z[i][j]) for i in range(m)] + [Fraction(vec[j])] for j in range(n)]
    piv_cols = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, n):
        if rows[i][m]:
            return None
    out = [Fraction(0)] * m
    for i, c in enumerate(piv_cols):
        out[c] = rows[i][m]
    return out


def _odd_scale(rows) -> Tuple[List[List[int]], int]:
    den = 1
    for row in rows:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    return [[int(Fraction(x) * den) for x in row] for row in rows], den


@lru_cache(maxsize=200000)
def _block_group_cached(Z, B, n) -> Tuple[Tuple[int, ...], Tuple[Tuple[Fraction, ...], ...]]:
    coords = []
    for b in B:
        c = _rational_coords(Z, b)
        if c is None:
            raise SSError("boundary not contained in cycles")
        coords.append(c)
    X, den = _odd_scale(coords) if coords else ([], 1)
    if den % 2 == 0:
        raise SSError("boundary not 2-locally inside cycles")
    q = intlin.Quotient(len(Z), X)
    orders, reps = [], []
    for j, o in enumerate(q.orders):
        if o != 0:
            v = intlin.two_adic_valuation(o)
            if v == 0:
                continue
            o = 2 ** v
        lift = q.lift(j)
        amb = intlin.vecmat(lift, Z, n)
        if o:
            # strip the odd cofactor so the representative has 2-power order
            odd = q.orders[j] // o
            amb = [odd * x for x in amb]
        orders.append(o)
        reps.append(tuple(Fraction(x) for x in amb))
    return tuple(orders), tuple(reps)


def _block_group(Z, B, n) -> BlockGroup:
    orders, reps = _block_group_cached(tuple(Z), tuple(B), n)
    return BlockGroup(list(orders), [list(r) for r in reps])


def _classify(Z, B, n, vec) -> Optional[tuple]:
    """2-local class of ``vec`` in Z/B as normalized coordinates."""
    c = _rational_coords(Z, vec)
    if c is None or any(x.denominator % 2 == 0 for x in c):
        return None
    coords = [_rational_coords(Z, b) for b in B]
    X, den = _odd_scale(coords) if coords else ([], 1)
    q = intlin.Quotient(len(Z), X)
    cden = 1
    for x in c:
        cden = lcm(cden, x.denominator)
    y = q.project([int(x * cden) for x in c])
    out = []
    for val, o in zip(y, q.orders):
        if o == 0:
            out.append(Fraction(val, cden))
            continue
        v = intlin.two_adic_valuation(o)
        if v == 0:
            continue
        m = 2 ** v
        out.append((val * pow(cden, -1, m)) % m)
    return tuple(out)


# ------------------------------------------------------------- differentials
def rule_poly(u: GenSequence, k: int) -> Poly:
    """alpha_k^{-1} u_k as a polynomial in v (the k = 0 rule is the constant 2)."""
    N = u.n_max
    if k == 0:
        return {tuple([0] * N): Fraction(2)}
    alpha = u.leading(k)
    return {e: c / alpha for e, c in u.poly(k).items()}


def rule_text(u: GenSequence, k: int) -> str:
    r = 2 ** (k + 1) - 1
    alpha = u.leading(k)
    lead = "" if alpha == 1 else f"{alpha}^-1*"
    in_u = "2" if k == 0 else f"{lead}u{k}"
    terms = []
    for e, c in sorted(rule_poly(u, k).items()):
        m = mono_name(e, 0, 0)
        terms.append(m if c == 1 and m != "1" else (str(c) if m == "1" else f"{c}*{m}"))
    return f"d_{r}(s^{-(2 ** k)}) = {in_u}*a^{r} = ({' + '.join(terms)})*a^{r}"


@lru_cache(maxsize=None)
def _diff_matrix(u: GenSequence, k: int, w: int):
    """Integer matrix of d_{2^{k+1}-1} from weight w to weight w + 2^k - 1 (odd-scaled)."""
    N = u.n_max
    src = v_monomials(N, w)
    tgt = v_monomials(N, w + 2 ** k - 1)
    index = {m: i for i, m in enumerate(tgt)}
    rp = rule_poly(u, k)
    rows = []
    for m in src:
        row = [Fraction(0)] * len(tgt)
        for e, c in poly_mul({m: Fraction(1)}, rp).items():
            row[index[e]] += c
        rows.append(row)
    M, den = _odd_scale(rows) if rows else ([], 1)
    if den % 2 == 0:
        raise SSError("non 2-local differential")
    return tuple(tuple(r) for r in M)


def differential_target(blk: Block, k: int) -> Optional[Block]:
    J, w, e = blk
    if J % (2 ** (k + 1)) != 2 ** k:
        return None
    return (J + 2 ** k, w + 2 ** k - 1, e + 2 ** (k + 1) - 1)


def build_e1(window: Window, u: Optional[GenSequence] = None, pad: int = 1) -> SSPage:
    """The E_1 page: free on v-monomial * sigma^J * a^e over the padded window."""
    u = u or GenSequence.hazewinkel(window.n_max)
    if u.n_max != window.n_max:
        raise SSError("generator sequence and window disagree on n_max")
    from .sequences import validate_sequence

    rep = validate_sequence(u)
    if not rep.valid:
        raise SSError("invalid generator sequence: " + "; ".join(rep.diagnostics))
    cw = window.padded(pad)
    Z, B = {}, {}
    for w in range(cw.max_weight + 1):
        n = len(v_monomials(cw.n_max, w))
        if n == 0:
            continue
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        for J in range(cw.sigma_lo, cw.sigma_hi + 1):
            for e in range(cw.a_max + 1):
                Z[(J, w, e)] = ident
                B[(J, w, e)] = ()
    rules = [rule_text(u, k) for k in range(window.n_max + 1)]
    return SSPage(1, window, cw, u, Z, B, set(), rules, 0)


def _sources(page: SSPage, blk: Block, k: int) -> Optional[Block]:
    J, w, e = blk
    src = (J - 2 ** k, w - (2 ** k - 1), e - (2 ** (k + 1) - 1))
    if src[1] < 0 or src[2] < 0 or differential_target(src, k) != blk:
        return None
    return src


def turn_page(p: SSPage) -> SSPage:
    """Homology of ``p`` with respect to its active differential."""
    if p.is_final:
        return p
    k = p.step
    r = 2 ** (k + 1) - 1
    newZ = dict(p.Z)
    newB = dict(p.B)
    edge = set(p.edge)
    for blk, Zs in p.Z.items():
        tgt = differential_target(blk, k)
        if tgt is None or not Zs:
            continue
        if tgt not in p.Z:
            edge.add(blk)
            continue
        D = _diff_matrix(p.sequence, k, blk[1])
        if not D or not D[0]:
            continue
        Y = intlin.matmul(Zs, D)
        if not any(any(row) for row in Y):
            continue
        Bt = p.B[tgt]
        nt = len(D[0])
        stacked = [list(y) for y in Y] + [list(b) for b in Bt]
        K = intlin.row_kernel(stacked, nt)
        cs = [kk[: len(Zs)] for kk in K]
        cs = [c for c in cs if any(c)]
        if cs:
            Znew = intlin.row_basis(intlin.matmul(cs, Zs), len(Zs[0]))
        else:
            Znew = []
        newZ[blk] = tuple(tuple(z) for z in Znew)
        newB[tgt] = tuple(tuple(b) for b in intlin.row_basis([list(b) for b in Bt] + Y, nt))
    # classes whose possible sources fall outside the computed range
    cw = p.compute_window
    for blk in p.Z:
        J, w, e = blk
        if e - r >= 0 and w - (2 ** k - 1) >= 0 and J - 2 ** k < cw.sigma_lo and (J - 2 ** k) % (2 ** (k + 1)) == 2 ** k:
            edge.add(blk)
    # the next nonzero differential is d_{2^{k+2}-1}; after the last one the page is E_inf
    new_r = 2 ** (k + 2) - 1 if k + 1 <= p.window.n_max else r + 1
    return SSPage(new_r, p.window, p.compute_window, p.sequence, newZ, newB, edge, p.rules, k + 1)


def run_to_einfty(window: Window, u: Optional[GenSequence] = None, pad: int = 1) -> SSPage:
    page = build_e1(window, u, pad)
    while not page.is_final:
        page = turn_page(page)
    return page


def check_d_squared(page: SSPage) -> bool:
    """d_r d_r = 0 on the page, and d_r is well defined on E_r.

    Targets of d_r are never sources of d_r; images of cycles are cycles of
    the earlier differentials, and images of boundaries vanish in E_r.
    """
    if page.is_final:
        return True
    k = page.step
    for blk, Zs in page.Z.items():
        tgt = differential_target(blk, k)
        if tgt is None or tgt not in page.Z:
            continue
        if differential_target(tgt, k) is not None:
            return False
        D = _diff_matrix(page.sequence, k, blk[1])
        if not D or not D[0]:
            continue
        n = len(D[0])
        Zt, Bt = page.Z[tgt], page.B[tgt]
        for row in intlin.matmul(list(Zs), D) if Zs else []:
            if _classify(Zt, Bt, n, row) is None:
                return False
        for row in intlin.matmul(list(page.B[blk]), D) if page.B[blk] else []:
            c = _classify(Zt, Bt, n, row)
            if c is None or any(c):
                return False
    return True


def check_degrees(window: Window) -> bool:
    """Target bidegree = source - (1, 0) and filtration + r for every rule application."""
    cw = window.padded()
    for k in range(window.n_max + 1):
        r = 2 ** (k + 1) - 1
        for J in range(cw.sigma_lo, cw.sigma_hi + 1):
            for w in range(cw.max_weight + 1):
                blk = (J, w, 0)
                t = differential_target(blk, k)
                if t is None:
                    continue
                if block_degree(t) != block_degree(blk) - ROdeg(1, 0) or t[2] - blk[2] != r:
                    return False
    return True


# ------------------------------------------------------- group cohomology
def group_cohomology_c2(involution: Sequence[Sequence[int]], s_max: int,
                        grades: Optional[Sequence] = None) -> Dict:
    """Cohomology of Z/2 with coefficients in a free Z_(2)-module with involution.

    Uses the 2-periodic complex M -(1-g)-> M -(1+g)-> M -(1-g)-> ... .
    Returns ``{s: orders}`` or, with ``grades`` (one label per basis vector,
    preserved by g), ``{(s, grade): orders}``. Orders: 0 = Z_(2), 2^j = Z/2^j.
    """
    T = [list(r) for r in involution]
    n = len(T)
    if intlin.matmul(T, T) != intlin.identity(n) if n else False:
        raise SSError("matrix is not an involution")
    if grades is None:
        return {s: _gc_orders(T, s) for s in range(s_max + 1)}
    out = {}
    labels = sorted(set(grades), key=repr)
    for g in labels:
        idx = [i for i, x in enumerate(grades) if x == g]
        for i in idx:
            for j in range(n):
                if T[i][j] and grades[j] != g:
                    raise SSError("involution does not preserve the grading")
        sub = [[T[i][j] for j in idx] for i in idx]
        for s in range(s_max + 1):
            out[(s, g)] = _gc_orders(sub, s)
    return out


def _gc_orders(T, s: int) -> List[int]:
    n = len(T)
    if n == 0:
        return []
    I = intlin.identity(n)
    minus = [[I[i][j] - T[i][j] for j in range(n)] for i in range(n)]
    plus = [[I[i][j] + T[i][j] for j in range(n)] for i in range(n)]
    out_map = minus if s % 2 == 0 else plus
    in_map = None if s == 0 else (plus if s % 2 == 0 else minus)
    K = intlin.row_kernel(out_map, n)
    if not K:
        return []
    Kb = intlin.row_basis(K, n)
    B = intlin.row_basis(in_map, n) if in_map else []
    g = _block_group(tuple(tuple(r) for r in Kb), tuple(tuple(r) for r in B), n)
    return sorted(g.orders)


def sigma_module(lo: int, hi: int):
    """Z_(2)[sigma^+-] on the window [lo, hi] with g(sigma) = -sigma, graded by J."""
    n = hi - lo + 1
    T = [[(-1) ** (lo + i) if i == j else 0 for j in range(n)] for i in range(n)]
    return T, list(range(lo, hi + 1))


# --------------------------------------------------------------- comparison
def _weight_of_u(udict) -> int:
    return sum(x * (2 ** k - 1) for k, x in udict.items())


def presentation_vector(page: SSPage, R: PresRing, m: Monomial, coeff=1) -> Tuple[Block, List[Fraction]]:
    """Image of a presentation monomial in E_1: u_k expanded in v, u_0 = 2."""
    u = page.sequence
    N = u.n_max
    poly: Poly = {tuple([0] * N): Fraction(coeff)}
    for k, x in m.u:
        poly = poly_mul(poly, poly_pow(u.poly(k), x, N))
    w = _weight_of_u(m.udict())
    blk = (m.sigma, w, m.a)
    basis = page.basis(blk)
    index = {b: i for i, b in enumerate(basis)}
    vec = [Fraction(0)] * len(basis)
    for e, c in poly.items():
        vec[index[e]] += c
    return blk, vec


@dataclass
class CompareReport:
    match: bool
    checked_blocks: int = 0
    checked_products: int = 0
    first_mismatch: Optional[dict] = None
    notes: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "match": self.match,
            "checked_blocks": self.checked_blocks,
            "checked_products": self.checked_products,
            "first_mismatch": self.first_mismatch,
            "notes": self.notes,
        }


def comparison_ring(window: Window, u: Optional[GenSequence] = None) -> PresRing:
    """The presentation matching a truncated window: BP-style with sigma^{2^{n_max+1}} adjoined."""
    pad = window.padded(2)
    return bp_ring(window.n_max, (pad.sigma_lo, pad.sigma_hi), pad.a_max, u, truncated=True)


def compare_einfty(page: SSPage, R: PresRing, n_products: int = 100, seed: int = 0) -> CompareReport:
    """Compare a final page with a presentation blockwise and on sampled products.

    Per block: every presentation monomial maps to a permanent cycle, its
    order kills it in E_inf, the images generate E_inf and the isomorphism
    types agree. Products: phi(x) phi(y) and phi(x y) define the same class.
    """
    if not page.is_final:
        raise SSError("compare_einfty needs a final page")
    win = page.window
    if R.n_max != win.n_max:
        raise SSError(f"window mismatch: page n_max={win.n_max}, ring n_max={R.n_max}")
    basis = R.basis_monomials(win.max_weight, (win.sigma_lo, win.sigma_hi), win.a_max)
    by_block: Dict[Block, List[Tuple[Monomial, int]]] = {}
    for m, order in basis:
        blk = (m.sigma, _weight_of_u(m.udict()), m.a)
        if win.contains(blk):
            by_block.setdefault(blk, []).append((m, order))
    rep = CompareReport(True)
    for blk in page.report_blocks():
        g = page.group(blk)
        pres = by_block.get(blk, [])
        info = {"block": list(blk), "deg": [block_degree(blk).one, block_degree(blk).alpha], "s": blk[2],
                "engine": sorted(g.orders), "presentation": sorted(o for _, o in pres)}
        rep.checked_blocks += 1
        if sorted(g.orders) != sorted(o for _, o in pres):
            rep.match = False
            rep.first_mismatch = dict(info, reason="isomorphism types differ")
            return rep
        if not pres:
            continue
        images = []
        for m, order in pres:
            _, vec = presentation_vector(page, R, m)
            cls = page.class_of(blk, vec)
            if cls is None:
                rep.match = False
                rep.first_mismatch = dict(info, reason=f"{m} is not a permanent cycle")
                return rep
            if order and any(_mul_class(cls, order, g.orders)):
                rep.match = False
                rep.first_mismatch = dict(info, reason=f"{order}*{m} is nonzero in E_inf")
                return rep
            images.append(cls)
        if not _generates(images, g.orders):
            rep.match = False
            rep.first_mismatch = dict(info, reason="presentation monomials do not generate E_inf")
            return rep
    # multiplicative check on sampled products
    rng = random.Random(seed)
    pool = [m for blk, lst in sorted(by_block.items()) for m, _ in lst if blk not in page.edge]
    tries = 0
    while rep.checked_products < n_products and tries < 200 * max(n_products, 1) and pool:
        tries += 1
        x, y = rng.choice(pool), rng.choice(pool)
        blk = (x.sigma + y.sigma, _weight_of_u(x.udict()) + _weight_of_u(y.udict()), x.a + y.a)
        if not win.contains(blk) or blk in page.edge:
            continue
        try:
            prod = R.mul(R.mono(u=x.udict(), sigma=x.sigma, a=x.a, check_window=False),
                         R.mono(u=y.udict(), sigma=y.sigma, a=y.a, check_window=False))
        except (WindowError, DivisibilityError):
            continue
        raw = {}
        for k, e in x.u + y.u:
            raw[k] = raw.get(k, 0) + e
        _, v_raw = presentation_vector(page, R, Monomial(tuple(sorted(raw.items())), 0, blk[0], blk[2]))
        vec = [Fraction(0)] * len(v_raw)
        for m, c in prod.terms:
            b2, v2 = presentation_vector(page, R, m, c)
            if b2 != blk:
                raise SSError("product left its block")
            vec = [a + b for a, b in zip(vec, v2)]
        c1, c2 = page.class_of(blk, v_raw), page.class_of(blk, vec)
        rep.checked_products += 1
        if c1 is None or c2 is None or c1 != c2:
            rep.match = False
            rep.first_mismatch = {"block": list(blk), "reason": f"product {x} * {y} = {prod} fails in E_inf"}
            return rep
    if rep.checked_products < n_products:
        rep.notes.append(f"only {rep.checked_products} products fit inside the window")
    return rep


def _mul_class(cls, k, orders):
    return tuple((k * c) % o if o else k * c for c, o in zip(cls, orders))


def _generates(images, orders) -> bool:
    """Do the class vectors generate the 2-local group with these cyclic orders?"""
    n = len(orders)
    if n == 0:
        return True
    rel = [[o if i == j else 0 for j in range(n)] for i, o in enumerate(orders) if o]
    rows = []
    for c in images:
        den = 1
        for x in c:
            den = lcm(den, Fraction(x).denominator)
        rows.append([int(Fraction(x) * den) for x in c])
    diag = intlin.rank_and_diag(rows + rel, n)
    if len(diag) < n:
        return False
    return all(d % 2 == 1 for d in diag)


def compare_pages(p1: SSPage, p2: SSPage) -> Optional[Tuple[ROdeg, int]]:
    """First (bidegree, filtration) whose isomorphism types differ, or None."""
    t1, t2 = p1.isomorphism_types(), p2.isomorphism_types()
    for key in sorted(set(t1) | set(t2)):
        if t1.get(key) != t2.get(key):
            return key
    return None
