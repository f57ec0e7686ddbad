"""Galois extensions of finite rings, descent data and semilinear actions.

Conventions (row vectors, ``x @ M``):
  * ``psi: B (x)_A N -> Map(G, N)``, ``b (x) n -> (g -> g(b) n)``;
  * a descent datum is ``phi: N (x)_A B -> B (x)_A N``, B (x) B-linear;
  * datum -> action: ``sigma_g(n) = psi(phi(n (x) 1))(g)``;
  * action -> datum: ``phi(n (x) b) = (1 (x) b) psi^{-1}(g -> sigma_g n)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .. import intlin
from .modules import FModule, TensorProduct, TensorRing, quotient_group, regular_module, restrict, ring_as_module
from .rings import DescentError, FRing, GroupAction, RingMap, mat_compose, mat_reduce, product


# ---------------------------------------------------------- group helpers
def image_order(F, src_orders, tgt_orders) -> int:
    F = np.asarray(F, dtype=np.int64)
    return intlin.hom_image_order(F.tolist(), [int(o) for o in src_orders], [int(o) for o in tgt_orders])


def group_size(orders) -> int:
    out = 1
    for o in orders:
        out *= int(o)
    return out


def is_bijective(F, src_orders, tgt_orders) -> bool:
    n = group_size(src_orders)
    return n == group_size(tgt_orders) and image_order(F, src_orders, tgt_orders) == n


def solve(F, src_orders, tgt_orders, t) -> Optional[np.ndarray]:
    """Some x with x @ F = t modulo the target orders (None if t is not in the image)."""
    F = np.asarray(F, dtype=np.int64)
    k = len(tgt_orders)
    rows = F.tolist() + [[int(o) if i == j else 0 for j in range(k)] for i, o in enumerate(tgt_orders)]
    x = intlin.solve_row(rows, [int(v) for v in t], k)
    if x is None:
        return None
    return np.mod(np.array(x[: F.shape[0]], dtype=np.int64), src_orders)


def invert(F, src_orders, tgt_orders) -> np.ndarray:
    """Inverse matrix of a bijective homomorphism."""
    rows = []
    for j in range(len(tgt_orders)):
        e = np.zeros(len(tgt_orders), dtype=np.int64)
        e[j] = 1
        x = solve(F, src_orders, tgt_orders, e)
        if x is None:
            raise DescentError("map is not surjective")
        rows.append(x)
    return np.array(rows, dtype=np.int64).reshape(len(tgt_orders), len(src_orders))


def kernel_generators(F, src_orders, tgt_orders) -> np.ndarray:
    gens = intlin.subgroup_kernel(np.asarray(F, dtype=np.int64).tolist(), [int(o) for o in src_orders],
                                  [int(o) for o in tgt_orders])
    return np.array(gens, dtype=np.int64).reshape(-1, len(src_orders))


def subgroup_module(N: FModule, gens: np.ndarray, ring: FRing, acts_on_N: Sequence[np.ndarray], name="S"):
    """The subgroup of N generated by ``gens`` as a module over ``ring``.

    ``acts_on_N[i]`` is how ring basis vector i acts on N; the subgroup must
    be stable. Returns the module and its inclusion matrix into N.
    """
    k = gens.shape[0]
    if k == 0:
        return None, np.zeros((0, N.n), dtype=np.int64)
    stacked = gens.tolist() + [[int(o) if i == j else 0 for j in range(N.n)] for i, o in enumerate(N.orders)]
    ker = [row[:k] for row in intlin.row_kernel(stacked, N.n)]
    expo = N.exponent
    orders, P, L = quotient_group(k, np.array(ker, dtype=np.int64).reshape(-1, k), expo)
    incl = mat_reduce(L @ gens, N.orders)
    acts = []
    for a in acts_on_N:
        rows = []
        for j in range(len(orders)):
            v = N.reduce(incl[j] @ a)
            y = solve(gens, np.full(k, expo), N.orders, v)
            if y is None:
                raise DescentError("subgroup is not stable under the ring action")
            rows.append(np.mod(y @ P, orders))
        acts.append(np.array(rows, dtype=np.int64).reshape(len(orders), len(orders)))
    return FModule(ring, orders, acts, name=name), incl


# ----------------------------------------------------------------- Galois
@dataclass
class GaloisReport:
    galois: bool
    i_bijective: bool
    h_bijective: bool
    fixed_order: int
    source_order: int
    tensor_order: int
    h_inverse: Optional[List[List[int]]] = None
    notes: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "galois": self.galois,
            "i_bijective": self.i_bijective,
            "h_bijective": self.h_bijective,
            "fixed_order": self.fixed_order,
            "source_order": self.source_order,
            "tensor_order": self.tensor_order,
            "notes": self.notes,
        }


def fixed_subring_generators(act: GroupAction) -> np.ndarray:
    B = act.B
    I = np.eye(B.n, dtype=np.int64)
    F = np.concatenate([act.mats[g] - I for g in act.G.elements()], axis=1)
    return kernel_generators(F, B.orders, np.tile(B.orders, act.G.order))


def fixed_order(act: GroupAction) -> int:
    B = act.B
    I = np.eye(B.n, dtype=np.int64)
    F = np.concatenate([act.mats[g] - I for g in act.G.elements()], axis=1)
    return B.size // image_order(F, B.orders, np.tile(B.orders, act.G.order))


def product_over_group(B: FRing, G) -> FRing:
    return product([B] * G.order)


def h_matrix(f: RingMap, act: GroupAction, T: Optional[TensorRing] = None):
    """h: B (x)_A B -> prod_G B, x (x) y -> (g -> x g(y))."""
    B = f.target
    T = T or TensorRing([f, f])
    nB = B.n
    H = np.zeros((nB, nB, act.G.order * nB), dtype=np.int64)
    for g in act.G.elements():
        # x g(y) for basis x = b_i, y = b_j
        H[:, :, g * nB:(g + 1) * nB] = np.einsum("jb,ibk->ijk", act.mats[g], B.mult)
    P = product_over_group(B, act.G)
    Hm = mat_reduce(T.tensor.E @ H.reshape(nB * nB, -1), P.orders)
    return T, P, Hm


def is_galois(f: RingMap, act: GroupAction, with_inverse: bool = True) -> GaloisReport:
    """Decide whether (f, act) is a G-Galois extension: A = B^G and h bijective."""
    B = f.target
    for g in act.G.elements():
        if not np.array_equal(mat_compose(f.F, act.mats[g], B.orders), f.F):
            raise DescentError(f"group element {g} does not fix the image of A")
    fo = fixed_order(act)
    i_ok = f.is_injective() and fo == f.source.size
    T, P, Hm = h_matrix(f, act)
    h_ok = is_bijective(Hm, T.orders, P.orders)
    rep = GaloisReport(i_ok and h_ok, i_ok, h_ok, fo, f.source.size, T.size)
    if not i_ok:
        rep.notes.append(f"|B^G| = {fo} but |A| = {f.source.size}" if fo != f.source.size else "f is not injective")
    if not h_ok:
        rep.notes.append(f"h: order {T.size} -> {P.size}, image {image_order(Hm, T.orders, P.orders)}")
    if rep.galois and with_inverse:
        rep.h_inverse = invert(Hm, T.orders, P.orders).tolist()
    return rep


def require_galois(f: RingMap, act: GroupAction) -> None:
    rep = is_galois(f, act, with_inverse=False)
    if not rep.galois:
        raise DescentError("not a Galois extension: " + "; ".join(rep.notes))


# ------------------------------------------------------- semilinear actions
class SemilinearAction:
    """A B-module N with additive maps sigma_g, g(x) sigma_g(n) = sigma_g(x n)."""

    def __init__(self, act: GroupAction, N: FModule, sigma: Sequence[np.ndarray], check=True):
        if N.ring is not act.B:
            raise DescentError("module is not over the acted-on ring")
        self.act = act
        self.N = N
        self.sigma = [mat_reduce(s, N.orders) for s in sigma]
        if check:
            ok, why = self.verify()
            if not ok:
                raise DescentError(f"not a semilinear action: {why}")

    def verify(self) -> Tuple[bool, str]:
        N, act, G = self.N, self.act, self.act.G
        if len(self.sigma) != G.order:
            return False, "one map per group element needed"
        if not np.array_equal(self.sigma[0], mat_reduce(np.eye(N.n, dtype=np.int64), N.orders)):
            return False, "sigma_e is not the identity"
        for g in G.elements():
            s = self.sigma[g]
            for k in range(N.n):
                if np.any(np.mod(int(N.orders[k]) * s[k], N.orders)):
                    return False, f"sigma_{g} is not additive"
            for i in range(act.B.n):
                lhs = mat_compose(N.acts[i], s, N.orders)
                rhs = mat_compose(s, N.scalar_matrix(act.mats[g][i]), N.orders)
                if not np.array_equal(lhs, rhs):
                    return False, f"sigma_{g}(b_{i} n) != g(b_{i}) sigma_{g}(n)"
            for h in G.elements():
                if not np.array_equal(mat_compose(self.sigma[h], s, N.orders), self.sigma[G.mul(g, h)]):
                    return False, f"sigma_{g} sigma_{h} != sigma_{G.mul(g, h)}"
        return True, ""


def trivial_action(B: FRing) -> GroupAction:
    from .rings import FiniteGroup

    return GroupAction(FiniteGroup.cyclic(1), B, [np.eye(B.n, dtype=np.int64)])


# ------------------------------------------------------------- descent data
class DescentDatum:
    """``phi: N (x)_A B -> B (x)_A N`` for a B-module N."""

    def __init__(self, f: RingMap, N: FModule, phi, check=True):
        self.f = f
        self.N = N
        B = f.target
        Bm = ring_as_module(f)
        NA = restrict(N, f)
        self.T_NB = TensorProduct([NA, Bm])
        self.T_BN = TensorProduct([Bm, NA])
        self.phi = mat_reduce(np.asarray(phi, dtype=np.int64).reshape(self.T_NB.n, self.T_BN.n), self.T_BN.orders)
        if check:
            ok, why = self.verify()
            if not ok:
                raise DescentError(f"not a descent datum: {why}")

    def verify(self) -> Tuple[bool, str]:
        B = self.f.target
        if not is_bijective(self.phi, self.T_NB.orders, self.T_BN.orders):
            return False, "phi is not bijective"
        for i in range(B.n):
            mb = B.mult_matrix(B.basis(i))
            nb = self.N.acts[i]
            pairs = [
                (self.T_NB.slot_action(0, nb), self.T_BN.slot_action(0, mb), "b (x) 1"),
                (self.T_NB.slot_action(1, mb), self.T_BN.slot_action(1, nb), "1 (x) b"),
            ]
            for src, tgt, label in pairs:
                if not np.array_equal(mat_compose(src, self.phi, self.T_BN.orders),
                                      mat_compose(self.phi, tgt, self.T_BN.orders)):
                    return False, f"phi does not commute with {label} for basis {i}"
        return True, ""

    def pure_images(self) -> np.ndarray:
        """Array Phi[i, j, x, n]: phi(e_i (x) b_j) expanded in pure tensors b_x (x) e_n."""
        nN, nB = self.T_NB.dims
        imgs = mat_reduce(self.T_NB.Pi @ self.phi, self.T_BN.orders)
        return (imgs @ self.T_BN.E).reshape(nN, nB, nB, nN)


def check_cocycle(d: DescentDatum) -> bool:
    """phi_13 = phi_23 o phi_12 on N (x) B (x) B, decided on a basis."""
    return cocycle_defect(d) == 0


def cocycle_defect(d: DescentDatum) -> int:
    """Number of basis vectors of N (x) B (x) B where the cocycle condition fails."""
    NA = restrict(d.N, d.f)
    Bm = ring_as_module(d.f)
    T1 = TensorProduct([NA, Bm, Bm])
    T2 = TensorProduct([Bm, NA, Bm])
    T3 = TensorProduct([Bm, Bm, NA])
    Phi = d.pure_images()
    p12 = T1.slot_map(T2, lambda a: np.einsum("bijk,ijxn->bxnk", a, Phi))
    p23 = T2.slot_map(T3, lambda a: np.einsum("bxik,ikyn->bxyn", a, Phi))
    p13 = T1.slot_map(T3, lambda a: np.einsum("bijk,ikxn->bxjn", a, Phi))
    comp = mat_compose(p12, p23, T3.orders)
    return int(np.any(comp != p13, axis=1).sum())


def psi_matrix(f: RingMap, act: GroupAction, N: FModule, T_BN: TensorProduct) -> np.ndarray:
    """psi: B (x)_A N -> prod_G N, b (x) n -> (g -> g(b) n)."""
    nB, nN = T_BN.dims
    G = act.G
    arr = np.zeros((nB, nN, G.order * nN), dtype=np.int64)
    for g in G.elements():
        for x in range(nB):
            arr[x, :, g * nN:(g + 1) * nN] = N.scalar_matrix(act.mats[g][x])
    return mat_reduce(T_BN.E @ arr.reshape(nB * nN, -1), np.tile(N.orders, G.order))


def datum_to_action(d: DescentDatum, act: GroupAction) -> SemilinearAction:
    require_galois(d.f, act)
    N, B = d.N, d.f.target
    psi = psi_matrix(d.f, act, N, d.T_BN)
    rows = []
    for k in range(N.n):
        e = np.zeros(N.n, dtype=np.int64)
        e[k] = 1
        v = d.T_NB.pure([e, B.one]) @ d.phi
        rows.append(np.mod(v @ psi, np.tile(N.orders, act.G.order)))
    full = np.array(rows, dtype=np.int64).reshape(N.n, -1)
    sigma = [full[:, g * N.n:(g + 1) * N.n] for g in act.G.elements()]
    return SemilinearAction(act, N, sigma)


def action_to_datum(s: SemilinearAction, f: RingMap) -> DescentDatum:
    act, N = s.act, s.N
    require_galois(f, act)
    B = f.target
    NA = restrict(N, f)
    Bm = ring_as_module(f)
    T_NB = TensorProduct([NA, Bm])
    T_BN = TensorProduct([Bm, NA])
    psi = psi_matrix(f, act, N, T_BN)
    tgt = np.tile(N.orders, act.G.order)
    psi_inv = invert(psi, T_BN.orders, tgt)
    stacked = np.concatenate(s.sigma, axis=1)  # n -> (sigma_g n)_g
    base = mat_reduce(stacked @ psi_inv, T_BN.orders)  # n -> psi^{-1}(g -> sigma_g n)
    nN, nB = T_NB.dims
    pure = np.zeros((nN, nB, T_BN.n), dtype=np.int64)
    for k in range(nB):
        mk = T_BN.slot_action(1, N.acts[k])
        pure[:, k, :] = mat_compose(base, mk, T_BN.orders)
    phi = mat_reduce(T_NB.E @ pure.reshape(nN * nB, -1), T_BN.orders)
    return DescentDatum(f, N, phi)


# -------------------------------------------------------- extend / descend
@dataclass
class Extended:
    module: FModule  # M (x)_A B over B
    tensor: TensorProduct  # the underlying M (x)_A B
    action: Optional[SemilinearAction]


def extend(M: FModule, f: RingMap, act: Optional[GroupAction] = None) -> Extended:
    """M (x)_A B with B acting on the right factor and g acting as id (x) g."""
    if M.ring is not f.source:
        raise DescentError("module is not over the source ring")
    B = f.target
    T = TensorProduct([M, ring_as_module(f)])
    acts = [T.slot_action(1, B.mult_matrix(B.basis(i))) for i in range(B.n)]
    N = FModule(B, T.orders, acts, name=f"{M.name} (x) {B.name}")
    s = None
    if act is not None:
        s = SemilinearAction(act, N, [T.slot_action(1, act.mats[g]) for g in act.G.elements()])
    return Extended(N, T, s)


def canonical_datum(M: FModule, f: RingMap) -> DescentDatum:
    """The datum on M (x)_A B: (m (x) b) (x) c -> b (x) (m (x) c)."""
    ext = extend(M, f)
    N, TN = ext.module, ext.tensor
    NA = restrict(N, f)
    Bm = ring_as_module(f)
    T_NB = TensorProduct([NA, Bm])
    T_BN = TensorProduct([Bm, NA])
    nM, nB = TN.dims
    nN = N.n
    # basis of N (x) B -> pure (m_i, b_j, b_k)
    EN = TN.E.reshape(nN, nM, nB)
    full = np.einsum("tpk,pij->tijk", T_NB.E.reshape(T_NB.n, nN, nB), EN)
    # b_j (x) (m_i (x) b_k): N-coordinates of m_i (x) b_k, then B (x) N
    PiN = TN.Pi.reshape(nM, nB, nN)
    tgt = np.einsum("tijk,ikp->tjp", full, PiN)
    phi = mat_reduce(tgt.reshape(T_NB.n, nB * nN) @ T_BN.Pi, T_BN.orders)
    return DescentDatum(f, N, phi)


@dataclass
class Descended:
    module: Optional[FModule]  # N^G over A (None when zero)
    inclusion: np.ndarray  # rows: basis of N^G in N-coordinates


def descend(s: SemilinearAction, f: RingMap) -> Descended:
    """Fixed points N^G as an A-module."""
    ok, why = s.verify()
    if not ok:
        raise DescentError(f"non-semilinear input rejected: {why}")
    N, G = s.N, s.act.G
    I = np.eye(N.n, dtype=np.int64)
    F = np.concatenate([s.sigma[g] - I for g in G.elements()], axis=1)
    gens = kernel_generators(F, N.orders, np.tile(N.orders, G.order))
    acts = [N.scalar_matrix(f.F[i]) for i in range(f.source.n)]
    M, incl = subgroup_module(N, gens, f.source, acts, name=f"{N.name}^G")
    return Descended(M, incl)


@dataclass
class RoundTrip:
    ok: bool
    iso: Optional[np.ndarray]
    reason: str = ""


def descend_extend_iso(M: FModule, f: RingMap, act: GroupAction) -> RoundTrip:
    """The map M -> (M (x) B)^G, m -> m (x) 1, checked to be an A-linear bijection."""
    ext = extend(M, f, act)
    N, T = ext.module, ext.tensor
    B = f.target
    u = np.array([T.pure([np.eye(M.n, dtype=np.int64)[i], B.one]) for i in range(M.n)], dtype=np.int64).reshape(M.n, N.n)
    for g in act.G.elements():
        if not np.array_equal(mat_compose(u, ext.action.sigma[g], N.orders), u):
            return RoundTrip(False, None, "m (x) 1 is not fixed")
    D = descend(ext.action, f)
    fixed = 1 if D.module is None else D.module.size
    if image_order(u, M.orders, N.orders) != M.size or fixed != M.size:
        return RoundTrip(False, None, f"|M| = {M.size}, |image| = {image_order(u, M.orders, N.orders)}, |N^G| = {fixed}")
    for i in range(f.source.n):
        if not np.array_equal(mat_compose(M.acts[i], u, N.orders), mat_compose(u, N.scalar_matrix(f.F[i]), N.orders)):
            return RoundTrip(False, None, "not A-linear")
    return RoundTrip(True, u)


def extend_descend_iso(s: SemilinearAction, f: RingMap) -> RoundTrip:
    """The map N^G (x)_A B -> N, n (x) b -> b n, checked to be an equivariant B-linear bijection."""
    N, act = s.N, s.act
    B = f.target
    D = descend(s, f)
    if D.module is None:
        return RoundTrip(N.size == 1, None, "" if N.size == 1 else "N^G = 0 but N != 0")
    ext = extend(D.module, f, act)
    T = ext.tensor
    nD, nB = T.dims
    pure = np.einsum("jn,knm->jkm", D.inclusion, np.array([N.acts[k] for k in range(nB)]))
    mu = mat_reduce(T.E @ pure.reshape(nD * nB, N.n), N.orders)
    if not is_bijective(mu, T.orders, N.orders):
        return RoundTrip(False, None, "n (x) b -> b n is not bijective")
    for i in range(B.n):
        if not np.array_equal(mat_compose(ext.module.acts[i], mu, N.orders), mat_compose(mu, N.acts[i], N.orders)):
            return RoundTrip(False, None, "not B-linear")
    for g in act.G.elements():
        if not np.array_equal(mat_compose(ext.action.sigma[g], mu, N.orders), mat_compose(mu, s.sigma[g], N.orders)):
            return RoundTrip(False, None, f"not equivariant for {g}")
    return RoundTrip(True, mu)


# ------------------------------------------------------- non-datum search
def b_linear_automorphisms(N: FModule, cap: int = 1 << 20):
    """All B-linear additive automorphisms of N (brute force over additive maps)."""
    if any(int(o) != int(N.orders[0]) for o in N.orders):
        raise DescentError("automorphism search needs a homogeneous additive group")
    p = int(N.orders[0])
    count = p ** (N.n * N.n)
    if count > cap:
        raise DescentError(f"{count} additive maps exceed the search cap")
    for digits in itertools.product(range(p), repeat=N.n * N.n):
        a = np.array(digits, dtype=np.int64).reshape(N.n, N.n)
        if all(np.array_equal(mat_compose(act, a, N.orders), mat_compose(a, act, N.orders)) for act in N.acts):
            if is_bijective(a, N.orders, N.orders):
                yield a


def find_non_datum(d: DescentDatum) -> Optional[Tuple[DescentDatum, np.ndarray]]:
    """Twist phi by (1 (x) alpha) for a B-automorphism alpha until the cocycle breaks."""
    for alpha in b_linear_automorphisms(d.N):
        twist = d.T_BN.slot_action(1, alpha)
        cand = DescentDatum(d.f, d.N, mat_compose(d.phi, twist, d.T_BN.orders), check=False)
        if not check_cocycle(cand):
            return cand, alpha
    return None
