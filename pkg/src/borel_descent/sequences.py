"""Generator sequences u = (u_0, u_1, ...) written as polynomials in the Hazewinkel v_k.

A polynomial is a dict mapping an exponent tuple ``(e_1, ..., e_N)`` of
``v_1 .. v_N`` to a 2-local :class:`~fractions.Fraction` coefficient.
``u_0 = v_0 = 2`` is implicit and never stored.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

Exps = Tuple[int, ...]
Poly = Dict[Exps, Fraction]


def two_local(x) -> Fraction:
    q = Fraction(x)
    if q.denominator % 2 == 0:
        raise ValueError(f"{q} is not 2-local (even denominator)")
    return q


def is_unit(q: Fraction) -> bool:
    return q.numerator % 2 == 1 and q.denominator % 2 == 1


def v_weight(e: Exps) -> int:
    """Polynomial weight in units of (1 + alpha): |v_k| = 2^k - 1."""
    return sum(x * ((1 << (k + 1)) - 1) for k, x in enumerate(e))


def unit_exps(k: int, N: int) -> Exps:
    return tuple(int(i == k - 1) for i in range(N))


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def poly_add(p: Poly, q: Poly, scale=1) -> Poly:
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + scale * c
    return {e: c for e, c in out.items() if c}


def poly_pow(p: Poly, n: int, N: int) -> Poly:
    out: Poly = {tuple([0] * N): Fraction(1)}
    for _ in range(n):
        out = poly_mul(out, p)
    return out


@dataclass(frozen=True)
class GenSequence:
    """Expansions of u_1 .. u_N in terms of v_1 .. v_N."""

    n_max: int
    expansions: Tuple[Tuple[Tuple[Exps, Fraction], ...], ...] = field(default=())

    @classmethod
    def hazewinkel(cls, n_max: int) -> "GenSequence":
        return cls.from_polys(n_max, [{unit_exps(k, n_max): Fraction(1)} for k in range(1, n_max + 1)])

    @classmethod
    def from_polys(cls, n_max: int, polys: List[Poly]) -> "GenSequence":
        if len(polys) != n_max:
            raise ValueError(f"need {n_max} expansions, got {len(polys)}")
        exps = []
        for p in polys:
            items = []
            for e, c in sorted(p.items()):
                if len(e) != n_max:
                    raise ValueError(f"exponent vector {e} has wrong length for n_max={n_max}")
                if c:
                    items.append((tuple(int(x) for x in e), two_local(c)))
            exps.append(tuple(items))
        return cls(n_max, tuple(exps))

    @classmethod
    def from_json(cls, n_max: int, generators: list) -> "GenSequence":
        """Parse ``[{"k": k, "expansion_in_v": [[coeff, [e_1..e_N]], ...]}, ...]``.

        Missing indices default to ``u_k = v_k``; a coefficient is an int,
        a string like ``"1/3"`` or a ``[num, den]`` pair.
        """
        polys = {k: {unit_exps(k, n_max): Fraction(1)} for k in range(1, n_max + 1)}
        for g in generators:
            k = int(g["k"])
            if k == 0:
                continue
            if not 1 <= k <= n_max:
                raise ValueError(f"generator index {k} outside 1..{n_max}")
            poly: Poly = {}
            for coeff, e in g["expansion_in_v"]:
                if isinstance(coeff, list):
                    coeff = Fraction(coeff[0], coeff[1])
                poly[tuple(e)] = poly.get(tuple(e), 0) + Fraction(coeff)
            polys[k] = poly
        return cls.from_polys(n_max, [polys[k] for k in range(1, n_max + 1)])

    def poly(self, k: int) -> Poly:
        """u_k as a polynomial in v (u_0 is the constant 2)."""
        if k == 0:
            return {tuple([0] * self.n_max): Fraction(2)}
        return dict(self.expansions[k - 1])

    def leading(self, k: int) -> Fraction:
        """The coefficient alpha_k of v_k in u_k (alpha_0 = 1 since u_0 = v_0 = 2)."""
        if k == 0:
            return Fraction(1)
        return self.poly(k).get(unit_exps(k, self.n_max), Fraction(0))

    def is_hazewinkel(self) -> bool:
        return self == GenSequence.hazewinkel(self.n_max)

    def inverse(self) -> "GenSequence":
        """The triangular inverse substitution: v_k as a polynomial in u.

        The result is again a GenSequence whose exponent tuples index u_1..u_N.
        """
        N = self.n_max
        inv: List[Poly] = []
        for k in range(1, N + 1):
            alpha = self.leading(k)
            if not alpha or not is_unit(alpha):
                raise ValueError(f"u_{k} has non-unit leading coefficient {alpha}")
            # v_k = alpha^{-1} (u_k - sum of other terms), other terms only involve v_1..v_{k-1}
            rest = {e: c for e, c in self.poly(k).items() if e != unit_exps(k, N)}
            acc: Poly = {unit_exps(k, N): Fraction(1)}
            acc = poly_add(acc, substitute(rest, inv, N), scale=-1)
            inv.append({e: c / alpha for e, c in acc.items()})
        return GenSequence.from_polys(N, inv)

    def to_json(self) -> list:
        return [
            {"k": k, "expansion_in_v": [[[c.numerator, c.denominator], list(e)] for e, c in self.expansions[k - 1]]}
            for k in range(1, self.n_max + 1)
        ]


def substitute(p: Poly, images: List[Poly], N: int) -> Poly:
    """Replace the k-th variable of ``p`` by ``images[k-1]``.

    Only variables with an image are allowed to occur.
    """
    out: Poly = {}
    for e, c in p.items():
        term: Poly = {tuple([0] * N): c}
        for k, x in enumerate(e):
            if x:
                if k >= len(images):
                    raise ValueError("substitution for an undefined variable")
                term = poly_mul(term, poly_pow(images[k], x, N))
        out = poly_add(out, term)
    return out


@dataclass
class SequenceReport:
    valid: bool
    diagnostics: List[str]

    def __bool__(self) -> bool:
        return self.valid


def validate_sequence(u: GenSequence) -> SequenceReport:
    """Check homogeneity, unit leading coefficients and the ideal condition.

    Correction terms of u_k must lie in (2, v_1, ..., v_{k-1}): every term
    other than ``alpha_k v_k`` either has an even coefficient or involves
    some v_i with i < k. Membership is judged on the supplied expansion.
    """
    N = u.n_max
    diags: List[str] = []
    for k in range(1, N + 1):
        p = u.poly(k)
        target = (1 << k) - 1
        for e in p:
            if v_weight(e) != target:
                diags.append(f"u_{k}: term {e} has weight {v_weight(e)}, expected {target}")
        alpha = u.leading(k)
        if not alpha:
            diags.append(f"u_{k}: no v_{k} term")
        elif not is_unit(alpha):
            diags.append(f"u_{k}: leading coefficient {alpha} is not a 2-local unit")
        for e, c in p.items():
            if e == unit_exps(k, N):
                continue
            lower = any(e[i] for i in range(k - 1))
            if not lower and c.numerator % 2:
                diags.append(f"u_{k}: term {c}*v^{e} is not in (2, v_1, ..., v_{k - 1})")
    return SequenceReport(not diags, diags)
