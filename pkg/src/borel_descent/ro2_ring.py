"""Exact arithmetic in the RO(Z/2)-graded rings E_inf^c((BP;u)_R) and pi_* c(E(n;u)_R).

Elements are finite sums of canonical monomials

    coeff * prod_k u_k^{e_k} * u_n^{-m} * sigma^J * a^e

over the 2-local integers. The sigma exponent is pooled into a single total
``J``; the product relation of the presentation makes every product depend
only on that total. Gradings follow ``deg a = -alpha`` and
``deg sigma = alpha - 1``, so ``deg(u_k sigma^j) = (2^k - 1)(1 + alpha) + j(alpha - 1)``.

Relations applied by :meth:`PresRing.canonical`:

* ``u_0 = 2`` whenever the remaining factors can carry the sigma exponent,
* ``(u_k sigma^*) a^{2^{k+1}-1} = 0`` (thresholds configurable per k),
* coefficients reduced mod 2 once ``2 a = u_0 a = 0`` applies,
* ``u_n u_n^{-1} = 1`` in presentations where u_n is inverted.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .sequences import GenSequence, Poly, substitute, two_local, unit_exps


class RingError(ValueError):
    pass


class WindowError(RingError):
    """An element left the configured truncation window."""


class DivisibilityError(RingError):
    """A raw monomial carries a sigma exponent no generator product can produce."""


class HeterogeneousError(RingError):
    """A sum mixes monomials of different bidegrees."""


@dataclass(frozen=True, order=True)
class ROdeg:
    one: int = 0
    alpha: int = 0

    def __add__(self, other: "ROdeg") -> "ROdeg":
        return ROdeg(self.one + other.one, self.alpha + other.alpha)

    def __sub__(self, other: "ROdeg") -> "ROdeg":
        return ROdeg(self.one - other.one, self.alpha - other.alpha)

    def __neg__(self) -> "ROdeg":
        return ROdeg(-self.one, -self.alpha)

    def __mul__(self, k: int) -> "ROdeg":
        return ROdeg(self.one * k, self.alpha * k)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if self.alpha == 0:
            return str(self.one)
        sign = "+" if self.alpha > 0 else "-"
        coef = "" if abs(self.alpha) == 1 else str(abs(self.alpha))
        return f"{self.one}{sign}{coef}a"


DEG_A = ROdeg(0, -1)
DEG_SIGMA = ROdeg(-1, 1)


def deg_u(k: int) -> ROdeg:
    w = (1 << k) - 1
    return ROdeg(w, w)


@dataclass(frozen=True, order=True)
class Monomial:
    """A canonical monomial without its coefficient.

    ``u`` is a sorted tuple of ``(k, exponent)`` pairs with positive exponents.
    """

    u: Tuple[Tuple[int, int], ...] = ()
    uinv: int = 0
    sigma: int = 0
    a: int = 0

    @property
    def kmin(self) -> Optional[int]:
        return self.u[0][0] if self.u else None

    def udict(self) -> Dict[int, int]:
        return dict(self.u)

    def __str__(self) -> str:
        parts = []
        for k, e in self.u:
            parts.append(f"u{k}" + (f"^{e}" if e != 1 else ""))
        if self.uinv:
            parts.append(f"u_inv^{self.uinv}" if self.uinv != 1 else "u_inv")
        if self.sigma:
            parts.append(f"s^{self.sigma}")
        if self.a:
            parts.append("a" + (f"^{self.a}" if self.a != 1 else ""))
        return "*".join(parts) if parts else "1"


ONE = Monomial()


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class Element:
    """An immutable canonical element: a sorted tuple of (monomial, coefficient)."""

    ring: "PresRing" = field(compare=False, repr=False)
    terms: Tuple[Tuple[Monomial, Fraction], ...] = ()

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "Element") -> "Element":
        return self.ring.add(self, other)

    def __sub__(self, other: "Element") -> "Element":
        return self.ring.add(self, self.ring.scale(other, -1))

    def __mul__(self, other) -> "Element":
        if isinstance(other, (int, Fraction)):
            return self.ring.scale(self, other)
        return self.ring.mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Element":
        return self.ring.power(self, n)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def monomials(self) -> List[Monomial]:
        return [m for m, _ in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for m, c in self.terms:
            if m == ONE:
                out.append(_fmt_coeff(c))
            elif c == 1:
                out.append(str(m))
            elif c == -1:
                out.append("-" + str(m))
            else:
                out.append(f"{_fmt_coeff(c)}*{m}")
        return " + ".join(out).replace("+ -", "- ")

    def to_json(self) -> list:
        return [
            {
                "coeff": [c.numerator, c.denominator],
                "u": {str(k): e for k, e in m.u},
                "uinv": m.uinv,
                "sigma": m.sigma,
                "a": m.a,
            }
            for m, c in self.terms
        ]


def default_annihilators(n_max: int) -> Tuple[Optional[int], ...]:
    return tuple((1 << (k + 1)) - 1 for k in range(n_max + 1))


@dataclass(frozen=True)
class PresRing:
    """A truncated presentation of E_inf^c((BP;u)_R) ("bp") or pi_* c(E(n;u)_R) ("en").

    ``annihilators[k]`` is the exponent ``t`` in the relation ``u_k a^t = 0``
    (None drops the relation). ``sigma_period`` adds a standalone invertible
    generator ``sigma^{period}``; it is ``2^{n+1}`` for "en" rings and is
    also used for the window-scale BP<n_max> comparison ring.
    ``inverted`` may contain "u" (u_n invertible) and "a".
    """

    kind: str = "bp"
    n_max: int = 1
    n: Optional[int] = None
    sigma_window: Tuple[int, int] = (-64, 64)
    a_max: int = 32
    annihilators: Tuple[Optional[int], ...] = ()
    sigma_period: Optional[int] = None
    inverted: frozenset = frozenset()
    sequence: Optional[GenSequence] = None

    def __post_init__(self):
        if self.kind not in ("bp", "en"):
            raise RingError(f"unknown ring kind {self.kind!r}")
        if self.n_max < 0 or self.a_max < 0:
            raise RingError("window parameters must be nonnegative")
        lo, hi = self.sigma_window
        if lo > hi:
            raise RingError(f"empty sigma window {self.sigma_window}")
        if not self.annihilators:
            object.__setattr__(self, "annihilators", default_annihilators(self.n_max))
        if len(self.annihilators) != self.n_max + 1:
            raise RingError("need one annihilator exponent per generator index 0..n_max")
        if "u" in self.inverted and self.n is None:
            raise RingError("inverting u_n needs n")
        if self.kind == "en":
            if self.n is None or self.n < 1:
                raise RingError("en rings need n >= 1")
            if self.n_max != self.n:
                raise RingError("en rings use generator indices k <= n (n_max == n)")
            if "u" not in self.inverted:
                object.__setattr__(self, "inverted", self.inverted | {"u"})
            if self.sigma_period is None:
                object.__setattr__(self, "sigma_period", 1 << (self.n + 1))

    # ----------------------------------------------------------------- degrees
    def degree_of(self, m) -> ROdeg:
        """Bidegree of a monomial, or of a homogeneous element."""
        if isinstance(m, Element):
            degs = {self.degree_of(x) for x in m.monomials()}
            if len(degs) > 1:
                raise HeterogeneousError(f"element {m} mixes degrees {sorted(degs)}")
            if not degs:
                raise HeterogeneousError("the zero element has no well-defined degree")
            return degs.pop()
        d = ROdeg()
        for k, e in m.u:
            d = d + deg_u(k) * e
        if m.uinv:
            d = d - deg_u(self.n) * m.uinv
        return d + DEG_SIGMA * m.sigma + DEG_A * m.a

    @property
    def trivial(self) -> bool:
        """True when 1 = 0 (a both inverted and nilpotent)."""
        return "a" in self.inverted and self._a_threshold() is not None

    def _a_threshold(self) -> Optional[int]:
        # a^t = 0 for the unit monomial: only through an invertible u_n
        if "u" in self.inverted:
            return self.annihilators[self.n]
        return None

    # --------------------------------------------------------------- canonical
    def sigma_modulus(self, u: Dict[int, int]) -> Optional[int]:
        """Divisibility the total sigma exponent must satisfy (None: must be 0)."""
        mods = []
        ks = [k for k, e in u.items() if e > 0]
        if ks:
            mods.append(1 << (min(ks) + 1))
        if "u" in self.inverted:
            mods.append(1 << (self.n + 1))
        if self.sigma_period:
            mods.append(self.sigma_period)
        return min(mods) if mods else None

    def admissible(self, u: Dict[int, int], J: int) -> bool:
        mod = self.sigma_modulus(u)
        return J == 0 if mod is None else J % mod == 0

    def canonical(self, coeff, u: Dict[int, int], uinv: int, J: int, e: int,
                  check_window: bool = True) -> Optional[Tuple[Monomial, Fraction]]:
        """Reduce one merged monomial; returns None for zero."""
        coeff = two_local(coeff)
        if not coeff or self.trivial:
            return None
        u = {k: x for k, x in u.items() if x}
        for k, x in u.items():
            if x < 0:
                raise RingError(f"negative exponent for u_{k}")
            if k > self.n_max:
                if check_window:
                    raise WindowError(f"u_{k} outside generator window k <= {self.n_max}")
        if uinv:
            if "u" not in self.inverted:
                raise RingError("u_n^{-1} used in a ring where u_n is not inverted")
            have = u.get(self.n, 0)
            c = min(have, uinv)
            uinv -= c
            if have - c:
                u[self.n] = have - c
            else:
                u.pop(self.n, None)
        if "a" not in self.inverted and e < 0:
            raise RingError("negative power of a in a ring where a is not inverted")
        if not self.admissible(u, J):
            raise DivisibilityError(f"sigma^{J} is not reachable from u-factors {sorted(u.items())}")
        # u_0 = 2
        if u.get(0):
            coeff *= 2 ** (u[0] - 1)
            u[0] = 1
            rest = {k: x for k, x in u.items() if k != 0}
            if self.admissible(rest, J):
                coeff *= 2
                u = rest
        # a inverted: anything annihilated by a power of a vanishes
        if "a" in self.inverted:
            if any(self.annihilators[k] is not None for k in u):
                return None
            if self.annihilators[0] is not None:
                coeff = Fraction(coeff.numerator % 2)
                if not coeff:
                    return None
        elif e > 0:
            for k in u:
                t = self.annihilators[k]
                if t is not None and e >= t:
                    return None
            t = self._a_threshold()
            if t is not None and e >= t:
                return None
            t0 = self.annihilators[0]
            if t0 is not None and e >= t0:
                coeff = Fraction(coeff.numerator % 2)
                if not coeff:
                    return None
        if check_window:
            lo, hi = self.sigma_window
            if not lo <= J <= hi:
                raise WindowError(f"sigma exponent {J} outside window [{lo}, {hi}]")
            if abs(e) > self.a_max:
                raise WindowError(f"a exponent {e} exceeds a_max={self.a_max}")
        return Monomial(tuple(sorted(u.items())), uinv, J, e), coeff

    def element(self, terms: Iterable[Tuple[Fraction, Dict[int, int], int, int, int]],
                check_window: bool = True) -> Element:
        """Build an element from merged raw terms ``(coeff, u, uinv, J, e)``."""
        acc: Dict[Monomial, Fraction] = {}
        for coeff, u, uinv, J, e in terms:
            r = self.canonical(coeff, dict(u), uinv, J, e, check_window)
            if r is None:
                continue
            m, c = r
            acc[m] = acc.get(m, 0) + c
        out = []
        for m, c in sorted(acc.items()):
            t0 = self.annihilators[0]
            if t0 is not None and ("a" in self.inverted or 0 < m.a and t0 <= m.a):
                c = Fraction(c.numerator % 2)
            if c:
                out.append((m, c))
        return Element(self, tuple(out))

    def normal_form(self, raw: Iterable) -> Element:
        """Normal form of a formal sum of raw monomials.

        Each raw monomial is ``(coeff, factors)`` with factors drawn from
        ``("u", k, j)`` for the generator ``u_k sigma^j`` (``j`` divisible
        by ``2^{k+1}``), ``("a", e)``, ``("s", j)`` for a power of the
        standalone sigma generator and ``("uinv", m)``.
        """
        terms = []
        for coeff, factors in raw:
            u: Dict[int, int] = {}
            uinv = J = e = 0
            for f in factors:
                tag = f[0]
                if tag == "u":
                    _, k, j = f
                    if j % (1 << (k + 1)):
                        raise DivisibilityError(f"u_{k} sigma^{j}: exponent not divisible by {1 << (k + 1)}")
                    u[k] = u.get(k, 0) + 1
                    J += j
                elif tag == "a":
                    e += f[1]
                elif tag == "s":
                    period = self.sigma_period
                    if not period or f[1] % period:
                        raise DivisibilityError(f"sigma^{f[1]} is not a power of a standalone generator")
                    J += f[1]
                elif tag == "uinv":
                    uinv += f[1]
                else:
                    raise RingError(f"unknown factor {f!r}")
            terms.append((coeff, u, uinv, J, e))
        return self.element(terms)

    # ------------------------------------------------------------- arithmetic
    def zero(self) -> Element:
        return Element(self, ())

    def const(self, c) -> Element:
        return self.element([(c, {}, 0, 0, 0)])

    def one(self) -> Element:
        return self.const(1)

    def mono(self, coeff=1, u: Optional[Dict[int, int]] = None, uinv: int = 0, sigma: int = 0, a: int = 0,
             check_window: bool = True) -> Element:
        return self.element([(coeff, u or {}, uinv, sigma, a)], check_window)

    def gen_a(self) -> Element:
        return self.mono(a=1)

    def gen_u(self, k: int, sigma: int = 0) -> Element:
        if sigma % (1 << (k + 1)):
            raise DivisibilityError(f"u_{k} sigma^{sigma} is not a generator")
        return self.mono(u={k: 1}, sigma=sigma)

    def add(self, x: Element, y: Element) -> Element:
        return self.element(
            [(c, m.udict(), m.uinv, m.sigma, m.a) for m, c in x.terms + y.terms]
        )

    def scale(self, x: Element, c) -> Element:
        return self.element([(c * cx, m.udict(), m.uinv, m.sigma, m.a) for m, cx in x.terms])

    def mul(self, x: Element, y: Element) -> Element:
        terms = []
        for m1, c1 in x.terms:
            for m2, c2 in y.terms:
                u = m1.udict()
                for k, e in m2.u:
                    u[k] = u.get(k, 0) + e
                terms.append((c1 * c2, u, m1.uinv + m2.uinv, m1.sigma + m2.sigma, m1.a + m2.a))
        return self.element(terms)

    def power(self, x: Element, n: int) -> Element:
        out = self.one()
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def equals(self, x: Element, y: Element) -> bool:
        return x.terms == y.terms

    # ---------------------------------------------------------- localization
    def is_nilpotent_a(self) -> bool:
        t = self._a_threshold()
        if t is None:
            return False
        r = self.canonical(1, {}, 0, 0, t, check_window=False)
        return r is None

    def localize(self, g: str) -> "PresRing":
        """Invert ``a`` or ``u_n`` (``g`` is ``"a"`` or ``"u<n>"``)."""
        if g == "a":
            return replace(self, inverted=self.inverted | {"a"})
        m = re.fullmatch(r"u_?(\d+)", g)
        if not m:
            raise RingError(f"can only localize at a or u_n, not {g!r}")
        k = int(m.group(1))
        if self.n is not None and k != self.n and "u" in self.inverted:
            raise RingError(f"u_{self.n} is already inverted; cannot also invert u_{k}")
        if k < 1 or k > self.n_max:
            raise RingError(f"u_{k} is outside the generator window")
        return replace(self, n=k, inverted=self.inverted | {"u"})

    def with_annihilator(self, k: int, t: Optional[int]) -> "PresRing":
        ann = list(self.annihilators)
        ann[k] = t
        return replace(self, annihilators=tuple(ann))

    # --------------------------------------------------------------- parsing
    def parse(self, text: str) -> Element:
        """Parse strings such as ``"2*a"``, ``"u1*s^4*a^3"`` or ``"u2^3*s^-8 + a"``."""
        text = text.strip()
        if not text:
            raise RingError("empty element")
        terms = []
        for sign, body in _split_terms(text):
            coeff = Fraction(sign)
            body = re.sub(r"(?<![\w^])(\d+)([a-z])", r"\1*\2", body)
            u: Dict[int, int] = {}
            uinv = J = e = 0
            for tok in [t for t in re.split(r"[*\s]+", body) if t]:
                mt = re.fullmatch(r"(-?\d+)(?:/(\d+))?", tok)
                if mt:
                    coeff *= Fraction(int(mt.group(1)), int(mt.group(2) or 1))
                    continue
                mt = re.fullmatch(r"([a-z_]+)(\d*)(?:\^(-?\d+))?", tok)
                if not mt:
                    raise RingError(f"cannot parse factor {tok!r}")
                name, idx, exp = mt.group(1), mt.group(2), mt.group(3)
                x = int(exp) if exp is not None else 1
                if name == "a" and not idx:
                    e += x
                elif name in ("s", "sigma") and not idx:
                    J += x
                elif name in ("u", "u_") and idx:
                    k = int(idx)
                    if x < 0:
                        if "u" not in self.inverted or k != self.n:
                            raise RingError(f"u_{k} is not invertible here")
                        uinv += -x
                    else:
                        u[k] = u.get(k, 0) + x
                elif name == "u_inv" and not idx:
                    uinv += x
                else:
                    raise RingError(f"unknown generator {tok!r}")
            terms.append((coeff, u, uinv, J, e))
        return self.element(terms)

    def from_json_element(self, data: list) -> Element:
        terms = []
        for t in data:
            c = t.get("coeff", [1, 1])
            coeff = Fraction(c[0], c[1]) if isinstance(c, list) else Fraction(c)
            u = {int(k): int(v) for k, v in t.get("u", {}).items()}
            terms.append((coeff, u, int(t.get("uinv", 0)), int(t.get("sigma", 0)), int(t.get("a", 0))))
        return self.element(terms)

    # ------------------------------------------------------------ enumeration
    def basis_monomials(self, max_weight: int, sigma_range: Optional[Tuple[int, int]] = None,
                        a_max: Optional[int] = None) -> List[Tuple[Monomial, int]]:
        """All nonzero canonical monomials with coefficient 1 in a window.

        Returns pairs ``(monomial, order)``: order 0 means a free Z_(2)
        summand, 2 means Z/2. ``max_weight`` bounds the u-degree measured
        in units of (1 + alpha). Canonical u_0 factors are included.
        """
        lo, hi = sigma_range or self.sigma_window
        amax = self.a_max if a_max is None else a_max
        out = []
        for u in _u_exponents(self.n_max, max_weight):
            for J in range(lo, hi + 1):
                if not self.admissible(u, J):
                    continue
                for e in range(0, amax + 1):
                    r = self.canonical(1, dict(u), 0, J, e, check_window=False)
                    if r is None:
                        continue
                    m, c = r
                    if m.udict() != u or c != 1:
                        continue  # u_0 re-homed to a coefficient: not a basis monomial
                    order = 0 if e == 0 or self.annihilators[0] is None else 2
                    out.append((m, order))
        return out


def _u_exponents(n_max: int, max_weight: int):
    """Exponent dicts over u_0..u_n_max with u_0 exponent <= 1 and bounded weight."""
    def rec(k, rem):
        if k > n_max:
            yield {}
            return
        w = (1 << k) - 1
        top = 1 if k == 0 else rem // w
        for x in range(top + 1):
            for rest in rec(k + 1, rem - x * w):
                d = dict(rest)
                if x:
                    d[k] = x
                yield d
    yield from rec(0, max_weight)


def _split_terms(text: str):
    text = text.replace("- ", "-").replace(" -", " +-")
    out = []
    for part in re.split(r"\s*\+\s*", text):
        part = part.strip()
        if not part:
            continue
        sign = 1
        while part.startswith("-") and not re.match(r"-\d", part):
            sign = -sign
            part = part[1:].strip()
        out.append((sign, part))
    return out


# ------------------------------------------------------------------ builders
def bp_ring(n_max: int, sigma_window=(-64, 64), a_max: int = 32, sequence: Optional[GenSequence] = None,
            truncated: bool = False) -> PresRing:
    """The BP-style presentation; ``truncated`` adds the permanent generator sigma^{2^{n_max+1}}.

    Truncating BP_* to v_1..v_{n_max} leaves sigma^{2^{n_max+1}} with no
    differential, so the window-scale comparison ring needs it.
    """
    return PresRing("bp", n_max, None, tuple(sigma_window), a_max,
                    sigma_period=(1 << (n_max + 1)) if truncated else None, sequence=sequence)


def en_ring(n: int, sigma_window=(-64, 64), a_max: int = 32, sequence: Optional[GenSequence] = None) -> PresRing:
    return PresRing("en", n, n, tuple(sigma_window), a_max, sequence=sequence)


def load_ring(path_or_doc) -> PresRing:
    """Load a presentation from a JSON document (path, text or dict)."""
    if isinstance(path_or_doc, dict):
        doc = path_or_doc
    else:
        try:
            with open(path_or_doc) as fh:
                doc = json.load(fh)
        except OSError:
            doc = json.loads(path_or_doc)
    kind = doc.get("kind", "bp")
    n_max = int(doc.get("n_max", doc.get("n", 1)))
    win = tuple(doc.get("sigma_window", [-64, 64]))
    if len(win) != 2:
        raise RingError("sigma_window must be [lo, hi]")
    a_max = int(doc.get("a_max", 32))
    seq = GenSequence.from_json(n_max, doc.get("generators", []))
    if kind == "en":
        n = int(doc["n"])
        return en_ring(n, win, a_max, seq)
    if kind != "bp":
        raise RingError(f"unknown ring kind {kind!r}")
    return bp_ring(n_max, win, a_max, seq, truncated=bool(doc.get("truncated", False)))


# ----------------------------------------------------------- ideal comparison
@dataclass(frozen=True)
class IdealGens:
    """Generators of I(u): the sequence u plus the annihilation exponents in force."""

    sequence: GenSequence
    annihilators: Tuple[Optional[int], ...]

    @classmethod
    def standard(cls, sequence: GenSequence) -> "IdealGens":
        return cls(sequence, default_annihilators(sequence.n_max))

    def replace_annihilator(self, k: int, t: Optional[int]) -> "IdealGens":
        ann = list(self.annihilators)
        ann[k] = t
        return IdealGens(self.sequence, tuple(ann))

    def generators(self, sigma_window: Tuple[int, int]):
        """The relations ``u_k sigma^{l 2^{k+1}} a^{t_k}`` as polynomials in this sequence's u.

        Yields ``(label, k, J, e)``; ``u_0 = 2`` is built into both
        sides and product relations hold identically for pooled exponents.
        """
        N = self.sequence.n_max
        lo, hi = sigma_window
        for k in range(N + 1):
            t = self.annihilators[k]
            if t is None:
                continue
            step = 1 << (k + 1)
            for J in range(-(-lo // step) * step, hi + 1, step):
                yield f"u{k}*s^{J}*a^{t}", k, J, t


def _poly_in_v_to_element(R: PresRing, poly: Poly, J: int, e: int) -> Element:
    terms = []
    for exps, c in poly.items():
        u = {i + 1: x for i, x in enumerate(exps) if x}
        terms.append((c, u, 0, J, e))
    return R.element(terms, check_window=False)


def ideal_equal(gens1: IdealGens, gens2: IdealGens, R: PresRing) -> Tuple[bool, Optional[str]]:
    """Decide I(gens1) = I(gens2) on the window of ``R``.

    Each generator of one set is rewritten in the other set's u-coordinates
    and reduced with that set's rewrite system. Returns ``(True, None)`` or
    ``(False, label)`` naming the first generator that fails to vanish.
    """
    for src, dst in ((gens1, gens2), (gens2, gens1)):
        N = src.sequence.n_max
        to_v = [src.sequence.poly(k) for k in range(1, N + 1)]
        to_dst = [dst.sequence.inverse().poly(k) for k in range(1, N + 1)]
        ring = replace(R, annihilators=dst.annihilators, sequence=dst.sequence)
        for label, k, J, e in src.generators(R.sigma_window):
            if k == 0:
                reduced = ring.element([(1, {0: 1}, 0, J, e)], check_window=False)
            else:
                in_v = substitute({unit_exps(k, N): Fraction(1)}, to_v, N)
                reduced = _poly_in_v_to_element(ring, substitute(in_v, to_dst, N), J, e)
            if reduced:
                return False, label
    return True, None
