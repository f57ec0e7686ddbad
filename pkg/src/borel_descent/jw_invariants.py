"""Integer invariants of the fibration Sigma^{lambda(n)} XR -> XR -> X.

``y(n) = u_n^{2^n-1} sigma^{-2^{n+1}(2^{n-1}-1)}`` is the invertible class of
degree lambda(n) + alpha and ``x(n) = a * y(n)`` the nilpotent class of
degree lambda(n). The text only pins x(n) down through a diagram; the
monomial a * y(n) is the choice made here (unique up to a unit).
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import List, Optional

from .ro2_ring import Element, PresRing, ROdeg, WindowError, en_ring


@dataclass(frozen=True)
class FibrationProfile:
    n: int
    lam: int
    nilpotency: int
    period: int

    def as_row(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        d["periodicity_check"] = periodicity_check(self.n)
        return d


def lam(n: int) -> int:
    return 2 ** (2 * n + 1) - 2 ** (n + 2) + 1


def profile(n: int) -> FibrationProfile:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return FibrationProfile(n, lam(n), 2 ** (n + 1) - 1, 2 * (2 ** n - 1))


def periodicity_check(n: int) -> bool:
    """|v_n| (2^n - 1) = lambda(n) + 1, evaluated exactly."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return 2 * (2 ** n - 1) * (2 ** n - 1) == lam(n) + 1


def y_sigma_exponent(n: int) -> int:
    return -(2 ** (n + 1)) * (2 ** (n - 1) - 1)


def ring_for(n: int, power: int = 1) -> PresRing:
    """An E(n)-style ring whose window holds x(n)^power and y(n)^{+-power}."""
    J = abs(y_sigma_exponent(n)) * max(power, 1)
    return en_ring(n, (-J, J), max(power, 2 ** (n + 1)))


def _check_ring(n: int, R: PresRing) -> None:
    if R.kind != "en" or R.n != n:
        raise ValueError(f"need the en-style presentation with n={n}")


def y_class(n: int, R: Optional[PresRing] = None) -> Element:
    R = R or ring_for(n)
    _check_ring(n, R)
    try:
        return R.mono(u={n: 2 ** n - 1}, sigma=y_sigma_exponent(n))
    except WindowError as exc:
        raise WindowError(f"window too small for y({n}): {exc}") from exc


def y_inverse(n: int, R: Optional[PresRing] = None) -> Element:
    R = R or ring_for(n)
    _check_ring(n, R)
    return R.mono(uinv=2 ** n - 1, sigma=-y_sigma_exponent(n))


def x_class(n: int, R: Optional[PresRing] = None) -> Element:
    R = R or ring_for(n)
    return R.mul(R.gen_a(), y_class(n, R))


def nilpotency_order(x: Element, cap: int) -> Optional[int]:
    """Smallest m <= cap with x^m = 0, else None."""
    p = x.ring.one()
    for m in range(1, cap + 1):
        p = x.ring.mul(p, x)
        if not p:
            return m
    return None


def tate_trivial_check(n: int, R: Optional[PresRing] = None) -> bool:
    """Inverting a in the E(n;u) Borel coefficient ring gives the zero ring."""
    R = R or ring_for(n)
    L = R.localize("a")
    return L.trivial and not L.one()


def invariants_table(n_max: int) -> List[dict]:
    return [profile(n).as_row() for n in range(1, n_max + 1)]


def expected_degrees(n: int):
    return ROdeg(lam(n), 1), ROdeg(lam(n), 0)
