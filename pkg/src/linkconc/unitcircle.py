"""Exact location of the unit-circle roots of a symmetric Laurent polynomial.

A symmetric ``f(t) = a0 + sum_k a_k (t**k + t**-k)`` satisfies
``f(exp(i*theta)) = a0 + sum_k 2 a_k T_k(cos theta)`` with ``T_k`` the
Chebyshev polynomials, so unit roots of ``f`` are the roots of a real
polynomial in ``x = cos(theta)`` lying in ``[-1, 1]``.  Roots are isolated to
rational intervals with Sturm sequences; roots of cyclotomic factors are
labelled with their exact angle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath

from .algebra import poly as P
from .algebra.laurent import LaurentPolynomial

ISOLATION_WIDTH = Fraction(1, 2**64)


def center(f: LaurentPolynomial) -> LaurentPolynomial:
    """Multiply by a power of ``t`` so the exponent range is symmetric about 0."""
    span = f.min_exp + f.max_exp
    if span % 2:
        raise ValueError(f"{f} cannot be centred: odd exponent span")
    return f * LaurentPolynomial.t(-span // 2)


@lru_cache(maxsize=None)
def chebyshev_t(k: int) -> P.Poly:
    if k == 0:
        return P.ONE
    if k == 1:
        return (Fraction(0), Fraction(1))
    return P.sub(P.mul((Fraction(0), Fraction(2)), chebyshev_t(k - 1)), chebyshev_t(k - 2))


def chebyshev_form(f: LaurentPolynomial) -> P.Poly:
    """Polynomial ``q`` with ``f(exp(i*theta)) == q(cos(theta))`` for symmetric ``f``."""
    if f != f.involute():
        raise ValueError(f"{f} is not symmetric under t -> 1/t")
    out = P.trim([f[0]])
    for k in range(1, f.max_exp + 1):
        if f[k]:
            out = P.add(out, P.scale(chebyshev_t(k), 2 * f[k]))
    return out


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> P.Poly:
    """The m-th cyclotomic polynomial as an ordinary polynomial."""
    num = P.trim([-1] + [0] * (m - 1) + [1])
    for d in range(1, m):
        if m % d == 0:
            num = P.exact_div(num, cyclotomic(d))
    return num


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def cyclotomic_factorization(f: LaurentPolynomial) -> tuple[dict[int, int], LaurentPolynomial]:
    """Split ``f`` into cyclotomic factors and a remainder free of roots of unity.

    Returns ``({m: multiplicity}, rest)`` with ``f == t**k * prod Phi_m**e * rest``
    for some ``k``; ``rest`` is centred when ``f`` is symmetric.
    """
    _, p = f.to_poly()
    d = P.deg(p)
    found: dict[int, int] = {}
    m = 1
    # phi(m) >= sqrt(m/2), so no cyclotomic factor of degree <= d has m > 2 d^2
    while m <= max(2, 2 * d * d):
        if euler_phi(m) <= d:
            c = cyclotomic(m)
            while P.deg(p) >= P.deg(c):
                q, r = P.divmod_(p, c)
                if r:
                    break
                p = q
                found[m] = found.get(m, 0) + 1
        m += 1
    rest = LaurentPolynomial.from_poly(p)
    if (rest.min_exp + rest.max_exp) % 2 == 0:
        rest = center(rest)
    return found, rest


def divisible_by_cyclotomic(f: LaurentPolynomial, m: int) -> bool:
    _, p = f.to_poly()
    return not P.divmod_(p, cyclotomic(m))[1]


# -- Sturm sequences ---------------------------------------------------


def sturm_sequence(p: P.Poly) -> list[P.Poly]:
    seq = [p, P.derivative(p)]
    while seq[-1]:
        r = P.divmod_(seq[-2], seq[-1])[1]
        seq.append(P.neg(r))
    return seq[:-1]


def _sign_changes(seq: list[P.Poly], x: Fraction) -> int:
    vals = [P.evaluate(q, x) for q in seq]
    vals = [v for v in vals if v != 0]
    return sum(1 for a, b in zip(vals, vals[1:]) if (a < 0) != (b < 0))


def count_roots(seq: list[P.Poly], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in ``(a, b]``."""
    return _sign_changes(seq, a) - _sign_changes(seq, b)


@dataclass(frozen=True)
class RootInterval:
    """A rational interval ``[lo, hi]`` holding exactly one root of ``poly``."""

    lo: Fraction
    hi: Fraction
    poly: P.Poly

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def refine(self) -> "RootInterval":
        if self.exact:
            return self
        mid = (self.lo + self.hi) / 2
        v = P.evaluate(self.poly, mid)
        if v == 0:
            return RootInterval(mid, mid, self.poly)
        # hi is never a root of a non-exact interval, so compare against it
        if (P.evaluate(self.poly, self.hi) < 0) != (v < 0):
            return RootInterval(mid, self.hi, self.poly)
        return RootInterval(self.lo, mid, self.poly)

    def refine_to(self, width: Fraction) -> "RootInterval":
        iv = self
        while iv.hi - iv.lo > width:
            iv = iv.refine()
        return iv

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


def isolate_roots(p: P.Poly, lo: Fraction, hi: Fraction, width: Fraction = ISOLATION_WIDTH) -> list[RootInterval]:
    """Isolate the distinct roots of ``p`` in the open interval ``(lo, hi)``.

    ``p`` is made squarefree first, so every root is a sign change and the
    returned intervals can be refined by plain bisection.  Intervals come back
    sorted in increasing order.
    """
    if P.deg(p) <= 0:
        return []
    sq = P.squarefree(p)
    seq = sturm_sequence(sq)
    out: list[RootInterval] = []
    stack = [(Fraction(lo), Fraction(hi))]
    while stack:
        a, b = stack.pop()
        n = count_roots(seq, a, b)
        if n == 0:
            continue
        if n == 1:
            if P.evaluate(sq, b) == 0:
                out.append(RootInterval(b, b, sq))
            else:
                out.append(RootInterval(a, b, sq).refine_to(width))
            continue
        mid = (a + b) / 2
        stack.append((a, mid))
        stack.append((mid, b))
    out = [iv for iv in out if not (iv.exact and iv.lo == hi)]
    out.sort(key=lambda iv: iv.lo)
    return out


def separate(intervals: list[RootInterval]) -> list[RootInterval]:
    """Refine intervals (sorted by ``lo``) until they are pairwise disjoint."""
    ivs = sorted(intervals, key=lambda iv: iv.lo)
    changed = True
    while changed:
        changed = False
        for i in range(len(ivs) - 1):
            a, b = ivs[i], ivs[i + 1]
            if a.hi >= b.lo:
                if a.exact and b.exact:
                    raise ValueError("coincident roots from coprime factors")
                ivs[i], ivs[i + 1] = a.refine(), b.refine()
                changed = True
        ivs.sort(key=lambda iv: iv.lo)
    return ivs


def rational_circle_point(lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """A rational point ``(c, s)`` on the unit circle with ``s > 0`` and ``lo < c < hi``.

    Uses ``c = (1 - u^2)/(1 + u^2)``, ``s = 2u/(1 + u^2)``, which is decreasing
    in ``u > 0``; requires ``-1 <= lo < hi <= 1``.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    # c(u) in (lo, hi)  <=>  u^2 in ((1-hi)/(1+hi), (1-lo)/(1+lo))
    a = (1 - hi) / (1 + hi)
    b = (1 - lo) / (1 + lo) if lo > -1 else None
    target = (a + b) / 2 if b is not None else a + 1
    den = 1
    while True:
        num = _isqrt_fraction(target * den * den)
        u = Fraction(max(num, 1), den)
        u2 = u * u
        if u2 > a and (b is None or u2 < b):
            c = (1 - u2) / (1 + u2)
            s = 2 * u / (1 + u2)
            return c, s
        den *= 2


def _isqrt_fraction(q: Fraction) -> int:
    from math import isqrt

    return isqrt(q.numerator // q.denominator)


def cos_pi(theta_over_pi: Fraction, dps: int = 60):
    with mpmath.workdps(dps):
        return mpmath.cos(mpmath.pi * mpmath.mpf(theta_over_pi.numerator) / theta_over_pi.denominator)


def acos_over_pi(x: Fraction, dps: int = 40) -> Fraction:
    """``arccos(x)/pi`` rounded to ``dps`` significant digits, as a Fraction."""
    with mpmath.workdps(dps + 10):
        v = mpmath.acos(mpmath.mpf(x.numerator) / x.denominator) / mpmath.pi
        return Fraction(mpmath.nstr(v, dps, strip_zeros=False, min_fixed=-mpmath.inf, max_fixed=mpmath.inf))
