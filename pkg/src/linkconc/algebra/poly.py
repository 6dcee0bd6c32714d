"""Dense univariate polynomials over Q.

A polynomial is a tuple of :class:`fractions.Fraction` coefficients, lowest
degree first, with no trailing zeros.  The zero polynomial is ``()``.  These
helpers are the arithmetic core under :mod:`linkconc.algebra.laurent` and
:mod:`linkconc.algebra.ratfunc`; they never use floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Poly = tuple  # tuple[Fraction, ...]

ZERO: Poly = ()
ONE: Poly = (Fraction(1),)


def trim(coeffs: Iterable) -> Poly:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def deg(p: Poly) -> int:
    """Degree, with ``deg(0) == -1``."""
    return len(p) - 1


def add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def scale(p: Poly, c) -> Poly:
    c = Fraction(c)
    if c == 0:
        return ZERO
    return tuple(c * x for x in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def shift(p: Poly, k: int) -> Poly:
    """Multiply by ``t**k`` for ``k >= 0``."""
    if not p:
        return ZERO
    return (Fraction(0),) * k + tuple(p)


def divmod_(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = deg(q)
    lead = q[-1]
    if deg(p) < dq:
        return ZERO, tuple(p)
    quo = [Fraction(0)] * (deg(p) - dq + 1)
    for k in range(deg(p) - dq, -1, -1):
        c = r[k + dq] / lead
        quo[k] = c
        if c:
            for j, b in enumerate(q):
                r[k + j] -= c * b
    return trim(quo), trim(r[:dq])


def exact_div(p: Poly, q: Poly) -> Poly:
    quo, rem = divmod_(p, q)
    if rem:
        raise ArithmeticError("inexact polynomial division")
    return quo


def monic(p: Poly) -> Poly:
    if not p:
        return ZERO
    return scale(p, 1 / p[-1])


def _primitive_ints(p: Poly) -> list[int]:
    den = math.lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    g = math.gcd(*ints)
    return [x // g for x in ints]


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    r = list(a)
    lead = b[-1]
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        c = r[-1]
        k = len(r) - 1 - db
        r = [x * lead for x in r]
        for j, y in enumerate(b):
            r[k + j] -= c * y
        while r and r[-1] == 0:
            r.pop()
    return r


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd; ``gcd(0, 0) == 0``.

    Runs the primitive remainder sequence over Z, which avoids the
    coefficient blow-up of Euclid over Q.
    """
    if not p or not q:
        return monic(p or q)
    a, b = _primitive_ints(p), _primitive_ints(q)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        a, b = b, (_primitive_ints(tuple(Fraction(x) for x in r)) if r else [])
    return monic(tuple(Fraction(x) for x in a))


def ext_gcd(p: Poly, q: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, a, b)`` with ``a*p + b*q == g`` and ``g`` monic."""
    r0, r1 = p, q
    a0, a1 = ONE, ZERO
    b0, b1 = ZERO, ONE
    while r1:
        quo, rem = divmod_(r0, r1)
        r0, r1 = r1, rem
        a0, a1 = a1, sub(a0, mul(quo, a1))
        b0, b1 = b1, sub(b0, mul(quo, b1))
    if not r0:
        return ZERO, ZERO, ZERO
    inv = 1 / r0[-1]
    return scale(r0, inv), scale(a0, inv), scale(b0, inv)


def evaluate(p: Poly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def reverse(p: Poly) -> Poly:
    """Coefficient reversal ``t**deg(p) * p(1/t)`` (assumes ``p(0) != 0``)."""
    return trim(reversed(p))


def derivative(p: Poly) -> Poly:
    return trim([i * p[i] for i in range(1, len(p))])


def low_order(p: Poly) -> int:
    """Largest ``k`` with ``t**k`` dividing ``p`` (``0`` for the zero polynomial)."""
    for i, c in enumerate(p):
        if c:
            return i
    return 0


def compose(p: Poly, q: Poly) -> Poly:
    """``p(q(t))``."""
    acc: Poly = ZERO
    for c in reversed(p):
        acc = add(mul(acc, q), (c,) if c else ZERO)
    return acc


def squarefree(p: Poly) -> Poly:
    """Monic squarefree part (characteristic zero)."""
    if deg(p) <= 0:
        return monic(p)
    g = gcd(p, derivative(p))
    return monic(exact_div(p, g))


def from_ints(coeffs: Sequence[int]) -> Poly:
    return trim(coeffs)


def to_str(p: Poly, var: str = "t") -> str:
    if not p:
        return "0"
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        terms.append(_term(c, k, var))
    return _join(terms)


def _term(c: Fraction, k: int, var: str) -> tuple[str, str]:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if k == 0:
        body = str(a)
    else:
        mono = var if k == 1 else f"{var}^{k}"
        body = mono if a == 1 else f"{a}*{mono}"
    return sign, body


def _join(terms: list[tuple[str, str]]) -> str:
    out = ""
    for i, (sign, body) in enumerate(terms):
        if i == 0:
            out = body if sign == "+" else "-" + body
        else:
            out += f" {sign} {body}"
    return out
