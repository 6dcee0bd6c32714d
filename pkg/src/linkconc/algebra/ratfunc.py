"""Rational functions Q(t) and the torsion quotient Q(t)/Lambda."""

from __future__ import annotations

from fractions import Fraction

from . import poly as P
from .laurent import LaurentPolynomial, as_fraction


def _strip_t(p: P.Poly) -> tuple[int, P.Poly]:
    k = P.low_order(p)
    return k, tuple(p[k:])


class RationalFunction:
    """``t**shift * num / den`` in lowest terms.

    ``den`` is monic with nonzero constant term, ``num`` has nonzero constant
    term (or is zero, in which case ``den == 1`` and ``shift == 0``).
    """

    __slots__ = ("num", "den", "shift")

    def __init__(self, num: P.Poly, den: P.Poly = P.ONE, shift: int = 0):
        num = P.trim(num)
        den = P.trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den, self.shift = P.ZERO, P.ONE, 0
            return
        a, num = _strip_t(num)
        b, den = _strip_t(den)
        g = P.gcd(num, den)
        if P.deg(g) > 0:
            num = P.exact_div(num, g)
            den = P.exact_div(den, g)
        lead = den[-1]
        self.num = P.scale(num, 1 / lead)
        self.den = P.scale(den, 1 / lead)
        self.shift = shift + a - b

    @classmethod
    def from_laurent(cls, num, den=None) -> "RationalFunction":
        num = LaurentPolynomial.coerce(num)
        den = LaurentPolynomial.coerce(1 if den is None else den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        a, pn = num.to_poly()
        b, pd = den.to_poly()
        return cls(pn, pd, a - b)

    @classmethod
    def coerce(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        return cls.from_laurent(LaurentPolynomial.coerce(x))

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_laurent(self) -> bool:
        return P.deg(self.den) == 0

    def to_laurent(self) -> LaurentPolynomial:
        if not self.is_laurent():
            raise ValueError("not a Laurent polynomial")
        return LaurentPolynomial.from_poly(self.num, self.shift)

    def numerator_laurent(self) -> LaurentPolynomial:
        return LaurentPolynomial.from_poly(self.num, self.shift)

    def denominator_laurent(self) -> LaurentPolynomial:
        return LaurentPolynomial.from_poly(self.den)

    # -- field operations ---------------------------------------------
    def __add__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        m = min(self.shift, other.shift)
        if self.den == other.den:
            d1 = d2 = P.ONE
            den = self.den
        else:
            # only the cofactors of gcd(den1, den2) go into the numerators
            g = P.gcd(self.den, other.den)
            d1, d2 = P.exact_div(self.den, g), P.exact_div(other.den, g)
            den = P.mul(self.den, d2)
        n1 = P.shift(P.mul(self.num, d2), self.shift - m)
        n2 = P.shift(P.mul(other.num, d1), other.shift - m)
        return RationalFunction(P.add(n1, n2), den, m)

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(RationalFunction)
        out.num, out.den, out.shift = P.neg(self.num), self.den, self.shift
        return out

    def __sub__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return RationalFunction(
            P.mul(self.num, other.num), P.mul(self.den, other.den), self.shift + other.shift
        )

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num, -self.shift)

    def __truediv__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def __eq__(self, other):
        try:
            other = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return (self.num, self.den, self.shift) == (other.num, other.den, other.shift)

    def __hash__(self):
        return hash((self.num, self.den, self.shift))

    def involute(self) -> "RationalFunction":
        """Substitute ``t -> 1/t``."""
        if not self.num:
            return self
        return RationalFunction(
            P.reverse(self.num),
            P.reverse(self.den),
            P.deg(self.den) - P.deg(self.num) - self.shift,
        )

    def evaluate(self, x):
        return x ** self.shift * P.evaluate(self.num, x) / P.evaluate(self.den, x)

    def __str__(self):
        n = str(self.numerator_laurent())
        if self.is_laurent():
            return n
        return f"({n})/({P.to_str(self.den)})"

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"


class TorsionValue:
    """Canonical coset representative in Q(t)/Lambda.

    Stored as ``num/den`` with ``deg num < deg den``, ``den`` monic with nonzero
    constant term and ``gcd(num, den) == 1``.  The zero coset is ``0/1``.  Two
    rational functions are congruent modulo Lambda iff their reductions are
    equal as Python objects.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: P.Poly, den: P.Poly):
        # Trusted constructor: callers go through reduce_mod_lambda.
        self.num = num
        self.den = den

    @classmethod
    def zero(cls) -> "TorsionValue":
        return cls(P.ZERO, P.ONE)

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def as_rational_function(self) -> RationalFunction:
        return RationalFunction(self.num, self.den)

    def __add__(self, other):
        if isinstance(other, TorsionValue):
            other = other.as_rational_function()
        return reduce_mod_lambda(self.as_rational_function() + other)

    __radd__ = __add__

    def __neg__(self):
        return TorsionValue(P.neg(self.num), self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Module action of Lambda (or Q(t)) on the quotient."""
        if isinstance(other, TorsionValue):
            return NotImplemented
        return reduce_mod_lambda(self.as_rational_function() * other)

    __rmul__ = __mul__

    def involute(self) -> "TorsionValue":
        return reduce_mod_lambda(self.as_rational_function().involute())

    def __eq__(self, other):
        if isinstance(other, TorsionValue):
            return (self.num, self.den) == (other.num, other.den)
        if isinstance(other, (RationalFunction, LaurentPolynomial, int, Fraction)):
            return self == reduce_mod_lambda(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def to_json(self) -> dict:
        return {
            "num": LaurentPolynomial.from_poly(self.num).to_json(),
            "den": LaurentPolynomial.from_poly(self.den).to_json(),
        }

    @classmethod
    def from_json(cls, doc) -> "TorsionValue":
        num = LaurentPolynomial.from_json(doc["num"])
        den = LaurentPolynomial.from_json(doc["den"])
        return reduce_mod_lambda(RationalFunction.from_laurent(num, den))

    def __str__(self):
        if not self.num:
            return "0"
        return f"({P.to_str(self.num)})/({P.to_str(self.den)})"

    def __repr__(self):
        return f"TorsionValue({str(self)!r})"


def _inverse_of_t(den: P.Poly) -> P.Poly:
    g, a, _ = P.ext_gcd((Fraction(0), Fraction(1)), den)
    assert g == P.ONE
    return P.divmod_(a, den)[1]


def _powmod(base: P.Poly, e: int, mod: P.Poly) -> P.Poly:
    out = P.ONE
    while e:
        if e & 1:
            out = P.divmod_(P.mul(out, base), mod)[1]
        base = P.divmod_(P.mul(base, base), mod)[1]
        e >>= 1
    return out


def reduce_mod_lambda(f) -> TorsionValue:
    """Canonical representative of ``f`` modulo Lambda = Q[t, 1/t].

    ``f = t**k * n / d`` with ``d(0) != 0``; since ``t`` is a unit modulo
    ``d`` the class is represented by ``(t**k * n mod d) / d``, reduced to
    lowest terms.
    """
    f = RationalFunction.coerce(f)
    den = f.den
    if P.deg(den) <= 0 or not f.num:
        return TorsionValue.zero()
    num = P.divmod_(f.num, den)[1]
    if f.shift >= 0:
        step: P.Poly = (Fraction(0), Fraction(1))
    else:
        step = _inverse_of_t(den)
    num = P.divmod_(P.mul(num, _powmod(step, abs(f.shift), den)), den)[1]
    if not num:
        return TorsionValue.zero()
    g = P.gcd(num, den)
    if P.deg(g) > 0:
        num = P.exact_div(num, g)
        den = P.exact_div(den, g)
    lead = den[-1]
    return TorsionValue(P.scale(num, 1 / lead), P.scale(den, 1 / lead))

