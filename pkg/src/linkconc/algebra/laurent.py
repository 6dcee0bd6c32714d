"""Laurent polynomials in one variable over Q."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from . import poly as P


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted in exact arithmetic")
    return Fraction(x)


class LaurentPolynomial:
    """Element of Q[t, 1/t], stored as ``{exponent: nonzero Fraction}``.

    Instances are immutable and hashable; every constructor path drops zero
    coefficients so equality is a dictionary comparison.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        c = {}
        for e, v in (coeffs or {}).items():
            v = as_fraction(v)
            if v:
                c[int(e)] = v
        self._c = c
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c) -> "LaurentPolynomial":
        return cls({0: c})

    @classmethod
    def t(cls, k: int = 1) -> "LaurentPolynomial":
        return cls({k: 1})

    @classmethod
    def from_poly(cls, p: P.Poly, shift: int = 0) -> "LaurentPolynomial":
        return cls({i + shift: c for i, c in enumerate(p)})

    @classmethod
    def coerce(cls, x) -> "LaurentPolynomial":
        if isinstance(x, LaurentPolynomial):
            return x
        return cls.const(as_fraction(x))

    # -- accessors ----------------------------------------------------
    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def __getitem__(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def min_exp(self) -> int:
        return min(self._c) if self._c else 0

    @property
    def max_exp(self) -> int:
        return max(self._c) if self._c else 0

    def to_poly(self) -> tuple[int, P.Poly]:
        """Return ``(k, p)`` with ``self == t**k * p`` and ``p`` an ordinary polynomial."""
        if not self._c:
            return 0, P.ZERO
        lo = self.min_exp
        out = [Fraction(0)] * (self.max_exp - lo + 1)
        for e, v in self._c.items():
            out[e - lo] = v
        return lo, P.trim(out)

    def is_constant(self) -> bool:
        return all(e == 0 for e in self._c)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self[0]

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        try:
            other = LaurentPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPolynomial(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        try:
            other = LaurentPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPolynomial.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            try:
                s = as_fraction(other)
            except TypeError:
                return NotImplemented
            return LaurentPolynomial({e: s * v for e, v in self._c.items()})
        c: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPolynomial(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) == 1:
                (e, v), = self._c.items()
                return LaurentPolynomial({e * n: v ** n})
            raise ValueError("only monomials are invertible in the Laurent ring")
        out = LaurentPolynomial.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self._c == other._c
        try:
            return self._c == LaurentPolynomial.coerce(other)._c
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- structure ----------------------------------------------------
    def involute(self) -> "LaurentPolynomial":
        """Substitute ``t -> 1/t``."""
        return LaurentPolynomial({-e: v for e, v in self._c.items()})

    def evaluate(self, x):
        """Evaluate at ``x`` (any number type supporting ``**`` with negative exponents)."""
        acc = 0
        for e, v in self._c.items():
            acc += v * x ** e
        return acc

    def is_symmetric(self) -> bool:
        return self == self.involute()

    # -- presentation -------------------------------------------------
    def to_json(self) -> dict[str, str]:
        return {str(e): str(v) for e, v in sorted(self._c.items())}

    @classmethod
    def from_json(cls, doc: Mapping[str, str]) -> "LaurentPolynomial":
        return cls({int(e): Fraction(v) for e, v in doc.items()})

    def __str__(self):
        if not self._c:
            return "0"
        terms = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            sign = "-" if v < 0 else "+"
            a = abs(v)
            if e == 0:
                body = str(a)
            else:
                mono = "t" if e == 1 else f"t^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        return P._join(terms)

    def __repr__(self):
        return f"LaurentPolynomial({str(self)!r})"


t = LaurentPolynomial.t()
