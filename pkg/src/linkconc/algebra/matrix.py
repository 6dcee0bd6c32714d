"""Dense matrices over Lambda = Q[t, 1/t] and Q(t)."""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Sequence

from ..errors import NonSquare, SingularMatrix
from . import poly as P
from .laurent import LaurentPolynomial
from .ratfunc import RationalFunction

LAURENT = "laurent"
RATFUNC = "ratfunc"


def _is_proper_rf(x) -> bool:
    return isinstance(x, RationalFunction) and not x.is_laurent()


class PolyMatrix:
    """Immutable rectangular matrix with entries in exactly one ring.

    ``ring`` is ``"laurent"`` (entries :class:`LaurentPolynomial`) or
    ``"ratfunc"`` (entries :class:`RationalFunction`).
    """

    __slots__ = ("rows", "cols", "ring", "_e")

    def __init__(self, entries: Iterable[Iterable], ring: str | None = None, cols: int | None = None):
        raw = [list(r) for r in entries]
        if ring is None:
            ring = RATFUNC if any(_is_proper_rf(x) for r in raw for x in r) else LAURENT
        conv = _to_laurent if ring == LAURENT else RationalFunction.coerce
        self._e = tuple(tuple(conv(x) for x in r) for r in raw)
        self.rows = len(self._e)
        self.cols = len(self._e[0]) if self._e else (cols or 0)
        if any(len(r) != self.cols for r in self._e):
            raise ValueError("ragged matrix")
        self.ring = ring

    @classmethod
    def identity(cls, n: int, ring: str = LAURENT) -> "PolyMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ring, cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int, ring: str = LAURENT) -> "PolyMatrix":
        return cls([[0] * cols for _ in range(rows)], ring, cols=cols)

    @classmethod
    def from_ints(cls, m: Sequence[Sequence[int]]) -> "PolyMatrix":
        return cls(m, LAURENT, cols=len(m[0]) if m else 0)

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> tuple:
        return self._e[i]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._e]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def as_ring(self, ring: str) -> "PolyMatrix":
        if ring == self.ring:
            return self
        return PolyMatrix(self._e, ring, cols=self.cols)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            [[self._e[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.ring,
            cols=self.rows,
        )

    T = property(transpose)

    def involute(self) -> "PolyMatrix":
        return PolyMatrix([[x.involute() for x in r] for r in self._e], self.ring, cols=self.cols)

    def _common(self, other: "PolyMatrix") -> str:
        return RATFUNC if RATFUNC in (self.ring, other.ring) else LAURENT

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        ring = self._common(other)
        a, b = self.as_ring(ring), other.as_ring(ring)
        return PolyMatrix(
            [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a._e, b._e)], ring, cols=self.cols
        )

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix([[-x for x in r] for r in self._e], self.ring, cols=self.cols)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def scale(self, c) -> "PolyMatrix":
        ring = RATFUNC if _is_proper_rf(c) or self.ring == RATFUNC else LAURENT
        m = self.as_ring(ring)
        c = RationalFunction.coerce(c) if ring == RATFUNC else _to_laurent(c)
        return PolyMatrix([[c * x for x in r] for r in m._e], ring, cols=self.cols)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ring = self._common(other)
        a, b = self.as_ring(ring), other.as_ring(ring)
        zero = _zero(ring)
        out = []
        for i in range(a.rows):
            row = []
            for j in range(b.cols):
                acc = zero
                for k in range(a.cols):
                    x = a._e[i][k]
                    if x:
                        y = b._e[k][j]
                        if y:
                            acc = acc + x * y
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, ring, cols=b.cols)

    def apply(self, vec: Sequence) -> list:
        """Matrix times a column vector given as a sequence."""
        col = PolyMatrix([[x] for x in vec], self.ring if self.ring == RATFUNC else None, cols=1)
        return [r[0] for r in (self @ col)._e]

    def submatrix(self, drop_row: int, drop_col: int) -> "PolyMatrix":
        return PolyMatrix(
            [[x for j, x in enumerate(r) if j != drop_col] for i, r in enumerate(self._e) if i != drop_row],
            self.ring,
            cols=self.cols - 1,
        )

    @staticmethod
    def block_diag(a: "PolyMatrix", b: "PolyMatrix") -> "PolyMatrix":
        ring = a._common(b)
        z = _zero(ring)
        top = [list(r) + [z] * b.cols for r in a.as_ring(ring)._e]
        bot = [[z] * a.cols + list(r) for r in b.as_ring(ring)._e]
        return PolyMatrix(top + bot, ring, cols=a.cols + b.cols)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        ring = self._common(other)
        return self.as_ring(ring)._e == other.as_ring(ring)._e

    def __hash__(self):
        return hash((self.shape, self.as_ring(RATFUNC)._e))

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self._e)
        return f"PolyMatrix[{self.rows}x{self.cols}]({body})"


def _to_laurent(x) -> LaurentPolynomial:
    if isinstance(x, RationalFunction):
        return x.to_laurent()
    return LaurentPolynomial.coerce(x)


def _zero(ring: str):
    return LaurentPolynomial() if ring == LAURENT else RationalFunction(P.ZERO)


# -- determinants ------------------------------------------------------


def _bareiss_poly(rows: list[list[P.Poly]]) -> P.Poly:
    """Fraction-free determinant of a square matrix over Q[t]."""
    n = len(rows)
    if n == 0:
        return P.ONE
    m = [list(r) for r in rows]
    sign = 1
    prev: P.Poly = P.ONE
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return P.ZERO
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = P.sub(P.mul(m[i][j], pivot), P.mul(m[i][k], m[k][j]))
                m[i][j] = P.exact_div(num, prev)
            m[i][k] = P.ZERO
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign > 0 else P.neg(det)


def _laurent_rows_to_poly(m: PolyMatrix) -> tuple[list[list[P.Poly]], int]:
    """Multiply each row by a power of t so all entries are polynomials."""
    rows = []
    total = 0
    for r in m.tolist():
        lo = min((x.min_exp for x in r if x), default=0)
        total += lo
        rows.append([P.trim([x[e + lo] for e in range(x.max_exp - lo + 1)]) if x else P.ZERO for x in r])
    return rows, total


def _det_cofactor(m: PolyMatrix):
    n = m.rows
    zero = _zero(m.ring)
    one = LaurentPolynomial.const(1) if m.ring == LAURENT else RationalFunction(P.ONE)
    total = zero
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = one
        for i, j in enumerate(perm):
            term = term * m[i, j]
            if not term:
                break
        if term:
            total = total + term if inv % 2 == 0 else total - term
    return total if n else one


def _det_gauss(m: PolyMatrix) -> RationalFunction:
    n = m.rows
    a = [list(r) for r in m.as_ring(RATFUNC).tolist()]
    det = RationalFunction(P.ONE)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return RationalFunction(P.ZERO)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = det * a[k][k]
        inv = a[k][k].inverse()
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


def matrix_det(m: PolyMatrix, method: str = "bareiss"):
    """Exact determinant.

    Laurent matrices use Bareiss elimination after clearing negative powers
    row by row; rational-function matrices use Gaussian elimination over
    Q(t).  ``method="cofactor"`` forces the permutation expansion (used for
    cross-checks up to size 4).
    """
    if not m.is_square():
        raise NonSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    if method == "cofactor":
        return _det_cofactor(m)
    if m.ring == RATFUNC:
        return _det_gauss(m)
    rows, shift = _laurent_rows_to_poly(m)
    return LaurentPolynomial.from_poly(_bareiss_poly(rows), shift)


def adjugate(m: PolyMatrix) -> PolyMatrix:
    """Classical adjugate over Lambda, ``m @ adjugate(m) == det(m) * I``."""
    if not m.is_square():
        raise NonSquare(f"adjugate of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return PolyMatrix([], m.ring)
    if n == 1:
        return PolyMatrix.identity(1, m.ring)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = matrix_det(m.submatrix(i, j))
            out[j][i] = c if (i + j) % 2 == 0 else -c
    return PolyMatrix(out, m.ring, cols=n)


def matrix_inverse(m: PolyMatrix) -> PolyMatrix:
    """Inverse over Q(t); raises SingularMatrix.

    Laurent matrices go through ``adjugate / det`` so that all elimination
    stays fraction free; rational-function matrices use Gauss-Jordan.
    """
    if not m.is_square():
        raise NonSquare(f"inverse of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if m.ring != RATFUNC:
        d = matrix_det(m)
        if d.is_zero():
            raise SingularMatrix("determinant is zero")
        adj = adjugate(m)
        return PolyMatrix(
            [[RationalFunction.from_laurent(adj[i, j], d) for j in range(n)] for i in range(n)], RATFUNC, cols=n
        )
    one = RationalFunction(P.ONE)
    zero = RationalFunction(P.ZERO)
    a = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(m.as_ring(RATFUNC).tolist())]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            raise SingularMatrix("determinant is zero")
        a[k], a[piv] = a[piv], a[k]
        inv = a[k][k].inverse()
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return PolyMatrix([r[n:] for r in a], RATFUNC, cols=n)
