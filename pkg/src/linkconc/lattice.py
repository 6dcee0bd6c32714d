"""Integer matrix utilities: unimodularity, Hermite reduction, symplectic completion.

Matrices are lists of lists of Python ints (arbitrary precision).
"""

from __future__ import annotations

from typing import Sequence

from .errors import NonSquare, NonUnimodular

IntMatrix = list  # list[list[int]]


def as_int_matrix(m: Sequence[Sequence[int]]) -> IntMatrix:
    out = [[int(x) for x in r] for r in m]
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def shape(m: IntMatrix, cols: int | None = None) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else (cols or 0))


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> IntMatrix:
    return [[0] * c for _ in range(r)]


def transpose(m: IntMatrix, cols: int = 0) -> IntMatrix:
    if not m:
        return [[] for _ in range(cols)] if cols else []
    return [list(r) for r in zip(*m)]


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a:
        return []
    if not b:
        return [[] for _ in a]
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]


def congruence(p: IntMatrix, v: IntMatrix) -> IntMatrix:
    """``p^T v p``."""
    return matmul(matmul(transpose(p), v), p)


def neg(m: IntMatrix) -> IntMatrix:
    return [[-x for x in r] for r in m]


def sub(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def block_diag(*blocks: IntMatrix) -> IntMatrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    off = 0
    for b in blocks:
        for i, r in enumerate(b):
            for j, x in enumerate(r):
                out[off + i][off + j] = x
        off += len(b)
    return out


def hstack(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return [list(ra) + list(rb) for ra, rb in zip(a, b)]


def columns(m: IntMatrix, idx: Sequence[int]) -> IntMatrix:
    return [[r[j] for j in idx] for r in m]


def standard_symplectic(g: int, sign: int = 1) -> IntMatrix:
    """``sign * [[0, I_g], [-I_g, 0]]``."""
    out = zeros(2 * g, 2 * g)
    for i in range(g):
        out[i][g + i] = sign
        out[g + i][i] = -sign
    return out


def det(m: IntMatrix) -> int:
    """Bareiss determinant over Z."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise NonSquare(f"determinant of a non-square {n}-row matrix")
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(m: IntMatrix) -> bool:
    return len(m) == 0 or (all(len(r) == len(m) for r in m) and abs(det(m)) == 1)


def column_hermite(a: IntMatrix, cols: int | None = None) -> tuple[IntMatrix, IntMatrix]:
    """Column echelon form: returns ``(h, u)`` with ``a @ u == h``, ``u`` unimodular.

    Row ``i`` of ``h`` has zeros to the right of its pivot column; pivots move
    strictly rightward.
    """
    r, c = shape(a, cols)
    h = [list(x) for x in a]
    u = identity(c)
    pc = 0
    for i in range(r):
        if pc >= c:
            break
        for j in range(pc + 1, c):
            x, y = h[i][pc], h[i][j]
            if y == 0:
                continue
            g, s, t = _xgcd(x, y)
            # [col_pc, col_j] <- [s*col_pc + t*col_j, -(y/g)*col_pc + (x/g)*col_j]
            p, q = -y // g, x // g
            for m in (h, u):
                for row in m:
                    a_, b_ = row[pc], row[j]
                    row[pc], row[j] = s * a_ + t * b_, p * a_ + q * b_
        if h[i][pc] != 0:
            if h[i][pc] < 0:
                for m in (h, u):
                    for row in m:
                        row[pc] = -row[pc]
            pc += 1
    return h, u


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def right_inverse(a: IntMatrix, cols: int | None = None) -> IntMatrix | None:
    """Integer ``y`` with ``a @ y == I``, or ``None`` if ``a`` is not surjective over Z."""
    r, c = shape(a, cols)
    if r == 0:
        return zeros(c, 0) if c else []
    h, u = column_hermite(a, c)
    if r > c or any(h[i][i] != 1 for i in range(r)):
        return None
    # h[:, :r] is unit lower triangular; invert by forward substitution.
    linv = identity(r)
    for i in range(r):
        for k in range(i):
            f = h[i][k]
            if f:
                for j in range(r):
                    linv[i][j] -= f * linv[k][j]
    return matmul(columns(u, range(r)), linv)


def is_primitive(x: IntMatrix, cols: int | None = None) -> bool:
    """Columns of ``x`` form part of a Z-basis (span a saturated sublattice)."""
    _, c = shape(x, cols)
    if c == 0:
        return True
    return right_inverse(transpose(x), len(x)) is not None


def inverse(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular integer matrix."""
    n = len(m)
    if n == 0:
        return []
    if not is_unimodular(m):
        raise NonUnimodular(f"determinant {det(m)} is not +-1")
    y = right_inverse(m, n)
    assert y is not None
    return y


def symplectic_completion(x: IntMatrix, omega: IntMatrix) -> IntMatrix | None:
    """Extend the columns of ``x`` to ``p = [x | y]`` with ``p^T omega p`` standard.

    ``omega`` is a unimodular skew form of size ``2g`` and ``x`` a ``2g x g``
    integer matrix whose columns are omega-isotropic.  Returns ``None`` when
    the columns do not span a primitive Lagrangian.
    """
    n = len(omega)
    g = n // 2
    if n == 0:
        return []
    if any(len(r) != g for r in x) or len(x) != n:
        return None
    xt = transpose(x, g)
    if any(any(r) for r in matmul(matmul(xt, omega), x)):
        return None
    y0 = right_inverse(matmul(xt, omega), n)
    if y0 is None:
        return None
    s = congruence(y0, omega)
    mfix = [[s[i][j] if j > i else 0 for j in range(g)] for i in range(g)]
    y = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(y0, matmul(x, mfix))]
    p = hstack(x, y)
    assert congruence(p, omega) == standard_symplectic(g)
    return p
