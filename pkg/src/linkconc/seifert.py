"""Knot invariants read off a Seifert matrix.

Conventions: ``V[i][j] = lk(a_i, a_j^+)`` with ``a^+`` the pushoff in the
positive normal direction.  The Alexander module is presented by
``t V - V^T`` and the Blanchfield form is computed in the basis of linking
duals as ``(1 - t) r(1/t)^T (V - t V^T)^{-1} s(t)``.  Under the opposite
pushoff convention every Blanchfield value changes sign, which never affects
whether it vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

import mpmath
import numpy as np

from . import _accel, lattice
from . import unitcircle as uc
from .algebra import LaurentPolynomial, PolyMatrix, TorsionValue, adjugate, matrix_det, reduce_mod_lambda
from .algebra.ratfunc import RationalFunction
from .errors import (
    AtSingularPoint,
    InvalidSeifertMatrix,
    NonUnimodular,
    SearchSpaceTooLarge,
    SingularPairing,
)

t = LaurentPolynomial.t()

#: largest box ``(2*bound + 1) ** size`` metabolizer_search will enumerate
SEARCH_CAP = 5_000_000


@dataclass(frozen=True)
class SeifertMatrix:
    """Integer Seifert matrix of a genus-g surface with one boundary component."""

    matrix: tuple[tuple[int, ...], ...]
    name: str | None = field(default=None, compare=False)

    def __init__(self, matrix: Sequence[Sequence[int]] = (), name: str | None = None, *, check: bool = True):
        m = tuple(tuple(int(x) for x in row) for row in matrix)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "name", name)
        if check:
            problems = seifert_problems(m)
            if problems:
                raise InvalidSeifertMatrix("; ".join(problems))

    @property
    def size(self) -> int:
        return len(self.matrix)

    @property
    def genus(self) -> int:
        return self.size // 2

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.matrix]

    def transpose(self) -> list[list[int]]:
        return lattice.transpose(self.tolist(), self.size)

    def intersection_form(self) -> list[list[int]]:
        """``V - V^T``."""
        return lattice.sub(self.tolist(), self.transpose())

    def poly(self) -> PolyMatrix:
        return PolyMatrix.from_ints(self.tolist()) if self.size else PolyMatrix([], cols=0)

    def to_json(self) -> dict:
        doc = {"type": "seifert", "matrix": self.tolist()}
        if self.name is not None:
            doc["name"] = self.name
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "SeifertMatrix":
        return cls(doc.get("matrix", []), doc.get("name"))

    def __repr__(self):
        label = f", name={self.name!r}" if self.name else ""
        return f"SeifertMatrix({self.tolist()}{label})"


def seifert_problems(m) -> list[str]:
    """Reasons ``m`` is not the Seifert matrix of a knot (empty list if it is)."""
    n = len(m)
    if any(len(r) != n for r in m):
        return ["matrix is not square"]
    out = []
    if n % 2:
        out.append(f"size {n} is odd")
    om = lattice.sub([list(r) for r in m], lattice.transpose([list(r) for r in m], n))
    d = lattice.det(om)
    if abs(d) != 1:
        out.append(f"det(V - V^T) = {d}, expected +-1")
    return out


def unknot() -> SeifertMatrix:
    return SeifertMatrix([], "unknot")


def trefoil() -> SeifertMatrix:
    return SeifertMatrix([[-1, 1], [0, -1]], "trefoil")


def figure_eight() -> SeifertMatrix:
    return SeifertMatrix([[1, 1], [0, -1]], "figure-eight")


def block_sum(v: SeifertMatrix, w: SeifertMatrix) -> SeifertMatrix:
    """Seifert matrix of the connected sum (block diagonal ``V + W``)."""
    name = None
    if v.name or w.name:
        name = f"{v.name or '?'} # {w.name or '?'}"
    return SeifertMatrix(lattice.block_diag(v.tolist(), w.tolist()), name, check=False)


def negate(v: SeifertMatrix) -> SeifertMatrix:
    """``-V``, a Seifert matrix for the reverse mirror image."""
    name = f"-({v.name})" if v.name else None
    return SeifertMatrix(lattice.neg(v.tolist()), name, check=False)


# -- Alexander polynomial ----------------------------------------------------


def _alexander_matrix(v: SeifertMatrix) -> PolyMatrix:
    """``V - t V^T``."""
    p = v.poly()
    return p - p.T.scale(t)


def alexander_polynomial(v: SeifertMatrix) -> LaurentPolynomial:
    """``det(t V - V^T)`` normalised to be symmetric with value 1 at ``t = 1``."""
    if v.size == 0:
        return LaurentPolynomial.const(1)
    p = v.poly()
    d = matrix_det(p.scale(t) - p.T)
    d = uc.center(d)
    if d.evaluate(Fraction(1)) < 0:
        d = -d
    return d


def alexander_presentation(v: SeifertMatrix) -> PolyMatrix:
    """Presentation matrix ``t V - V^T`` of the rational Alexander module."""
    p = v.poly()
    return p.scale(t) - p.T


# -- Blanchfield form --------------------------------------------------------


def _as_vector(x: Sequence, n: int) -> list[LaurentPolynomial]:
    vec = [LaurentPolynomial.coerce(c) for c in x]
    if len(vec) != n:
        raise ValueError(f"vector of length {len(vec)} for a {n}x{n} Seifert matrix")
    return vec


def blanchfield(v: SeifertMatrix, r: Sequence, s: Sequence) -> TorsionValue:
    """Blanchfield pairing of the classes with dual-basis coordinates ``r``, ``s``.

    Coordinates are Laurent polynomials (or integers).  The inverse of
    ``V - t V^T`` is taken as adjugate over determinant so the numerator
    stays in Lambda until the final reduction.
    """
    n = v.size
    r = _as_vector(r, n)
    s = _as_vector(s, n)
    if n == 0:
        return TorsionValue.zero()
    m = _alexander_matrix(v)
    det = matrix_det(m)
    if det.is_zero():
        raise SingularPairing("V - tV^T is singular")
    adj = adjugate(m)
    adj_s = adj.apply(s)
    num = sum((ri.involute() * x for ri, x in zip(r, adj_s)), LaurentPolynomial())
    num = (1 - t) * num
    return reduce_mod_lambda(RationalFunction.from_laurent(num, det))


def relation_vector(v: SeifertMatrix, u: Sequence) -> list[LaurentPolynomial]:
    """``(V - t V^T) u``, a vector pairing trivially with everything."""
    return _alexander_matrix(v).apply(_as_vector(u, v.size))


# -- metabolizers --------------------------------------------------------------


@dataclass(frozen=True)
class BlockCheck:
    """Outcome of :func:`metabolizer_block_check`.

    On acceptance ``a``, ``b``, ``c`` are the blocks of
    ``P^T V P = [[0, a], [b, c]]``.
    """

    accepted: bool
    witness: tuple[tuple[int, ...], ...]
    a: list[list[int]] | None = None
    b: list[list[int]] | None = None
    c: list[list[int]] | None = None
    reasons: tuple[str, ...] = ()

    @property
    def genus(self) -> int:
        return len(self.witness) // 2

    def lagrangian_duals(self) -> list[list[int]]:
        """Dual-basis coordinates of the second-half duals ``b'_k`` in the original basis.

        Dual coordinates transform by ``P^{-T}``; the Blanchfield form vanishes
        identically on the Lambda-span of these vectors.
        """
        p = [list(r) for r in self.witness]
        n = len(p)
        g = n // 2
        pit = lattice.transpose(lattice.inverse(p), n)
        return [[pit[i][g + k] for i in range(n)] for k in range(g)]


def metabolizer_block_check(v: SeifertMatrix, p: Sequence[Sequence[int]]) -> BlockCheck:
    """Accept ``p`` iff it carries V to ``[[0, A], [B, C]]`` in a symplectic basis.

    Requires ``det p = +-1`` (else NonUnimodular), the upper-left g x g block
    of ``p^T V p`` to vanish, and ``p^T (V - V^T) p`` to equal the standard
    form ``[[0, I], [-I, 0]]``.
    """
    n = v.size
    pm = lattice.as_int_matrix(p)
    if len(pm) != n or any(len(r) != n for r in pm):
        raise NonUnimodular(f"witness must be {n}x{n}")
    if not lattice.is_unimodular(pm):
        raise NonUnimodular(f"det(P) = {lattice.det(pm)}")
    g = n // 2
    vp = lattice.congruence(pm, v.tolist())
    reasons = []
    if any(vp[i][j] for i in range(g) for j in range(g)):
        reasons.append("upper-left block of P^T V P is nonzero")
    if lattice.congruence(pm, v.intersection_form()) != lattice.standard_symplectic(g):
        reasons.append("P^T (V - V^T) P is not the standard symplectic form")
    wit = tuple(tuple(r) for r in pm)
    if reasons:
        return BlockCheck(False, wit, reasons=tuple(reasons))
    a = [r[g:] for r in vp[:g]]
    b = [r[:g] for r in vp[g:]]
    c = [r[g:] for r in vp[g:]]
    return BlockCheck(True, wit, a, b, c)


def complete_metabolizer(v: SeifertMatrix, half: Sequence[Sequence[int]]) -> list[list[int]] | None:
    """Extend ``g`` column vectors spanning a metabolizer to a full witness.

    ``half`` lists the vectors themselves (each of length 2g).  Returns ``None``
    unless they are V-isotropic and span a primitive sublattice.
    """
    n = v.size
    if n == 0:
        return []
    vec = [list(map(int, x)) for x in half]
    if len(vec) != n // 2:
        return None
    x = lattice.transpose(vec, n)
    vm = v.tolist()
    if any(lattice.matmul(lattice.matmul([a], vm), [[c] for c in b])[0][0] for a in vec for b in vec):
        return None
    return lattice.symplectic_completion(x, v.intersection_form())


def metabolizer_search(v: SeifertMatrix, bound: int, cap: int = SEARCH_CAP, use_numba: bool | None = None):
    """Bounded search for a metabolizer witness; returns a :class:`BlockCheck` or ``None``.

    The first-half columns are searched in lexicographic order of the box
    ``[-bound, bound]^{2g}`` (pairwise-vanishing pruning); the second half is
    then completed symplectically.  ``None`` does not prove that ``V`` is not
    metabolic.
    """
    n = v.size
    if n == 0:
        return metabolizer_block_check(v, [])
    if _accel._box_size(n, bound) > cap:
        raise SearchSpaceTooLarge(f"(2*{bound}+1)^{n} candidate vectors exceeds cap {cap}")
    g = n // 2
    forms = np.array(v.tolist(), dtype=np.int64)
    vecs = _accel.isotropic_vectors(forms, bound, use_numba)
    if len(vecs) < g:
        return None
    ok = _accel.compatibility(vecs, forms, use_numba)
    rows = vecs.tolist()
    omega = v.intersection_form()
    for clique in _cliques(ok, g, rows):
        p = lattice.symplectic_completion(lattice.transpose([rows[i] for i in clique], n), omega)
        if p is not None:
            return metabolizer_block_check(v, p)
    return None


def _cliques(ok: np.ndarray, size: int, rows: list[list[int]]):
    """Index tuples ``i1 < ... < ik`` pairwise compatible, with primitive partial spans."""
    k = len(ok)
    n = len(rows[0]) if rows else 0

    def extend(prefix: list[int], start: int):
        if len(prefix) == size:
            yield tuple(prefix)
            return
        for j in range(start, k):
            if all(ok[i, j] for i in prefix) and ok[j, j]:
                cand = prefix + [j]
                if lattice.is_primitive(lattice.transpose([rows[i] for i in cand], n), len(cand)):
                    yield from extend(cand, j + 1)

    yield from extend([], 0)


# -- signatures ----------------------------------------------------------------


def symmetric_inertia(m: Sequence[Sequence]) -> tuple[int, int, int]:
    """``(positive, negative, zero)`` eigenvalue counts of a rational symmetric matrix.

    Computed by symmetric Gaussian elimination (congruence to a diagonal
    matrix), so the answer is exact.
    """
    a = [[Fraction(x) for x in r] for r in m]
    n = len(a)
    pos = neg = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if off is None:
                break
            i, j = off
            # adding row/col j to row/col i makes a[i][i] = 2 a[i][j] != 0
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            piv = i
        a[k], a[piv] = a[piv], a[k]
        for r in a:
            r[k], r[piv] = r[piv], r[k]
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = a[i][k] / d
            if f:
                for c in range(k + 1, n):
                    a[i][c] -= f * a[k][c]
        for i in range(k + 1, n):
            a[i][k] = a[k][i] = Fraction(0)
        k += 1
    return pos, neg, n - pos - neg


def symmetric_signature(m: Sequence[Sequence]) -> int:
    pos, neg, _ = symmetric_inertia(m)
    return pos - neg


def hermitian_signature(v: SeifertMatrix, c, s) -> int:
    """Signature of ``(1 - w) V + (1 - conj w) V^T`` at the rational point ``w = c + i s``.

    The Hermitian matrix ``A + iB`` has half the signature of the real
    symmetric ``[[A, -B], [B, A]]``.  Raises AtSingularPoint if it is singular.
    """
    c, s = Fraction(c), Fraction(s)
    n = v.size
    if n == 0:
        return 0
    vm, vt = v.tolist(), v.transpose()
    a = [[(1 - c) * (vm[i][j] + vt[i][j]) for j in range(n)] for i in range(n)]
    b = [[-s * (vm[i][j] - vt[i][j]) for j in range(n)] for i in range(n)]
    big = [a[i] + [-x for x in b[i]] for i in range(n)] + [b[i] + a[i] for i in range(n)]
    pos, neg, zero = symmetric_inertia(big)
    if zero:
        raise AtSingularPoint(f"signature matrix is singular at w = {c} + {s}i")
    return (pos - neg) // 2


@dataclass(frozen=True)
class UnitPoint:
    """A point ``w`` of the unit circle, given exactly or as a float angle.

    Exactly one representation is set: ``rational`` = ``(cos, sin)`` with
    rational coordinates, ``theta_over_pi`` = exact rational multiple of pi,
    or ``theta`` = floating-point angle in radians.
    """

    rational: tuple[Fraction, Fraction] | None = None
    theta_over_pi: Fraction | None = None
    theta: float | None = None

    @classmethod
    def from_cos_sin(cls, c, s) -> "UnitPoint":
        c, s = Fraction(c), Fraction(s)
        if c * c + s * s != 1:
            raise ValueError(f"({c}, {s}) is not on the unit circle")
        return cls(rational=(c, s))

    @classmethod
    def root_of_unity(cls, k: int, m: int) -> "UnitPoint":
        """``exp(2 pi i k / m)``."""
        return cls(theta_over_pi=Fraction(2 * k, m) % 2)

    @classmethod
    def from_angle(cls, theta_over_pi) -> "UnitPoint":
        return cls(theta_over_pi=Fraction(theta_over_pi) % 2)

    @classmethod
    def from_float(cls, theta: float) -> "UnitPoint":
        return cls(theta=float(theta))

    @classmethod
    def coerce(cls, w) -> "UnitPoint":
        if isinstance(w, UnitPoint):
            return w
        if isinstance(w, (int, Fraction)) and w in (1, -1):
            return cls.from_cos_sin(w, 0)
        if isinstance(w, complex):
            return cls.from_float(float(mpmath.arg(w)))
        raise TypeError(f"cannot interpret {w!r} as a unit-circle point")

    def is_one(self) -> bool:
        if self.rational is not None:
            return self.rational == (1, 0)
        if self.theta_over_pi is not None:
            return self.theta_over_pi % 2 == 0
        return float(self.theta) % (2 * mpmath.pi) == 0


@dataclass(frozen=True)
class Jump:
    """A unit root ``exp(i theta)`` of the Alexander polynomial with ``0 < theta < pi``.

    ``interval`` isolates ``cos(theta)``.  ``order`` is ``m`` when the root is
    a primitive m-th root of unity, in which case ``theta_over_pi`` is exact;
    otherwise it is ``arccos`` of the interval midpoint rounded to 40 digits.
    """

    theta_over_pi: Fraction
    interval: uc.RootInterval
    order: int | None = None

    @property
    def exact(self) -> bool:
        return self.order is not None


@dataclass(frozen=True)
class SignatureProfile:
    """The Levine-Tristram signature as a step function of ``theta`` in ``(0, pi)``.

    ``values[j]`` is the signature on the arc between ``jumps[j-1]`` and
    ``jumps[j]`` (with ``0`` and ``pi`` at the ends).  On ``(pi, 2 pi)`` the
    function is the mirror image.
    """

    jumps: tuple[Jump, ...]
    values: tuple[int, ...]

    @property
    def exact(self) -> bool:
        return all(j.exact for j in self.jumps)

    def breakpoints(self) -> list[Fraction]:
        return [Fraction(0)] + [j.theta_over_pi for j in self.jumps] + [Fraction(1)]

    def rho_zero(self) -> Fraction:
        """``(1/2pi) * integral of the signature over the circle``."""
        bp = self.breakpoints()
        return sum((val * (bp[i + 1] - bp[i]) for i, val in enumerate(self.values)), Fraction(0))

    def plateaus(self) -> list[tuple[Fraction, bool, int]]:
        """Merged plateaus over ``[0, 2 pi)`` as ``(start theta/pi, start_exact, sigma)``."""
        starts = [(Fraction(0), True)] + [(j.theta_over_pi, j.exact) for j in self.jumps]
        starts += [(2 - j.theta_over_pi, j.exact) for j in reversed(self.jumps)]
        vals = list(self.values) + list(reversed(self.values[:-1]))
        out: list[tuple[Fraction, bool, int]] = []
        for (theta, ex), val in zip(starts, vals):
            if out and out[-1][2] == val:
                continue
            out.append((theta, ex, val))
        return out

    def to_json(self) -> list[dict]:
        return [
            {"theta_over_pi": str(theta) if ex else _decimal(theta), "sigma": val}
            for theta, ex, val in self.plateaus()
        ]


def _decimal(x: Fraction, digits: int = 20) -> str:
    with mpmath.workdps(digits + 5):
        return mpmath.nstr(mpmath.mpf(x.numerator) / x.denominator, digits, strip_zeros=False)


def _separate_jumps(jumps: list[Jump]) -> list[Jump]:
    """Refine isolating intervals until disjoint; return jumps in increasing theta."""
    jumps = sorted(jumps, key=lambda j: j.interval.lo, reverse=True)
    changed = True
    while changed:
        changed = False
        for i in range(len(jumps) - 1):
            a, b = jumps[i], jumps[i + 1]
            if b.interval.hi >= a.interval.lo:
                if a.interval.exact and b.interval.exact:
                    raise ValueError("coincident unit roots in coprime factors")
                jumps[i] = _refined(a)
                jumps[i + 1] = _refined(b)
                changed = True
        jumps.sort(key=lambda j: j.interval.lo, reverse=True)
    return jumps


def _refined(j: Jump) -> Jump:
    iv = j.interval.refine()
    theta = j.theta_over_pi if j.exact else uc.acos_over_pi(iv.midpoint())
    return Jump(theta, iv, j.order)


def unit_roots(delta: LaurentPolynomial) -> list[Jump]:
    """Unit roots of a symmetric Laurent polynomial in the open upper half circle."""
    cyc, rest = uc.cyclotomic_factorization(delta)
    one, minus = Fraction(1), Fraction(-1)
    jumps: list[Jump] = []
    for m in sorted(cyc):
        if m < 3:
            continue
        phi = uc.center(LaurentPolynomial.from_poly(uc.cyclotomic(m)))
        ivs = uc.isolate_roots(uc.chebyshev_form(phi), minus, one)
        # cos(2 pi k/m) decreases in k, intervals come back increasing
        ks = [k for k in range(1, (m + 1) // 2) if gcd(k, m) == 1]
        for k, iv in zip(ks, reversed(ivs)):
            jumps.append(Jump(Fraction(2 * k, m), iv, m))
    if rest.max_exp > 0:
        for iv in uc.isolate_roots(uc.chebyshev_form(rest), minus, one):
            jumps.append(Jump(uc.acos_over_pi(iv.midpoint()), iv))
    return _separate_jumps(jumps)


def signature_profile(v: SeifertMatrix) -> SignatureProfile:
    """Jumps of the signature function and its value on each arc, computed exactly.

    Plateau values are evaluated at rational points of the circle lying
    strictly between consecutive isolated roots.
    """
    jumps = unit_roots(alexander_polynomial(v))
    edges = [Fraction(1)]
    for j in jumps:
        edges += [j.interval.hi, j.interval.lo]
    edges.append(Fraction(-1))
    values = []
    for i in range(len(jumps) + 1):
        hi, lo = edges[2 * i], edges[2 * i + 1]
        if lo == -1 and hi == -1:
            c, s = Fraction(-1), Fraction(0)
        else:
            c, s = uc.rational_circle_point(lo, hi)
        values.append(hermitian_signature(v, c, s))
    return SignatureProfile(tuple(jumps), tuple(values))


def _mpf(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def _plateau_index(profile: SignatureProfile, x, tol) -> int:
    """Arc containing ``cos(theta) = x`` (an mpmath number, ``-1 <= x < 1``).

    Intervals are refined until ``x`` falls outside them; a root within
    ``tol`` of ``x``, or one that cannot be separated from it at 50 digits,
    raises AtSingularPoint.
    """
    floor = Fraction(1, 10**50)
    for idx, j in enumerate(profile.jumps):
        iv = j.interval
        while _mpf(iv.lo) - tol <= x <= _mpf(iv.hi) + tol and iv.hi - iv.lo > floor:
            iv = iv.refine()
        if _mpf(iv.lo) - tol <= x <= _mpf(iv.hi) + tol:
            raise AtSingularPoint(f"cos(theta) = {mpmath.nstr(x, 20)} is at a unit root of the Alexander polynomial")
        if x > _mpf(iv.hi):
            return idx
    return len(profile.jumps)


def signature_at(v: SeifertMatrix, w, tolerance: float = 1e-12) -> int:
    """Levine-Tristram signature of ``V`` at the unit-circle point ``w != 1``.

    ``w`` is a :class:`UnitPoint`, ``-1``, or a complex number.  Rational
    points and rational multiples of pi are decided exactly.  A float angle
    whose cosine lies within ``tolerance`` of a unit root of the Alexander
    polynomial raises AtSingularPoint.
    """
    w = UnitPoint.coerce(w)
    if w.is_one():
        raise AtSingularPoint("the signature function is not evaluated at w = 1")
    if v.size == 0:
        return 0
    if w.rational is not None:
        return hermitian_signature(v, *w.rational)
    profile = signature_profile(v)
    with mpmath.workdps(60):
        if w.theta_over_pi is not None:
            q = w.theta_over_pi
            m = (2 * q.denominator) // gcd(q.numerator, 2 * q.denominator)
            if uc.divisible_by_cyclotomic(alexander_polynomial(v), m):
                raise AtSingularPoint(f"exp(i pi {q}) is a root of the Alexander polynomial")
            x = uc.cos_pi(q)
            tol = mpmath.mpf(0)
        else:
            x = mpmath.cos(mpmath.mpf(w.theta))
            tol = mpmath.mpf(tolerance)
        return profile.values[_plateau_index(profile, x, tol)]


def rho_zero_report(v: SeifertMatrix) -> tuple[Fraction, bool]:
    """``(rho_0, exact)``; ``exact`` is false when some jump angle was rounded."""
    profile = signature_profile(v)
    return profile.rho_zero(), profile.exact


def rho_zero(v: SeifertMatrix) -> Fraction:
    """Average of the signature function over the circle.

    Exact whenever every jump sits at a root of unity; otherwise the jump
    angles are rounded to 40 digits (see :func:`rho_zero_report`).
    """
    return rho_zero_report(v)[0]


def arf(v: SeifertMatrix) -> int:
    """Arf invariant: 0 iff the Alexander polynomial at -1 is +-1 mod 8."""
    d = alexander_polynomial(v).evaluate(Fraction(-1))
    return 0 if int(d) % 8 in (1, 7) else 1
