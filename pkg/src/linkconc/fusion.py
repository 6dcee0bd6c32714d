"""Seifert forms of fusion surfaces, their isomorphisms, and the ``V + (-V)`` metabolizer.

A fusion form stores the genera of the surface components, the number of
fusion arcs, and the Seifert matrix in a basis chosen disjoint from the
arcs.  For component ``i`` the basis is ``s_1..s_g, t_1..t_g`` and
``V - V^T`` restricted to it is ``o_i [[0, I], [-I, 0]]`` with orientation
``o_i = +1``; negation flips ``o_i``.  The arcs impose no constraint on the
form, so only their count is kept.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import lattice
from .errors import NotIsomorphic, SizeMismatch
from .seifert import BlockCheck, SeifertMatrix, metabolizer_block_check


@dataclass(frozen=True)
class FusionForm:
    genera: tuple[int, ...]
    fusion_arcs: int
    matrix: tuple[tuple[int, ...], ...]
    orientation: tuple[int, ...]

    def __init__(self, genera: Sequence[int], fusion_arcs: int, matrix, orientation: Sequence[int] | None = None):
        gen = tuple(int(x) for x in genera)
        ori = tuple(int(x) for x in orientation) if orientation is not None else (1,) * len(gen)
        m = tuple(tuple(int(x) for x in r) for r in matrix)
        if any(x < 0 for x in gen) or fusion_arcs < 0:
            raise ValueError("genera and fusion arc count must be nonnegative")
        if len(ori) != len(gen) or any(o not in (1, -1) for o in ori):
            raise ValueError("orientation needs one sign per component")
        size = 2 * sum(gen)
        if len(m) != size or any(len(r) != size for r in m):
            raise SizeMismatch(f"matrix must be {size}x{size} for genera {list(gen)}")
        object.__setattr__(self, "genera", gen)
        object.__setattr__(self, "fusion_arcs", int(fusion_arcs))
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "orientation", ori)
        om = lattice.sub(self.tolist(), lattice.transpose(self.tolist(), size))
        if om != self.intersection_form():
            raise ValueError("V - V^T is not the standard symplectic form of the stored basis")

    @property
    def size(self) -> int:
        return len(self.matrix)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.matrix]

    def intersection_form(self) -> list[list[int]]:
        """Block diagonal of ``o_i [[0, I], [-I, 0]]``."""
        return lattice.block_diag(*(lattice.standard_symplectic(g, o) for g, o in zip(self.genera, self.orientation)))

    def to_seifert(self) -> SeifertMatrix:
        return SeifertMatrix(self.tolist())

    def to_json(self) -> dict:
        doc = {"type": "fusion", "genera": list(self.genera), "fusion_arcs": self.fusion_arcs, "matrix": self.tolist()}
        if any(o < 0 for o in self.orientation):
            doc["orientation"] = list(self.orientation)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "FusionForm":
        return cls(doc["genera"], doc.get("fusion_arcs", 0), doc["matrix"], doc.get("orientation"))

    @classmethod
    def from_seifert(cls, v: SeifertMatrix, fusion_arcs: int = 0) -> "FusionForm":
        """Single-component form; ``V - V^T`` must already be standard."""
        return cls([v.genus], fusion_arcs, v.tolist())


def embedded_replacement(f: FusionForm) -> FusionForm:
    """The embedded surface with the same form: identical matrix, no fusion arcs."""
    return FusionForm(f.genera, 0, f.matrix, f.orientation)


def negate_form(f: FusionForm) -> FusionForm:
    """Form of the reverse mirror: ``-V`` with every orientation flipped."""
    return FusionForm(f.genera, f.fusion_arcs, lattice.neg(f.tolist()), [-o for o in f.orientation])


def direct_sum(f: FusionForm, g: FusionForm) -> FusionForm:
    return FusionForm(
        f.genera + g.genera,
        f.fusion_arcs + g.fusion_arcs,
        lattice.block_diag(f.tolist(), g.tolist()),
        f.orientation + g.orientation,
    )


@dataclass(frozen=True)
class IsomorphismCheck:
    accepted: bool
    reasons: tuple[str, ...] = ()


def _check_shapes(f: FusionForm, g: FusionForm) -> None:
    if f.size != g.size:
        raise SizeMismatch(f"forms of size {f.size} and {g.size}")
    if sorted(f.genera) != sorted(g.genera):
        raise SizeMismatch(f"component genera {list(f.genera)} and {list(g.genera)} differ")


def form_isomorphic(f: FusionForm, g: FusionForm, p: Sequence[Sequence[int]]) -> IsomorphismCheck:
    """Check that ``p`` (the matrix of ``phi_*``) carries ``g`` back to ``f``.

    Accepts iff ``det p = +-1``, ``p^T V_g p = V_f`` (so
    ``V_f(a, b) = V_g(phi a, phi b)``) and ``p`` carries the stored
    symplectic form of ``g`` to that of ``f`` (orientation preserving).
    """
    _check_shapes(f, g)
    pm = lattice.as_int_matrix(p)
    n = f.size
    if len(pm) != n or any(len(r) != n for r in pm):
        raise SizeMismatch(f"witness must be {n}x{n}")
    reasons = []
    if not lattice.is_unimodular(pm):
        reasons.append(f"det(P) = {lattice.det(pm)}, expected +-1")
    if lattice.congruence(pm, g.tolist()) != f.tolist():
        reasons.append("P^T V_g P != V_f")
    if lattice.congruence(pm, g.intersection_form()) != f.intersection_form():
        reasons.append("P does not preserve the symplectic forms")
    return IsomorphismCheck(not reasons, tuple(reasons))


def isomorphism_search(f: FusionForm, g: FusionForm, bound: int) -> list[list[int]] | None:
    """Find ``p`` with entries in ``[-bound, bound]`` accepted by :func:`form_isomorphic`.

    Columns are chosen one at a time from the box so that the partial
    Gram matrix ``p^T V_g p`` agrees with ``V_f``; ``None`` proves nothing.
    """
    _check_shapes(f, g)
    n = f.size
    if n == 0:
        return []
    vf, vg = f.tolist(), g.tolist()
    box = [list(v) for v in itertools.product(range(-bound, bound + 1), repeat=n) if any(v)]

    def pair(u, w):
        return sum(u[i] * vg[i][j] * w[j] for i in range(n) for j in range(n) if u[i] and w[j])

    per_col = [[v for v in box if pair(v, v) == vf[k][k]] for k in range(n)]
    cols: list[list[int]] = []

    def extend(k):
        if k == n:
            p = lattice.transpose(cols, n)
            return p if form_isomorphic(f, g, p).accepted else None
        for v in per_col[k]:
            if all(pair(cols[i], v) == vf[i][k] and pair(v, cols[i]) == vf[k][i] for i in range(k)):
                cols.append(v)
                found = extend(k + 1)
                if found is not None:
                    return found
                cols.pop()
        return None

    return extend(0)


@dataclass(frozen=True)
class BandSumResult:
    form: FusionForm
    witness: list[list[int]]
    check: BlockCheck


def band_sum_with_negative(f: FusionForm, g: FusionForm, p: Sequence[Sequence[int]]) -> BandSumResult:
    """``f + (-g)`` with a metabolizer witness built from the difference basis.

    The first half of the witness is ``x - phi(x)`` over the stored basis of
    ``f`` (columns ``[e_k; -p e_k]``); the second half completes it to a
    symplectic basis of the sum.
    """
    iso = form_isomorphic(f, g, p)
    if not iso.accepted:
        raise NotIsomorphic("; ".join(iso.reasons))
    form = direct_sum(f, negate_form(g))
    n = f.size
    if n == 0:
        return BandSumResult(form, [], metabolizer_block_check(SeifertMatrix([]), []))
    pm = lattice.as_int_matrix(p)
    half = lattice.identity(n) + lattice.neg(pm)  # rows stack to [I; -P]
    witness = lattice.symplectic_completion(half, form.intersection_form())
    if witness is None:
        raise NotIsomorphic("difference basis does not span a primitive Lagrangian")
    check = metabolizer_block_check(form.to_seifert(), witness)
    return BandSumResult(form, witness, check)


def random_symplectic(omega: Sequence[Sequence[int]], rng, steps: int = 6, scale: int = 2) -> list[list[int]]:
    """Random integer matrix preserving ``omega``, a product of symplectic transvections."""
    n = len(omega)
    p = lattice.identity(n)
    for _ in range(steps):
        v = [rng.randint(-1, 1) for _ in range(n)]
        lam = rng.choice([x for x in range(-scale, scale + 1) if x])
        vo = lattice.matmul([v], [list(r) for r in omega])[0]
        t = [[int(i == j) + lam * v[i] * vo[j] for j in range(n)] for i in range(n)]
        p = lattice.matmul(p, t)
    return p


def random_form(genera: Sequence[int], rng, entry: int = 3) -> FusionForm:
    """Random fusion form: ``V = U + S`` with ``S`` the standard strict-upper part of the symplectic form."""
    om = lattice.block_diag(*(lattice.standard_symplectic(g) for g in genera))
    n = len(om)
    v = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            x = rng.randint(-entry, entry)
            v[i][j] = x + om[i][j]
            v[j][i] = x
    return FusionForm(genera, rng.randint(0, 2), v)
