"""C-complexes given by homological data, and metabolic-certificate checking.

A C-complex ``F = F_1 u ... u F_n`` is described by the rank of ``H_1(F)``,
its clasps ``(i, j, sign)`` and the ``2^n`` linking forms
``V^eps(a, b) = lk(a, b^eps)`` in a fixed basis of ``H_1(F)``.  Sign
vectors ``eps`` are written as strings over ``+``/``-`` of length ``n``.

Geometric requirements (embedded disjoint curves, loops separating the
sheets they cross) cannot be read from homology; a certificate carries them
as explicit attestations.  Results separate "algebraically metabolic" from
"certified metabolic".  Clasp signs follow the usual picture: only relative
signs enter any check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import _accel, lattice
from .errors import RankMismatch, SearchSpaceTooLarge
from .seifert import SEARCH_CAP, SeifertMatrix

ATTESTATIONS = ("curves_disjoint_nonseparating", "loops_disjoint_from_derivative", "loops_separate_sheets")


def eps_keys(n: int) -> list[str]:
    """All sign strings of length ``n`` in lexicographic order (``+`` before ``-``)."""
    return ["".join(p) for p in itertools.product("+-", repeat=n)]


def flip(key: str) -> str:
    return key.translate(str.maketrans("+-", "-+"))


@dataclass(frozen=True)
class Clasp:
    i: int
    j: int
    sign: int

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "sign": self.sign}


@dataclass(frozen=True)
class CComplexData:
    """Homological data of a C-complex.

    ``linking_numbers`` optionally records ``lk(L_i, L_j)`` keyed by ``(i, j)``
    with ``i < j``; it is checked against the signed clasp count.
    """

    n: int
    h1_rank: int
    clasps: tuple[Clasp, ...]
    forms: Mapping[str, tuple[tuple[int, ...], ...]]
    linking_numbers: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __init__(self, n, h1_rank, clasps=(), forms=None, linking_numbers=None):
        cl = []
        for c in clasps:
            if isinstance(c, Clasp):
                cl.append(c)
            elif isinstance(c, Mapping):
                cl.append(Clasp(int(c["i"]), int(c["j"]), int(c["sign"])))
            else:
                cl.append(Clasp(*(int(x) for x in c)))
        fm = {str(k): tuple(tuple(int(x) for x in r) for r in m) for k, m in (forms or {}).items()}
        lk = {tuple(int(x) for x in k): int(v) for k, v in (linking_numbers or {}).items()}
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "h1_rank", int(h1_rank))
        object.__setattr__(self, "clasps", tuple(cl))
        object.__setattr__(self, "forms", fm)
        object.__setattr__(self, "linking_numbers", lk)

    @classmethod
    def from_seifert(cls, v: SeifertMatrix) -> "CComplexData":
        """One-component data: ``V^+ = V`` and ``V^- = V^T``."""
        return cls(1, v.size, (), {"+": v.tolist(), "-": v.transpose()})

    def form(self, key: str) -> list[list[int]]:
        return [list(r) for r in self.forms[key]]

    def clasp_components(self) -> int:
        """Connected components of the graph on surfaces with clasps as edges."""
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in self.clasps:
            if 1 <= c.i <= self.n and 1 <= c.j <= self.n:
                parent[find(c.i)] = find(c.j)
        return len({find(x) for x in range(1, self.n + 1)})

    def total_genus(self) -> int | None:
        """``sum g(F_i)`` from ``rank H_1(F) = 2g + #clasps - n + #components``."""
        twice = self.h1_rank - len(self.clasps) + self.n - self.clasp_components()
        if twice < 0 or twice % 2:
            return None
        return twice // 2

    def transformed(self, p: Sequence[Sequence[int]]) -> "CComplexData":
        """Same complex in the basis given by the columns of ``p``."""
        forms = {k: lattice.congruence([list(r) for r in p], self.form(k)) for k in self.forms}
        return CComplexData(self.n, self.h1_rank, self.clasps, forms, self.linking_numbers)

    def to_json(self) -> dict:
        doc = {
            "type": "ccomplex",
            "components": self.n,
            "h1_rank": self.h1_rank,
            "clasps": [c.to_json() for c in self.clasps],
            "forms": {k: [list(r) for r in self.forms[k]] for k in sorted(self.forms, key=_key_order)},
        }
        if self.linking_numbers:
            doc["lk"] = {f"{i},{j}": v for (i, j), v in sorted(self.linking_numbers.items())}
        return doc

    @classmethod
    def from_json(cls, doc: Mapping) -> "CComplexData":
        lk = {tuple(int(x) for x in k.split(",")): v for k, v in doc.get("lk", {}).items()}
        return cls(doc["components"], doc["h1_rank"], doc.get("clasps", []), doc.get("forms", {}), lk)


def _key_order(key: str) -> str:
    return key.replace("+", "0").replace("-", "1")


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple[str, ...]

    @property
    def valid(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"valid": self.valid, "failures": list(self.failures)}


def validate(data: CComplexData) -> ValidationReport:
    """Check the structural invariants of the data; every failure is listed."""
    out: list[str] = []
    n, r = data.n, data.h1_rank
    if n < 1:
        out.append("component count must be at least 1")
    if r < 0:
        out.append("h1_rank must be nonnegative")
    for idx, c in enumerate(data.clasps):
        if not (1 <= c.i < c.j <= n):
            out.append(f"clasp {idx}: need 1 <= i < j <= {n}, got ({c.i}, {c.j})")
        if c.sign not in (1, -1):
            out.append(f"clasp {idx}: sign must be +1 or -1")
    keys = eps_keys(n) if n >= 1 else []
    missing = [k for k in keys if k not in data.forms]
    extra = sorted(k for k in data.forms if k not in keys)
    if missing:
        out.append(f"missing forms: {', '.join(missing)}")
    if extra:
        out.append(f"unexpected form keys: {', '.join(extra)}")
    shaped = []
    for k in keys:
        if k in data.forms:
            m = data.forms[k]
            if len(m) != r or any(len(row) != r for row in m):
                out.append(f"form {k} is not {r}x{r}")
            else:
                shaped.append(k)
    for k in shaped:
        fk = flip(k)
        if fk in shaped and k <= fk:
            if lattice.transpose(data.form(k), r) != data.form(fk):
                out.append(f"symmetry failure: (V^{k})^T != V^{fk}")
    counts: dict[tuple[int, int], int] = {}
    for c in data.clasps:
        counts[(c.i, c.j)] = counts.get((c.i, c.j), 0) + c.sign
    for (i, j), lk in sorted(data.linking_numbers.items()):
        if counts.get((i, j), 0) != lk:
            out.append(f"lk(L{i}, L{j}) = {lk} but the signed clasp count is {counts.get((i, j), 0)}")
    if n == 1 and "+" in shaped and "-" in shaped:
        d = lattice.det(lattice.sub(data.form("+"), data.form("-")))
        if abs(d) != 1:
            out.append(f"one-component data needs det(V^+ - V^-) = +-1, got {d}")
    if data.total_genus() is None:
        out.append("h1_rank is inconsistent with the clasp count (genus would not be a nonnegative integer)")
    return ValidationReport(tuple(out))


@dataclass(frozen=True)
class MetabolicCertificate:
    """Derivative classes, pairing-loop classes, pairing table and attestations.

    ``pairing_table[k] = (positive clasp id, negative clasp id)`` for loop
    ``k``; clasp ids index ``CComplexData.clasps``.
    """

    derivative: tuple[tuple[int, ...], ...] = ()
    loops: tuple[tuple[int, ...], ...] = ()
    pairing_table: tuple[tuple[int, int], ...] = ()
    attestations: Mapping[str, bool] = field(default_factory=dict)

    def __init__(self, derivative=(), loops=(), pairing_table=(), attestations=None):
        object.__setattr__(self, "derivative", tuple(tuple(int(x) for x in v) for v in derivative))
        object.__setattr__(self, "loops", tuple(tuple(int(x) for x in v) for v in loops))
        object.__setattr__(self, "pairing_table", tuple((int(a), int(b)) for a, b in pairing_table))
        att = {k: False for k in ATTESTATIONS}
        att.update({k: bool(v) for k, v in (attestations or {}).items()})
        object.__setattr__(self, "attestations", att)

    @classmethod
    def attested(cls, derivative=(), loops=(), pairing_table=()) -> "MetabolicCertificate":
        return cls(derivative, loops, pairing_table, {k: True for k in ATTESTATIONS})

    def transformed(self, p_inv: Sequence[Sequence[int]]) -> "MetabolicCertificate":
        """Class vectors rewritten in a new basis (``p_inv`` maps old to new coordinates)."""

        def tr(v):
            return [sum(a * b for a, b in zip(row, v)) for row in p_inv]

        return MetabolicCertificate([tr(v) for v in self.derivative], [tr(v) for v in self.loops], self.pairing_table, self.attestations)

    def to_json(self) -> dict:
        return {
            "type": "certificate",
            "derivative": [list(v) for v in self.derivative],
            "loops": [list(v) for v in self.loops],
            "pairing_table": [list(p) for p in self.pairing_table],
            "attestations": {k: self.attestations[k] for k in ATTESTATIONS},
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "MetabolicCertificate":
        return cls(doc.get("derivative", []), doc.get("loops", []), doc.get("pairing_table", []), doc.get("attestations", {}))


@dataclass(frozen=True)
class MetabolicResult:
    algebraic: bool
    certified: bool
    reasons: tuple[str, ...]

    @property
    def accepted(self) -> bool:
        return self.certified

    @property
    def status(self) -> str:
        if self.certified:
            return "certified"
        return "algebraic" if self.algebraic else "rejected"

    def to_json(self) -> dict:
        return {"status": self.status, "algebraic": self.algebraic, "certified": self.certified, "reasons": list(self.reasons)}


def _pairing_problems(data: CComplexData, table: Sequence[tuple[int, int]], loops: int) -> list[str]:
    out = []
    if len(table) != loops:
        out.append(f"{loops} pairing loops but {len(table)} pairing-table entries")
    used: dict[int, int] = {}
    nc = len(data.clasps)
    for k, (a, b) in enumerate(table):
        if not (0 <= a < nc and 0 <= b < nc):
            out.append(f"loop {k}: clasp id out of range")
            continue
        ca, cb = data.clasps[a], data.clasps[b]
        if ca.sign != 1 or cb.sign != -1:
            out.append(f"loop {k}: must pair a positive clasp with a negative clasp")
        if (ca.i, ca.j) != (cb.i, cb.j):
            out.append(f"loop {k}: clasps {a} and {b} join different surface pairs")
        for c in (a, b):
            used[c] = used.get(c, 0) + 1
    for c in range(nc):
        if used.get(c, 0) != 1:
            out.append(f"clasp {c} appears in {used.get(c, 0)} pairing entries, expected exactly 1")
    return out


def check_metabolic(data: CComplexData, cert: MetabolicCertificate) -> MetabolicResult:
    """Decide whether ``cert`` exhibits a metabolic linking form on ``data``.

    Algebraic conditions: the derivative classes number ``g = sum g(F_i)``
    and span a primitive sublattice (the homological shadow of a
    nonseparating collection), the pairing table is a complete
    opposite-sign pairing, and every ``V^eps`` vanishes on all pairs of
    certificate classes.  Certification additionally needs every attestation.
    """
    r = data.h1_rank
    for v in cert.derivative + cert.loops:
        if len(v) != r:
            raise RankMismatch(f"class vector of length {len(v)} for h1_rank {r}")
    reasons: list[str] = []
    g = data.total_genus()
    if g is None:
        reasons.append("data has no consistent total genus")
    elif len(cert.derivative) != g:
        reasons.append(f"derivative has {len(cert.derivative)} classes, total genus is {g}")
    if cert.derivative and not lattice.is_primitive(lattice.transpose([list(v) for v in cert.derivative], r), len(cert.derivative)):
        reasons.append("derivative classes do not span a primitive sublattice")
    reasons += _pairing_problems(data, cert.pairing_table, len(cert.loops))
    classes = [list(v) for v in cert.derivative + cert.loops]
    for key in eps_keys(data.n):
        m = data.form(key)
        bad = [
            (a, b)
            for a, u in enumerate(classes)
            for b, w in enumerate(classes)
            if sum(u[i] * m[i][j] * w[j] for i in range(r) for j in range(r) if u[i] and w[j])
        ]
        if bad:
            reasons.append(f"V^{key} does not vanish on certificate classes {bad[0]}")
    algebraic = not reasons
    missing = [k for k in ATTESTATIONS if not cert.attestations.get(k)]
    if algebraic and missing:
        reasons.append("unattested geometric conditions: " + ", ".join(missing))
    return MetabolicResult(algebraic, algebraic and not missing, tuple(reasons))


def greedy_pairing(data: CComplexData) -> tuple[tuple[int, int], ...] | None:
    """Pair positive with negative clasps on each surface pair in list order."""
    table = []
    pairs: dict[tuple[int, int], tuple[list[int], list[int]]] = {}
    for idx, c in enumerate(data.clasps):
        pos, neg = pairs.setdefault((c.i, c.j), ([], []))
        (pos if c.sign > 0 else neg).append(idx)
    for key in sorted(pairs):
        pos, neg = pairs[key]
        if len(pos) != len(neg):
            return None
        table += list(zip(pos, neg))
    return tuple(table)


def search_metabolic(data: CComplexData, bound: int, cap: int = SEARCH_CAP, use_numba: bool | None = None) -> MetabolicCertificate | None:
    """Bounded search for the algebraic part of a certificate.

    Class vectors range over ``[-bound, bound]^h1_rank`` in lexicographic
    order.  The derivative is the first primitive set of ``g`` pairwise
    compatible isotropic vectors; each pairing loop gets the first nonzero
    vector compatible with everything chosen so far.  Candidates carry no
    attestations and are advisory; ``None`` proves nothing.
    """
    r = data.h1_rank
    g = data.total_genus()
    table = greedy_pairing(data)
    if g is None or table is None:
        return None
    if r == 0:
        return MetabolicCertificate((), (), table) if not table else None
    if _accel._box_size(r, bound) > cap:
        raise SearchSpaceTooLarge(f"(2*{bound}+1)^{r} candidate vectors exceeds cap {cap}")
    forms = np.array([data.form(k) for k in eps_keys(data.n)], dtype=np.int64)
    vecs = _accel.isotropic_vectors(forms, bound, use_numba)
    ok = _accel.compatibility(vecs, forms, use_numba)
    rows = vecs.tolist()
    m = len(table)

    def cliques(prefix, start):
        if len(prefix) == g:
            yield prefix
            return
        for j in range(start, len(rows)):
            if all(ok[i, j] for i in prefix):
                cand = prefix + [j]
                if lattice.is_primitive(lattice.transpose([rows[i] for i in cand], r), len(cand)):
                    yield from cliques(cand, j + 1)

    for der in cliques([], 0):
        chosen = list(der)
        loops = []
        for _ in range(m):
            nxt = next((j for j in range(len(rows)) if all(ok[i, j] for i in chosen)), None)
            if nxt is None:
                break
            chosen.append(nxt)
            loops.append(rows[nxt])
        if len(loops) == m:
            return MetabolicCertificate([rows[i] for i in der], loops, table)
    return None
