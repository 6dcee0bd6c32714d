"""Half-integer solvability grades and the bookkeeping for doubling operators.

Grades live in ``{0, 0.5, 1, 1.5, ...} u {inf}`` and are stored as twice
their value.  Every "nontrivial" verdict produced here is conditional on the
cited theorem and on user attestations; the only thing computed is
arithmetic (and, in the driver, exact knot invariants of the seed knot).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

from . import seifert

CITE_DOUBLING = "doubling-operator-grade-bound"
CITE_NONTRIVIAL = "doubling-tower-nontriviality"
CITE_BOUNDARY = "boundary-link-doubling-grade"
CITE_ARF = "arf-zero-knots-are-0-solvable"


@functools.total_ordering
@dataclass(frozen=True)
class SolvabilityGrade:
    twice: int = 0
    infinite: bool = False

    def __post_init__(self):
        if self.infinite:
            object.__setattr__(self, "twice", 0)
        elif self.twice < 0:
            raise ValueError("solvability grades are nonnegative")

    @classmethod
    def inf(cls) -> "SolvabilityGrade":
        return cls(0, True)

    @classmethod
    def of(cls, x) -> "SolvabilityGrade":
        """From an int, a half-integer Fraction/float, ``"inf"``, ``"2.5"`` or ``"5/2"``."""
        if isinstance(x, SolvabilityGrade):
            return x
        if isinstance(x, str):
            s = x.strip().lower()
            if s in ("inf", "infinity", "slice", "oo"):
                return cls.inf()
            x = Fraction(s)
        if isinstance(x, float):
            if x == float("inf"):
                return cls.inf()
            x = Fraction(x)
        twice = Fraction(x) * 2
        if twice.denominator != 1:
            raise ValueError(f"{x} is not a half-integer")
        return cls(int(twice))

    @property
    def value(self) -> Fraction | None:
        return None if self.infinite else Fraction(self.twice, 2)

    def __add__(self, other) -> "SolvabilityGrade":
        o = SolvabilityGrade.of(other)
        if self.infinite or o.infinite:
            return SolvabilityGrade.inf()
        return SolvabilityGrade(self.twice + o.twice)

    __radd__ = __add__

    def minus(self, other) -> "SolvabilityGrade":
        """Truncated subtraction (never below 0); ``inf - x = inf``."""
        o = SolvabilityGrade.of(other)
        if o.infinite:
            raise ValueError("cannot subtract an infinite grade")
        if self.infinite:
            return self
        return SolvabilityGrade(max(self.twice - o.twice, 0))

    def __lt__(self, other) -> bool:
        o = SolvabilityGrade.of(other)
        if self.infinite:
            return False
        if o.infinite:
            return True
        return self.twice < o.twice

    def __eq__(self, other) -> bool:
        try:
            o = SolvabilityGrade.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return (self.infinite, self.twice) == (o.infinite, o.twice)

    def __hash__(self):
        return hash((self.infinite, self.twice))

    def __str__(self):
        if self.infinite:
            return "inf"
        return str(self.twice // 2) if self.twice % 2 == 0 else f"{self.twice // 2}.5"

    def __repr__(self):
        return f"SolvabilityGrade({self})"


def grade_min(*grades) -> SolvabilityGrade:
    return min(SolvabilityGrade.of(g) for g in grades)


INF = SolvabilityGrade.inf()


@dataclass(frozen=True)
class DoublingOperator:
    """A pattern knot ``R`` with infection curves ``eta``.

    ``n_r`` is the solvability of ``R`` (``inf`` when slice), ``eta_depth``
    the derived-series depth ``k`` reached by the components of ``eta``,
    ``eta_count`` their number; ``boundary_flag`` records whether
    ``R u eta`` is assumed solve-equivalent to a boundary link, and
    ``blanchfield_nonzero`` whether ``Bl_R(eta_1, eta_2) != 0``.
    """

    n_r: SolvabilityGrade = field(default_factory=SolvabilityGrade.inf)
    eta_depth: int = 1
    eta_count: int = 1
    boundary_flag: bool = False
    blanchfield_nonzero: bool = False

    def __post_init__(self):
        object.__setattr__(self, "n_r", SolvabilityGrade.of(self.n_r))
        if self.eta_depth < 1:
            raise ValueError("eta is nullhomologous, so its derived depth is at least 1")
        if self.eta_count < 1:
            raise ValueError("eta needs at least one component")

    @property
    def slice(self) -> bool:
        return self.n_r.infinite


def doubling_grade(op: DoublingOperator, p) -> SolvabilityGrade:
    """``min(n_R, p + k)``: solvability of ``R_eta(J)`` for a ``p``-solvable ``J``."""
    return grade_min(op.n_r, SolvabilityGrade.of(p) + SolvabilityGrade(2 * op.eta_depth))


def tower_grade(op: DoublingOperator, p0, iterations: int) -> SolvabilityGrade:
    """Grade after ``iterations`` applications of :func:`doubling_grade`."""
    if iterations < 0:
        raise ValueError("iterations must be nonnegative")
    g = SolvabilityGrade.of(p0)
    for _ in range(iterations):
        g = doubling_grade(op, g)
    return g


@dataclass(frozen=True)
class NontrivialityReport:
    conditional_nontrivial: bool
    missing: tuple[str, ...]
    statement: str
    rho0: Fraction | None = None
    citation: str = CITE_NONTRIVIAL

    def to_json(self) -> dict:
        return {
            "conditional_nontrivial": self.conditional_nontrivial,
            "missing": list(self.missing),
            "statement": self.statement,
            "rho0": None if self.rho0 is None else str(self.rho0),
            "citation": self.citation,
        }


def chl_nontriviality_report(
    op: DoublingOperator,
    arf_zero: bool,
    rho0_large_attested: bool,
    iterations: int,
    rho0: Fraction | None = None,
) -> NontrivialityReport:
    """Whether the hypotheses for ``R_eta^n(J)`` being nontrivial in ``F_n / F_n.5`` hold.

    The constant bounding ``|rho_0(J)|`` is not computed: its hypothesis
    enters only as the attestation ``rho0_large_attested``, reported next to
    the computed ``rho0`` when one is supplied.
    """
    n = iterations
    missing = []
    if not op.slice:
        missing.append("R is slice")
    if op.eta_count != 2:
        missing.append(f"eta has two components (got {op.eta_count})")
    if not op.blanchfield_nonzero:
        missing.append("Bl_R(eta_1, eta_2) != 0")
    if not arf_zero:
        missing.append("Arf(J) = 0")
    if not rho0_large_attested:
        missing.append("|rho_0(J)| > D (attested)")
    ok = not missing
    if ok:
        statement = (
            f"hypotheses satisfied => R_eta^{n}(J) is nontrivial in F_{n}/F_{n}.5 "
            f"(conditional on the attested bound |rho_0(J)| > D)"
        )
    else:
        statement = "hypotheses missing: " + "; ".join(missing)
    return NontrivialityReport(ok, tuple(missing), statement, rho0)


@dataclass(frozen=True)
class ChainStep:
    subject: str
    grade: SolvabilityGrade
    citation: str
    note: str = ""

    def to_json(self) -> dict:
        return {"subject": self.subject, "grade": str(self.grade), "citation": self.citation, "note": self.note}


@dataclass(frozen=True)
class DriverReport:
    n: int
    trefoil_pairs: int
    rho0: Fraction
    arf: int
    steps: tuple[ChainStep, ...]
    chain_length: int
    assumed_grade: SolvabilityGrade
    inconsistent: bool
    contradiction: str

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "seed": {"trefoils": 2 * self.trefoil_pairs, "rho0": str(self.rho0), "arf": self.arf},
            "chain": [s.to_json() for s in self.steps],
            "chain_length": self.chain_length,
            "contradiction": {
                "assumption": f"L(J_{self.n}) is {self.n}.5-solve-equivalent to a boundary link",
                "derived_grade": str(self.assumed_grade),
                "inconsistent": self.inconsistent,
                "explanation": self.contradiction,
                "citations": [CITE_BOUNDARY, CITE_NONTRIVIAL],
            },
        }


def theorem_main_driver(n: int, trefoil_pairs: int = 1) -> DriverReport:
    """Replay the grade bookkeeping behind an n-solvable link not n.5-equivalent to a boundary link.

    ``J_1`` is the connected sum of ``2 * trefoil_pairs`` trefoils (its
    ``rho_0`` and Arf invariant are computed exactly), ``J_n = R_eta^(n-1)(J_1)``
    and ``L(J_n)``, viewed as the operator ``R_eta`` applied to ``J_n``,
    gains one more level.  The contradiction branch assumes ``L(J_n)`` is
    n.5-solve-equivalent to a boundary link and derives the grade n.5 for
    ``R_eta^n(J_1)``, which the nontriviality theorem forbids.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if trefoil_pairs < 1:
        raise ValueError("need at least one pair of trefoils")
    v = seifert.SeifertMatrix([])
    for _ in range(2 * trefoil_pairs):
        v = seifert.block_sum(v, seifert.trefoil())
    rho0 = seifert.rho_zero(v)
    arf = seifert.arf(v)
    op = DoublingOperator(INF, eta_depth=1, eta_count=2, blanchfield_nonzero=True)
    j1 = SolvabilityGrade(0)
    steps = [ChainStep("J_1", j1, CITE_ARF, f"#{2 * trefoil_pairs} trefoils: Arf = {arf}, rho_0 = {rho0}")]
    jn = tower_grade(op, j1, n - 1)
    if n > 1:
        steps.append(ChainStep(f"J_{n}", jn, CITE_DOUBLING, f"R_eta applied {n - 1} times to J_1"))
    ln = doubling_grade(op, jn)
    steps.append(ChainStep(f"L(J_{n})", ln, CITE_DOUBLING, "the same grade calculus applied to the link"))
    boundary_op = DoublingOperator(SolvabilityGrade(2 * n + 1), eta_depth=2, eta_count=2, boundary_flag=True)
    assumed = doubling_grade(boundary_op, jn)
    report = chl_nontriviality_report(op, arf == 0, True, n, rho0)
    target = SolvabilityGrade(2 * n + 1)
    inconsistent = report.conditional_nontrivial and assumed >= target
    text = (
        f"boundary assumption gives R_eta^{n}(J_1) grade {assumed} "
        f"= min({boundary_op.n_r}, {jn} + 2), but {report.statement}"
    )
    return DriverReport(n, trefoil_pairs, rho0, arf, tuple(steps), n, assumed, inconsistent, text)
