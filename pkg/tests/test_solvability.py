from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from linkconc.solvability import (
    CITE_BOUNDARY,
    INF,
    DoublingOperator,
    SolvabilityGrade,
    chl_nontriviality_report,
    doubling_grade,
    grade_min,
    theorem_main_driver,
    tower_grade,
)

G = SolvabilityGrade.of
grades = st.one_of(st.integers(0, 40).map(SolvabilityGrade), st.just(INF))
finite = st.integers(0, 40).map(SolvabilityGrade)
depths = st.integers(1, 4)


class TestGrades:
    def test_parsing_and_printing(self):
        assert str(G("2.5")) == "2.5" and str(G("5/2")) == "2.5"
        assert str(G(3)) == "3" and str(G("inf")) == "inf"
        assert G(Fraction(3, 2)).twice == 3
        with pytest.raises(ValueError):
            G("1/3")
        with pytest.raises(ValueError):
            SolvabilityGrade(-1)

    def test_arithmetic(self):
        assert G(1.5) + G(2) == G(3.5)
        assert INF + G(1) == INF
        assert G(1).minus(G(2)) == G(0)
        assert grade_min(INF, G(2), G(0.5)) == G(0.5)
        assert G(100) < INF

    @given(grades, grades, grades)
    def test_lattice_laws(self, a, b, c):
        assert grade_min(a, b) == grade_min(b, a)
        assert grade_min(a, grade_min(b, c)) == grade_min(grade_min(a, b), c)
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        # addition distributes over min
        assert grade_min(a, b) + c == grade_min(a + c, b + c)


class TestDoubling:
    def test_examples(self):
        assert doubling_grade(DoublingOperator(INF, 1), 0) == G(1)
        assert doubling_grade(DoublingOperator(G(2), 1), 5) == G(2)
        for n in range(2, 8):
            assert doubling_grade(DoublingOperator(INF, 2), G(Fraction(2 * n - 3, 2))) == G(Fraction(2 * n + 1, 2))

    @given(grades, finite, finite, depths)
    def test_monotone(self, nr, p, q, k):
        lo, hi = grade_min(p, q), max(p, q)
        op = DoublingOperator(nr, k)
        assert doubling_grade(op, lo) <= doubling_grade(op, hi)
        assert doubling_grade(DoublingOperator(grade_min(nr, G(3)), k), p) <= doubling_grade(op, p)

    def test_invalid_operator(self):
        with pytest.raises(ValueError):
            DoublingOperator(INF, 0)


class TestTower:
    def test_examples(self):
        op1, op2 = DoublingOperator(INF, 1), DoublingOperator(INF, 2)
        assert tower_grade(op1, G(1.5), 0) == G(1.5)
        for n in range(11):
            assert tower_grade(op1, 0, n) == G(n)
            assert tower_grade(op2, 0, n) == G(2 * n)

    @given(grades, finite, depths, st.integers(0, 6), st.integers(0, 6))
    def test_semigroup(self, nr, p, k, a, b):
        op = DoublingOperator(nr, k)
        assert tower_grade(op, p, a + b) == tower_grade(op, tower_grade(op, p, a), b)

    @given(finite, depths, st.integers(0, 10))
    def test_slice_pattern_is_linear(self, p, k, n):
        assert tower_grade(DoublingOperator(INF, k), p, n) == p + SolvabilityGrade(2 * k * n)


class TestNontriviality:
    def full(self):
        return DoublingOperator(INF, 1, eta_count=2, blanchfield_nonzero=True)

    def test_all_hypotheses(self):
        rep = chl_nontriviality_report(self.full(), True, True, 3)
        assert rep.conditional_nontrivial and rep.missing == ()
        assert "attested" in rep.statement

    def test_missing_arf(self):
        rep = chl_nontriviality_report(self.full(), False, True, 2)
        assert not rep.conditional_nontrivial and "Arf(J) = 0" in rep.missing

    def test_single_component_eta(self):
        rep = chl_nontriviality_report(DoublingOperator(INF, 1), True, True, 1)
        assert any("two components" in m for m in rep.missing)

    def test_unattested_bound(self):
        rep = chl_nontriviality_report(self.full(), True, False, 1)
        assert not rep.conditional_nontrivial and any("attested" in m for m in rep.missing)

    def test_non_slice_pattern(self):
        rep = chl_nontriviality_report(DoublingOperator(G(3), 1, 2, blanchfield_nonzero=True), True, True, 1)
        assert "R is slice" in rep.missing


class TestDriver:
    def test_n_one(self):
        rep = theorem_main_driver(1)
        assert rep.chain_length == 1
        assert [str(s.grade) for s in rep.steps] == ["0", "1"]

    def test_n_three(self):
        rep = theorem_main_driver(3)
        grades = {s.subject: str(s.grade) for s in rep.steps}
        assert grades == {"J_1": "0", "J_3": "2", "L(J_3)": "3"}

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_contradiction_flagged(self, n):
        rep = theorem_main_driver(n)
        assert rep.inconsistent
        assert rep.assumed_grade == G(Fraction(2 * n + 1, 2))
        assert rep.rho0 == Fraction(-8, 3) and rep.arf == 0
        doc = rep.to_json()
        assert doc["contradiction"]["inconsistent"] is True
        assert CITE_BOUNDARY in doc["contradiction"]["citations"]

    def test_larger_seed(self):
        rep = theorem_main_driver(2, trefoil_pairs=3)
        assert rep.rho0 == 6 * Fraction(-4, 3) and rep.arf == 0

    def test_invalid(self):
        with pytest.raises(ValueError):
            theorem_main_driver(0)
