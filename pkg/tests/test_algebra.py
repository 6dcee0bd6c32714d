import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from linkconc.algebra import (
    LaurentPolynomial as L,
    PolyMatrix,
    RationalFunction,
    TorsionValue,
    adjugate,
    involute,
    laurent_arith,
    matrix_det,
    matrix_inverse,
    reduce_mod_lambda,
)
from linkconc.errors import SingularMatrix

from conftest import T, congruent_mod_lambda, laurents, nonzero_laurents, random_laurent, to_sympy

t = L.t()
one = L.const(1)
delta_trefoil = L({0: 1, 1: -1, 2: 1})


def rf(num, den=1):
    return RationalFunction.from_laurent(num, den)


class TestLaurent:
    def test_cancellation(self):
        assert laurent_arith(t + 1, L.const(-1), "add") == t

    def test_exponent_shift(self):
        assert laurent_arith(t - 1, L.t(-1), "mul") == one - L.t(-1)

    def test_hand_product(self):
        assert laurent_arith(delta_trefoil, t + 1, "mul") == L.t(3) + 1

    def test_sub_and_unknown_op(self):
        assert laurent_arith(t, t, "sub").is_zero()
        with pytest.raises(ValueError):
            laurent_arith(t, t, "div")

    def test_involute_examples(self):
        assert involute(t) == L.t(-1)
        assert involute(delta_trefoil) == L({-2: 1, -1: -1, 0: 1})

    def test_string_form(self):
        assert str(L({1: 1, 0: -1, -1: 1})) == "t - 1 + t^-1"
        assert str(L({})) == "0"

    def test_json_round_trip(self):
        p = L({-3: Fraction(1, 2), 2: -7})
        assert L.from_json(p.to_json()) == p

    @given(laurents, laurents)
    def test_matches_sympy(self, a, b):
        assert sp.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
        assert sp.expand(to_sympy(a - b) - (to_sympy(a) - to_sympy(b))) == 0

    @given(laurents, laurents)
    def test_involute_is_ring_homomorphism(self, a, b):
        assert involute(a * b) == involute(a) * involute(b)
        assert involute(a + b) == involute(a) + involute(b)
        assert involute(involute(a)) == a


class TestRationalFunctions:
    def test_lowest_terms(self):
        # (t^2 - 1)/(t - 1) = t + 1
        assert rf(L({2: 1, 0: -1}), t - 1) == rf(t + 1)

    @given(laurents, nonzero_laurents, laurents, nonzero_laurents)
    def test_field_ops_match_sympy(self, a, b, c, d):
        x, y = rf(a, b), rf(c, d)
        assert sp.cancel(to_sympy(x + y) - (to_sympy(x) + to_sympy(y))) == 0
        assert sp.cancel(to_sympy(x * y) - to_sympy(x) * to_sympy(y)) == 0

    @given(laurents, nonzero_laurents)
    def test_involute_of_fraction(self, a, b):
        x = rf(a, b)
        assert sp.cancel(to_sympy(involute(x)) - to_sympy(x).subs(T, 1 / T)) == 0
        assert involute(involute(x)) == x


class TestReduceModLambda:
    def test_polynomial_is_zero(self):
        assert reduce_mod_lambda(rf(L.t(3) + 2)).is_zero()

    def test_strips_polynomial_part(self):
        expect = reduce_mod_lambda(rf(t, delta_trefoil))
        assert reduce_mod_lambda(rf(L.const(-1)) + rf(t, delta_trefoil)) == expect
        assert str(expect) == "(t)/(t^2 - t + 1)"

    def test_inverse_powers_of_t(self):
        assert reduce_mod_lambda(rf(L.const(5), L.t(4)) + rf(L({0: 1, 3: 2}))).is_zero()

    def test_json(self):
        v = reduce_mod_lambda(rf(t, delta_trefoil))
        assert TorsionValue.from_json(v.to_json()) == v

    @given(laurents, nonzero_laurents, laurents)
    def test_lambda_translates_vanish(self, a, b, h):
        f = rf(a, b)
        assert reduce_mod_lambda(f + rf(h)) == reduce_mod_lambda(f)

    @given(laurents, nonzero_laurents, laurents, nonzero_laurents)
    def test_additive(self, a, b, c, d):
        f, g = rf(a, b), rf(c, d)
        assert reduce_mod_lambda(f + g) == reduce_mod_lambda(f) + reduce_mod_lambda(g)

    @given(laurents, nonzero_laurents)
    def test_representative_is_congruent(self, a, b):
        f = rf(a, b)
        r = reduce_mod_lambda(f)
        assert congruent_mod_lambda(r, f)
        # proper fraction with denominator coprime to t
        assert len(r.num) < len(r.den) or r.is_zero()
        assert r.den[0] != 0


class TestMatrices:
    def test_empty_det(self):
        assert matrix_det(PolyMatrix([], cols=0)) == one

    def test_diagonal_units(self):
        assert matrix_det(PolyMatrix([[t, 0], [0, L.t(-1)]])) == one

    def test_trefoil_alexander_matrix(self):
        v = PolyMatrix.from_ints([[-1, 1], [0, -1]])
        m = v.scale(t) - v.transpose()
        assert matrix_det(m) == delta_trefoil

    def test_inverse_examples(self):
        assert matrix_inverse(PolyMatrix.identity(3)) == PolyMatrix.identity(3).as_ring(matrix_inverse(PolyMatrix.identity(3)).ring)
        inv = matrix_inverse(PolyMatrix([[t]]))
        assert inv[0, 0] == rf(L.t(-1))

    def test_trefoil_inverse_is_adjugate_over_delta(self):
        v = PolyMatrix.from_ints([[-1, 1], [0, -1]])
        a = v - v.transpose().scale(t)
        inv = matrix_inverse(a)
        d = rf(matrix_det(a))
        adj = adjugate(a)
        for i in range(2):
            for j in range(2):
                assert inv[i, j] == rf(adj[i, j]) / d

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            matrix_inverse(PolyMatrix([[t, t], [one, one]]))

    def test_inverse_times_matrix_is_identity(self, rng):
        count = 0
        while count < 100:
            m = PolyMatrix([[random_laurent(rng, coeff=2) for _ in range(4)] for _ in range(4)])
            if matrix_det(m).is_zero():
                continue
            inv = matrix_inverse(m)
            prod = inv @ m.as_ring(inv.ring)
            assert prod == PolyMatrix.identity(4).as_ring(inv.ring)
            count += 1

    def test_det_matches_sympy(self, rng):
        for _ in range(20):
            rows = [[random_laurent(rng, -1, 1) for _ in range(3)] for _ in range(3)]
            ours = to_sympy(matrix_det(PolyMatrix(rows)))
            theirs = sp.Matrix([[to_sympy(x) for x in r] for r in rows]).det()
            assert sp.expand(ours - theirs) == 0
