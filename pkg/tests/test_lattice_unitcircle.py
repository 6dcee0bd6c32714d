import math
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from linkconc import lattice
from linkconc import unitcircle as uc
from linkconc.algebra import LaurentPolynomial as L
from linkconc.algebra import poly as P


def random_int_matrix(rng, n, lo=-3, hi=3):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]


class TestLattice:
    def test_det_matches_sympy(self, rng):
        for _ in range(30):
            m = random_int_matrix(rng, rng.randint(1, 5))
            assert lattice.det(m) == sp.Matrix(m).det()

    def test_inverse_of_unimodular(self, rng):
        for _ in range(20):
            m = lattice.identity(4)
            for _ in range(6):
                i, j = rng.sample(range(4), 2)
                c = rng.choice([-2, -1, 1, 2])
                for row in m:
                    row[j] += c * row[i]
            assert lattice.matmul(lattice.inverse(m), m) == lattice.identity(4)

    def test_primitive(self):
        assert lattice.is_primitive([[1], [0]], 1)
        assert not lattice.is_primitive([[2], [0]], 1)
        assert not lattice.is_primitive([[1, 1], [1, -1]], 2)
        assert lattice.is_primitive([[1, 0], [2, 1], [3, 5]], 2)

    def test_hermite(self, rng):
        for _ in range(20):
            a = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(2)]
            h, u = lattice.column_hermite(a, 3)
            assert lattice.matmul(a, u) == h and lattice.is_unimodular(u)

    def test_symplectic_completion(self, rng):
        om = lattice.standard_symplectic(2)
        x = [[1, 0], [0, 1], [0, 0], [0, 0]]
        p = lattice.symplectic_completion(x, om)
        assert lattice.congruence(p, om) == om
        assert [r[:2] for r in p] == x
        # non-isotropic columns cannot be completed
        assert lattice.symplectic_completion([[1, 0], [0, 0], [0, 1], [0, 0]], om) is None
        # non-primitive columns cannot be completed
        assert lattice.symplectic_completion([[2], [0]], lattice.standard_symplectic(1)) is None

    def test_completion_of_random_lagrangians(self, rng):
        from linkconc.fusion import random_symplectic

        om = lattice.standard_symplectic(3)
        for _ in range(20):
            q = random_symplectic(om, rng)
            x = [r[:3] for r in q]
            p = lattice.symplectic_completion(x, om)
            assert p is not None and lattice.congruence(p, om) == om


class TestUnitCircle:
    def test_cyclotomic(self):
        assert uc.cyclotomic(1) == P.from_ints([-1, 1])
        assert uc.cyclotomic(6) == P.from_ints([1, -1, 1])
        for m in range(1, 30):
            expr = sp.Poly(sp.cyclotomic_poly(m, sp.Symbol("x")), sp.Symbol("x"))
            assert list(uc.cyclotomic(m)) == [Fraction(int(c)) for c in reversed(expr.all_coeffs())]

    def test_factorization(self):
        trefoil = L({1: 1, 0: -1, -1: 1})
        found, rest = uc.cyclotomic_factorization(trefoil * trefoil)
        assert found == {6: 2} and rest == L.const(1)
        found, rest = uc.cyclotomic_factorization(L({1: 2, 0: -3, -1: 2}))
        assert found == {} and rest == L({1: 2, 0: -3, -1: 2})

    def test_chebyshev_form(self):
        # t + 1/t = 2x
        assert uc.chebyshev_form(L({1: 1, -1: 1})) == P.from_ints([0, 2])

    def test_isolation_matches_numpy(self, rng):
        for _ in range(20):
            coeffs = [rng.randint(-5, 5) for _ in range(rng.randint(2, 6))]
            p = P.from_ints(coeffs)
            if P.deg(p) < 1:
                continue
            ivs = uc.isolate_roots(P.squarefree(p), Fraction(-1), Fraction(1))
            roots = [r.real for r in np.roots(list(reversed([float(c) for c in p]))) if abs(r.imag) < 1e-9 and -1 < r.real < 1]
            assert len(ivs) == len(set(round(r, 6) for r in roots))
            for iv in ivs:
                assert any(float(iv.lo) - 1e-9 <= r <= float(iv.hi) + 1e-9 for r in roots)

    def test_rational_circle_point(self):
        c, s = uc.rational_circle_point(Fraction(1, 3), Fraction(1, 2))
        assert c * c + s * s == 1 and Fraction(1, 3) < c < Fraction(1, 2) and s > 0

    def test_acos(self):
        assert abs(float(uc.acos_over_pi(Fraction(1, 2))) - 1 / 3) < 1e-15
        assert abs(float(uc.acos_over_pi(Fraction(3, 4))) - math.acos(0.75) / math.pi) < 1e-15
