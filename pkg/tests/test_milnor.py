import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linkconc import milnor as M
from linkconc.errors import IndexOutOfRange, NotPure, SearchSpaceTooLarge, StrandMismatch


def random_pure_braid(rng, max_strands=4, max_len=10):
    while True:
        n = rng.randint(2, max_strands)
        length = rng.randint(0, max_len)
        b = M.BraidWord(n, [rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(length)])
        if b.is_pure():
            return b


def oracle_lk(strands, word):
    """Signed crossings between strands that start at positions i and j, halved."""
    pos = list(range(strands))
    counts = {}
    for s in word:
        p = abs(s) - 1
        key = frozenset((pos[p], pos[p + 1]))
        counts[key] = counts.get(key, 0) + (1 if s > 0 else -1)
        pos[p], pos[p + 1] = pos[p + 1], pos[p]
    return {(i + 1, j + 1): counts.get(frozenset((i, j)), 0) // 2 for i in range(strands) for j in range(i + 1, strands)}


def oracle_magnus(letters, degree):
    """Dict-based series; x -> 1 + X and x^-1 -> 1 - X + X^2 - ..."""
    acc = {(): 1}
    for g, e in letters:
        factor = {(): 1}
        if e > 0:
            factor[(g,)] = 1
        else:
            for k in range(1, degree + 1):
                factor[(g,) * k] = (-1) ** k
        out = {}
        for a, ca in acc.items():
            for b, cb in factor.items():
                if len(a) + len(b) <= degree:
                    out[a + b] = out.get(a + b, 0) + ca * cb
        acc = {k: v for k, v in out.items() if v}
    return acc


def oracle_act(word, strands, letters):
    """Right-to-left substitution of the Artin generators into a word (list of signed ints)."""
    w = list(letters)
    for s in reversed(word):
        i = abs(s)
        out = []
        for x in w:
            g, e = abs(x), (1 if x > 0 else -1)
            if s > 0:
                img = {i: [i, i + 1, -i], i + 1: [i]}.get(g, [g])
            else:
                img = {i: [i + 1], i + 1: [-(i + 1), i, i + 1]}.get(g, [g])
            out.extend(img if e > 0 else [-y for y in reversed(img)])
        w = out
    return M.FreeWord(w)


class TestFreeWords:
    def test_reduction_and_string(self):
        w = M.FreeWord([1, 2, -2, -1, 1, -2])
        assert w.to_ints() == [1, -2]
        assert str(w) == "x1 x2^-1"
        assert (w * w.inverse()).to_ints() == []


class TestArtin:
    def test_examples(self):
        assert M.artin_act(M.BraidWord(3), [1, 2]).to_ints() == [1, 2]
        assert M.artin_act(M.BraidWord(2, [1]), [1]).to_ints() == [1, 2, -1]
        assert M.artin_act(M.BraidWord(2, [1, 1]), [2]).to_ints() == [1, 2, -1]

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            M.BraidWord(2, [2])
        with pytest.raises(IndexOutOfRange):
            M.artin_act(M.BraidWord(2, [1]), [3])

    def test_matches_substitution_oracle(self, rng):
        for _ in range(50):
            n = rng.randint(2, 4)
            word = [rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(0, 8))]
            w = [rng.choice([1, -1]) * rng.randint(1, n) for _ in range(rng.randint(0, 5))]
            assert M.artin_act(M.BraidWord(n, word), w) == oracle_act(word, n, w)

    def test_composition(self, rng):
        for _ in range(50):
            n = rng.randint(2, 4)
            a = M.BraidWord(n, [rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(0, 6))])
            b = M.BraidWord(n, [rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(0, 6))])
            w = [rng.choice([1, -1]) * rng.randint(1, n) for _ in range(4)]
            assert M.artin_act(M.concatenate(a, b), w) == M.artin_act(a, M.artin_act(b, w))

    def test_braid_relations_act_equally(self):
        lhs = M.BraidWord(3, [1, 2, 1])
        rhs = M.BraidWord(3, [2, 1, 2])
        for g in (1, 2, 3):
            assert M.artin_act(lhs, [g]) == M.artin_act(rhs, [g])


class TestLongitudes:
    def test_trivial(self):
        assert all(len(w) == 0 for w in M.longitudes(M.BraidWord(3)))

    def test_hopf(self):
        lam1, lam2 = M.longitudes(M.hopf())
        assert lam1.to_ints() == [2] and lam2.to_ints() == [1]

    def test_borromean_in_commutator_subgroup(self):
        for lam in M.longitudes(M.borromean()):
            assert all(lam.exponent_sum(j) == 0 for j in (1, 2, 3))

    def test_not_pure(self):
        with pytest.raises(NotPure):
            M.longitudes(M.BraidWord(2, [1]))

    def test_zero_framing(self, rng):
        for _ in range(30):
            b = random_pure_braid(rng)
            for j, lam in enumerate(M.longitudes(b), start=1):
                assert lam.exponent_sum(j) == 0


class TestMagnus:
    def test_examples(self):
        assert str(M.magnus_expand([], 3, 2)) == "1"
        assert str(M.magnus_expand([1, -1], 4)) == "1"
        assert str(M.magnus_expand([1, 2, -1, -2], 2)) == "1 + X1X2 - X2X1"

    def test_inverse_series(self):
        s = M.magnus_expand([-1], 3)
        assert s.to_dict() == {(): 1, (1,): -1, (1, 1): 1, (1, 1, 1): -1}

    def test_matches_oracle(self, rng):
        for _ in range(40):
            n = rng.randint(1, 3)
            w = M.FreeWord([rng.choice([1, -1]) * rng.randint(1, n) for _ in range(rng.randint(0, 12))])
            d = rng.randint(1, 4)
            assert M.magnus_expand(w, d, n).to_dict() == oracle_magnus(list(w), d)

    def test_homomorphism(self, rng):
        for _ in range(20):
            a = M.FreeWord([rng.choice([1, -1]) * rng.randint(1, 3) for _ in range(6)])
            b = M.FreeWord([rng.choice([1, -1]) * rng.randint(1, 3) for _ in range(6)])
            assert M.magnus_expand(a * b, 4, 3) == M.magnus_expand(a, 4, 3) * M.magnus_expand(b, 4, 3)

    def test_backends_agree(self, rng):
        for _ in range(10):
            w = M.FreeWord([rng.choice([1, -1]) * rng.randint(1, 3) for _ in range(15)])
            assert M.magnus_expand(w, 4, 3, use_numba=True) == M.magnus_expand(w, 4, 3, use_numba=False)

    def test_term_cap(self, monkeypatch):
        monkeypatch.setenv("LINKCONC_SERIES_MAX_TERMS", "100")
        with pytest.raises(SearchSpaceTooLarge):
            M.magnus_expand([1, 2, 3, 4], 4)


class TestMilnorInvariants:
    def test_examples(self):
        assert M.milnor_invariant(M.BraidWord(3), (1, 2, 3)) == 0
        assert M.milnor_invariant(M.hopf(), (1, 2)) == 1
        assert abs(M.milnor_invariant(M.borromean(), (1, 2, 3))) == 1

    def test_first_nonvanishing(self):
        hopf = M.first_nonvanishing(M.hopf())
        assert hopf.length == 2 and hopf.nonzero() == {(1, 2): 1, (2, 1): 1}
        bor = M.first_nonvanishing(M.borromean(), 4)
        assert bor.length == 3
        assert set(bor.nonzero().values()) <= {1, -1}
        assert M.first_nonvanishing(M.BraidWord(3), 6).all_vanish

    def test_linking_numbers(self, rng):
        for _ in range(100):
            b = random_pure_braid(rng)
            lk = oracle_lk(b.strands, b.word)
            assert M.crossing_linking_numbers(b) == lk
            for (i, j), value in lk.items():
                assert M.milnor_invariant(b, (i, j)) == value
                assert M.milnor_invariant(b, (j, i)) == value

    def test_cyclic_symmetry(self, rng):
        cases = [M.hopf(), M.borromean()] + [random_pure_braid(rng, 3, 10) for _ in range(20)]
        for b in cases:
            table = M.first_nonvanishing(b, 3)
            if table.length is None:
                continue
            for idx, val in table.mu.items():
                rotated = idx[1:] + idx[:1]
                assert table.mu[rotated] == val
                assert isinstance(val, int)

    def test_concatenation(self, rng):
        a = random_pure_braid(rng)
        assert M.concatenate(a, M.BraidWord(a.strands)).word == a.word
        with pytest.raises(StrandMismatch):
            M.concatenate(M.BraidWord(2), M.BraidWord(3))

    def test_inverse_product_vanishes(self, rng):
        for _ in range(10):
            n = rng.randint(2, 4)
            a = M.BraidWord(n, [rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(1, 6))])
            assert M.first_nonvanishing(M.concatenate(a, a.inverse()), 4).all_vanish

    def test_additive_at_first_length(self, rng):
        pool = [random_pure_braid(rng, 3, 10) for _ in range(30)] + [M.borromean(), M.BraidWord(3, [1, 1])]
        pool = [b for b in pool if b.strands == 3]
        for a, b in itertools.product(pool[-8:], repeat=2):
            ta, tb = M.milnor_tables(a, 3), M.milnor_tables(b, 3)
            lengths = [M.first_nonvanishing(x, 3).length or 3 for x in (a, b)]
            k = min(lengths)
            tab = M.milnor_tables(M.concatenate(a, b), k)[k]
            assert tab == {i: ta[k][i] + tb[k][i] for i in tab}

    def test_index_parsing(self):
        assert M.parse_index("1, 2,3") == (1, 2, 3)
        assert M.format_index((3, 1)) == "3,1"
        with pytest.raises(IndexOutOfRange):
            M.milnor_invariant(M.hopf(), (1, 3))

    def test_json(self):
        b = M.borromean()
        assert M.BraidWord.from_json(b.to_json()).word == b.word
