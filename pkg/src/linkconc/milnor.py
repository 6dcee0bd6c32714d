"""Milnor invariants of pure-braid closures.

Conventions
-----------
* ``sigma_i`` acts on the free group by ``x_i -> x_i x_{i+1} x_i^-1`` and
  ``x_{i+1} -> x_i``.
* A braid word ``s_1 s_2 ... s_m`` acts by ``phi_{s_1} o phi_{s_2} o ... o
  phi_{s_m}``.  It is evaluated by scanning the word left to right and
  substituting each letter's rule into the current generator images, so
  ``artin_act(a * b, w) == artin_act(a, artin_act(b, w))``.
* For a pure braid ``b(x_j) = w_j x_j w_j^-1`` with ``w_j`` read off the
  reduced word, and the 0-framed longitude is ``x_j^(-e_j) w_j`` where
  ``e_j`` is the exponent sum of ``x_j`` in ``w_j``.
* ``mu(i_1 ... i_{k-1}; i_k)`` is the coefficient of ``X_{i_1} ... X_{i_{k-1}}``
  in the Magnus expansion of the longitude of strand ``i_k``: the last index
  names the longitude.

Generator and strand indices are 1-based throughout the public API.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _accel
from .errors import IndexOutOfRange, NotPure, SearchSpaceTooLarge, StrandMismatch

DEFAULT_DEGREE_CAP = 6
#: upper limit on stored series coefficients; override with LINKCONC_SERIES_MAX_TERMS
DEFAULT_MAX_TERMS = 20_000_000


def max_series_terms() -> int:
    raw = os.environ.get("LINKCONC_SERIES_MAX_TERMS", "").strip()
    return int(raw) if raw else DEFAULT_MAX_TERMS


Letter = tuple[int, int]


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, e in letters:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


class FreeWord:
    """A freely reduced word in ``x_1, x_2, ...``; letters are ``(generator, +-1)``."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable = ()):
        norm = []
        for item in letters:
            if isinstance(item, int):
                g, e = abs(item), (1 if item > 0 else -1)
            else:
                g, e = item
            if g < 1 or e not in (1, -1):
                raise ValueError(f"bad letter {item!r}")
            norm.append((int(g), int(e)))
        self.letters = _reduce(norm)

    @classmethod
    def generator(cls, j: int, e: int = 1) -> "FreeWord":
        return cls([(j, e)])

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord((g, -e) for g, e in reversed(self.letters))

    def __pow__(self, k: int) -> "FreeWord":
        base = self if k >= 0 else self.inverse()
        return FreeWord(base.letters * abs(k))

    def exponent_sum(self, j: int) -> int:
        return sum(e for g, e in self.letters if g == j)

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=0)

    def to_ints(self) -> list[int]:
        return [g * e for g, e in self.letters]

    def __eq__(self, other):
        return isinstance(other, FreeWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(f"x{g}" if e > 0 else f"x{g}^-1" for g, e in self.letters)

    def __repr__(self):
        return f"FreeWord({self.to_ints()})"


@dataclass(frozen=True)
class BraidWord:
    """``word`` lists signed Artin generators: ``+i`` is sigma_i, ``-i`` its inverse."""

    strands: int
    word: tuple[int, ...] = ()

    def __init__(self, strands: int, word: Sequence[int] = ()):
        if strands < 1:
            raise ValueError("a braid needs at least one strand")
        w = tuple(int(x) for x in word)
        for x in w:
            if x == 0 or abs(x) >= strands:
                raise IndexOutOfRange(f"generator {x} is not valid on {strands} strands")
        object.__setattr__(self, "strands", int(strands))
        object.__setattr__(self, "word", w)

    def permutation(self) -> tuple[int, ...]:
        """``perm[p]`` is the starting position (1-based) of the strand ending at position ``p+1``."""
        pos = list(range(1, self.strands + 1))
        for s in self.word:
            i = abs(s) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        return tuple(pos)

    def is_pure(self) -> bool:
        return self.permutation() == tuple(range(1, self.strands + 1))

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, [-x for x in reversed(self.word)])

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return concatenate(self, other)

    def to_json(self) -> dict:
        return {"type": "braid", "strands": self.strands, "word": list(self.word)}

    @classmethod
    def from_json(cls, doc: dict) -> "BraidWord":
        return cls(doc["strands"], doc.get("word", []))


def concatenate(a: BraidWord, b: BraidWord) -> BraidWord:
    """The product ``a * b`` (word concatenation)."""
    if a.strands != b.strands:
        raise StrandMismatch(f"{a.strands} vs {b.strands} strands")
    return BraidWord(a.strands, a.word + b.word)


def hopf() -> BraidWord:
    return BraidWord(2, [1, 1])


def borromean() -> BraidWord:
    return BraidWord(3, [1, -2] * 3)


def _generator_images(b: BraidWord) -> list[tuple[Letter, ...]]:
    imgs: list[tuple[Letter, ...]] = [((j, 1),) for j in range(1, b.strands + 1)]

    def inv(w):
        return tuple((g, -e) for g, e in reversed(w))

    for s in b.word:
        i = abs(s) - 1
        a, c = imgs[i], imgs[i + 1]
        if s > 0:
            imgs[i], imgs[i + 1] = _reduce(a + c + inv(a)), a
        else:
            imgs[i], imgs[i + 1] = c, _reduce(inv(c) + a + c)
    return imgs


def artin_act(b: BraidWord, w: FreeWord | Sequence[int]) -> FreeWord:
    """Image of ``w`` under the automorphism of the free group defined by ``b``."""
    if not isinstance(w, FreeWord):
        w = FreeWord(w)
    if w.max_generator() > b.strands:
        raise IndexOutOfRange(f"x{w.max_generator()} does not exist on {b.strands} strands")
    imgs = _generator_images(b)
    out: list[Letter] = []
    for g, e in w:
        img = imgs[g - 1]
        out.extend(img if e > 0 else ((h, -f) for h, f in reversed(img)))
    return FreeWord(out)


def longitudes(b: BraidWord) -> list[FreeWord]:
    """0-framed longitudes ``lambda_1 ... lambda_n`` of a pure braid."""
    if not b.is_pure():
        raise NotPure(f"braid permutation {b.permutation()} is not the identity")
    out = []
    for j, img in enumerate(_generator_images(b), start=1):
        half = (len(img) - 1) // 2
        w = FreeWord(img[:half])
        # Artin's theorem: pure braids send x_j to a conjugate of itself
        assert img[half] == (j, 1) and FreeWord(img[half + 1:]) == w.inverse(), img
        out.append(FreeWord.generator(j) ** (-w.exponent_sum(j)) * w)
    return out


# -- Magnus expansion --------------------------------------------------------


def _term_count(n: int, degree: int) -> int:
    return sum(n**k for k in range(degree + 1))


def _guard(n: int, degree: int) -> None:
    total = _term_count(n, degree)
    cap = max_series_terms()
    if total > cap:
        raise SearchSpaceTooLarge(f"series with {n} generators to degree {degree} has {total} terms (cap {cap})")


class TruncatedSeries:
    """Element of ``Z<<X_1..X_n>>`` modulo words of length greater than ``degree``.

    ``by_degree[k]`` is a flat array of length ``n**k`` indexed by
    ``i_1 n^(k-1) + ... + i_k`` with 0-based letters.
    """

    __slots__ = ("n", "degree", "by_degree")

    def __init__(self, n: int, degree: int, by_degree: list[np.ndarray]):
        self.n = n
        self.degree = degree
        self.by_degree = by_degree

    @classmethod
    def one(cls, n: int, degree: int) -> "TruncatedSeries":
        _guard(n, degree)
        arrs = [np.zeros(n**k, dtype=np.int64) for k in range(degree + 1)]
        arrs[0][0] = 1
        return cls(n, degree, arrs)

    def _flat(self, word: Sequence[int]) -> int:
        idx = 0
        for i in word:
            if not 1 <= i <= self.n:
                raise IndexOutOfRange(f"X{i} with {self.n} generators")
            idx = idx * self.n + (i - 1)
        return idx

    def coefficient(self, word: Sequence[int]) -> int:
        """Coefficient of ``X_{w_1} ... X_{w_k}`` (1-based letters)."""
        if len(word) > self.degree:
            raise ValueError(f"word of length {len(word)} exceeds degree cap {self.degree}")
        return int(self.by_degree[len(word)][self._flat(word)])

    def items(self) -> Iterable[tuple[tuple[int, ...], int]]:
        """Nonzero ``(word, coefficient)`` pairs, shortest words first."""
        for k, arr in enumerate(self.by_degree):
            for idx in np.flatnonzero(arr):
                word = np.unravel_index(int(idx), (self.n,) * k) if k else ()
                yield tuple(int(i) + 1 for i in word), int(arr[idx])

    def to_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.items())

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if (self.n, self.degree) != (other.n, other.degree):
            raise ValueError("series shapes differ")
        n, d = self.n, self.degree
        dtype = object if object in (self.by_degree[0].dtype, other.by_degree[0].dtype) else np.int64
        out = []
        for k in range(d + 1):
            acc = np.zeros(n**k, dtype=dtype)
            for a in range(k + 1):
                acc += np.outer(self.by_degree[a], other.by_degree[k - a]).reshape(-1).astype(dtype)
            out.append(acc)
        return TruncatedSeries(n, d, out)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.to_dict() == other.to_dict() and (self.n, self.degree) == (other.n, other.degree)

    def __str__(self):
        out = ""
        for word, c in self.items():
            mono = "".join(f"X{i}" for i in word)
            mag = "" if word and abs(c) == 1 else str(abs(c))
            body = mag + mono
            if not out:
                out = body if c > 0 else "-" + body
            else:
                out += (" + " if c > 0 else " - ") + body
        return out or "0"


def magnus_expand(w: FreeWord | Sequence[int], degree: int, n: int | None = None, use_numba: bool | None = None) -> TruncatedSeries:
    """Magnus expansion ``x_i -> 1 + X_i`` truncated above ``degree``."""
    if degree < 1:
        raise ValueError("degree cap must be at least 1")
    if not isinstance(w, FreeWord):
        w = FreeWord(w)
    n = max(n or 0, w.max_generator(), 1)
    _guard(n, degree)
    gens = [g - 1 for g, _ in w]
    exps = [e for _, e in w]
    return TruncatedSeries(n, degree, _accel.magnus_word(gens, exps, n, degree, use_numba))


# -- Milnor invariants -------------------------------------------------------


def _check_index(b: BraidWord, index: Sequence[int]) -> tuple[int, ...]:
    idx = tuple(int(i) for i in index)
    if len(idx) < 2:
        raise ValueError("a Milnor multi-index has length at least 2")
    for i in idx:
        if not 1 <= i <= b.strands:
            raise IndexOutOfRange(f"component {i} on a {b.strands}-strand braid")
    return idx


def milnor_invariant(b: BraidWord, index: Sequence[int]) -> int:
    """``mu(i_1 ... i_{k-1}; i_k)`` of the closure of the pure braid ``b``."""
    idx = _check_index(b, index)
    lam = longitudes(b)[idx[-1] - 1]
    series = magnus_expand(lam, len(idx) - 1, b.strands)
    value = Fraction(series.coefficient(idx[:-1]))
    assert value.denominator == 1
    return int(value)


def parse_index(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.replace(" ", "").split(",") if x)


def format_index(index: Sequence[int]) -> str:
    return ",".join(str(i) for i in index)


@dataclass(frozen=True)
class MilnorTable:
    """All invariants of one length ``k``; ``length`` is ``None`` when all vanish up to the cap."""

    length: int | None
    cap: int
    mu: dict[tuple[int, ...], int]

    @property
    def all_vanish(self) -> bool:
        return self.length is None

    def nonzero(self) -> dict[tuple[int, ...], int]:
        return {k: v for k, v in self.mu.items() if v}

    def to_json(self) -> dict:
        return {
            "length": self.length,
            "cap": self.cap,
            "mu": {format_index(k): v for k, v in sorted(self.nonzero().items())},
        }


def milnor_tables(b: BraidWord, cap: int) -> dict[int, dict[tuple[int, ...], int]]:
    """``{k: {I: mu_I}}`` for every length ``2 <= k <= cap``."""
    if cap < 2:
        return {}
    n = b.strands
    series = [magnus_expand(lam, cap - 1, n) for lam in longitudes(b)]
    out: dict[int, dict[tuple[int, ...], int]] = {}
    for k in range(2, cap + 1):
        table = {}
        for idx in itertools.product(range(1, n + 1), repeat=k):
            table[idx] = series[idx[-1] - 1].coefficient(idx[:-1])
        out[k] = table
    return out


def first_nonvanishing(b: BraidWord, cap: int = DEFAULT_DEGREE_CAP) -> MilnorTable:
    """Smallest length ``k <= cap`` carrying a nonzero invariant, with its full table."""
    tables = milnor_tables(b, cap)
    for k in range(2, cap + 1):
        if any(tables[k].values()):
            return MilnorTable(k, cap, tables[k])
    return MilnorTable(None, cap, {})


def crossing_linking_numbers(b: BraidWord) -> dict[tuple[int, int], int]:
    """``lk(i, j)`` for ``i < j`` as half the signed crossing count between strands ``i`` and ``j``.

    Strands are labelled by their starting position.
    """
    n = b.strands
    at = list(range(1, n + 1))  # at[p] = strand currently at position p
    twice = {(i, j): 0 for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    for s in b.word:
        p = abs(s) - 1
        u, v = sorted((at[p], at[p + 1]))
        twice[(u, v)] += 1 if s > 0 else -1
        at[p], at[p + 1] = at[p + 1], at[p]
    out = {}
    for key, val in twice.items():
        if val % 2:
            raise NotPure("odd crossing count between two strands")
        out[key] = val // 2
    return out
