"""Hot integer kernels with a numba path and a pure-numpy fallback.

Set ``LINKCONC_NO_NUMBA=1`` to force the numpy implementations (numba is
also skipped automatically when it cannot be imported).  Both paths return
identical arrays; ``benchmarks/bench_kernels.py`` compares their speed.

Kernels:

* ``isotropic_vectors``: nonzero vectors of the box ``[-b, b]^n`` (first
  nonzero coordinate positive) on which every form of a stack vanishes.
* ``compatibility``: pairwise "all forms vanish in both orders" table.
* ``magnus_word``: truncated Magnus expansion of a free word, flattened by
  degree, in int64 when overflow is impossible and Python ints otherwise.
"""

from __future__ import annotations

import math
import os

import numpy as np

_DISABLED = os.environ.get("LINKCONC_NO_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit
except ImportError:  # pragma: no cover - exercised with LINKCONC_NO_NUMBA=1
    njit = None

INT64_SAFE = 2**62


def numba_enabled() -> bool:
    return njit is not None


def backend() -> str:
    return "numba" if numba_enabled() else "numpy"


def _resolve(use_numba: bool | None) -> bool:
    """``None`` means the default backend; a numba request without numba falls back."""
    return numba_enabled() if use_numba is None else bool(use_numba) and numba_enabled()


# -- isotropic vectors -----------------------------------------------------


def _box_size(n: int, bound: int) -> int:
    return (2 * bound + 1) ** n


def _isotropic_numpy(forms: np.ndarray, bound: int) -> np.ndarray:
    n = forms.shape[1]
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    axis = np.arange(-bound, bound + 1, dtype=np.int64)
    grid = np.stack(np.meshgrid(*([axis] * n), indexing="ij"), axis=-1).reshape(-1, n)
    nz = grid != 0
    has = nz.any(axis=1)
    first = np.argmax(nz, axis=1)
    lead = grid[np.arange(len(grid)), first]
    keep = has & (lead > 0)
    grid = grid[keep]
    ok = np.ones(len(grid), dtype=bool)
    for f in forms:
        ok &= np.einsum("ki,ij,kj->k", grid, f, grid) == 0
    return np.ascontiguousarray(grid[ok])


def _compat_numpy(vecs: np.ndarray, forms: np.ndarray) -> np.ndarray:
    k = len(vecs)
    ok = np.ones((k, k), dtype=bool)
    for f in forms:
        m = vecs @ f @ vecs.T
        ok &= (m == 0) & (m.T == 0)
    return ok


if njit is not None:

    @njit(cache=True)
    def _isotropic_count_fill(forms, bound, out, fill):
        nf, n, _ = forms.shape
        v = np.empty(n, dtype=np.int64)
        for i in range(n):
            v[i] = -bound
        side = 2 * bound + 1
        total = 1
        for i in range(n):
            total *= side
        count = 0
        for _step in range(total):
            lead = 0
            for i in range(n):
                if v[i] != 0:
                    lead = v[i]
                    break
            if lead > 0:
                good = True
                for f in range(nf):
                    q = 0
                    for i in range(n):
                        if v[i] == 0:
                            continue
                        row = 0
                        for j in range(n):
                            row += forms[f, i, j] * v[j]
                        q += v[i] * row
                    if q != 0:
                        good = False
                        break
                if good:
                    if fill:
                        for i in range(n):
                            out[count, i] = v[i]
                    count += 1
            # odometer, last coordinate fastest (matches meshgrid "ij" order)
            j = n - 1
            while j >= 0:
                v[j] += 1
                if v[j] <= bound:
                    break
                v[j] = -bound
                j -= 1
        return count

    @njit(cache=True)
    def _compat_numba(vecs, forms):
        k, n = vecs.shape
        nf = forms.shape[0]
        ok = np.ones((k, k), dtype=np.bool_)
        for f in range(nf):
            fv = np.zeros((k, n), dtype=np.int64)
            for a in range(k):
                for i in range(n):
                    s = 0
                    for j in range(n):
                        s += forms[f, i, j] * vecs[a, j]
                    fv[a, i] = s
            for a in range(k):
                for b in range(k):
                    if not ok[a, b]:
                        continue
                    s1 = 0
                    s2 = 0
                    for i in range(n):
                        s1 += vecs[a, i] * fv[b, i]
                        s2 += vecs[b, i] * fv[a, i]
                    if s1 != 0 or s2 != 0:
                        ok[a, b] = False
        return ok


def isotropic_vectors(forms, bound: int, use_numba: bool | None = None) -> np.ndarray:
    """Box vectors ``v != 0`` (first nonzero entry positive) with ``v^T F v = 0`` for all ``F``."""
    forms = np.ascontiguousarray(np.asarray(forms, dtype=np.int64))
    if forms.ndim == 2:
        forms = forms[None]
    n = forms.shape[1]
    use_numba = _resolve(use_numba)
    if not use_numba or n == 0:
        return _isotropic_numpy(forms, bound)
    dummy = np.zeros((1, n), dtype=np.int64)
    count = _isotropic_count_fill(forms, bound, dummy, False)
    out = np.zeros((count, n), dtype=np.int64)
    _isotropic_count_fill(forms, bound, out, True)
    return out


def compatibility(vecs, forms, use_numba: bool | None = None) -> np.ndarray:
    vecs = np.ascontiguousarray(np.asarray(vecs, dtype=np.int64))
    forms = np.ascontiguousarray(np.asarray(forms, dtype=np.int64))
    if forms.ndim == 2:
        forms = forms[None]
    use_numba = _resolve(use_numba)
    if not use_numba or len(vecs) == 0:
        return _compat_numpy(vecs, forms)
    return _compat_numba(vecs, forms)


# -- Magnus expansion ------------------------------------------------------


def degree_offsets(n: int, degree: int) -> np.ndarray:
    sizes = [n**k for k in range(degree + 1)]
    return np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)


def magnus_coefficient_bound(length: int, degree: int) -> int:
    """Upper bound on |coefficient| in the expansion of any prefix of a word.

    Each letter contributes a series whose coefficients are 0 or +-1, so a
    degree-``k`` coefficient of a product of ``L`` such factors is bounded by
    the number of ways to split ``k`` among ``L`` factors.
    """
    return max(math.comb(length + k - 1, k) if length else 1 for k in range(degree + 1))


def _magnus_numpy(gens: np.ndarray, exps: np.ndarray, n: int, degree: int, dtype) -> list[np.ndarray]:
    coef = [np.zeros((n,) * k, dtype=dtype).reshape(-1) for k in range(degree + 1)]
    coef[0][0] = 1
    for g, e in zip(gens.tolist(), exps.tolist()):
        if e > 0:
            # right multiplication by 1 + X_g; descending so lower degrees are still old
            for k in range(degree, 0, -1):
                coef[k].reshape(-1, n)[:, g] += coef[k - 1]
        else:
            # b * (1 + X_g) = a  =>  b_k = a_k - b_{k-1} X_g, ascending
            for k in range(1, degree + 1):
                coef[k].reshape(-1, n)[:, g] -= coef[k - 1]
    return coef


if njit is not None:

    @njit(cache=True)
    def _magnus_numba(gens, exps, n, degree, offsets):
        out = np.zeros(offsets[-1], dtype=np.int64)
        out[0] = 1
        for w in range(gens.shape[0]):
            g = gens[w]
            if exps[w] > 0:
                for k in range(degree, 0, -1):
                    lo, base = offsets[k - 1], offsets[k]
                    for idx in range(offsets[k] - offsets[k - 1]):
                        out[base + idx * n + g] += out[lo + idx]
            else:
                for k in range(1, degree + 1):
                    lo, base = offsets[k - 1], offsets[k]
                    for idx in range(offsets[k] - offsets[k - 1]):
                        out[base + idx * n + g] -= out[lo + idx]
        return out


def magnus_word(gens, exps, n: int, degree: int, use_numba: bool | None = None) -> list[np.ndarray]:
    """Per-degree flattened coefficient arrays of the Magnus expansion.

    ``gens`` are 0-based generator indices, ``exps`` are ``+1``/``-1``.  The
    degree-``k`` array has length ``n**k`` and index ``i1*n**(k-1) + ... + ik``
    holds the coefficient of ``X_{i1} ... X_{ik}``.
    """
    gens = np.asarray(gens, dtype=np.int64)
    exps = np.asarray(exps, dtype=np.int64)
    safe = magnus_coefficient_bound(len(gens), degree) < INT64_SAFE
    use_numba = _resolve(use_numba)
    if not safe:
        return _magnus_numpy(gens, exps, n, degree, object)
    if not use_numba:
        return _magnus_numpy(gens, exps, n, degree, np.int64)
    offsets = degree_offsets(n, degree)
    flat = _magnus_numba(gens, exps, n, degree, offsets)
    return [flat[offsets[k]:offsets[k + 1]] for k in range(degree + 1)]
