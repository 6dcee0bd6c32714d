#!/usr/bin/env python3
"""Time the numba and pure-numpy paths of the integer kernels.

Usage:
    python benchmarks/bench_kernels.py [--repeat N] [--bound B] [--degree D]

The first numba call compiles (or loads the cache); it is timed separately
as warmup and excluded from the reported best time.  Every case also checks
that both paths return identical arrays.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

import numpy as np

from linkconc import _accel
from linkconc import seifert as S


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def doubled_forms(genus: int, seed: int) -> np.ndarray:
    rng = random.Random(seed)
    v = S.trefoil()
    for _ in range(genus - 1):
        v = S.block_sum(v, S.figure_eight() if rng.random() < 0.5 else S.trefoil())
    return np.array(S.block_sum(v, S.negate(v)).tolist(), dtype=np.int64)


def cases(bound: int, degree: int):
    forms = doubled_forms(1, 0)
    yield "isotropic_vectors 4x4", lambda nb: _accel.isotropic_vectors(forms, bound + 1, nb)
    forms6 = np.array(S.block_sum(S.trefoil(), S.block_sum(S.figure_eight(), S.trefoil())).tolist(), dtype=np.int64)
    yield "isotropic_vectors 6x6", lambda nb: _accel.isotropic_vectors(forms6, bound, nb)
    vecs = _accel.isotropic_vectors(doubled_forms(2, 1), bound, False)
    forms8 = doubled_forms(2, 1)
    yield f"compatibility {len(vecs)} vectors", lambda nb: _accel.compatibility(vecs, forms8, nb)
    rng = np.random.default_rng(7)
    gens = rng.integers(0, 4, size=400)
    exps = rng.choice([-1, 1], size=400)
    yield f"magnus_word n=4 len=400 degree={degree}", lambda nb: _accel.magnus_word(gens, exps, 4, degree, nb)


def same(a, b) -> bool:
    if isinstance(a, list):
        return len(a) == len(b) and all(np.array_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--bound", type=int, default=2)
    ap.add_argument("--degree", type=int, default=5)
    args = ap.parse_args(argv)

    if not _accel.numba_enabled():
        print("numba unavailable or disabled (LINKCONC_NO_NUMBA); timing numpy only")
    print(f"{'kernel':40s} {'numpy s':>10s} {'numba s':>10s} {'warmup s':>10s} {'speedup':>8s}")
    ok = True
    for name, fn in cases(args.bound, args.degree):
        t_np = best_of(lambda: fn(False), args.repeat)
        if _accel.numba_enabled():
            start = time.perf_counter()
            fn(True)
            warm = time.perf_counter() - start
            t_nb = best_of(lambda: fn(True), args.repeat)
            match = same(fn(True), fn(False))
            ok &= match
            flag = "" if match else "  MISMATCH"
            print(f"{name:40s} {t_np:10.4f} {t_nb:10.4f} {warm:10.4f} {t_np / t_nb:7.1f}x{flag}")
        else:
            print(f"{name:40s} {t_np:10.4f} {'-':>10s} {'-':>10s} {'-':>8s}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
