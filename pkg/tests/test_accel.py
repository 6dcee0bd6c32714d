import os
import subprocess
import sys

import numpy as np
import pytest

from linkconc import _accel

from conftest import random_seifert


def brute_isotropic(forms, bound):
    n = forms.shape[1]
    out = []
    for v in np.ndindex(*([2 * bound + 1] * n)):
        x = np.array(v) - bound
        nz = np.flatnonzero(x)
        if len(nz) and x[nz[0]] > 0 and all(x @ f @ x == 0 for f in forms):
            out.append(x)
    return np.array(out, dtype=np.int64).reshape(-1, n)


@pytest.mark.parametrize("use_numba", [False, True])
def test_isotropic_matches_brute_force(rng, use_numba):
    for _ in range(5):
        v = random_seifert(rng, rng.randint(1, 2))
        forms = np.array([v.tolist(), v.transpose()], dtype=np.int64)
        got = _accel.isotropic_vectors(forms, 1, use_numba)
        assert np.array_equal(got, brute_isotropic(forms, 1))


def test_compatibility_backends_agree(rng):
    v = random_seifert(rng, 2)
    forms = np.array(v.tolist(), dtype=np.int64)
    vecs = np.array([[rng.randint(-2, 2) for _ in range(4)] for _ in range(30)], dtype=np.int64)
    a = _accel.compatibility(vecs, forms, use_numba=False)
    b = _accel.compatibility(vecs, forms, use_numba=True)
    assert np.array_equal(a, b)
    for i in range(30):
        for j in range(30):
            expect = vecs[i] @ forms @ vecs[j] == 0 and vecs[j] @ forms @ vecs[i] == 0
            assert a[i, j] == expect


def test_magnus_backends_agree(rng):
    for _ in range(10):
        gens = [rng.randrange(3) for _ in range(20)]
        exps = [rng.choice([-1, 1]) for _ in range(20)]
        a = _accel.magnus_word(gens, exps, 3, 4, use_numba=False)
        b = _accel.magnus_word(gens, exps, 3, 4, use_numba=True)
        assert all(np.array_equal(x, y) for x, y in zip(a, b))


def test_overflow_guard_switches_to_python_ints():
    gens, exps = [0] * 200, [1] * 200
    out = _accel.magnus_word(gens, exps, 1, 40)
    assert out[40].dtype == object
    assert int(out[40][0]) == __import__("math").comb(200, 40)


def test_env_flag_forces_numpy():
    env = dict(os.environ, LINKCONC_NO_NUMBA="1")
    code = "from linkconc import _accel, seifert; print(_accel.backend(), seifert.metabolizer_search(seifert.trefoil(), 1, use_numba=True))"
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert proc.stdout.split() == ["numpy", "None"]
