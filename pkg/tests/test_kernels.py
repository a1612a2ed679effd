import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lambda_orders import _accel, kernels
from lambda_orders.corpus import mset_corpus
from lambda_orders.mset import regular_mset

from .strategies import msets

pytestmark = pytest.mark.skipif(_accel.numba is None, reason="numba not installed")


def random_table(rnd, r, n):
    return np.array([[rnd.randrange(n) for _ in range(n)] for _ in range(r)], dtype=np.int64)


@given(st.randoms(use_true_random=False), st.integers(1, 6), st.integers(1, 4))
def test_validate_backends_agree_on_random_tables(rnd, r, n):
    t = random_table(rnd, r, n)
    t[1 % r] = np.arange(n)
    a = kernels._validate_action_nb(t)
    b = kernels._validate_action_np(t)
    assert (a[0] == 0) == (b[0] == 0)
    assert tuple(int(x) for x in a) == b


@given(msets())
def test_validate_accepts_msets(S):
    t = np.ascontiguousarray(S.action)
    assert tuple(kernels._validate_action_nb(t)) == (0, 0, 0, 0)
    assert kernels._validate_action_np(t) == (0, 0, 0, 0)


def test_identity_failure_code():
    t = np.array([[0, 0], [1, 0]], dtype=np.int64)
    assert kernels._validate_action_np(t)[0] == 1
    assert kernels._validate_action_nb(t)[0] == 1


@given(msets(max_size=6))
def test_closure_backends_agree(S):
    r, n = S.level, S.size
    res = np.arange(r, dtype=np.int64)
    maps = np.ascontiguousarray(S.action)
    s1, t1 = kernels._monoid_closure_nb(r, n, res, maps)
    s2, t2 = kernels._monoid_closure_np(r, n, res, maps)
    assert s1 == s2 == 0
    assert np.array_equal(t1, t2) and np.array_equal(t1, S.action)


def test_closure_conflict_and_gap():
    r, n = 4, 2
    res = np.array([1, 2], dtype=np.int64)
    maps = np.array([[0, 1], [1, 0]], dtype=np.int64)
    # 2 * 2 = 0 and 2 * 2 * 2 = 0 give different maps
    assert kernels._monoid_closure_np(r, n, res, maps)[0] == 1
    assert kernels._monoid_closure_nb(r, n, res, maps)[0] == 1
    res = np.array([1], dtype=np.int64)
    maps = np.array([[0, 1]], dtype=np.int64)
    assert kernels._monoid_closure_np(r, n, res, maps)[0] == 2
    assert kernels._monoid_closure_nb(r, n, res, maps)[0] == 2


def rref_mod(rows, q, n):
    rows = [list(map(int, r)) for r in rows]
    out, col = [], 0
    for col in range(n):
        piv = next((r for r in rows if r[col] % q), None)
        if piv is None:
            continue
        rows.remove(piv)
        inv = pow(piv[col], -1, q)
        piv = [(x * inv) % q for x in piv]
        rows = [[(x - r[col] * y) % q for x, y in zip(r, piv)] for r in rows]
        out = [[(x - r[col] * y) % q for x, y in zip(r, piv)] for r in out]
        out.append(piv)
    return sorted(map(tuple, out))


def closure_inputs(q, n, rnd):
    mult = np.array([[[rnd.randrange(q * q) for _ in range(n)] for _ in range(n)] for _ in range(n)])
    mult = (mult + mult.transpose(1, 0, 2)) % (q * q)
    psi = np.array([[[rnd.randrange(q) for _ in range(n)] for _ in range(n)] for _ in range(2)])
    start = np.array([[rnd.randrange(q) for _ in range(n)]])
    return mult, psi, start


@given(st.randoms(use_true_random=False), st.sampled_from([2, 3, 5]), st.integers(1, 5))
def test_subspace_closure_backends_agree(rnd, q, n):
    mult, psi, start = closure_inputs(q, n, rnd)
    # make products divisible by q so the closure has a chance to succeed
    mult = (mult // q) * q if rnd.random() < 0.7 else mult
    saved = _accel.USE_NUMBA
    try:
        _accel.USE_NUMBA = True
        a = kernels.subspace_closure(q, mult, psi, start)
        _accel.USE_NUMBA = False
        b = kernels.subspace_closure(q, mult, psi, start)
    finally:
        _accel.USE_NUMBA = saved
    assert (a is None) == (b is None)
    if a is not None:
        assert rref_mod(a, q, n) == rref_mod(b, q, n)


def test_env_flag_selects_numpy():
    env = dict(os.environ, LAMBDA_ORDERS_NUMBA="0")
    out = subprocess.run(
        [sys.executable, "-c", "from lambda_orders import _accel; print(_accel.backend())"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"


def test_library_results_match_across_backends():
    from lambda_orders.factorization import brute_force_factor, presentation_from_mset
    from lambda_orders.orders import maximal_order, maximality_certificate

    saved = _accel.USE_NUMBA
    results = []
    try:
        for flag in (True, False):
            _accel.USE_NUMBA = flag
            pres = presentation_from_mset(regular_mset(6))
            r, S = brute_force_factor(pres, 12)
            cert = maximality_certificate(maximal_order(regular_mset(4)), 2)
            results.append((r, S, cert))
    finally:
        _accel.USE_NUMBA = saved
    assert results[0] == results[1]
