"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

Kernel rows call the two implementations directly on identical inputs.  The
end-to-end rows run a library workload in a subprocess with
``LAMBDA_ORDERS_NUMBA`` set to 1 and 0.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from lambda_orders import kernels
from lambda_orders.corpus import mset_corpus
from lambda_orders.mset import product, regular_mset

WORKLOADS = {
    "oracle over 855 presentations": (
        "from lambda_orders.corpus import presentations\n"
        "from lambda_orders.factorization import brute_force_factor, check_factors\n"
        "for p in presentations():\n"
        "    v = check_factors(p)\n"
        "    brute_force_factor(p, 2 * v.r if v.factors else 36)\n"
    ),
    "certificates, q=2 and 3": (
        "from lambda_orders.corpus import mset_corpus\n"
        "from lambda_orders.orders import maximal_order, maximality_certificate\n"
        "for S in mset_corpus(max_size=8, max_level=8):\n"
        "    M = maximal_order(S)\n"
        "    maximality_certificate(M, 2); maximality_certificate(M, 3)\n"
    ),
}


def kernel_cases():
    big = product(regular_mset(12), regular_mset(12))
    yield "validate 144-point set at level 12", (
        lambda: kernels._validate_action_nb(np.ascontiguousarray(big.action)),
        lambda: kernels._validate_action_np(np.ascontiguousarray(big.action)),
    )
    tables = [np.ascontiguousarray(S.action) for S in mset_corpus()]
    yield "validate 140 corpus tables", (
        lambda: [kernels._validate_action_nb(t) for t in tables],
        lambda: [kernels._validate_action_np(t) for t in tables],
    )
    S = product(regular_mset(30), regular_mset(2))
    res = np.arange(S.level, dtype=np.int64)
    maps = np.ascontiguousarray(S.action)
    yield "closure of a level-30 table", (
        lambda: kernels._monoid_closure_nb(S.level, S.size, res, maps),
        lambda: kernels._monoid_closure_np(S.level, S.size, res, maps),
    )
    rng = np.random.default_rng(0)
    n, q = 8, 2
    mult = (rng.integers(0, 2, (n, n, n)) * q) % (q * q)
    mult = (mult + mult.transpose(1, 0, 2)) % (q * q)
    psi = rng.integers(0, q, (4, n, n))
    start = np.eye(n, dtype=np.int64)[:1]
    basis = np.zeros((n, n), dtype=np.int64)
    piv = np.zeros(n, dtype=np.int64)
    yield "subspace closure, rank 8 over F_2", (
        lambda: kernels._closure_nb(q, mult, psi, start, basis.copy(), piv.copy()),
        lambda: kernels._closure_np(q, mult, psi, start),
    )


def run_workload(code, flag):
    env = dict(os.environ, LAMBDA_ORDERS_NUMBA=flag)
    stmt = f"import time\nt=time.perf_counter()\n{code}print(time.perf_counter()-t)"
    out = subprocess.run([sys.executable, "-c", stmt], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'case':<40}{'numba (ms)':>12}{'numpy (ms)':>12}{'speedup':>10}")
    for name, (nb, npf) in kernel_cases():
        nb()  # compile
        t_nb = min(timeit.repeat(nb, number=1, repeat=args.repeat)) * 1e3
        t_np = min(timeit.repeat(npf, number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<40}{t_nb:>12.3f}{t_np:>12.3f}{t_np / t_nb:>9.1f}x")
    for name, code in WORKLOADS.items():
        run_workload(code, "1")  # warm the numba cache
        t_nb = run_workload(code, "1") * 1e3
        t_np = run_workload(code, "0") * 1e3
        print(f"{name:<40}{t_nb:>12.1f}{t_np:>12.1f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
