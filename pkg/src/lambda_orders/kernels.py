"""Integer-table kernels.

Each kernel exists twice: a loop version compiled with numba and a numpy
version.  ``_accel.USE_NUMBA`` picks which one the public wrappers call; the
benchmark in ``benchmarks/`` times them against each other.
"""
import numpy as np

from . import _accel
from ._accel import njit

# ---------------------------------------------------------------------------
# monoid action validation
# ---------------------------------------------------------------------------
# status codes: 0 valid, 1 identity violated at s, 2 associativity at (a, b, s)


@njit
def _validate_action_nb(table):
    r, n = table.shape
    one = 1 % r
    for s in range(n):
        if table[one, s] != s:
            return 1, 0, 0, s
    for a in range(r):
        for b in range(r):
            ab = (a * b) % r
            for s in range(n):
                if table[a, table[b, s]] != table[ab, s]:
                    return 2, a, b, s
    return 0, 0, 0, 0


def _validate_action_np(table):
    r, n = table.shape
    if n == 0:
        return 0, 0, 0, 0
    bad = np.flatnonzero(table[1 % r] != np.arange(n))
    if bad.size:
        return 1, 0, 0, int(bad[0])
    idx = np.arange(r)
    lhs = table[:, table]  # lhs[a, b, s] = table[a, table[b, s]]
    rhs = table[np.outer(idx, idx) % r]
    hits = np.argwhere(lhs != rhs)
    if len(hits):
        a, b, s = hits[0]
        return 2, int(a), int(b), int(s)
    return 0, 0, 0, 0


def validate_action(table):
    table = np.ascontiguousarray(table, dtype=np.int64)
    if _accel.USE_NUMBA:
        code, a, b, s = _validate_action_nb(table)
        return int(code), int(a), int(b), int(s)
    return _validate_action_np(table)


# ---------------------------------------------------------------------------
# closure of generator data in Map(T, T) indexed by Z/r
# ---------------------------------------------------------------------------
# status codes: 0 consistent and every residue reached, 1 conflict, 2 gaps


@njit
def _monoid_closure_nb(r, n, gen_res, gen_maps):
    table = np.zeros((r, n), dtype=np.int64)
    assigned = np.zeros(r, dtype=np.bool_)
    queue = np.empty(r, dtype=np.int64)
    head = 0
    tail = 0
    for g in range(gen_res.shape[0]):
        a = gen_res[g]
        if assigned[a]:
            for s in range(n):
                if table[a, s] != gen_maps[g, s]:
                    return 1, table
        else:
            for s in range(n):
                table[a, s] = gen_maps[g, s]
            assigned[a] = True
            queue[tail] = a
            tail += 1
    new = np.empty(n, dtype=np.int64)
    while head < tail:
        a = queue[head]
        head += 1
        for g in range(gen_res.shape[0]):
            c = (a * gen_res[g]) % r
            for s in range(n):
                new[s] = table[a, gen_maps[g, s]]
            if assigned[c]:
                for s in range(n):
                    if table[c, s] != new[s]:
                        return 1, table
            else:
                for s in range(n):
                    table[c, s] = new[s]
                assigned[c] = True
                queue[tail] = c
                tail += 1
    if tail < r:
        return 2, table
    return 0, table


def _monoid_closure_np(r, n, gen_res, gen_maps):
    table = np.zeros((r, n), dtype=np.int64)
    assigned = np.zeros(r, dtype=bool)
    queue = []
    for a, m in zip(gen_res, gen_maps):
        if assigned[a]:
            if not np.array_equal(table[a], m):
                return 1, table
        else:
            table[a] = m
            assigned[a] = True
            queue.append(int(a))
    head = 0
    while head < len(queue):
        a = queue[head]
        head += 1
        targets = (a * gen_res) % r
        images = table[a][gen_maps]  # images[g] = table[a] o gen_maps[g]
        for c, new in zip(targets, images):
            if assigned[c]:
                if not np.array_equal(table[c], new):
                    return 1, table
            else:
                table[c] = new
                assigned[c] = True
                queue.append(int(c))
    if len(queue) < r:
        return 2, table
    return 0, table


def monoid_closure(r, n, gen_res, gen_maps):
    """Close generator assignments ``residue -> map`` under multiplication.

    Returns ``(status, table)`` with status 0 when the assignments extend to a
    full table on ``Z/r`` without conflict, 1 on conflict, 2 when some residue
    is never reached.
    """
    gen_res = np.ascontiguousarray(gen_res, dtype=np.int64) % r
    gen_maps = np.ascontiguousarray(gen_maps, dtype=np.int64).reshape(len(gen_res), n)
    if _accel.USE_NUMBA:
        status, table = _monoid_closure_nb(r, n, gen_res, gen_maps)
        return int(status), table
    return _monoid_closure_np(r, n, gen_res, gen_maps)


# ---------------------------------------------------------------------------
# Lambda-stable overorders between M and (1/q)M
# ---------------------------------------------------------------------------
# Elements of (1/q)M / M are vectors over F_q in the basis of M.  ``mult`` holds
# the structure constants of M reduced mod q^2, ``psi`` the integer matrices of
# every psi(a) in the basis of M (column convention: image = psi[a] @ v).


@njit
def _reduce_insert_nb(q, basis, pivots, k, v):
    # reduce v against the k stored rows; return pivot of remainder or -1
    n = v.shape[0]
    for i in range(k):
        p = pivots[i]
        f = v[p] % q
        if f != 0:
            for j in range(n):
                v[j] = (v[j] - f * basis[i, j]) % q
    for j in range(n):
        v[j] = v[j] % q
    for j in range(n):
        if v[j] != 0:
            # normalize pivot to 1
            inv = 1
            for t in range(1, q):
                if (v[j] * t) % q == 1:
                    inv = t
                    break
            for t in range(n):
                v[t] = (v[t] * inv) % q
            return j
    return -1


@njit
def _closure_nb(q, mult, psi, start_rows, basis, pivots):
    n = mult.shape[0]
    q2 = q * q
    k = 0
    w = np.empty(n, dtype=np.int64)
    for r in range(start_rows.shape[0]):
        for t in range(n):
            w[t] = start_rows[r, t]
        p = _reduce_insert_nb(q, basis, pivots, k, w)
        if p >= 0:
            basis[k, :] = w
            pivots[k] = p
            k += 1
    done = 0
    while done < k:
        x = basis[done].copy()
        done += 1
        # products with stored rows, including x itself
        for i in range(k):
            y = basis[i]
            for t in range(n):
                acc = 0
                for a in range(n):
                    if x[a] == 0:
                        continue
                    for b in range(n):
                        if y[b] != 0:
                            acc += x[a] * y[b] * mult[a, b, t]
                acc = acc % q2
                if acc % q != 0:
                    return -1
                w[t] = acc // q
            p = _reduce_insert_nb(q, basis, pivots, k, w)
            if p >= 0:
                basis[k, :] = w
                pivots[k] = p
                k += 1
        # multiples by the basis of M
        for j in range(n):
            for t in range(n):
                acc = 0
                for a in range(n):
                    acc += x[a] * mult[j, a, t]
                w[t] = acc % q
            p = _reduce_insert_nb(q, basis, pivots, k, w)
            if p >= 0:
                basis[k, :] = w
                pivots[k] = p
                k += 1
        for m in range(psi.shape[0]):
            for t in range(n):
                acc = 0
                for a in range(n):
                    acc += psi[m, t, a] * x[a]
                w[t] = acc % q
            p = _reduce_insert_nb(q, basis, pivots, k, w)
            if p >= 0:
                basis[k, :] = w
                pivots[k] = p
                k += 1
    return k


def _reduce_insert_np(q, rows, pivots, v):
    v = v % q
    for row, p in zip(rows, pivots):
        if v[p]:
            v = (v - v[p] * row) % q
    nz = np.flatnonzero(v)
    if not nz.size:
        return None, -1
    j = int(nz[0])
    v = (v * pow(int(v[j]), -1, q)) % q
    return v, j


def _closure_np(q, mult, psi, start_rows):
    q2 = q * q
    rows, pivots = [], []
    for v in start_rows:
        v, p = _reduce_insert_np(q, rows, pivots, v)
        if p >= 0:
            rows.append(v)
            pivots.append(p)
    done = 0
    while done < len(rows):
        x = rows[done]
        done += 1
        candidates = []
        for y in list(rows):
            prod = np.einsum("a,b,abt->t", x, y, mult) % q2
            if np.any(prod % q):
                return None
            candidates.append(prod // q)
        candidates.extend(np.einsum("a,jat->jt", x, mult) % q)
        candidates.extend(np.einsum("mta,a->mt", psi, x) % q)
        for w in candidates:
            w, p = _reduce_insert_np(q, rows, pivots, np.asarray(w))
            if p >= 0:
                rows.append(w)
                pivots.append(p)
    return np.array(rows, dtype=np.int64).reshape(len(rows), mult.shape[0])


def subspace_closure(q, mult, psi, start_rows):
    """Smallest subspace W of F_q^n containing ``start_rows`` such that
    M + (1/q)W is a psi-stable ring, or None if that ring leaves (1/q)M.

    Vectors are coordinates in the basis of M.  ``mult[a, b, t]`` is the
    coefficient of basis t in the product of basis a and b, reduced mod q**2;
    ``psi[m]`` acts on coordinate columns, reduced mod q.  Returned rows are
    in echelon form with unit pivots.
    """
    mult = np.ascontiguousarray(mult, dtype=np.int64) % (q * q)
    psi = np.ascontiguousarray(psi, dtype=np.int64) % q
    start_rows = np.ascontiguousarray(start_rows, dtype=np.int64).reshape(-1, mult.shape[0]) % q
    n = mult.shape[0]
    if _accel.USE_NUMBA:
        basis = np.zeros((n, n), dtype=np.int64)
        pivots = np.zeros(n, dtype=np.int64)
        k = _closure_nb(q, mult, psi, start_rows, basis, pivots)
        return None if k < 0 else basis[:k].copy()
    return _closure_np(q, mult, psi, start_rows)
