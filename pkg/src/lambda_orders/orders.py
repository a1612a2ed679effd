"""Lambda-orders inside the algebra of a Z/r-set.

The maximal Lambda-order is cut out by integrality in ``Z[mu_r]``: an element
``f`` belongs to it exactly when, for every point ``s``, the tuple
``(f(d s))_{d | r}`` read through the CRT isomorphism
``Q[mu_r] = prod_{d | r} Q(zeta_r^d)`` has integer coefficients.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as product_iter
from math import gcd

import numpy as np
from sympy import divisors, isprime, primerange

from . import kernels
from .algebra import LambdaAlgebra, algebra_from_mset
from .cyclotomic import CycloElt, crt_join, euler_phi, restrict_to_subfield
from .errors import RankTooLarge
from .lattice import IntLattice, from_rational_rows, index, preimage_lattice
from .linalg import inverse, matmul
from .mset import MSet, product, regular_mset

DEFAULT_PRIME_BOUND = 13


def prime_bound():
    """Congruence-test bound, overridable by ``LAMBDA_ORDERS_PRIME_BOUND``."""
    raw = os.environ.get("LAMBDA_ORDERS_PRIME_BOUND")
    return int(raw) if raw else DEFAULT_PRIME_BOUND


@dataclass(frozen=True, eq=False)
class LambdaOrder:
    algebra: LambdaAlgebra
    lattice: IntLattice

    def basis(self):
        return self.lattice.vectors()

    def contains(self, x):
        return self.lattice.contains(x)


def lattice_of(K, elements):
    """Lattice spanned by algebra elements (coordinate vectors)."""
    return from_rational_rows(K.dim, [list(x) for x in elements])


# ---------------------------------------------------------------------------
# maximal order
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _join_matrix(r):
    """Columns: ``crt_join`` of the standard basis of ``prod_d Q(zeta_{r/d})``."""
    divs = divisors(r)
    cols = []
    for k, d in enumerate(divs):
        for t in range(euler_phi(r // d)):
            comps = [
                CycloElt(r // e, [int(k == i and t == u) for u in range(euler_phi(r // e))])
                for i, e in enumerate(divs)
            ]
            cols.append(crt_join(comps, r).coeffs)
    return [list(row) for row in zip(*cols)]


def _crt_image(K, x, s):
    """``crt_join((x(d s))_{d | r})`` as a coefficient vector of length r."""
    r = K.r
    comps = []
    for d in divisors(r):
        val = restrict_to_subfield(K.value(x, K.mset.act(d, s)), d)
        if val is None:
            raise AssertionError("value does not lie in the expected subfield")
        comps.extend(val.coeffs)
    J = _join_matrix(r)
    return [sum((row[i] * comps[i] for i in range(r)), Fraction(0)) for row in J]


def crt_image_matrix(K):
    """Stacked rational matrix ``x -> (crt image at s)_s`` of shape (n r) x n."""
    n = K.dim
    cols = []
    for j in range(n):
        e = K.basis_vector(j)
        col = []
        for s in range(n):
            col.extend(_crt_image(K, e, s))
        cols.append(col)
    return [list(row) for row in zip(*cols)] if cols else []


def maximal_order(S, K=None):
    """Maximal Lambda-order of the algebra of ``S`` (full rank lattice)."""
    K = algebra_from_mset(S) if K is None else K
    if K.dim == 0:
        return LambdaOrder(K, IntLattice(0, ()))
    return LambdaOrder(K, preimage_lattice(crt_image_matrix(K)))


def integral_closure(K):
    """Usual maximal order: values at orbit representatives in ``Z[zeta_r]``."""
    n = K.dim
    if n == 0:
        return IntLattice(0, ())
    rows = []
    for i in range(len(K.orbits)):
        vals = [K.rep_value(K.basis_vector(j), i).coeffs for j in range(n)]
        rows.extend([list(col) for col in zip(*vals)])
    return preimage_lattice(rows)


def group_ring_power_basis(r, K=None):
    """``Z[mu_r]`` inside the algebra of ``regular(r)``: the functions
    ``s -> zeta^(i s)``."""
    K = algebra_from_mset(regular_mset(r)) if K is None else K
    vecs = [K.from_rep_values([CycloElt.zeta_power(r, i * o.rep) for o in K.orbits]) for i in range(r)]
    return K, lattice_of(K, vecs), vecs


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def verify_order(order, bound=None):
    """Check unit membership, multiplicative closure, psi-stability for every
    residue and ``psi_p(x) - x^p in p L`` for primes ``p <= bound``.

    Returns a report dict with one boolean per check and the first failing
    element, if any.
    """
    K, L = order.algebra, order.lattice
    bound = prime_bound() if bound is None else bound
    report = {"unit": True, "closure": True, "psi_stable": True, "congruence": True,
              "prime_bound": bound, "failure": None}

    def fail(check, **info):
        report[check] = False
        if report["failure"] is None:
            report["failure"] = {"check": check, **info}

    basis = L.vectors()
    if K.dim and not L.contains(K.one):
        fail("unit")
    for i, x in enumerate(basis):
        for j in range(i, len(basis)):
            if not L.contains(K.mul(x, basis[j])):
                fail("closure", pair=[i, j])
                break
        if not report["closure"]:
            break
    for a in range(K.r):
        bad = next((i for i, x in enumerate(basis) if not L.contains(K.psi(a, x))), None)
        if bad is not None:
            fail("psi_stable", residue=a, basis_index=bad)
            break
    for p in primerange(2, bound + 1):
        for i, x in enumerate(basis):
            diff = K.sub(K.psi(p, x), K.power(x, p))
            if not L.contains([c / p for c in diff]):
                fail("congruence", prime=p, basis_index=i)
                break
        if not report["congruence"]:
            break
    report["ok"] = all(report[k] for k in ("unit", "closure", "psi_stable", "congruence"))
    return report


# ---------------------------------------------------------------------------
# the (Z/p)^2 example
# ---------------------------------------------------------------------------


def character_mset(p):
    """``(Z/p)^2`` at level ``p`` with ``a (x, y) = (a x, a y)``; point
    ``(x, y)`` has index ``x p + y``."""
    return product(regular_mset(p), regular_mset(p))


def group_ring_lattice(p):
    """``(K, Z[V], x)`` for ``V = (Z/p)^2``.

    Points of ``K = Q[V]`` are characters ``chi_v(w) = zeta^(v.w)``; the group
    element ``w`` is the function ``v -> zeta^(v.w)``, and
    ``x = (1/p) sum_w w`` is ``p`` at the trivial character, 0 elsewhere.
    """
    if not isprime(p):
        raise ValueError("p must be prime")
    S = character_mset(p)
    K = algebra_from_mset(S)
    pts = [(s // p, s % p) for s in range(S.size)]
    elems = []
    for w in pts:
        vals = [CycloElt.zeta_power(p, v[0] * w[0] + v[1] * w[1]) for v in pts]
        elems.append(K.from_values(vals))
    x = K.from_values([CycloElt.scalar(p, p if s == 0 else 0) for s in range(S.size)])
    return K, lattice_of(K, elems), x


# ---------------------------------------------------------------------------
# maximality certificate
# ---------------------------------------------------------------------------


def _integer_coords(L, v, what):
    c = L.coordinates(v)
    if c is None or any(x.denominator != 1 for x in c):
        raise ValueError(f"lattice is not closed under {what}")
    return [int(x) for x in c]


def _lines(q, n):
    """Normalized nonzero vectors of F_q^n (first nonzero entry 1), in
    lexicographic order."""
    for v in product_iter(range(q), repeat=n):
        nz = next((x for x in v if x), 0)
        if nz == 1:
            yield v


def _theta(K, q, x):
    """``(psi_q(x) - x^q) / q``."""
    return [c / q for c in K.sub(K.psi(q, x), K.power(x, q))]


def _lambda_closure(K, M, q, mult, psi, start):
    """Smallest W with ``M + (1/q)W`` a Lambda-ring containing the start
    vectors, or None if that ring is not inside ``(1/q)M``.

    Ring and psi closure run in the integer kernel; closure under
    ``theta_q`` is non-linear and checked exactly on the new generators.
    Other primes need no check: away from q the lattice agrees with M.
    """
    basis = M.vectors()
    W = kernels.subspace_closure(q, mult, psi, np.asarray(start, dtype=np.int64))
    while W is not None:
        fresh = []
        for w in W:
            x = _lift(basis, q, w, M.dim)
            qc = [q * v for v in M.coordinates(_theta(K, q, x))]
            if any(v.denominator != 1 for v in qc):
                return None
            fresh.append([int(v) % q for v in qc])
        grown = kernels.subspace_closure(q, mult, psi, np.vstack([W, np.asarray(fresh, dtype=np.int64)]))
        if grown is not None and len(grown) == len(W):
            return W
        W = grown
    return None


def _lift(basis, q, w, dim):
    """The element ``(1/q) sum w_i b_i``."""
    return [sum((Fraction(int(w[i]), q) * basis[i][t] for i in range(len(basis))), Fraction(0))
            for t in range(dim)]


def maximality_certificate(order, q, max_rank=8):
    """``(True, None)`` if no lattice ``M < L <= (1/q) M`` is a Lambda-order,
    else ``(False, L)`` with the first such ``L``.

    A candidate must contain 1, be closed under products and every psi, and
    satisfy ``psi_q(x) = x^q mod qL``.  Searching lines is enough: any
    candidate contains the Lambda-ring generated over ``M`` by one of its
    elements, and that ring also lies between ``M`` and ``(1/q) M``.
    """
    K, M = order.algebra, order.lattice
    n = M.rank
    if not isprime(q):
        raise ValueError("q must be prime")
    if n > max_rank:
        raise RankTooLarge(f"rank {n} exceeds {max_rank}")
    if n == 0:
        return True, None
    basis = M.vectors()
    q2 = q * q
    mult = np.zeros((n, n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            c = _integer_coords(M, K.mul(basis[a], basis[b]), "multiplication")
            mult[a, b, :] = mult[b, a, :] = [x % q2 for x in c]
    psi = np.zeros((K.r, n, n), dtype=np.int64)
    for a in range(K.r):
        for j in range(n):
            psi[a, :, j] = [x % q for x in _integer_coords(M, K.psi(a, basis[j]), f"psi_{a}")]
    for line in _lines(q, n):
        W = _lambda_closure(K, M, q, mult, psi, [line])
        if W is not None:
            extra = [_lift(basis, q, w, M.dim) for w in W]
            return False, from_rational_rows(M.dim, basis + extra)
    return True, None


# ---------------------------------------------------------------------------
# intersection with a bigger algebra
# ---------------------------------------------------------------------------


def inclusion_matrix(f, K_S, K_T):
    """Matrix (columns = images of basis vectors) of ``K_S -> K_T``,
    ``g -> g o f`` for a surjection ``f: T -> S``."""
    cols = []
    for j in range(K_S.dim):
        g = K_S.basis_vector(j)
        vals = [K_S.value(g, f(t)) for t in range(K_T.dim)]
        cols.append(K_T.from_values(vals))
    return [list(row) for row in zip(*cols)]


def intersection_check(f, return_lattices=False):
    """Whether the maximal order of ``S`` equals ``K_S`` intersected with
    the maximal order of ``T``, for a surjection ``f: T -> S``."""
    S, T = f.target, f.source
    A = maximal_order(S)
    B = maximal_order(T)
    K_S, K_T = A.algebra, B.algebra
    if K_S.dim == 0:
        inter = IntLattice(0, ())
    else:
        incl = inclusion_matrix(f, K_S, K_T)
        Binv = inverse(B.lattice.vectors())  # y = c B  =>  c = y Binv
        coords = matmul([list(row) for row in zip(*Binv)], incl)
        inter = preimage_lattice(coords)
    ok = inter == A.lattice
    if return_lattices:
        return ok, A.lattice, inter
    return ok
