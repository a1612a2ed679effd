"""The finite etale Q-algebra with Adams operations attached to a Z/r-set.

Elements are equivariant functions ``f: S -> Q(zeta_r)``, i.e.
``f(u s) = sigma_u f(s)`` for units ``u``.  Such a function is fixed by its
values at one representative per unit orbit, each lying in the subfield fixed
by the stabilizer.  Coordinates are taken in :func:`fixed_field_basis` of those
subfields, orbit by orbit, so ``dim = |S|``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import gcd

from sympy import divisors

from .cyclotomic import CycloElt, euler_phi, fixed_field_basis, galois_act
from .errors import NotEtale
from .linalg import inverse, rref
from .mset import MSet, make_mset, zero_image


def stabilizer_conductor(r, H):
    """Smallest ``d | r`` such that every unit congruent to 1 mod ``d`` is in ``H``."""
    H = set(H)
    for d in divisors(r):
        if all(u in H for u in range(r) if gcd(u, r) == 1 and u % d == 1 % d):
            return d
    raise AssertionError("unreachable")


class _Orbit:
    def __init__(self, S, points):
        r = S.level
        self.points = points
        self.rep = points[0]
        self.stabilizer = S.stabilizer(self.rep)
        self.basis = fixed_field_basis(r, self.stabilizer)
        # unit carrying the representative to each point
        self.carrier = {}
        for u in range(r):
            if gcd(u, r) == 1:
                self.carrier.setdefault(S.act(u, self.rep), u)
        rows = [list(b.coeffs) for b in self.basis]
        _, piv = rref(rows)
        self.cols = piv
        self.solve = inverse([[row[c] for c in piv] for row in rows])

    def coords(self, value):
        """Coordinates of ``value`` in the fixed-field basis."""
        v = [value.coeffs[c] for c in self.cols]
        k = len(self.basis)
        x = [sum((v[i] * self.solve[i][j] for i in range(k)), Fraction(0)) for j in range(k)]
        back = [sum((x[j] * self.basis[j].coeffs[t] for j in range(k)), Fraction(0))
                for t in range(len(value.coeffs))]
        if tuple(back) != value.coeffs:
            raise ValueError("value is not fixed by the stabilizer")
        return x


class LambdaAlgebra:
    """Finite etale Q-algebra with ``psi(a)`` for every residue ``a`` mod r."""

    def __init__(self, S: MSet):
        self.mset = S
        self.r = S.level
        self.dim = S.size
        self.orbits = [_Orbit(S, o) for o in S.unit_orbits()]
        self.offsets = []
        off = 0
        self.orbit_of = {}
        for i, o in enumerate(self.orbits):
            self.offsets.append(off)
            off += len(o.basis)
            for s in o.points:
                self.orbit_of[s] = i
        assert off == self.dim

    # -- evaluation --------------------------------------------------------

    def rep_value(self, x, i):
        o, off = self.orbits[i], self.offsets[i]
        acc = CycloElt(self.r, (0,) * euler_phi(self.r))
        for j, b in enumerate(o.basis):
            c = x[off + j]
            if c:
                acc = acc + b * c
        return acc

    def value(self, x, s):
        """``f(s)`` for the element with coordinates ``x``."""
        i = self.orbit_of[s]
        return galois_act(self.orbits[i].carrier[s], self.rep_value(x, i))

    def values(self, x):
        return [self.value(x, s) for s in range(self.dim)]

    def from_rep_values(self, rep_values):
        """Coordinates of the element taking ``rep_values[i]`` at the
        representative of orbit ``i``."""
        x = []
        for o, v in zip(self.orbits, rep_values):
            x.extend(o.coords(v))
        return x

    def from_values(self, values):
        """Coordinates of the function with the given value at every point;
        raises ValueError when the function is not equivariant."""
        x = self.from_rep_values([values[o.rep] for o in self.orbits])
        for s in range(self.dim):
            if self.value(x, s) != values[s]:
                raise ValueError(f"not equivariant at point {s}")
        return x

    # -- ring structure ------------------------------------------------------

    def basis_vector(self, j):
        return [Fraction(int(i == j)) for i in range(self.dim)]

    @cached_property
    def one(self):
        return self.from_rep_values([CycloElt.scalar(self.r, 1) for _ in self.orbits])

    def zero(self):
        return [Fraction(0)] * self.dim

    def mul(self, x, y):
        return self.from_rep_values(
            [self.rep_value(x, i) * self.rep_value(y, i) for i in range(len(self.orbits))]
        )

    def add(self, x, y):
        return [a + b for a, b in zip(x, y)]

    def sub(self, x, y):
        return [a - b for a, b in zip(x, y)]

    def scale(self, c, x):
        return [c * a for a in x]

    def power(self, x, k):
        result, base = self.one, x
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def psi(self, a, x):
        """``psi_a(f) = f o (a .)``."""
        S = self.mset
        return self.from_rep_values([self.value(x, S.act(a, o.rep)) for o in self.orbits])

    def psi_matrix(self, a):
        """Matrix acting on coordinate columns."""
        cols = [self.psi(a, self.basis_vector(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    @cached_property
    def structure_constants(self):
        """``c[i][j][k]``: coefficient of basis k in ``e_i e_j``."""
        n = self.dim
        e = [self.basis_vector(j) for j in range(n)]
        zero = [Fraction(0)] * n
        out = [[zero for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                if self.orbit_of_basis(i) != self.orbit_of_basis(j):
                    continue
                p = self.mul(e[i], e[j])
                out[i][j] = out[j][i] = p
        return out

    def orbit_of_basis(self, j):
        for i in range(len(self.orbits) - 1, -1, -1):
            if self.offsets[i] <= j:
                return i
        raise IndexError(j)

    def orbit_idempotent(self, i):
        vals = [
            CycloElt.scalar(self.r, int(k == i)) for k in range(len(self.orbits))
        ]
        return self.from_rep_values(vals)

    def to_json(self):
        n = self.dim
        return {
            "dimension": n,
            "level": self.r,
            "mset": self.mset.to_json(),
            "structure_constants": [
                [[str(c) for c in self.structure_constants[i][j]] for j in range(n)]
                for i in range(n)
            ],
            "psi": {
                str(a): [[str(c) for c in row] for row in self.psi_matrix(a)]
                for a in range(self.r)
            },
        }


def algebra_from_mset(S):
    return LambdaAlgebra(S)


def component_fields(S):
    """``(orbit, conductor, degree)`` per unit orbit; the component is the
    subfield of ``Q(zeta_conductor)`` of the given degree."""
    out = []
    for orbit in S.unit_orbits():
        H = S.stabilizer(orbit[0])
        out.append((orbit, stabilizer_conductor(S.level, H), len(orbit)))
    return out


def points(K):
    """Recover the Z/r-set of ring maps ``K -> Q(zeta_r)``.

    Points are the evaluation maps at elements of the underlying set.  The
    action of residue ``a`` is read off by matching ``ev_s o psi_a`` against
    the evaluation maps, so the result depends on the psi matrices and not
    on the stored table.
    """
    n = K.dim
    one = K.one
    total = K.zero()
    for i in range(len(K.orbits)):
        e = K.orbit_idempotent(i)
        if K.mul(e, e) != e or not any(e):
            raise NotEtale(f"orbit {i} does not give a primitive idempotent")
        for k in range(i):
            if any(K.mul(e, K.orbit_idempotent(k))):
                raise NotEtale("orbit idempotents are not orthogonal")
        total = K.add(total, e)
    if n and total != one:
        raise NotEtale("orbit idempotents do not sum to 1")
    basis = [K.basis_vector(j) for j in range(n)]
    ev = [tuple(K.value(b, s) for b in basis) for s in range(n)]
    lookup = {}
    for s, key in enumerate(ev):
        if key in lookup:
            raise NotEtale(f"points {lookup[key]} and {s} have the same evaluation map")
        lookup[key] = s
    table = []
    for a in range(K.r):
        images = [K.psi(a, b) for b in basis]
        row = []
        for s in range(n):
            key = tuple(K.value(im, s) for im in images)
            if key not in lookup:
                raise NotEtale(f"ev_{s} o psi_{a} is not a point")
            row.append(lookup[key])
        table.append(row)
    return make_mset(K.r, table)


def is_field_check(K):
    """``(is_field, certificate)``.  For ``dim > 1`` the certificate is a
    nontrivial idempotent supported on the orbit of a point of ``0S``."""
    if K.dim == 1:
        return True, None
    if K.dim == 0:
        return False, None
    s = zero_image(K.mset)[0]
    e = K.orbit_idempotent(K.orbit_of[s])
    return False, e
