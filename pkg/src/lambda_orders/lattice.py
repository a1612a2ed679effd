"""Lattices in Q^n held as an integer Hermite normal form over a common
denominator."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import InvalidInput, NotContained
from .linalg import inverse, rref


def _xgcd(a, b):
    """``(g, x, y)`` with ``x a + y b = g = gcd(a, b) >= 0``."""
    sa, sb = (-1 if a < 0 else 1), (-1 if b < 0 else 1)
    a, b = abs(a), abs(b)
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, sa * x0, sb * y0


def hnf_rows(rows):
    """Row Hermite normal form of an integer matrix, zero rows dropped.

    Rows are upper echelon with positive pivots; entries above a pivot lie in
    ``[0, pivot)``.
    """
    basis = {}  # pivot column -> row
    for row in rows:
        v = [int(x) for x in row]
        for j in range(len(v)):
            x = v[j]
            if x == 0:
                continue
            b = basis.get(j)
            if b is None:
                basis[j] = v if x > 0 else [-t for t in v]
                break
            g, s, t = _xgcd(b[j], v[j])
            bj, vj = b[j] // g, v[j] // g
            basis[j] = [s * p + t * q for p, q in zip(b, v)]
            v = [bj * q - vj * p for p, q in zip(b, v)]
            # keep the tail small relative to the rows already stored
            for k in range(j + 1, len(v)):
                if v[k] and k in basis:
                    f = v[k] // basis[k][k]
                    if f:
                        v = [x - f * y for x, y in zip(v, basis[k])]
    if basis and any(basis[j][j] < 0 for j in basis):
        basis = {j: (b if b[j] > 0 else [-x for x in b]) for j, b in basis.items()}
    cols = sorted(basis)
    out = [basis[j] for j in cols]
    # reduce above pivots; row i only touches columns >= its pivot
    for i in range(len(out)):
        p = cols[i]
        piv = out[i][p]
        for k in range(i):
            f = out[k][p] // piv
            if f:
                out[k] = [x - f * y for x, y in zip(out[k], out[i])]
    return [tuple(r) for r in out]


@dataclass(frozen=True)
class IntLattice:
    """``(1/den) * rowspan(basis)`` inside ``Q^dim``."""

    dim: int
    basis: tuple
    den: int = 1

    def __post_init__(self):
        g = self.den
        for row in self.basis:
            for x in row:
                g = gcd(g, x)
        if g > 1:
            object.__setattr__(self, "basis", tuple(tuple(x // g for x in row) for row in self.basis))
            object.__setattr__(self, "den", self.den // g)

    @property
    def rank(self):
        return len(self.basis)

    def pivots(self):
        return [next(j for j, x in enumerate(row) if x) for row in self.basis]

    def vectors(self):
        """Basis as rational vectors."""
        return [[Fraction(x, self.den) for x in row] for row in self.basis]

    def coordinates(self, v):
        """Rational coefficients of ``v`` in the basis, or None if ``v`` is
        outside the Q-span."""
        w = [Fraction(x) * self.den for x in v]
        coeffs = []
        for row, p in zip(self.basis, self.pivots()):
            c = w[p] / row[p]
            coeffs.append(c)
            if c:
                w = [a - c * b for a, b in zip(w, row)]
        if any(w):
            return None
        return coeffs

    def contains(self, v):
        c = self.coordinates(v)
        return c is not None and all(x.denominator == 1 for x in c)

    def contains_lattice(self, other):
        return other.dim == self.dim and all(self.contains(v) for v in other.vectors())

    def scaled(self, factor):
        factor = Fraction(factor)
        return from_rational_rows(self.dim, [[x * factor for x in v] for v in self.vectors()])

    def __add__(self, other):
        return from_rational_rows(self.dim, self.vectors() + other.vectors())

    def to_json(self):
        return {
            "dim": self.dim,
            "rank": self.rank,
            "den": str(self.den),
            "basis": [[str(x) for x in row] for row in self.basis],
        }

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            lat = from_integer_rows(
                int(doc["dim"]), [[int(x) for x in row] for row in doc["basis"]], int(doc["den"])
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"bad lattice document: {exc}") from exc
        if lat.rank != int(doc.get("rank", lat.rank)):
            raise InvalidInput("rank does not match basis")
        return lat


def from_integer_rows(dim, rows, den=1):
    rows = [r for r in rows]
    if any(len(r) != dim for r in rows):
        raise InvalidInput("row length differs from dim")
    return IntLattice(dim, tuple(hnf_rows(rows)), den)


def from_rational_rows(dim, rows):
    rows = [[Fraction(x) for x in r] for r in rows]
    D = 1
    for r in rows:
        for x in r:
            D = lcm(D, x.denominator)
    return from_integer_rows(dim, [[int(x * D) for x in r] for r in rows], D)


def hnf(matrix):
    """Lattice spanned by the rows of an integer or rational matrix."""
    matrix = [list(r) for r in matrix]
    dim = len(matrix[0]) if matrix else 0
    return from_rational_rows(dim, matrix)


def standard_lattice(n):
    return from_integer_rows(n, [[int(i == j) for j in range(n)] for i in range(n)])


def preimage_lattice(A):
    """``{x in Q^n : A x in Z^k}`` for a rational matrix of column rank n.

    The rows of ``A`` span a full lattice ``M``; the answer is its dual,
    spanned by the columns of the inverse of a basis of ``M``.
    """
    A = [[Fraction(x) for x in row] for row in A]
    n = len(A[0]) if A else 0
    if n == 0:
        return IntLattice(0, ())
    M = from_rational_rows(n, A)
    if M.rank != n:
        raise InvalidInput("preimage is not a lattice: the map has a kernel")
    Binv = inverse(M.vectors())
    cols = [[Binv[i][j] for i in range(n)] for j in range(n)]
    return from_rational_rows(n, cols)


def determinant(mat):
    mat = [[Fraction(x) for x in row] for row in mat]
    n = len(mat)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if mat[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        for i in range(col + 1, n):
            f = mat[i][col] / mat[col][col]
            if f:
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[col])]
    return det


def index(L1, L2):
    """``[L2 : L1]`` for ``L1`` contained in ``L2`` of the same rank."""
    if L1.dim != L2.dim or L1.rank != L2.rank:
        raise NotContained("lattices differ in dimension or rank")
    coords = []
    for v in L1.vectors():
        c = L2.coordinates(v)
        if c is None or any(x.denominator != 1 for x in c):
            raise NotContained("first lattice is not contained in the second")
        coords.append(c)
    if not coords:
        return 1
    return abs(int(determinant(coords)))


def rank_of(rows):
    return len(rref(rows)[1])
