"""Exact arithmetic in ``Q[z]/(z^r - 1)`` and in cyclotomic fields.

Polynomials are coefficient lists, constant term first.  Scalars are
``fractions.Fraction``.  No floating point is used anywhere.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import divisors, totient

from .errors import NotAUnit, SubgroupInvalid
from .linalg import independent_rows, rank, solve_left

Rat = Fraction


# --------------------------------------------------------------------------
# polynomial helpers over Q
# --------------------------------------------------------------------------


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def poly_divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    rem = [Fraction(x) for x in a]
    lead = Fraction(b[-1])
    while len(rem) >= len(b) and rem:
        shift = len(rem) - len(b)
        f = rem[-1] / lead
        q[shift] = f
        for i, y in enumerate(b):
            rem[shift + i] -= f * y
        rem = _trim(rem)
    return _trim(q), rem


def poly_mod(a, b):
    return poly_divmod(a, b)[1]


def poly_xgcd(a, b):
    """``(g, s, t)`` with ``s a + t b = g`` and ``g`` monic."""
    r0, r1 = _trim(a), _trim(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1))
    lead = Fraction(r0[-1])
    return [x / lead for x in r0], [x / lead for x in s0], [x / lead for x in t0]


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Integer coefficients of the ``n``-th cyclotomic polynomial.

    >>> cyclotomic_poly(6)
    (1, -1, 1)
    """
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        q, rem = poly_divmod(num, cyclotomic_poly(d))
        assert not rem
        num = q
    assert all(x.denominator == 1 for x in num)
    return tuple(int(x) for x in num)


def euler_phi(n):
    return int(totient(n))


# --------------------------------------------------------------------------
# group algebra Q[mu_r]
# --------------------------------------------------------------------------


def _fr(x):
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class GroupAlgebraElt:
    """Element ``sum coeffs[i] z^i`` of ``Q[z]/(z^r - 1)``."""

    r: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_fr(c) for c in self.coeffs))
        if len(self.coeffs) != self.r:
            raise ValueError(f"need {self.r} coefficients")

    @classmethod
    def zero(cls, r):
        return cls(r, (0,) * r)

    @classmethod
    def one(cls, r):
        return cls.monomial(r, 0)

    @classmethod
    def monomial(cls, r, i, coeff=1):
        c = [0] * r
        c[i % r] = coeff
        return cls(r, tuple(c))

    def __add__(self, other):
        return GroupAlgebraElt(self.r, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return GroupAlgebraElt(self.r, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if not isinstance(other, GroupAlgebraElt):
            return GroupAlgebraElt(self.r, tuple(a * other for a in self.coeffs))
        out = [Fraction(0)] * self.r
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % self.r] += a * b
        return GroupAlgebraElt(self.r, tuple(out))

    __rmul__ = __mul__

    def psi(self, a):
        """Adams operation ``z -> z^a``."""
        out = [Fraction(0)] * self.r
        for i, c in enumerate(self.coeffs):
            out[(a * i) % self.r] += c
        return GroupAlgebraElt(self.r, tuple(out))

    def to_json(self):
        return {"r": self.r, "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs]}

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(int(doc["r"]), tuple(Fraction(int(n), int(d)) for n, d in doc["coeffs"]))


def is_integral(e):
    return all(c.denominator == 1 for c in e.coeffs)


# --------------------------------------------------------------------------
# cyclotomic fields Q(zeta_m) in the power basis
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CycloElt:
    """Element of ``Q[x]/Phi_m`` as ``phi(m)`` power-basis coefficients."""

    m: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_fr(c) for c in self.coeffs))
        if len(self.coeffs) != euler_phi(self.m):
            raise ValueError(f"need phi({self.m}) coefficients")

    @classmethod
    def from_poly(cls, m, poly):
        rem = poly_mod(poly, cyclotomic_poly(m))
        deg = euler_phi(m)
        return cls(m, tuple(rem) + (Fraction(0),) * (deg - len(rem)))

    @classmethod
    def scalar(cls, m, value):
        return cls.from_poly(m, [value])

    @classmethod
    def zeta_power(cls, m, i):
        return cls.from_poly(m, [0] * (i % m) + [1])

    def is_zero(self):
        return not any(self.coeffs)

    def __add__(self, other):
        return CycloElt(self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return CycloElt(self.m, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CycloElt(self.m, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, CycloElt):
            return CycloElt(self.m, tuple(a * other for a in self.coeffs))
        return CycloElt.from_poly(self.m, poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__


def galois_act(u, x):
    """Automorphism ``zeta -> zeta^u`` of ``Q(zeta_m)``."""
    m = x.m
    if gcd(u, m) != 1:
        raise NotAUnit(f"{u} is not a unit mod {m}")
    poly = [Fraction(0)] * m
    for i, c in enumerate(x.coeffs):
        poly[(u * i) % m] += c
    return CycloElt.from_poly(m, poly)


def check_subgroup(m, H):
    H = sorted({h % m for h in H})
    if not H or 1 % m not in H:
        raise SubgroupInvalid("subgroup must contain 1")
    if any(gcd(h, m) != 1 for h in H):
        raise SubgroupInvalid("elements must be units")
    hs = set(H)
    if any((a * b) % m not in hs for a in H for b in H):
        raise SubgroupInvalid("not closed under multiplication")
    return tuple(H)


@lru_cache(maxsize=None)
def _fixed_field_basis(m, H):
    deg = euler_phi(m)
    sums = []
    for i in range(deg):
        exps = sorted({(h * i) % m for h in H})
        sums.append(CycloElt.from_poly(m, _poly_of_exponents(m, exps)))
    keep = independent_rows([list(s.coeffs) for s in sums])
    basis = tuple(sums[i] for i in keep)
    assert len(basis) * len(H) == deg
    return basis


def _poly_of_exponents(m, exps):
    poly = [Fraction(0)] * m
    for e in exps:
        poly[e] += 1
    return poly


def fixed_field_basis(m, H):
    """Basis of the subfield of ``Q(zeta_m)`` fixed by the unit subgroup ``H``.

    Candidates are the sums of ``zeta^j`` over the ``H``-orbit of each
    exponent ``i < phi(m)``; a greedy independent subset is kept, so the
    result has ``phi(m)/|H|`` elements.
    """
    return list(_fixed_field_basis(m, check_subgroup(m, H)))


# --------------------------------------------------------------------------
# CRT decomposition  Q[mu_r] -> prod_{d | r} Q(zeta_{r/d})
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _idempotents(r):
    """Polynomials ``e_d`` (mod z^r - 1), ``e_d = 1`` mod ``Phi_{r/d}`` and
    ``0`` mod the other factors."""
    full = [-1] + [0] * (r - 1) + [1]
    out = []
    for d in divisors(r):
        f = cyclotomic_poly(r // d)
        g, rem = poly_divmod(full, f)
        assert not rem
        one, s, _ = poly_xgcd(g, f)
        assert one == [1]
        out.append(tuple(poly_mod(poly_mul(s, g), full)))
    return tuple(out)


def crt_split(e):
    """Components ``e(x) mod Phi_{r/d}`` for the divisors ``d`` of ``r`` in
    increasing order; ``z`` maps to a primitive ``(r/d)``-th root of unity."""
    return tuple(CycloElt.from_poly(e.r // d, e.coeffs) for d in divisors(e.r))


def crt_join(components, r=None):
    if r is None:
        r = sum(euler_phi(c.m) for c in components)
    divs = divisors(r)
    if len(components) != len(divs) or any(c.m != r // d for c, d in zip(components, divs)):
        raise ValueError("components do not match the divisors of r")
    full = [-1] + [0] * (r - 1) + [1]
    total = [Fraction(0)] * r
    for comp, idem in zip(components, _idempotents(r)):
        part = poly_mod(poly_mul(list(comp.coeffs), list(idem)), full)
        for i, c in enumerate(part):
            total[i] += c
    return GroupAlgebraElt(r, tuple(total))


@lru_cache(maxsize=None)
def subfield_embedding(r, d):
    """Images of ``y^j`` (``j < phi(r/d)``) under ``Q(zeta_{r/d}) -> Q(zeta_r)``,
    ``y -> zeta_r^d``."""
    m = r // d
    return tuple(CycloElt.zeta_power(r, d * j) for j in range(euler_phi(m)))


def restrict_to_subfield(x, d):
    """Express ``x in Q(zeta_r)`` as an element of ``Q(zeta_r^d)``; None if it
    does not lie there."""
    r = x.m
    emb = subfield_embedding(r, d)
    coords = solve_left([list(e.coeffs) for e in emb], list(x.coeffs))
    if coords is None:
        return None
    return CycloElt(r // d, tuple(coords))


def cyclo_rank(elts):
    return rank([list(e.coeffs) for e in elts])


def clear_caches():
    """Drop every memoized table (polynomials, idempotents, bases)."""
    for fn in (cyclotomic_poly, _fixed_field_basis, _idempotents, subfield_embedding):
        fn.cache_clear()
