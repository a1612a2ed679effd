"""Deciding when a Galois-times-Frobenius action on a finite set comes from a
``Z/r``-set, and building that set.

A presentation fixes the unit group action at a finite level ``c`` and lists
finitely many exceptional primes with their own maps; every other prime ``p``
acts as the unit ``p mod c``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce
from math import gcd, lcm

import numpy as np
from sympy import divisors, factorint, isprime, primerange

from . import kernels
from .errors import InconsistentPresentation, InvalidInput
from .mset import MSet, make_mset

Map = tuple


def compose(f, g):
    """``f o g`` for maps stored as tuples."""
    return tuple(f[x] for x in g)


def _units(c):
    return [u for u in range(c) if gcd(u, c) == 1]


@dataclass(frozen=True)
class FrobActionPresentation:
    size: int
    c: int
    unit_action: dict  # unit u mod c -> permutation tuple
    exceptional: dict = field(default_factory=dict)  # prime -> map tuple

    def __post_init__(self):
        n, c = self.size, self.c
        if n < 0 or c < 1:
            raise InvalidInput("size must be >= 0 and c >= 1")
        ua = {int(u) % c: tuple(int(x) for x in m) for u, m in self.unit_action.items()}
        ex = {int(p): tuple(int(x) for x in m) for p, m in self.exceptional.items()}
        object.__setattr__(self, "unit_action", ua)
        object.__setattr__(self, "exceptional", dict(sorted(ex.items())))
        if sorted(ua) != _units(c):
            raise InvalidInput(f"unit_action must list exactly the units mod {c}")
        for m in list(ua.values()) + list(ex.values()):
            if len(m) != n or any(not 0 <= x < n for x in m):
                raise InvalidInput("maps must send {0..n-1} into itself")
        for u, m in ua.items():
            if sorted(m) != list(range(n)):
                raise InvalidInput(f"unit {u} does not act by a permutation")
        if ua[1 % c] != tuple(range(n)):
            raise InvalidInput("unit 1 must act as the identity")
        for u in ua:
            for v in ua:
                if compose(ua[u], ua[v]) != ua[(u * v) % c]:
                    raise InvalidInput(f"unit action not multiplicative at ({u}, {v})")
        for p, m in ex.items():
            if not isprime(p):
                raise InvalidInput(f"exceptional key {p} is not prime")
            for u, g in ua.items():
                if compose(m, g) != compose(g, m):
                    raise InvalidInput(f"psi_{p} does not commute with unit {u}")
            for q, h in ex.items():
                if compose(m, h) != compose(h, m):
                    raise InvalidInput(f"psi_{p} and psi_{q} do not commute")
        for p in factorint(c):
            if p not in ex:
                raise InvalidInput(f"prime {p} divides c but is not exceptional")

    def prime_map(self, p):
        if p in self.exceptional:
            return self.exceptional[p]
        return self.unit_action[p % self.c]

    def unit_map(self, u):
        """Action of an integer coprime to ``c``."""
        return self.unit_action[u % self.c]

    def to_json(self):
        return {
            "size": self.size,
            "c": self.c,
            "unit_action": {str(u): list(m) for u, m in self.unit_action.items()},
            "exceptional": {str(p): list(m) for p, m in self.exceptional.items()},
        }

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            return cls(
                size=int(doc["size"]),
                c=int(doc["c"]),
                unit_action={int(u): m for u, m in doc["unit_action"].items()},
                exceptional={int(p): m for p, m in doc.get("exceptional", {}).items()},
            )
        except (KeyError, TypeError, AttributeError, ValueError) as exc:
            if isinstance(exc, InvalidInput):
                raise
            raise InvalidInput(f"bad presentation document: {exc}") from exc


def psi(pres, n):
    """Action of the positive integer ``n``, multiplied out over its primes."""
    if n < 1:
        raise ValueError("n must be positive")
    result = tuple(range(pres.size))
    for p, e in sorted(factorint(n).items()):
        for _ in range(e):
            result = compose(pres.prime_map(p), result)
    return result


def _image_set(m, subset):
    return frozenset(m[x] for x in subset)


@dataclass(frozen=True)
class StabilizationData:
    a_p: dict
    r0: int
    images: dict  # d | r0 -> sorted tuple dT
    c_d: dict


def conductor(pres, subset):
    """Smallest divisor ``c'`` of ``c`` such that units that are 1 mod ``c'``
    act trivially on ``subset``."""
    c = pres.c
    for cp in divisors(c):
        if all(
            all(pres.unit_action[u][x] == x for x in subset)
            for u in _units(c)
            if u % cp == 1 % cp
        ):
            return cp
    raise AssertionError("unreachable: c itself has trivial kernel")


def stabilization(pres):
    full = frozenset(range(pres.size))
    a_p = {}
    for p, m in pres.exceptional.items():
        cur, a = full, 0
        while True:
            nxt = _image_set(m, cur)
            if nxt == cur:
                break
            cur, a = nxt, a + 1
        a_p[p] = a
    r0 = reduce(lambda x, y: x * y, (p**a for p, a in a_p.items()), 1)
    images, c_d = {}, {}
    for d in divisors(r0):
        dT = tuple(sorted(_image_set(psi(pres, d), full)))
        images[d] = dT
        c_d[d] = conductor(pres, dT)
    return StabilizationData(a_p, r0, images, c_d)


@dataclass(frozen=True)
class Witness:
    d: int
    p: int
    c_d: int
    clause: str  # "coprime" or "action"
    point: int | None = None

    def to_json(self):
        doc = {"d": self.d, "p": self.p, "c_d": self.c_d, "clause": self.clause}
        if self.point is not None:
            doc["point"] = self.point
        return doc


@dataclass(frozen=True)
class Verdict:
    factors: bool
    r: int | None = None
    mset: MSet | None = None
    witness: Witness | None = None

    def to_json(self):
        if self.factors:
            return {"factors": True, "r": self.r, "mset": self.mset.to_json()}
        return {"factors": False, "witness": self.witness.to_json()}


def _lift_unit(residue, modulus, c):
    """An integer congruent to ``residue`` mod ``modulus`` and coprime to ``c``."""
    u = residue % modulus
    while gcd(u, c) != 1:
        u += modulus
    return u


def check_factors(pres):
    """Run the factorization criterion.

    Primes outside the exceptional list act by units, so only exceptional
    primes can break the second condition.
    """
    data = stabilization(pres)
    for d in sorted(data.images):
        dT = data.images[d]
        cd = data.c_d[d]
        for p, m in pres.exceptional.items():
            if _image_set(m, dT) != frozenset(dT):
                continue
            if gcd(p, cd) != 1:
                return Verdict(False, witness=Witness(d, p, cd, "coprime"))
            unit = pres.unit_map(_lift_unit(p, cd, pres.c))
            for x in dT:
                if m[x] != unit[x]:
                    return Verdict(False, witness=Witness(d, p, cd, "action", x))
    r = lcm(pres.c, data.r0, *(d * cd for d, cd in data.c_d.items()))
    return Verdict(True, r=r, mset=build_mset(pres, r))


def build_mset(pres, r):
    """Table of the factored action on ``Z/r``: residue ``a`` splits as
    ``a = u * n`` with ``n`` supported on the primes of ``r`` and ``u`` a
    unit; residue 0 acts as ``psi(r)``."""
    rprimes = list(factorint(r))
    rows = []
    for a in range(r):
        rep = a if a else r
        n = 1
        for p in rprimes:
            while rep % (n * p) == 0:
                n *= p
        u = rep // n
        rows.append(compose(psi(pres, n), pres.unit_map(u)))
    try:
        return make_mset(r, np.array(rows, dtype=np.int64).reshape(r, pres.size))
    except InvalidInput as exc:
        raise InconsistentPresentation(str(exc)) from exc


def restriction_mismatches(pres, S, prime_bound=50):
    """Generators of the presentation whose action differs from that of their
    residue in ``S``; empty when ``S`` restricts back to ``pres``."""
    r = S.level
    bad = []
    L = lcm(r, pres.c)
    for x in range(L):
        if gcd(x, L) == 1 and tuple(S.action[x % r]) != pres.unit_map(x):
            bad.append(("unit", x))
    for p in sorted(set(primerange(2, prime_bound + 1)) | set(pres.exceptional)):
        if tuple(S.action[p % r]) != pres.prime_map(p):
            bad.append(("prime", p))
    return bad


def _generators(pres, r, prime_bound):
    L = lcm(r, pres.c)
    res, maps = [], []
    for x in range(L):
        if gcd(x, L) == 1:
            res.append(x % r)
            maps.append(pres.unit_map(x))
    primes = set(primerange(2, max(r, prime_bound) + 1)) | set(pres.exceptional)
    for p in sorted(primes):
        res.append(p % r)
        maps.append(pres.prime_map(p))
    return res, maps


def brute_force_factor(pres, r_max, prime_bound=0):
    """Independent search for the smallest ``r <= r_max`` such that the
    presentation extends to a monoid map ``Z/r -> Map(T, T)``.

    The map must send each Galois unit to ``(u mod r)``, each prime to
    ``(p mod r)``; closing those assignments under multiplication either
    fills the table or hits a conflict.  Primes up to ``max(r, prime_bound)``
    are used; larger non-exceptional primes fall in unit classes already
    covered.
    """
    n = pres.size
    for r in range(1, r_max + 1):
        res, maps = _generators(pres, r, prime_bound)
        status, table = kernels.monoid_closure(r, n, res, maps)
        if status != 0:
            continue
        code = kernels.validate_action(table)[0]
        if code == 0:
            return r, make_mset(r, table)
    return None


def presentation_from_mset(S, c=None, exceptional=None):
    """Restrict a ``Z/r``-set to a presentation: units at level ``c`` (default
    ``r``) and every prime dividing ``r`` (or listed) made exceptional."""
    r = S.level
    c = r if c is None else c
    if r % c:
        raise InvalidInput("c must divide the level")
    ua = {}
    for u in _units(c):
        ua[u] = tuple(S.action[_lift_unit(u, c, r) % r].tolist())
    primes = set(factorint(r)) | set(exceptional or ())
    ex = {p: tuple(S.action[p % r].tolist()) for p in sorted(primes)}
    return FrobActionPresentation(S.size, c, ua, ex)
