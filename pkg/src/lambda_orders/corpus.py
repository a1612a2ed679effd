"""Deterministic test corpora shared by the acceptance suite and the CLI."""
from __future__ import annotations

from itertools import combinations, product
from math import gcd

from sympy import factorint

from .errors import InvalidInput
from .factorization import FrobActionPresentation, compose
from .mset import (
    coproduct,
    lift,
    make_mset,
    product as mset_product,
    regular_mset,
    trivial_mset,
)


def _all_maps(n):
    return list(product(range(n), repeat=n))


def _unit_actions(n, c):
    units = [u for u in range(c) if gcd(u, c) == 1]
    perms = [m for m in _all_maps(n) if sorted(m) == list(range(n))]
    for choice in product(perms, repeat=len(units)):
        ua = dict(zip(units, choice))
        if ua[1 % c] != tuple(range(n)):
            continue
        if all(compose(ua[u], ua[v]) == ua[(u * v) % c] for u in units for v in units):
            yield ua


def presentations(max_size=3, levels=(1, 2, 3, 4), primes=(2, 3)):
    """Every presentation with ``1 <= |T| <= max_size``, ``c`` in ``levels``
    and exceptional primes drawn from ``primes``."""
    for n in range(1, max_size + 1):
        maps = _all_maps(n)
        for c in levels:
            required = set(factorint(c))
            if not required <= set(primes):
                continue
            optional = [p for p in primes if p not in required]
            for ua in _unit_actions(n, c):
                commuting = [
                    m for m in maps
                    if all(compose(m, g) == compose(g, m) for g in ua.values())
                ]
                for k in range(len(optional) + 1):
                    for extra in combinations(optional, k):
                        exc = sorted(required | set(extra))
                        for choice in product(commuting, repeat=len(exc)):
                            if any(
                                compose(f, g) != compose(g, f)
                                for f, g in combinations(choice, 2)
                            ):
                                continue
                            try:
                                yield FrobActionPresentation(n, c, ua, dict(zip(exc, choice)))
                            except InvalidInput:
                                continue


def quotient_by_units(r, H):
    """``Z/r`` modulo multiplication by the unit subgroup ``H``."""
    H = sorted({h % r for h in H})
    classes = []
    index = {}
    for x in range(r):
        if x in index:
            continue
        cls = sorted({(h * x) % r for h in H})
        for y in cls:
            index[y] = len(classes)
        classes.append(cls)
    table = [[index[(a * cls[0]) % r] for cls in classes] for a in range(r)]
    return make_mset(r, table)


def unit_subgroups(r):
    units = [u for u in range(r) if gcd(u, r) == 1]
    found = set()
    for k in range(1, len(units) + 1):
        for gens in combinations(units, min(k, 2)):
            H = {1 % r}
            frontier = list(H)
            while frontier:
                x = frontier.pop()
                for g in gens:
                    y = (x * g) % r
                    if y not in H:
                        H.add(y)
                        frontier.append(y)
            found.add(tuple(sorted(H)))
    return sorted(found, key=lambda h: (len(h), h))


def mset_corpus(max_size=8, max_level=12):
    """At least fifty small Z/r-sets: regular sets, their quotients by unit
    subgroups, trivial sets, products, coproducts and lifts."""
    out = []

    def add(S):
        if S.size <= max_size and S.level <= max_level and S not in out:
            out.append(S)

    for r in range(1, max_level + 1):
        add(regular_mset(r))
        for H in unit_subgroups(r):
            add(quotient_by_units(r, H))
    for n in (1, 2, 3):
        add(trivial_mset(1, n))
        add(trivial_mset(6, n))
    base = list(out)
    small = [S for S in base if S.size <= 3]
    for S, T in combinations(small, 2):
        add(coproduct(S, T))
        add(mset_product(S, T))
    add(mset_product(regular_mset(2), regular_mset(2)))
    add(lift(regular_mset(4), 8))
    add(lift(regular_mset(3), 12))
    return out


def swap_presentation():
    """Two points, trivial Galois action, Frobenius at 2 swapping them.

    Such a set never factors through ``Z/r``: 2 would have to act as the
    identity through its residue mod the conductor 1.
    """
    return FrobActionPresentation(2, 1, {0: (0, 1)}, {2: (1, 0)})
