"""End-to-end checks run by ``lambda-orders selftest`` and the test suite.

Every check returns a :class:`CheckResult`; exceptions are caught and reported
against the module the check exercises.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from sympy import divisors

from . import cyclotomic
from .algebra import algebra_from_mset, points
from .corpus import mset_corpus, presentations
from .factorization import brute_force_factor, check_factors
from .lattice import index
from .mset import (
    MSetMap,
    free_cover,
    is_isomorphic,
    lift,
    regular_mset,
    zero_image,
)
from .orders import (
    LambdaOrder,
    character_mset,
    group_ring_lattice,
    group_ring_power_basis,
    integral_closure,
    intersection_check,
    lattice_of,
    maximal_order,
    maximality_certificate,
    verify_order,
)


@dataclass
class CheckResult:
    name: str
    module: str
    passed: bool
    detail: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name} ({self.module}): {self.detail}"


def group_ring_is_maximal(rs=range(1, 21)):
    bad = []
    for r in rs:
        M = maximal_order(regular_mset(r))
        _, Z, _ = group_ring_power_basis(r, M.algebra)
        if M.lattice != Z or index(Z, M.lattice) != 1:
            bad.append(r)
    return CheckResult(
        "group_ring_is_maximal", "orders", not bad,
        f"maximal order == Z[mu_r] for r in {min(rs)}..{max(rs)}" if not bad else f"differs at r={bad}",
    )


def character_group_ring_not_maximal(ps=(2, 3)):
    notes = []
    ok = True
    for p in ps:
        K, G, x = group_ring_lattice(p)
        M = maximal_order(character_mset(p), K)
        psi_ok = K.psi(p, x) == K.scale(p, K.one)
        sq_ok = K.mul(x, x) == K.scale(p, x)
        inside = M.contains(x) and not G.contains(x)
        idx = index(G, M.lattice)
        good = psi_ok and sq_ok and inside and idx % p == 0
        ok &= good
        notes.append(f"p={p}: psi_p(x)=p {psi_ok}, x^2=px {sq_ok}, x in M\\Z[V] {inside}, index {idx}")
    return CheckResult("character_group_ring_not_maximal", "orders", ok, "; ".join(notes))


def criterion_matches_oracle(corpus=None, no_bound=36):
    corpus = list(presentations()) if corpus is None else corpus
    mismatches = []
    yes = 0
    for pres in corpus:
        v = check_factors(pres)
        if v.factors:
            yes += 1
            found = brute_force_factor(pres, 2 * v.r) is not None
        else:
            found = brute_force_factor(pres, no_bound) is not None
        if found != v.factors:
            mismatches.append(pres.to_json())
    return CheckResult(
        "criterion_matches_oracle", "factorization", not mismatches,
        f"{len(corpus)} presentations, {yes} factor, {len(mismatches)} disagreements",
    )


def points_round_trip(corpus=None):
    corpus = mset_corpus() if corpus is None else corpus
    bad = []
    for S in corpus:
        K = algebra_from_mset(S)
        if K.dim != S.size or not is_isomorphic(points(K), S):
            bad.append(S.to_json())
    ok = not bad and len(corpus) >= 50
    return CheckResult("points_round_trip", "lambda-algebra", ok,
                       f"{len(corpus)} sets, {len(bad)} failures")


def maximal_orders_verify(corpus=None, bound=13):
    corpus = mset_corpus() + [character_mset(3)] if corpus is None else corpus
    bad = []
    for S in corpus:
        rep = verify_order(maximal_order(S), bound)
        if not rep["ok"]:
            bad.append((S.to_json(), rep["failure"]))
    return CheckResult("maximal_orders_verify", "orders", not bad,
                       f"{len(corpus)} orders, primes <= {bound}, {len(bad)} failures")


def maximality_certificates(corpus=None, primes=(2, 3, 5), max_rank=8):
    corpus = mset_corpus() if corpus is None else corpus
    checked, bad = 0, []
    characters = {character_mset(p): p for p in (2, 3)}
    for S in corpus:
        if S.size > max_rank:
            continue
        M = maximal_order(S)
        idx = index(M.lattice, integral_closure(M.algebra))
        if S in characters:
            _, G, _ = group_ring_lattice(characters[S])
            idx *= index(G, M.lattice)
        for q in primes:
            if idx % q == 0:
                checked += 1
                ok, _ = maximality_certificate(M, q, max_rank)
                if not ok:
                    bad.append((S.to_json(), q))
    K, Z, zs = group_ring_power_basis(2)
    small = LambdaOrder(K, lattice_of(K, [K.one, K.scale(2, zs[1])]))
    ok_small, witness = maximality_certificate(small, 2)
    neg_ok = (not ok_small) and witness == Z
    return CheckResult(
        "maximality_certificates", "orders", not bad and neg_ok,
        f"{checked} certificates, {len(bad)} failures; span(1,2z) rejected with witness Z[mu_2]: {neg_ok}",
    )


def intersections():
    T, S = regular_mset(4), lift(regular_mset(2), 4)
    reduction = MSetMap(T, S, tuple(x % 2 for x in range(4)))
    first = intersection_check(reduction)
    second = intersection_check(free_cover(character_mset(2)))
    return CheckResult("intersections", "orders", first and second,
                       f"regular(4)->regular(2): {first}; free cover of (Z/2)^2: {second}")


def crt_round_trip(max_r=30, trials=100, seed=0):
    rng = random.Random(seed)
    bad = []
    for r in range(1, max_r + 1):
        if sum(cyclotomic.euler_phi(r // d) for d in divisors(r)) != r:
            bad.append(("degree", r))
        for _ in range(trials):
            e = cyclotomic.GroupAlgebraElt(
                r, tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 12)) for _ in range(r))
            )
            if cyclotomic.crt_join(cyclotomic.crt_split(e)) != e:
                bad.append(("round trip", r))
                break
    return CheckResult("crt_round_trip", "cyclotomic", not bad,
                       f"r <= {max_r}, {trials} trials each" if not bad else f"failures {bad[:5]}")


def rational_factor_from_zero_image(corpus=None):
    corpus = mset_corpus() if corpus is None else corpus
    bad = []
    for S in corpus:
        if S.size == 0:
            continue
        zs = zero_image(S)
        fixed = all(S.act(a, s) == s for s in zs for a in range(S.level))
        K = algebra_from_mset(S)
        i = K.orbit_of[zs[0]] if zs else None
        ok = bool(zs) and fixed and len(K.orbits[i].points) == 1
        if ok:
            e = K.orbit_idempotent(i)
            # K e is a copy of Q: e x is a rational multiple of e for every x
            ok = K.mul(e, e) == e and all(
                K.mul(e, x) == K.scale(x[K.offsets[i]], e)
                for x in map(K.basis_vector, range(K.dim))
            )
        if not ok:
            bad.append(S.to_json())
    return CheckResult("rational_factor_from_zero_image", "monoid-core", not bad,
                       f"{len(corpus)} sets, {len(bad)} failures")


def run_all(quick=False):
    """Run every check; ``quick`` shrinks each corpus."""
    if quick:
        msets = mset_corpus(max_size=4, max_level=6)
        pres = [p for p in presentations(max_size=2)]
        plan = [
            (group_ring_is_maximal, {"rs": range(1, 9)}, "orders"),
            (character_group_ring_not_maximal, {"ps": (2,)}, "orders"),
            (criterion_matches_oracle, {"corpus": pres}, "factorization"),
            (points_round_trip, {"corpus": mset_corpus(max_size=8, max_level=12)[:60]}, "lambda-algebra"),
            (maximal_orders_verify, {"corpus": msets, "bound": 7}, "orders"),
            (maximality_certificates, {"corpus": msets, "primes": (2, 3)}, "orders"),
            (intersections, {}, "orders"),
            (crt_round_trip, {"max_r": 12, "trials": 10}, "cyclotomic"),
            (rational_factor_from_zero_image, {"corpus": msets}, "monoid-core"),
        ]
    else:
        plan = [
            (group_ring_is_maximal, {}, "orders"),
            (character_group_ring_not_maximal, {}, "orders"),
            (criterion_matches_oracle, {}, "factorization"),
            (points_round_trip, {}, "lambda-algebra"),
            (maximal_orders_verify, {}, "orders"),
            (maximality_certificates, {}, "orders"),
            (intersections, {}, "orders"),
            (crt_round_trip, {}, "cyclotomic"),
            (rational_factor_from_zero_image, {}, "monoid-core"),
        ]
    results = []
    for fn, kwargs, module in plan:
        try:
            results.append(fn(**kwargs))
        except Exception as exc:  # reported, not raised
            results.append(CheckResult(fn.__name__, module, False, f"{type(exc).__name__}: {exc}"))
    return results
