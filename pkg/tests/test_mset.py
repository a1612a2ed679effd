import json
import random
from math import gcd

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lambda_orders.errors import (
    AssociativityViolated,
    IdentityAxiomViolated,
    InvalidInput,
    LevelMismatch,
)
from lambda_orders.mset import (
    MSet,
    MSetMap,
    coproduct,
    empty_mset,
    factoring_levels,
    factors_through,
    free_cover,
    identity_map,
    image,
    is_isomorphic,
    isomorphism,
    lift,
    make_mset,
    minimal_level,
    product,
    psi_minus_one,
    regular_mset,
    trivial_mset,
    zero_image,
)

from .strategies import msets


def permuted(S, perm):
    inv = np.argsort(perm)
    table = [[perm[S.act(a, inv[s])] for s in range(S.size)] for a in range(S.level)]
    return make_mset(S.level, table)


class TestConstruction:
    def test_regular(self):
        S = regular_mset(6)
        assert S.act(4, 5) == 2
        assert S.act(0, 3) == 0

    def test_identity_axiom(self):
        with pytest.raises(IdentityAxiomViolated):
            make_mset(2, [[0, 0], [1, 0]])

    def test_associativity_axiom(self):
        # 2 sends 1 -> 0 but 2 * 2 = 0 mod 4 must then agree with 2 applied twice
        table = [[1, 1], [0, 1], [1, 0], [0, 1]]
        with pytest.raises(AssociativityViolated):
            make_mset(4, table)

    def test_entries_in_range(self):
        with pytest.raises(InvalidInput):
            make_mset(1, [[0, 5]])

    def test_row_count(self):
        with pytest.raises(InvalidInput):
            make_mset(3, [[0], [0]])

    def test_read_only(self):
        with pytest.raises(ValueError):
            regular_mset(3).action[0, 0] = 1

    def test_empty(self):
        E = empty_mset(4)
        assert E.size == 0 and zero_image(E) == ()


class TestJson:
    @given(msets())
    def test_round_trip(self, S):
        assert MSet.from_json(json.dumps(S.to_json())) == S

    @pytest.mark.parametrize("doc", [{}, {"level": 2}, {"level": 0, "size": 0, "action": []},
                                     {"level": 2, "size": 1, "action": [[0]]}])
    def test_bad_documents(self, doc):
        with pytest.raises(InvalidInput):
            MSet.from_json(doc)


class TestOperations:
    def test_product_action(self):
        P = product(regular_mset(3), regular_mset(3))
        assert P.size == 9
        # (1, 2) has index 5; 2 * (1, 2) = (2, 1)
        assert P.act(2, 5) == 7

    def test_auto_lift(self):
        C = coproduct(regular_mset(2), regular_mset(3))
        assert C.level == 6 and C.size == 5

    def test_level_mismatch(self):
        with pytest.raises(LevelMismatch):
            product(regular_mset(2), regular_mset(3), auto_lift=False)
        with pytest.raises(LevelMismatch):
            lift(regular_mset(4), 6)

    def test_map_levels(self):
        with pytest.raises(LevelMismatch):
            MSetMap(regular_mset(4), regular_mset(2), (0, 1, 0, 1))

    def test_map_equivariance(self):
        with pytest.raises(InvalidInput):
            MSetMap(regular_mset(2), regular_mset(2), (1, 0))

    def test_image_and_cover(self):
        S = product(regular_mset(2), regular_mset(2))
        f = free_cover(S)
        I, surj, inj = image(f)
        assert f.source.size == S.level * S.size
        assert I.size == S.size
        assert sorted(set(surj.values)) == list(range(I.size))
        assert len(set(inj.values)) == I.size
        assert all(inj.values[surj.values[t]] == f.values[t] for t in range(f.source.size))
        I, _, _ = image(identity_map(S))
        assert I == S

    @given(msets())
    def test_zero_image_fixed(self, S):
        for s in zero_image(S):
            assert all(S.act(a, s) == s for a in range(S.level))
        assert bool(zero_image(S)) == (S.size > 0)

    @given(msets())
    def test_psi_minus_one_involution(self, S):
        m = psi_minus_one(S)
        assert all(m[m[s]] == s for s in range(S.size))

    @given(msets(), st.integers(1, 3))
    def test_lift_keeps_axioms(self, S, k):
        L = lift(S, S.level * k)
        assert make_mset(L.level, L.action) == L
        assert minimal_level(L)[0] == minimal_level(S)[0]


class TestMinimalLevel:
    def test_regular_is_minimal(self):
        for r in range(1, 13):
            assert minimal_level(regular_mset(r))[0] == r

    def test_trivial(self):
        d, R = minimal_level(trivial_mset(12, 3))
        assert d == 1 and R == trivial_mset(1, 3)

    @given(msets())
    def test_reduced_lifts_back(self, S):
        d, R = minimal_level(S)
        assert S.level % d == 0
        assert lift(R, S.level) == S

    @given(msets())
    def test_factoring_levels_closed_under_gcd(self, S):
        levels = factoring_levels(S)
        for d in levels:
            for e in levels:
                assert factors_through(S, gcd(d, e))
        assert min(levels) == minimal_level(S)[0]
        assert all(d % min(levels) == 0 for d in levels)


class TestIsomorphism:
    @given(msets(), st.randoms(use_true_random=False))
    def test_relabelled_is_isomorphic(self, S, rnd):
        perm = list(range(S.size))
        rnd.shuffle(perm)
        T = permuted(S, perm)
        phi = isomorphism(S, T)
        assert phi is not None
        assert all(T.act(a, phi[s]) == phi[S.act(a, s)]
                   for a in range(S.level) for s in range(S.size))

    def test_distinguishes(self):
        assert not is_isomorphic(regular_mset(4), trivial_mset(4, 4))
        assert not is_isomorphic(regular_mset(3), regular_mset(4))
        A = coproduct(regular_mset(2), regular_mset(2))
        B = product(regular_mset(2), regular_mset(2))
        assert not is_isomorphic(A, B)

    def test_large_relabel(self):
        S = product(regular_mset(4), regular_mset(2))
        perm = list(range(S.size))
        random.Random(3).shuffle(perm)
        assert is_isomorphic(S, permuted(S, perm))
