import json
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st
from sympy import Matrix

from lambda_orders.errors import InvalidInput, NotContained
from lambda_orders.lattice import (
    IntLattice,
    determinant,
    from_integer_rows,
    from_rational_rows,
    hnf,
    hnf_rows,
    index,
    preimage_lattice,
    standard_lattice,
)


def matrices(n_min=1, n_max=5, lo=-30, hi=30):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.integers(1, n_max).flatmap(
            lambda k: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=k, max_size=k)
        )
    )


def square(n_max=5):
    return st.integers(1, n_max).flatmap(
        lambda n: st.lists(st.lists(st.integers(-25, 25), min_size=n, max_size=n), min_size=n, max_size=n)
    )


def is_hnf(rows):
    pivots = []
    for row in rows:
        p = next(j for j, x in enumerate(row) if x)
        assert row[p] > 0
        pivots.append(p)
    assert pivots == sorted(set(pivots))
    for i, p in enumerate(pivots):
        for k in range(i):
            assert 0 <= rows[k][p] < rows[i][p]
    return True


def integrally_spans(basis, vectors):
    """Every vector is an integer combination of the (independent) basis rows."""
    B = Matrix(basis)
    for v in vectors:
        sol = B.T.gauss_jordan_solve(Matrix(v))[0]
        if any(not x.is_integer for x in sol):
            return False
    return True


@given(matrices())
def test_hnf_is_canonical_form(rows):
    H = hnf_rows(rows)
    assert not H or is_hnf(H)
    assert len(H) == Matrix(rows).rank()


@given(square())
def test_hnf_against_sympy(rows):
    A = Matrix(rows)
    assume(A.det() != 0)
    H = hnf_rows(rows)
    assert abs(Matrix(H).det()) == abs(A.det())
    assert integrally_spans(H, rows)
    assert integrally_spans(rows, H)


@given(matrices(n_max=4), st.randoms(use_true_random=False))
def test_hnf_invariant_under_row_operations(rows, rnd):
    mixed = [list(r) for r in rows]
    for _ in range(6):
        i, j = rnd.randrange(len(mixed)), rnd.randrange(len(mixed))
        if i != j:
            f = rnd.randint(-3, 3)
            mixed[i] = [a + f * b for a, b in zip(mixed[i], mixed[j])]
        rnd.shuffle(mixed)
    mixed = [[-x for x in r] if rnd.random() < 0.5 else r for r in mixed]
    assert hnf_rows(mixed) == hnf_rows(rows)


def test_sympy_random_batch():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(1, 6)
        rows = [[rng.randint(-99, 99) for _ in range(n)] for _ in range(n)]
        if Matrix(rows).det() == 0:
            continue
        H = hnf_rows(rows)
        assert abs(Matrix(H).det()) == abs(Matrix(rows).det())
        assert integrally_spans(H, rows) and integrally_spans(rows, H)


def test_rational_lattice_and_membership():
    L = from_rational_rows(2, [[Fraction(1, 2), 0], [0, 3]])
    assert L.den == 2
    assert L.contains([Fraction(1, 2), 3]) and not L.contains([Fraction(1, 4), 0])
    assert L.coordinates([1, 1]) == [2, Fraction(1, 3)]
    assert from_rational_rows(2, [[2, 4], [6, 8]]).den == 1


def test_equality_is_lattice_equality():
    assert hnf([[1, 2], [3, 4]]) == hnf([[1, 0], [0, 2]])
    assert hnf([[1, 2], [3, 4]]) != standard_lattice(2)


@given(square(4))
def test_preimage_is_dual(rows):
    A = Matrix(rows)
    assume(A.det() != 0)
    P = preimage_lattice(rows)
    for v in P.vectors():
        assert all(sum(Fraction(a) * x for a, x in zip(row, v)).denominator == 1 for row in rows)
    # [P : Z^n] equals |det A|
    assert index(standard_lattice(len(rows)), P) == abs(A.det())


def test_preimage_needs_full_rank():
    with pytest.raises(InvalidInput):
        preimage_lattice([[1, 1], [2, 2]])


def test_index_and_containment():
    L = from_integer_rows(3, [[2, 0, 0], [0, 3, 0], [0, 0, 1]])
    assert index(L, standard_lattice(3)) == 6
    with pytest.raises(NotContained):
        index(standard_lattice(3), L)
    assert (L + standard_lattice(3)) == standard_lattice(3)
    assert L.scaled(Fraction(1, 2)).contains([1, 0, 0])


def test_determinant():
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[2, 4], [1, 2]]) == 0


def test_json():
    L = from_rational_rows(2, [[Fraction(1, 3), 10**30], [0, 1]])
    doc = json.loads(json.dumps(L.to_json()))
    assert all(isinstance(x, str) for row in doc["basis"] for x in row)
    assert IntLattice.from_json(doc) == L
    with pytest.raises(InvalidInput):
        IntLattice.from_json({"dim": 2, "basis": [[1]], "den": "1"})
