"""Finite sets with an action of the multiplicative monoid Z/r."""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd, lcm

import numpy as np
from sympy import divisors

from . import kernels
from .errors import (
    AssociativityViolated,
    IdentityAxiomViolated,
    InvalidInput,
    LevelMismatch,
)


def _frozen(table):
    arr = np.array(table, dtype=np.int64, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class MSet:
    """A set ``{0, ..., size-1}`` acted on by ``Z/level`` under multiplication.

    ``action[a, s]`` is the image of point ``s`` under residue ``a``.
    Construct through :func:`make_mset` to get the axioms checked.
    """

    level: int
    size: int
    action: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, MSet):
            return NotImplemented
        return (
            self.level == other.level
            and self.size == other.size
            and np.array_equal(self.action, other.action)
        )

    def __hash__(self):
        return hash((self.level, self.size, self.action.tobytes()))

    def __repr__(self):
        return f"MSet(level={self.level}, size={self.size})"

    def act(self, a, s):
        return int(self.action[a % self.level, s])

    def unit_orbits(self):
        """Orbits of the unit group, each sorted, ordered by smallest point."""
        units = [u for u in range(self.level) if gcd(u, self.level) == 1]
        seen = set()
        orbits = []
        for s in range(self.size):
            if s in seen:
                continue
            orbit = sorted({int(self.action[u, s]) for u in units})
            seen.update(orbit)
            orbits.append(tuple(orbit))
        return orbits

    def stabilizer(self, s):
        """Units of Z/level fixing ``s``."""
        return tuple(
            u
            for u in range(self.level)
            if gcd(u, self.level) == 1 and self.action[u, s] == s
        )

    def to_json(self):
        return {
            "level": self.level,
            "size": self.size,
            "action": self.action.tolist(),
        }

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            r, n, table = int(doc["level"]), int(doc["size"]), doc["action"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"bad MSet document: {exc}") from exc
        if r < 1 or len(table) != r or any(len(row) != n for row in table):
            raise InvalidInput("action table must have level rows of size entries")
        return make_mset(r, table)


@dataclass(frozen=True, eq=False)
class MSetMap:
    """Equivariant map ``source -> target`` given by ``values[s]``."""

    source: MSet
    target: MSet
    values: tuple

    def __post_init__(self):
        if self.source.level != self.target.level:
            raise LevelMismatch("source and target must share a level; lift first")
        if len(self.values) != self.source.size:
            raise InvalidInput("one value per source point required")
        if any(not 0 <= v < self.target.size for v in self.values):
            raise InvalidInput("value outside target")
        vals = np.asarray(self.values, dtype=np.int64).reshape(-1)
        lhs = vals[self.source.action] if self.source.size else vals
        rhs = self.target.action[:, vals] if self.source.size else vals
        if self.source.size and not np.array_equal(lhs, rhs):
            raise InvalidInput("map is not equivariant")

    def __call__(self, s):
        return self.values[s]


def make_mset(level, table):
    """Validate an action table and wrap it.

    >>> make_mset(1, [[0]]).size
    1
    """
    if level < 1:
        raise InvalidInput("level must be positive")
    arr = np.array(table, dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(level, 0)
    if arr.ndim != 2 or arr.shape[0] != level:
        raise InvalidInput(f"expected {level} rows, got shape {arr.shape}")
    n = arr.shape[1]
    if n and (arr.min() < 0 or arr.max() >= n):
        raise InvalidInput("table entries must lie in 0..size-1")
    code, a, b, s = kernels.validate_action(arr)
    if code == 1:
        raise IdentityAxiomViolated(s)
    if code == 2:
        raise AssociativityViolated(a, b, s)
    return MSet(level, n, _frozen(arr))


def regular_mset(r):
    """``Z/r`` acting on itself; corresponds to ``Q[mu_r]``."""
    idx = np.arange(r, dtype=np.int64)
    return MSet(r, r, _frozen(np.outer(idx, idx) % r))


def trivial_mset(r, n):
    return MSet(r, n, _frozen(np.tile(np.arange(n, dtype=np.int64), (r, 1))))


def empty_mset(r=1):
    return MSet(r, 0, _frozen(np.zeros((r, 0), dtype=np.int64)))


def lift(S, level):
    """View ``S`` as a ``Z/level``-set through reduction mod ``S.level``."""
    if level % S.level:
        raise LevelMismatch(f"{level} is not a multiple of {S.level}")
    rows = np.arange(level) % S.level
    return MSet(level, S.size, _frozen(S.action[rows]))


def _common(S, T, auto_lift):
    if S.level == T.level:
        return S, T
    if not auto_lift:
        raise LevelMismatch(f"levels {S.level} and {T.level} differ")
    m = lcm(S.level, T.level)
    return lift(S, m), lift(T, m)


def product(S, T, auto_lift=True):
    """Diagonal action on pairs; point ``(s, t)`` has index ``s * |T| + t``."""
    S, T = _common(S, T, auto_lift)
    r = S.level
    if S.size == 0 or T.size == 0:
        return empty_mset(r)
    table = S.action[:, :, None] * T.size + T.action[:, None, :]
    return MSet(r, S.size * T.size, _frozen(table.reshape(r, -1)))


def coproduct(S, T, auto_lift=True):
    S, T = _common(S, T, auto_lift)
    table = np.concatenate([S.action, T.action + S.size], axis=1)
    return MSet(S.level, S.size + T.size, _frozen(table))


def image(f):
    """Epi-mono factorization of ``f``.

    Returns ``(I, surjection, injection)`` where ``I`` carries the action
    induced from the target on the set-image of ``f``.
    """
    pts = sorted(set(f.values))
    index = {t: i for i, t in enumerate(pts)}
    r = f.target.level
    table = [[index[int(f.target.action[a, t])] for t in pts] for a in range(r)]
    I = MSet(r, len(pts), _frozen(np.array(table, dtype=np.int64).reshape(r, len(pts))))
    surj = MSetMap(f.source, I, tuple(index[v] for v in f.values))
    inj = MSetMap(I, f.target, tuple(pts))
    return I, surj, inj


def identity_map(S):
    return MSetMap(S, S, tuple(range(S.size)))


def free_cover(S):
    """Surjection ``coprod_S regular(r) -> S``, ``(s, a) -> a s``.

    Point ``(s, a)`` of the cover has index ``s * r + a``.
    """
    r = S.level
    cover = empty_mset(r)
    for _ in range(S.size):
        cover = coproduct(cover, regular_mset(r))
    values = tuple(S.act(a, s) for s in range(S.size) for a in range(r))
    return MSetMap(cover, S, values)


def zero_image(S):
    """The subset ``0S``; every point in it is fixed by all residues."""
    return tuple(sorted(set(S.action[0].tolist())))


def psi_minus_one(S):
    """Permutation by the residue ``-1`` (complex conjugation)."""
    return tuple(S.action[(S.level - 1) % S.level].tolist())


def factors_through(S, d):
    """Whether the action of ``S`` only depends on residues mod ``d``."""
    if S.level % d:
        return False
    rows = np.arange(S.level) % d
    return bool(np.array_equal(S.action, S.action[rows]))


def minimal_level(S):
    """Smallest divisor ``d`` of the level through which the action factors,
    together with the reduced ``Z/d``-set."""
    for d in divisors(S.level):
        if factors_through(S, d):
            return d, make_mset(d, S.action[:d])
    raise AssertionError("unreachable: the level itself always works")


def factoring_levels(S):
    return [d for d in divisors(S.level) if factors_through(S, d)]


def isomorphism(S, T):
    """An equivariant bijection ``S -> T`` as a tuple, or None.

    Backtracking with forward propagation: fixing ``s -> t`` forces
    ``a s -> a t`` for every residue ``a``.
    """
    if S.size != T.size:
        return None
    if S.level != T.level:
        m = lcm(S.level, T.level)
        S, T = lift(S, m), lift(T, m)
    n, r = S.size, S.level
    sa, ta = S.action.tolist(), T.action.tolist()

    def signature(table, s):
        # orbit size under the whole monoid and fixed residues
        return (
            len({table[a][s] for a in range(r)}),
            tuple(a for a in range(r) if table[a][s] == s),
        )

    sig_s = [signature(sa, s) for s in range(n)]
    sig_t = [signature(ta, t) for t in range(n)]
    if sorted(sig_s) != sorted(sig_t):
        return None

    def assign(fwd, bwd, s, t):
        stack = [(s, t)]
        while stack:
            x, y = stack.pop()
            if fwd[x] is not None:
                if fwd[x] != y:
                    return False
                continue
            if bwd[y] is not None or sig_s[x] != sig_t[y]:
                return False
            fwd[x], bwd[y] = y, x
            for a in range(r):
                stack.append((sa[a][x], ta[a][y]))
        return True

    def search(fwd, bwd):
        try:
            s = fwd.index(None)
        except ValueError:
            return tuple(fwd)
        for t in range(n):
            if bwd[t] is None and sig_s[s] == sig_t[t]:
                f2, b2 = list(fwd), list(bwd)
                if assign(f2, b2, s, t):
                    found = search(f2, b2)
                    if found is not None:
                        return found
        return None

    return search([None] * n, [None] * n)


def is_isomorphic(S, T):
    return isomorphism(S, T) is not None
