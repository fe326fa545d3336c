"""Reflexive symmetric relations on a poset and the tolerance conditions.

A relation ``T`` on a poset ``P`` is a *tolerance* when it is reflexive,
symmetric and satisfies

1. ``(x,y),(z,u) in T`` and both joins ``x|z``, ``y|u`` exist  =>  ``(x|z, y|u) in T``
2. the same with meets;
3. unless ``T = P^2``: ``(x,y),(y,z) in T`` => some ``u <= x,y,z <= v`` with
   ``(u,y),(y,v) in T``;
4. unless ``T = P^2``: ``(x,y) in T`` => some ``(z,w) in T`` with
   ``z <= x,y <= w`` such that every common neighbour of ``x`` and ``y`` is
   also a neighbour of both ``z`` and ``w``.

A congruence is a transitive tolerance.  Blocks are maximal cliques.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from .errors import RelationError
from .order import ElementSet, Poset, _mask, bits


class BinaryRelation:
    """A reflexive symmetric relation on the carrier of ``poset``.

    ``pairs[i, j]`` is True iff ``(i, j)`` is in the relation.  Pass
    ``check=False`` to hold a relation that is not reflexive or symmetric
    (only useful for diagnostics; most operations assume both).
    """

    def __init__(self, poset: Poset, pairs, check: bool = True):
        pairs = np.array(pairs, dtype=bool)
        if pairs.shape != (poset.n, poset.n):
            raise RelationError(f"relation matrix has shape {pairs.shape}, expected {(poset.n, poset.n)}")
        if check:
            if not pairs.diagonal().all():
                raise RelationError("relation is not reflexive")
            if (pairs != pairs.T).any():
                raise RelationError("relation is not symmetric")
        pairs.flags.writeable = False
        self.poset = poset
        self.pairs = pairs

    def __eq__(self, other):
        if not isinstance(other, BinaryRelation):
            return NotImplemented
        return self.poset == other.poset and np.array_equal(self.pairs, other.pairs)

    def __hash__(self):
        return hash(self.pairs.tobytes())

    def __le__(self, other: "BinaryRelation") -> bool:
        return bool((self.pairs <= other.pairs).all())

    def __lt__(self, other: "BinaryRelation") -> bool:
        return self <= other and self != other

    def __and__(self, other: "BinaryRelation") -> "BinaryRelation":
        return BinaryRelation(self.poset, self.pairs & other.pairs)

    def __or__(self, other: "BinaryRelation") -> "BinaryRelation":
        return BinaryRelation(self.poset, self.pairs | other.pairs)

    def __contains__(self, pair) -> bool:
        x, y = pair
        return bool(self.pairs[x, y])

    def __repr__(self):
        return f"BinaryRelation({self.describe()})"

    def describe(self) -> str:
        """Clique presentation using the poset's labels, e.g. ``{0,a} {b,c}``."""
        big = [b for b in blocks(self.poset, self) if len(b) > 1]
        return " ".join(self.poset.format_set(b) for b in big) or "{}"

    @cached_property
    def rows(self) -> tuple[int, ...]:
        return tuple(_mask(np.flatnonzero(r)) for r in self.pairs)

    @cached_property
    def size(self) -> int:
        return int(self.pairs.sum())

    @property
    def is_full(self) -> bool:
        return bool(self.pairs.all())

    @property
    def is_diagonal(self) -> bool:
        return self.size == self.poset.n

    @property
    def is_trivial(self) -> bool:
        return self.is_full or self.is_diagonal

    @cached_property
    def is_transitive(self) -> bool:
        r = self.pairs.astype(np.int32)
        return not (((r @ r) > 0) & ~self.pairs).any()

    def key(self) -> bytes:
        return np.packbits(self.pairs).tobytes()


def diagonal(p: Poset) -> BinaryRelation:
    return BinaryRelation(p, np.eye(p.n, dtype=bool))


def full(p: Poset) -> BinaryRelation:
    return BinaryRelation(p, np.ones((p.n, p.n), dtype=bool))


def from_cliques(p: Poset, cliques: Iterable[Iterable[int]]) -> BinaryRelation:
    """The diagonal together with ``C x C`` for each clique ``C``."""
    m = np.eye(p.n, dtype=bool)
    for c in cliques:
        idx = list(c)
        for i in idx:
            if not 0 <= i < p.n:
                raise RelationError(f"element index {i} outside carrier of size {p.n}")
        m[np.ix_(idx, idx)] = True
    return BinaryRelation(p, m)


def from_label_cliques(p: Poset, cliques: Iterable[Iterable[str]]) -> BinaryRelation:
    return from_cliques(p, [p.ids(c) for c in cliques])


# -- conditions ------------------------------------------------------------


@dataclass(frozen=True)
class ConditionWitness:
    """A tuple of elements on which one condition fails.

    ``condition`` is 1-4 for the tolerance conditions and 0 for a failure of
    reflexivity or symmetry.  ``elements`` is ``(x, y, z, u)`` for conditions
    1 and 2, ``(x, y, z)`` for 3 and ``(x, y)`` for 4 and 0.
    """

    condition: int
    elements: tuple[int, ...]
    reason: str

    def format(self, p: Poset) -> str:
        names = ", ".join(p.labels[i] for i in self.elements)
        return f"condition {self.condition} fails at ({names}): {self.reason}"


def _padded(t: BinaryRelation) -> np.ndarray:
    # extra row/column of True absorbs the -1 "no bound" entries of a bound table
    n = t.poset.n
    pad = np.ones((n + 1, n + 1), dtype=bool)
    pad[:n, :n] = t.pairs
    return pad


def _bound_violations(t: BinaryRelation, table: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    X, Y = np.nonzero(t.pairs)  # row-major, hence lexicographic
    BX = table[X[:, None], X[None, :]]
    BY = table[Y[:, None], Y[None, :]]
    bad = ~_padded(t)[BX, BY]
    return bad, X, Y


def _check_bounds(p: Poset, t: BinaryRelation, k: int) -> Optional[ConditionWitness]:
    table = p.join_table if k == 1 else p.meet_table
    bad, X, Y = _bound_violations(t, table)
    hits = np.argwhere(bad)
    if not len(hits):
        return None
    i, j = hits[0]
    elems = (int(X[i]), int(Y[i]), int(X[j]), int(Y[j]))
    return ConditionWitness(k, elems, "join pair not related" if k == 1 else "meet pair not related")


def _check_three(p: Poset, t: BinaryRelation) -> Optional[ConditionWitness]:
    rows, down, up = t.rows, p.down, p.up
    for x in range(p.n):
        for y in bits(rows[x]):
            lo_xy, hi_xy = down[x] & down[y] & rows[y], up[x] & up[y] & rows[y]
            for z in bits(rows[y]):
                if not lo_xy & down[z]:
                    return ConditionWitness(3, (x, y, z), "no related common lower bound")
                if not hi_xy & up[z]:
                    return ConditionWitness(3, (x, y, z), "no related common upper bound")
    return None


def _check_four(p: Poset, t: BinaryRelation) -> Optional[ConditionWitness]:
    rows, down, up = t.rows, p.down, p.up
    for x in range(p.n):
        for y in bits(rows[x]):
            common = rows[x] & rows[y]
            lows = [z for z in bits(down[x] & down[y]) if rows[z] & common == common]
            highs = _mask(u for u in bits(up[x] & up[y]) if rows[u] & common == common)
            if not any(rows[z] & highs for z in lows):
                return ConditionWitness(4, (x, y), "no enclosing related pair")
    return None


def _check_reflexive_symmetric(t: BinaryRelation) -> Optional[ConditionWitness]:
    pairs = t.pairs
    for i in range(len(pairs)):
        if not pairs[i, i]:
            return ConditionWitness(0, (i, i), "not reflexive")
    asym = np.argwhere(pairs != pairs.T)
    if len(asym):
        i, j = map(int, asym[0])
        return ConditionWitness(0, (i, j), "not symmetric")
    return None


def check_condition(p: Poset, t: BinaryRelation, k: int) -> Optional[ConditionWitness]:
    """Check tolerance condition ``k`` (1-4).

    Returns None when the condition holds, otherwise the lexicographically
    least violating tuple.  Conditions 3 and 4 hold vacuously for the full
    relation.
    """
    if k in (1, 2):
        return _check_bounds(p, t, k)
    if k in (3, 4):
        if t.is_full:
            return None
        return _check_three(p, t) if k == 3 else _check_four(p, t)
    raise ValueError(f"condition must be 1..4, got {k}")


def tolerance_witness(p: Poset, t: BinaryRelation) -> Optional[ConditionWitness]:
    """First failure among reflexivity/symmetry and conditions 1-4, or None."""
    w = _check_reflexive_symmetric(t)
    if w is not None:
        return w
    for k in (1, 2, 3, 4):
        w = check_condition(p, t, k)
        if w is not None:
            return w
    return None


def is_tolerance(p: Poset, t: BinaryRelation) -> bool:
    return tolerance_witness(p, t) is None


def is_congruence(p: Poset, t: BinaryRelation) -> bool:
    return is_tolerance(p, t) and t.is_transitive


def replay_witness(p: Poset, t: BinaryRelation, w: ConditionWitness) -> bool:
    """True iff ``w`` really violates its condition for ``t``.

    Written directly from the definitions with no shared code paths, so it
    can be used to audit :func:`check_condition`.
    """
    T, leq, n = t.pairs, p.leq, p.n
    if w.condition == 0:
        x, y = w.elements
        return not T[x, x] if x == y else T[x, y] != T[y, x]
    if w.condition in (1, 2):
        x, y, z, u = w.elements
        if not (T[x, y] and T[z, u]):
            return False
        bound = p.join_table if w.condition == 1 else p.meet_table
        a, b = bound[x, z], bound[y, u]
        return a >= 0 and b >= 0 and not T[a, b]
    if t.is_full:
        return False
    if w.condition == 3:
        x, y, z = w.elements
        if not (T[x, y] and T[y, z]):
            return False
        below = [v for v in range(n) if leq[v, x] and leq[v, y] and leq[v, z] and T[v, y]]
        above = [v for v in range(n) if leq[x, v] and leq[y, v] and leq[z, v] and T[y, v]]
        return not (below and above)
    if w.condition == 4:
        x, y = w.elements
        if not T[x, y]:
            return False
        nbrs = [v for v in range(n) if T[v, x] and T[v, y]]
        for z in range(n):
            for u in range(n):
                if (T[z, u] and leq[z, x] and leq[z, y] and leq[x, u] and leq[y, u]
                        and all(T[v, z] and T[v, u] for v in nbrs)):
                    return False
        return True
    return False


# -- closure under conditions 1 and 2 -------------------------------------


def close_under_bounds(p: Poset, pairs: np.ndarray) -> np.ndarray:
    """Smallest superset of ``pairs`` (reflexive) closed under conditions 1 and 2."""
    n = p.n
    pad = np.ones((n + 1, n + 1), dtype=bool)
    pad[:n, :n] = pairs | np.eye(n, dtype=bool)
    pad[n, :] = pad[:, n] = False
    while True:
        X, Y = np.nonzero(pad[:n, :n])
        before = int(pad.sum())
        for table in (p.join_table, p.meet_table):
            BX = table[X[:, None], X[None, :]]
            BY = table[Y[:, None], Y[None, :]]
            pad[BX, BY] = True
            pad[n, :] = pad[:, n] = False
        if int(pad.sum()) == before:
            return pad[:n, :n].copy()


# -- blocks ----------------------------------------------------------------


def maximal_cliques(adj: list[int], n: int) -> list[ElementSet]:
    """Maximal cliques of a graph given as neighbour bit masks (no self loops).

    Bron-Kerbosch with Tomita pivoting; the output is sorted.
    """
    out: list[ElementSet] = []

    def expand(r: int, cand: int, excl: int) -> None:
        if not cand and not excl:
            out.append(tuple(bits(r)))
            return
        pivot = max(bits(cand | excl), key=lambda v: ((cand & adj[v]).bit_count(), -v))
        for v in bits(cand & ~adj[pivot]):
            expand(r | (1 << v), cand & adj[v], excl & adj[v])
            cand &= ~(1 << v)
            excl |= 1 << v

    if n:
        expand(0, (1 << n) - 1, 0)
    return sorted(out)


def blocks(p: Poset, t: BinaryRelation) -> list[ElementSet]:
    """All blocks (maximal ``B`` with ``B x B`` inside ``t``), sorted."""
    adj = [r & ~(1 << i) for i, r in enumerate(t.rows)]
    return maximal_cliques(adj, p.n)


def relation_from_blocks(p: Poset, bs: Iterable[ElementSet]) -> BinaryRelation:
    return from_cliques(p, bs)
