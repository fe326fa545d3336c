"""Finite posets stored as boolean incidence matrices.

Elements are identified by position; labels are only used for input and
output.  Every predicate here is a plain function of a :class:`Poset`.
"""
from __future__ import annotations

from functools import cached_property, lru_cache
from itertools import permutations
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import PosetError

ElementSet = tuple  # ascending tuple of element indices

CANONICAL_BOUND = 8


class Poset:
    """Immutable finite partial order.

    ``leq[i, j]`` is True iff element ``i`` is below or equal to ``j``.
    Derived tables (joins, meets, covers, bit masks) are computed lazily and
    cached on the instance.
    """

    def __init__(self, labels: Sequence, leq, check: bool = True):
        labels = tuple(str(x) for x in labels)
        leq = np.array(leq, dtype=bool)
        n = len(labels)
        if leq.shape != (n, n):
            raise PosetError(f"incidence matrix has shape {leq.shape}, expected {(n, n)}")
        if len(set(labels)) != n:
            dup = sorted({x for x in labels if labels.count(x) > 1})
            raise PosetError(f"duplicate label(s): {', '.join(dup)}")
        if check:
            _check_partial_order(leq)
        leq.flags.writeable = False
        self.labels = labels
        self.leq = leq

    @classmethod
    def from_covers(cls, labels: Sequence, covers: Iterable[tuple]) -> "Poset":
        """Build the order generated by ``covers`` (pairs ``(lower, upper)``)."""
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            dup = sorted({x for x in labels if labels.count(x) > 1})
            raise PosetError(f"duplicate label(s): {', '.join(dup)}")
        index = {x: i for i, x in enumerate(labels)}
        n = len(labels)
        rel = np.eye(n, dtype=bool)
        for lo, hi in covers:
            for x in (lo, hi):
                if str(x) not in index:
                    raise PosetError(f"unknown label {x!r}")
            rel[index[str(lo)], index[str(hi)]] = True
        closure = transitive_closure(rel)
        off = closure & closure.T & ~np.eye(n, dtype=bool)
        if off.any():
            i, j = map(int, np.argwhere(off)[0])
            raise PosetError(f"cycle detected through {labels[i]!r} and {labels[j]!r}")
        return cls(labels, closure, check=False)

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls(range(n), np.triu(np.ones((n, n), dtype=bool)))

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls(range(n), np.eye(n, dtype=bool))

    # -- identity -------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.leq, other.leq)

    def __hash__(self):
        return hash((self.labels, self.leq.tobytes()))

    def __repr__(self):
        covers = " ".join(f"{self.labels[i]}<{self.labels[j]}" for i, j in self.cover_pairs)
        return f"Poset(elements={' '.join(self.labels)}; covers={covers})"

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise PosetError(f"unknown label {label!r}") from None

    def ids(self, labels: Iterable) -> ElementSet:
        """Indices of ``labels`` as an ascending tuple."""
        return tuple(sorted({self.index(x) for x in labels}))

    def names(self, s: Iterable[int]) -> list[str]:
        return [self.labels[i] for i in sorted(s)]

    def format_set(self, s: Iterable[int]) -> str:
        return "{" + ",".join(self.names(s)) + "}"

    @cached_property
    def _index(self):
        return {x: i for i, x in enumerate(self.labels)}

    # -- cached tables --------------------------------------------------

    @cached_property
    def down(self) -> tuple[int, ...]:
        """Bit mask of the principal ideal of each element."""
        return tuple(_mask(np.flatnonzero(self.leq[:, j])) for j in range(self.n))

    @cached_property
    def up(self) -> tuple[int, ...]:
        """Bit mask of the principal filter of each element."""
        return tuple(_mask(np.flatnonzero(self.leq[i, :])) for i in range(self.n))

    @cached_property
    def cover(self) -> np.ndarray:
        """``cover[i, j]`` iff ``j`` covers ``i``."""
        lt = self.leq & ~np.eye(self.n, dtype=bool)
        between = (lt.astype(np.int32) @ lt.astype(np.int32)) > 0
        out = lt & ~between
        out.flags.writeable = False
        return out

    @cached_property
    def cover_pairs(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in np.argwhere(self.cover)]

    @cached_property
    def join_table(self) -> np.ndarray:
        """``join_table[i, j]`` is the index of the join, or -1 if absent."""
        return _bound_table(self.leq)

    @cached_property
    def meet_table(self) -> np.ndarray:
        return _bound_table(self.leq.T)

    def restrict(self, s: Iterable[int]) -> "Poset":
        """The sub-poset induced on ``s`` (order inherited, joins recomputed)."""
        idx = sorted(set(s))
        return Poset([self.labels[i] for i in idx], self.leq[np.ix_(idx, idx)], check=False)

    def dual(self) -> "Poset":
        return Poset(self.labels, self.leq.T, check=False)

    def permute(self, perm: Sequence[int]) -> "Poset":
        """Relabel so that new element ``k`` is old element ``perm[k]``."""
        perm = list(perm)
        return Poset([self.labels[i] for i in perm], self.leq[np.ix_(perm, perm)], check=False)


def _mask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def transitive_closure(rel: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure of a boolean relation (Warshall)."""
    r = np.array(rel, dtype=bool) | np.eye(len(rel), dtype=bool)
    for k in range(len(r)):
        r |= np.outer(r[:, k], r[k, :])
    return r


def _check_partial_order(leq: np.ndarray) -> None:
    n = len(leq)
    if not leq.diagonal().all():
        raise PosetError("relation is not reflexive")
    if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
        raise PosetError("relation is not antisymmetric")
    li = leq.astype(np.int32)
    if (((li @ li) > 0) & ~leq).any():
        raise PosetError("relation is not transitive")


def _bound_table(leq: np.ndarray) -> np.ndarray:
    # least upper bound w.r.t. leq; call with leq.T for greatest lower bound
    n = len(leq)
    out = np.full((n, n), -1, dtype=np.int64)
    for i in range(n):
        for j in range(i, n):
            ub = np.flatnonzero(leq[i] & leq[j])
            for c in ub:
                if leq[c, ub].all():
                    out[i, j] = out[j, i] = c
                    break
    out.flags.writeable = False
    return out


# -- order-theoretic predicates ------------------------------------------


def join(p: Poset, x: int, y: int) -> Optional[int]:
    """Least upper bound of ``x`` and ``y``, or None when it does not exist."""
    j = int(p.join_table[x, y])
    return None if j < 0 else j


def meet(p: Poset, x: int, y: int) -> Optional[int]:
    m = int(p.meet_table[x, y])
    return None if m < 0 else m


def interval(p: Poset, a: int, b: int) -> ElementSet:
    """The closed interval ``[a, b]``."""
    if not p.leq[a, b]:
        raise PosetError(f"{p.labels[a]} is not below {p.labels[b]}")
    return tuple(bits(p.up[a] & p.down[b]))


def lower_bounds(p: Poset, s: Iterable[int]) -> int:
    m = (1 << p.n) - 1
    for x in s:
        m &= p.down[x]
    return m


def upper_bounds(p: Poset, s: Iterable[int]) -> int:
    m = (1 << p.n) - 1
    for x in s:
        m &= p.up[x]
    return m


def is_directed(p: Poset, s: Iterable[int]) -> bool:
    s = list(s)
    sm = _mask(s)
    for i, x in enumerate(s):
        for y in s[i + 1:]:
            if not (p.down[x] & p.down[y] & sm) or not (p.up[x] & p.up[y] & sm):
                return False
    return True


def is_convex(p: Poset, s: Iterable[int]) -> bool:
    s = list(s)
    sm = _mask(s)
    for x in s:
        for y in s:
            if p.leq[x, y] and (p.up[x] & p.down[y]) & ~sm:
                return False
    return True


def bottom(p: Poset, s: Optional[Iterable[int]] = None) -> Optional[int]:
    """The least element of ``s`` (default: the whole carrier), if any."""
    s = range(p.n) if s is None else list(s)
    sm = _mask(s)
    for x in s:
        if p.up[x] & sm == sm:
            return x
    return None


def top(p: Poset, s: Optional[Iterable[int]] = None) -> Optional[int]:
    s = range(p.n) if s is None else list(s)
    sm = _mask(s)
    for x in s:
        if p.down[x] & sm == sm:
            return x
    return None


def is_lattice(p: Poset) -> bool:
    return bool((p.join_table >= 0).all() and (p.meet_table >= 0).all())


def is_complemented(p: Poset) -> bool:
    """Bounded and every element has a complement.  False without bounds."""
    lo, hi = bottom(p), top(p)
    if lo is None or hi is None:
        return False
    J, M = p.join_table, p.meet_table
    return all(
        any(J[x, y] == hi and M[x, y] == lo for y in range(p.n)) for x in range(p.n)
    )


def is_relatively_complemented(p: Poset) -> bool:
    """Every interval, taken as a poset in its own right, is complemented."""
    for a in range(p.n):
        for b in bits(p.up[a]):
            if not is_complemented(p.restrict(interval(p, a, b))):
                return False
    return True


# -- canonical form ------------------------------------------------------


@lru_cache(maxsize=None)
def _perm_table(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)


def canonical_form(p: Poset, bound: int = CANONICAL_BOUND) -> tuple[tuple[int, ...], ...]:
    """Row-major lexicographically least incidence matrix over all relabelings."""
    n = p.n
    if n > bound:
        raise PosetError(f"canonical form limited to {bound} elements, got {n}")
    if n == 0:
        return ()
    perms = _perm_table(n)
    stack = p.leq[perms[:, :, None], perms[:, None, :]].reshape(len(perms), n * n)
    # lexsort uses the last key as primary
    best = np.lexsort(stack.T[::-1])[0]
    return tuple(tuple(int(v) for v in row) for row in stack[best].reshape(n, n))


def canonical_key(p: Poset) -> str:
    """Canonical form flattened to a 0/1 string, handy as a sort key."""
    return "".join("".join(map(str, row)) for row in canonical_form(p))


def from_canonical(form, labels: Optional[Sequence] = None) -> Poset:
    n = len(form)
    return Poset(range(n) if labels is None else labels, np.array(form, dtype=bool).reshape(n, n))
