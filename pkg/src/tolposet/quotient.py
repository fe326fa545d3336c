"""Quotient posets ``P/T`` and the block operations on lattices."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import PosetError, RelationError, TheoremFalsification
from .order import ElementSet, Poset, _mask, bits, interval, is_lattice
from .relations import BinaryRelation, blocks, tolerance_witness


def block_leq(p: Poset, b1: ElementSet, b2: ElementSet) -> bool:
    """``b1 ⊑ b2``: every member of ``b1`` lies below some member of ``b2``
    and every member of ``b2`` lies above some member of ``b1``."""
    m1, m2 = _mask(b1), _mask(b2)
    return all(p.up[x] & m2 for x in b1) and all(p.down[y] & m1 for y in b2)


def block_order(p: Poset, bs: Sequence[ElementSet]) -> np.ndarray:
    m = len(bs)
    out = np.zeros((m, m), dtype=bool)
    for i in range(m):
        for j in range(m):
            out[i, j] = block_leq(p, bs[i], bs[j])
    return out


def _order_defects(order: np.ndarray) -> list[str]:
    m = len(order)
    defects = []
    if not order.diagonal().all():
        defects.append(f"not reflexive at block {int(np.flatnonzero(~order.diagonal())[0])}")
    anti = np.argwhere(order & order.T & ~np.eye(m, dtype=bool))
    if len(anti):
        defects.append(f"not antisymmetric at blocks {tuple(map(int, anti[0]))}")
    o = order.astype(np.int32)
    trans = np.argwhere(((o @ o) > 0) & ~order)
    if len(trans):
        defects.append(f"not transitive at blocks {tuple(map(int, trans[0]))}")
    return defects


@dataclass(frozen=True, eq=False)
class QuotientPoset:
    """The blocks of a tolerance ordered by ⊑.

    ``order[i, j]`` is ``block_leq(blocks[i], blocks[j])``.  :attr:`poset`
    exposes the same data as an ordinary :class:`Poset` whose labels are the
    blocks written as ``{a,b,c}``, so relations on ``P/T`` can be handled by
    the relation code unchanged.
    """

    source: Poset
    relation: BinaryRelation
    blocks: tuple[ElementSet, ...]
    order: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.blocks)

    @cached_property
    def poset(self) -> Poset:
        labels = [self.source.format_set(b) for b in self.blocks]
        return Poset(labels, self.order, check=False)

    def index(self, block: ElementSet) -> int:
        return self.blocks.index(tuple(sorted(block)))

    def leq(self, b1: ElementSet, b2: ElementSet) -> bool:
        return bool(self.order[self.index(b1), self.index(b2)])

    def cover_pairs(self) -> list[tuple[int, int]]:
        return self.poset.cover_pairs


def quotient_poset(p: Poset, t: BinaryRelation) -> QuotientPoset:
    """Build ``P/T`` and check that ⊑ really is a partial order.

    Raises :class:`RelationError` if ``t`` is not a tolerance and
    :class:`TheoremFalsification` if ⊑ fails to be a partial order.
    """
    w = tolerance_witness(p, t)
    if w is not None:
        raise RelationError(f"not a tolerance: {w.format(p)}")
    bs = tuple(blocks(p, t))
    order = block_order(p, bs)
    defects = _order_defects(order)
    if defects:
        raise TheoremFalsification(f"block order on {t.describe()} is not a partial order: {'; '.join(defects)}")
    order.flags.writeable = False
    return QuotientPoset(p, t, bs, order)


def interval_block_leq(p: Poset, a: int, b: int, c: int, d: int) -> bool:
    """Compare interval blocks ``[a,b]`` and ``[c,d]`` by their end points.

    Also evaluates :func:`block_leq` on the same intervals and raises
    :class:`TheoremFalsification` if the two answers differ.
    """
    if not (p.leq[a, b] and p.leq[c, d]):
        raise PosetError("end points do not form intervals")
    by_ends = bool(p.leq[a, c] and p.leq[b, d])
    direct = block_leq(p, interval(p, a, b), interval(p, c, d))
    if by_ends != direct:
        raise TheoremFalsification(
            f"[{p.labels[a]},{p.labels[b]}] vs [{p.labels[c]},{p.labels[d]}]: "
            f"end point comparison gives {by_ends}, block order gives {direct}"
        )
    return direct


def _absorbing_block(p: Poset, bs, b1, b2, table, what: str) -> ElementSet:
    if not is_lattice(p):
        raise PosetError("block joins and meets are only defined on lattices")
    values = _mask(int(table[x, y]) for x in b1 for y in b2)
    hits = [b for b in bs if values & ~_mask(b) == 0]
    if len(hits) != 1:
        raise TheoremFalsification(
            f"{len(hits)} blocks contain every pairwise {what} of "
            f"{p.format_set(b1)} and {p.format_set(b2)}"
        )
    return hits[0]


def czedli_join(p: Poset, t: BinaryRelation, b1: ElementSet, b2: ElementSet) -> ElementSet:
    """The unique block containing ``x ∨ y`` for every ``x`` in ``b1``, ``y`` in ``b2``."""
    return _absorbing_block(p, blocks(p, t), b1, b2, p.join_table, "join")


def czedli_meet(p: Poset, t: BinaryRelation, b1: ElementSet, b2: ElementSet) -> ElementSet:
    return _absorbing_block(p, blocks(p, t), b1, b2, p.meet_table, "meet")


def orders_coincide(p: Poset, t: BinaryRelation) -> bool:
    """Whether ⊑ equals the order induced by the block join and meet."""
    if not is_lattice(p):
        raise PosetError("block joins and meets are only defined on lattices")
    bs = blocks(p, t)
    for b1 in bs:
        for b2 in bs:
            via_ops = (_absorbing_block(p, bs, b1, b2, p.join_table, "join") == b2
                       and _absorbing_block(p, bs, b1, b2, p.meet_table, "meet") == b1)
            if via_ops != block_leq(p, b1, b2):
                return False
    return True


def hasse_dot(p: Poset, name: str = "P") -> str:
    """Graphviz source for the Hasse diagram of ``p`` (edges point upward)."""
    lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
    for i, lab in enumerate(p.labels):
        lines.append(f'  n{i} [label="{lab}"];')
    for i, j in p.cover_pairs:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def quotient_dot(q: QuotientPoset, name: str = "quotient") -> str:
    return hasse_dot(q.poset, name)
