"""Refinement of tolerances and quotients of quotients.

For tolerances ``S`` and ``T`` on the same poset, ``S ≤ T`` means every block
of ``S`` sits inside exactly one block of ``T`` and every block of ``T`` is a
union of blocks of ``S``.  In that case ``T/S`` relates two ``S``-blocks when
some ``T``-block contains both; it lives on the quotient poset ``P/S``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import RelationError, TheoremFalsification
from .order import ElementSet, Poset, _mask, _perm_table
from .quotient import QuotientPoset, quotient_poset
from .relations import BinaryRelation, blocks, is_congruence, tolerance_witness

FACTORIAL_BOUND = 8


@dataclass(frozen=True, eq=False)
class RefinementPair:
    poset: Poset
    s: BinaryRelation
    t: BinaryRelation
    s_blocks: tuple[ElementSet, ...]
    t_blocks: tuple[ElementSet, ...]
    # containment[i]: indices of the T-blocks that contain S-block i
    containment: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, p: Poset, s: BinaryRelation, t: BinaryRelation,
              s_blocks: Optional[Sequence[ElementSet]] = None,
              t_blocks: Optional[Sequence[ElementSet]] = None) -> "RefinementPair":
        sb = tuple(blocks(p, s) if s_blocks is None else s_blocks)
        tb = tuple(blocks(p, t) if t_blocks is None else t_blocks)
        tmasks = [_mask(b) for b in tb]
        containment = tuple(
            tuple(j for j, tm in enumerate(tmasks) if _mask(b) & ~tm == 0) for b in sb
        )
        return cls(p, s, t, sb, tb, containment)

    @property
    def unique_containment(self) -> bool:
        return all(len(c) == 1 for c in self.containment)

    @property
    def unions(self) -> bool:
        """Every T-block equals the union of the S-blocks it contains."""
        for j, b in enumerate(self.t_blocks):
            covered = 0
            for i, c in enumerate(self.containment):
                if j in c:
                    covered |= _mask(self.s_blocks[i])
            if covered != _mask(b):
                return False
        return True

    @property
    def valid(self) -> bool:
        return self.unique_containment and self.unions

    def members(self, j: int) -> tuple[int, ...]:
        """Indices of the S-blocks contained in T-block ``j``."""
        return tuple(i for i, c in enumerate(self.containment) if j in c)


def _require_tolerance(p: Poset, r: BinaryRelation, name: str) -> None:
    w = tolerance_witness(p, r)
    if w is not None:
        raise RelationError(f"{name} is not a tolerance: {w.format(p)}")


def refines(p: Poset, s: BinaryRelation, t: BinaryRelation, check: bool = True) -> bool:
    """``S ≤ T``.  When true, also confirms that ``S`` is contained in ``T``."""
    if check:
        _require_tolerance(p, s, "S")
        _require_tolerance(p, t, "T")
    ok = RefinementPair.build(p, s, t).valid
    if ok and not s <= t:
        raise TheoremFalsification(f"{s.describe()} refines {t.describe()} but is not contained in it")
    return ok


def _quotient_relation(rp: RefinementPair, carrier: Poset) -> BinaryRelation:
    m = len(rp.s_blocks)
    pairs = np.zeros((m, m), dtype=bool)
    for j in range(len(rp.t_blocks)):
        idx = list(rp.members(j))
        pairs[np.ix_(idx, idx)] = True
    rel = BinaryRelation(carrier, pairs, check=False)
    if not pairs.diagonal().all() or (pairs != pairs.T).any():
        raise TheoremFalsification("T/S is not reflexive and symmetric")
    return rel


def quotient_relation(p: Poset, s: BinaryRelation, t: BinaryRelation) -> BinaryRelation:
    """``T/S`` as a relation on the poset of ``S``-blocks.

    The carrier is ``quotient_poset(p, s).poset``, so element ``i`` of the
    result is the ``i``-th block of ``s``.
    """
    rp = RefinementPair.build(p, s, t)
    if not rp.valid:
        raise RelationError(f"{s.describe()} does not refine {t.describe()}")
    return _quotient_relation(rp, quotient_poset(p, s).poset)


@dataclass(frozen=True)
class BlockMap:
    """A finite map between the block sets of two quotient posets."""

    mapping: dict
    direction: str

    def __getitem__(self, key):
        return self.mapping[tuple(key)]

    def __len__(self):
        return len(self.mapping)

    def items(self):
        return self.mapping.items()

    @property
    def injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.mapping)

    def inverse(self) -> "BlockMap":
        if not self.injective:
            raise ValueError("map is not injective")
        return BlockMap({v: k for k, v in self.mapping.items()}, f"inverse of {self.direction}")


@dataclass(frozen=True, eq=False)
class DoubleQuotient:
    """``P/S``, ``T/S`` on it, ``(P/S)/(T/S)`` and ``P/T`` for one pair ``S ≤ T``."""

    pair: RefinementPair
    by_s: QuotientPoset
    ts: BinaryRelation
    by_t: QuotientPoset
    nested: Optional[QuotientPoset]  # None when T/S is not a tolerance
    ts_witness: object


def double_quotient(p: Poset, s: BinaryRelation, t: BinaryRelation) -> DoubleQuotient:
    rp = RefinementPair.build(p, s, t)
    if not rp.valid:
        raise RelationError(f"{s.describe()} does not refine {t.describe()}")
    by_s = quotient_poset(p, s)
    ts = _quotient_relation(rp, by_s.poset)
    w = tolerance_witness(by_s.poset, ts)
    nested = quotient_poset(by_s.poset, ts) if w is None else None
    return DoubleQuotient(rp, by_s, ts, quotient_poset(p, t), nested, w)


def injection_f(p: Poset, s: BinaryRelation, t: BinaryRelation) -> BlockMap:
    """Send each ``T``-block to the set of ``S``-blocks inside it.

    Requires ``S ≤ T`` and ``T/S`` to be a tolerance on ``P/S``.  Every claimed
    property of the map (nonempty images, images are blocks of ``T/S``,
    injectivity, the size inequality) is checked.
    """
    dq = double_quotient(p, s, t)
    return _injection(dq)


def _injection(dq: DoubleQuotient) -> BlockMap:
    if dq.nested is None:
        raise RelationError(f"T/S is not a tolerance on P/S: {dq.ts_witness.format(dq.by_s.poset)}")
    rp = dq.pair
    nested_blocks = set(dq.nested.blocks)
    mapping = {}
    for j, b in enumerate(rp.t_blocks):
        image = rp.members(j)
        if not image:
            raise TheoremFalsification(f"no S-block inside T-block {rp.poset.format_set(b)}")
        if image not in nested_blocks:
            raise TheoremFalsification(f"image of {rp.poset.format_set(b)} is not a block of T/S")
        mapping[b] = image
    fmap = BlockMap(mapping, "P/T -> (P/S)/(T/S)")
    if not fmap.injective:
        raise TheoremFalsification("block map from P/T is not injective")
    if len(dq.nested) < len(rp.t_blocks):
        raise TheoremFalsification(f"|(P/S)/(T/S)| = {len(dq.nested)} < |P/T| = {len(rp.t_blocks)}")
    return fmap


def congruence_bijection_g(p: Poset, s: BinaryRelation, t: BinaryRelation) -> BlockMap:
    """Send each block of ``T/S`` to the union of its ``S``-blocks.

    Requires ``S``, ``T`` congruences, ``S ≤ T`` and ``T/S`` a tolerance on
    ``P/S``.  The result is checked to be a bijection onto ``P/T`` that
    preserves ⊑.
    """
    for name, r in (("S", s), ("T", t)):
        if not is_congruence(p, r):
            raise RelationError(f"{name} is not a congruence")
    return _bijection(double_quotient(p, s, t))


def _bijection(dq: DoubleQuotient) -> BlockMap:
    if dq.nested is None:
        raise RelationError(f"T/S is not a tolerance on P/S: {dq.ts_witness.format(dq.by_s.poset)}")
    sb = dq.pair.s_blocks
    mapping = {}
    for d in dq.nested.blocks:
        mapping[d] = tuple(sorted(set().union(*(sb[i] for i in d))))
    gmap = BlockMap(mapping, "(P/S)/(T/S) -> P/T")
    if not gmap.injective or set(mapping.values()) != set(dq.by_t.blocks):
        raise TheoremFalsification("union map is not a bijection onto P/T")
    if not is_order_preserving(gmap, dq.nested, dq.by_t):
        raise TheoremFalsification("union map does not preserve the block order")
    return gmap


def order_violation(fmap: BlockMap, dom: QuotientPoset, cod: QuotientPoset) -> Optional[tuple]:
    """First pair ``(x, y)`` with ``x ⊑ y`` in ``dom`` but ``f(x) ⋢ f(y)``."""
    for x in dom.blocks:
        for y in dom.blocks:
            if dom.leq(x, y) and not cod.leq(fmap[x], fmap[y]):
                return x, y
    return None


def is_order_preserving(fmap: BlockMap, dom: QuotientPoset, cod: QuotientPoset) -> bool:
    return order_violation(fmap, dom, cod) is None


def _order_matrix(x: Union[QuotientPoset, Poset, np.ndarray]) -> np.ndarray:
    if isinstance(x, QuotientPoset):
        return x.order
    if isinstance(x, Poset):
        return x.leq
    return np.asarray(x, dtype=bool)


def exists_order_preserving_bijection(dom, cod, bound: int = FACTORIAL_BOUND) -> bool:
    """Exhaustive search for a bijection ``π`` with ``x ≤ y ⇒ π(x) ≤ π(y)``."""
    a, b = _order_matrix(dom), _order_matrix(cod)
    m = len(a)
    if len(b) != m:
        raise ValueError(f"sizes differ: {m} vs {len(b)}")
    if m > bound:
        raise ValueError(f"bijection search limited to {bound} elements, got {m}")
    if m == 0:
        return True
    perms = _perm_table(m)
    images = b[perms[:, :, None], perms[:, None, :]]
    return bool((~(a[None] & ~images).any(axis=(1, 2))).any())


def analyze(p: Poset, s: BinaryRelation, t: BinaryRelation) -> dict:
    """Every fact about the pair ``(S, T)`` that the ``refine`` command reports."""
    _require_tolerance(p, s, "S")
    _require_tolerance(p, t, "T")
    rp = RefinementPair.build(p, s, t)
    out: dict = {"refines": rp.valid, "S": s.describe(), "T": t.describe()}
    if not rp.valid:
        return out
    dq = double_quotient(p, s, t)
    qs = dq.by_s.poset
    out["P/S"] = list(qs.labels)
    out["P/T"] = [p.format_set(b) for b in dq.by_t.blocks]
    out["T/S"] = dq.ts.describe()
    out["T/S tolerance"] = dq.nested is not None
    if dq.nested is None:
        out["T/S witness"] = dq.ts_witness.format(qs)
        return out
    nested_names = [dq.nested.source.format_set(d) for d in dq.nested.blocks]
    out["(P/S)/(T/S)"] = nested_names
    f = _injection(dq)
    out["injection f"] = {p.format_set(k): qs.format_set(v) for k, v in f.items()}
    out["|(P/S)/(T/S)|"] = len(dq.nested)
    out["|P/T|"] = len(dq.by_t)
    out["bijection exists P/T -> (P/S)/(T/S)"] = exists_order_preserving_bijection(dq.by_t, dq.nested)
    out["bijection exists (P/S)/(T/S) -> P/T"] = exists_order_preserving_bijection(dq.nested, dq.by_t)
    congruences = s.is_transitive and t.is_transitive
    out["congruences"] = congruences
    if congruences:
        g = _bijection(dq)
        out["bijection g"] = {qs.format_set(k): p.format_set(v) for k, v in g.items()}
        out["g order-preserving"] = True
        ginv = g.inverse()
        bad = order_violation(ginv, dq.by_t, dq.nested)
        out["g inverse order-preserving"] = bad is None
        if bad is not None:
            x, y = bad
            out["g inverse witness"] = (
                f"{p.format_set(x)} ⊑ {p.format_set(y)} but "
                f"{qs.format_set(ginv[x])} ⋢ {qs.format_set(ginv[y])}"
            )
    return out
