"""Exhaustive enumeration of small posets, tolerances and congruences, and
the sweep that replays every structural claim on all of them."""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import PosetError, RelationError, TheoremFalsification
from .order import (
    Poset, bits, bottom, canonical_form, canonical_key, from_canonical, interval, is_convex,
    is_directed, is_lattice, is_relatively_complemented, top,
)
from .quotient import (
    QuotientPoset, block_leq, interval_block_leq, orders_coincide, quotient_poset, _absorbing_block,
)
from .refinement import DoubleQuotient, RefinementPair, _bijection, _injection, _quotient_relation
from .relations import (
    BinaryRelation, blocks, check_condition, close_under_bounds, diagonal, full, is_tolerance,
    tolerance_witness,
)

POSET_BOUND = 6
TOLERANCE_BOUND = 6
CONGRUENCE_BOUND = 10


# -- posets ------------------------------------------------------------------


def down_sets(p: Poset) -> list[int]:
    """All order ideals of ``p`` as bit masks."""
    out = []
    for m in range(1 << p.n):
        if all(p.down[x] & ~m == 0 for x in bits(m)):
            out.append(m)
    return out


def all_posets(n: int, bound: int = POSET_BOUND) -> list[Poset]:
    """One poset per isomorphism class of ``n``-element posets.

    Built by adding a new maximal element above every order ideal of each
    ``(n-1)``-element representative, then deduplicating by canonical form.
    Representatives are the canonical matrices, ordered by canonical key.
    """
    if not 1 <= n <= bound:
        raise PosetError(f"poset enumeration supports 1 <= n <= {bound}, got {n}")
    forms = {((1,),)}
    for k in range(2, n + 1):
        grown = set()
        for form in forms:
            small = from_canonical(form)
            for ideal in down_sets(small):
                leq = np.zeros((k, k), dtype=bool)
                leq[:k - 1, :k - 1] = small.leq
                leq[k - 1, k - 1] = True
                for x in bits(ideal):
                    leq[x, k - 1] = True
                grown.add(canonical_form(Poset(range(k), leq, check=False)))
        forms = grown
    keyed = sorted(("".join(str(v) for row in f for v in row), f) for f in forms)
    return [from_canonical(f) for _, f in keyed]


# -- relations ---------------------------------------------------------------


def _slots(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def closed_relations(p: Poset) -> list[BinaryRelation]:
    """Every reflexive symmetric relation closed under conditions 1 and 2.

    These form a closure system, so they are listed with Ganter's
    NextClosure over the ``n(n-1)/2`` off-diagonal pair slots instead of
    testing all ``2^(n(n-1)/2)`` subsets.  Output is in lectic order.
    """
    slots = _slots(p.n)
    m = len(slots)
    slot_of = {s: k for k, s in enumerate(slots)}

    def to_matrix(mask: int) -> np.ndarray:
        a = np.eye(p.n, dtype=bool)
        for k in bits(mask):
            i, j = slots[k]
            a[i, j] = a[j, i] = True
        return a

    def close(mask: int) -> int:
        closed = close_under_bounds(p, to_matrix(mask))
        out = 0
        for i, j in zip(*np.nonzero(np.triu(closed, 1))):
            out |= 1 << slot_of[(int(i), int(j))]
        return out

    found = []
    a = close(0)
    while a is not None:
        found.append(a)
        nxt = None
        for i in reversed(range(m)):
            bit = 1 << i
            if a & bit:
                a &= ~bit
                continue
            b = close(a | bit)
            low = bit - 1
            if b & low == a & low:
                nxt = b
                break
        a = nxt
    return [BinaryRelation(p, to_matrix(mask)) for mask in found]


@dataclass(frozen=True, eq=False)
class ToleranceFamily:
    """A duplicate-free list of relations on one poset.

    Members are sorted by number of pairs, then by packed matrix, so the
    order extends ⊆ and does not depend on how they were found.
    """

    poset: Poset
    members: tuple[BinaryRelation, ...]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, r) -> bool:
        return r in self._position

    @cached_property
    def _position(self) -> dict:
        return {r: i for i, r in enumerate(self.members)}

    def index(self, r: BinaryRelation) -> int:
        try:
            return self._position[r]
        except KeyError:
            raise KeyError(f"{r.describe()} is not in the family") from None

    @cached_property
    def subset(self) -> np.ndarray:
        """``subset[i, j]`` iff member ``i`` is contained in member ``j``."""
        flat = np.array([r.pairs.ravel() for r in self.members], dtype=bool)
        out = ~(flat[:, None, :] & ~flat[None, :, :]).any(axis=2)
        out.flags.writeable = False
        return out


def _family(p: Poset, rels: Iterable[BinaryRelation]) -> ToleranceFamily:
    seen, out = set(), []
    for r in rels:
        k = r.key()
        if k not in seen:
            seen.add(k)
            out.append(r)
    out.sort(key=lambda r: (r.size, r.key()))
    return ToleranceFamily(p, tuple(out))


def all_tolerances(p: Poset, bound: int = TOLERANCE_BOUND) -> ToleranceFamily:
    """Every tolerance on ``p``."""
    if p.n > bound:
        raise PosetError(f"tolerance enumeration limited to {bound} elements, got {p.n}")
    return _family(p, (r for r in closed_relations(p)
                       if r.is_full or (check_condition(p, r, 3) is None and check_condition(p, r, 4) is None)))


def set_partitions(n: int) -> Iterator[list[int]]:
    """Restricted growth strings of length ``n`` (one per set partition)."""
    if n == 0:
        yield []
        return
    a = [0] * n
    mx = [0] * n  # mx[i] = max(a[:i+1])
    while True:
        yield list(a)
        i = n - 1
        while i > 0 and a[i] > mx[i - 1]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        mx[i] = max(mx[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            mx[j] = mx[i]


def all_congruences(p: Poset, bound: int = CONGRUENCE_BOUND) -> ToleranceFamily:
    """Every congruence on ``p``, found by testing each set partition."""
    if p.n > bound:
        raise PosetError(f"congruence enumeration limited to {bound} elements, got {p.n}")
    found = []
    for rgs in set_partitions(p.n):
        cls = np.array(rgs)
        r = BinaryRelation(p, cls[:, None] == cls[None, :])
        if is_tolerance(p, r):
            found.append(r)
    return _family(p, found)


def family_poset(f: ToleranceFamily) -> Poset:
    """The family as a poset under inclusion, labelled by clique presentations."""
    labels = [r.describe() for r in f.members]
    return Poset(labels, f.subset, check=False)


def minimal_upper_bounds(f: ToleranceFamily, a: BinaryRelation, b: BinaryRelation) -> list[BinaryRelation]:
    """The ⊆-minimal members of ``f`` containing both ``a`` and ``b``."""
    ia, ib = f.index(a), f.index(b)
    sub = f.subset
    ub = np.flatnonzero(sub[ia] & sub[ib])
    minimal = [u for u in ub if not any(sub[v, u] and v != u for v in ub)]
    return [f.members[u] for u in minimal]


def family_join(f: ToleranceFamily, a: BinaryRelation, b: BinaryRelation) -> Optional[BinaryRelation]:
    """Least upper bound of ``a`` and ``b`` inside ``f``, or None."""
    mub = minimal_upper_bounds(f, a, b)
    if len(mub) != 1:
        return None
    sub, j = f.subset, f.index(mub[0])
    ub = np.flatnonzero(sub[f.index(a)] & sub[f.index(b)])
    return mub[0] if all(sub[j, u] for u in ub) else None


# -- the sweep ---------------------------------------------------------------

CLAIMS = (
    "trivial_tolerances",
    "interval_squares",
    "bounded_blocks_are_intervals",
    "blocks_directed_convex",
    "blocks_are_intervals",
    "quotient_is_poset",
    "interval_block_order",
    "lattice_conditions_3_4",
    "block_ops_total_unique",
    "block_orders_coincide",
    "tol_equals_con",
    "congruences_are_tolerances",
    "refinement_reflexive",
    "refinement_antisymmetric",
    "refinement_contained",
    "quotient_relation_reflexive_symmetric",
    "injection",
    "bijection",
)

REFINEMENT_CLAIMS = CLAIMS[CLAIMS.index("refinement_reflexive"):]

CLAIM_TEXT = {
    "trivial_tolerances": "diagonal and full relations are tolerances",
    "interval_squares": "(a,b) in T, a <= b  =>  [a,b]^2 in T",
    "bounded_blocks_are_intervals": "block with bottom a and top b equals [a,b]",
    "blocks_directed_convex": "blocks of non-trivial tolerances are directed and convex",
    "blocks_are_intervals": "blocks of non-trivial tolerances are intervals",
    "quotient_is_poset": "(P/T, ⊑) is a partial order",
    "interval_block_order": "[a,b] ⊑ [c,d]  <=>  a <= c and b <= d",
    "lattice_conditions_3_4": "on lattices, conditions 1-2 imply 3-4",
    "block_ops_total_unique": "on lattices, block join and meet exist and are unique",
    "block_orders_coincide": "on lattices, ⊑ equals the order of the block lattice",
    "tol_equals_con": "relatively complemented => every tolerance is transitive",
    "congruences_are_tolerances": "partition-based congruences = transitive tolerances",
    "refinement_reflexive": "S <= S",
    "refinement_antisymmetric": "S <= T <= S  =>  S = T",
    "refinement_contained": "S <= T  =>  S is a subset of T",
    "quotient_relation_reflexive_symmetric": "S <= T  =>  T/S reflexive and symmetric",
    "injection": "S <= T, T/S tolerance  =>  f injective, |(P/S)/(T/S)| >= |P/T|",
    "bijection": "congruences S <= T, T/S tolerance  =>  g bijective, order-preserving",
}


@dataclass
class VerificationReport:
    """Per-claim counters plus the first few failure witnesses."""

    max_n: int
    claims: tuple[str, ...]
    counters: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    observations: dict = field(default_factory=dict)
    failure_cap: int = 20

    @property
    def total_failures(self) -> int:
        return sum(c["failed"] for c in self.counters.values())

    @property
    def ok(self) -> bool:
        return self.total_failures == 0

    def to_dict(self) -> dict:
        return {
            "parameters": {"max_n": self.max_n, "claims": list(self.claims), "failure_cap": self.failure_cap},
            "counters": {c: dict(self.counters[c]) for c in self.claims},
            "observations": self.observations,
            "failures": self.failures,
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def summary(self) -> str:
        width = max(len(c) for c in self.claims)
        lines = [f"{'claim':<{width}}  {'checked':>9} {'passed':>9} {'failed':>7}"]
        for c in self.claims:
            k = self.counters[c]
            lines.append(f"{c:<{width}}  {k['checked']:>9} {k['passed']:>9} {k['failed']:>7}")
        for name, value in sorted(self.observations.items()):
            lines.append(f"# {name}: {value}")
        lines.append(f"result: {'PASS' if self.ok else 'FAIL'} (max_n={self.max_n})")
        return "\n".join(lines) + "\n"


class _Tally:
    def __init__(self, claims, cap):
        self.claims = set(claims)
        self.counts = {c: [0, 0] for c in claims}
        self.failures = []
        self.cap = cap
        self.obs: dict[str, int] = {}

    def wants(self, claim):
        return claim in self.claims

    def record(self, claim, ok, p=None, rel=None, detail=""):
        c = self.counts[claim]
        c[0] += 1
        if not ok:
            c[1] += 1
            if len(self.failures) < self.cap:
                self.failures.append({
                    "claim": claim,
                    "poset": canonical_key(p) if p is not None else "",
                    "relation": rel.describe() if rel is not None else "",
                    "detail": detail,
                })

    def note(self, name, amount=1):
        self.obs[name] = self.obs.get(name, 0) + amount


def _sweep_one(form, claims: Sequence[str], cap: int) -> tuple[dict, list, dict]:
    p = from_canonical(form)
    tally = _Tally(claims, cap)
    closed = closed_relations(p)
    tols = [r for r in closed if r.is_full or is_tolerance(p, r)]
    tally.note("posets")
    tally.note("tolerances", len(tols))
    lattice = is_lattice(p)
    bl = {r: blocks(p, r) for r in tols}

    if tally.wants("trivial_tolerances"):
        keys = {r.key() for r in tols}
        for r in (diagonal(p), full(p)):
            tally.record("trivial_tolerances", r.key() in keys and is_tolerance(p, r), p, r)

    for t in tols:
        if tally.wants("interval_squares"):
            ok, detail = True, ""
            for a in range(p.n):
                for b in bits(p.up[a]):
                    if t.pairs[a, b]:
                        iv = list(interval(p, a, b))
                        if not t.pairs[np.ix_(iv, iv)].all():
                            ok, detail = False, f"[{p.labels[a]},{p.labels[b]}]"
                            break
                if not ok:
                    break
            tally.record("interval_squares", ok, p, t, detail)

        for b in bl[t]:
            lo, hi = bottom(p, b), top(p, b)
            if tally.wants("bounded_blocks_are_intervals") and lo is not None and hi is not None:
                tally.record("bounded_blocks_are_intervals", interval(p, lo, hi) == b, p, t, p.format_set(b))
            if t.is_trivial:
                continue
            if tally.wants("blocks_directed_convex"):
                tally.record("blocks_directed_convex", is_directed(p, b) and is_convex(p, b), p, t, p.format_set(b))
            if tally.wants("blocks_are_intervals"):
                ok = lo is not None and hi is not None and interval(p, lo, hi) == b
                tally.record("blocks_are_intervals", ok, p, t, p.format_set(b))

        if tally.wants("quotient_is_poset"):
            try:
                quotient_poset(p, t)
                tally.record("quotient_is_poset", True)
            except TheoremFalsification as exc:
                tally.record("quotient_is_poset", False, p, t, str(exc))

        if tally.wants("interval_block_order"):
            ends = [(bottom(p, b), top(p, b)) for b in bl[t]]
            if all(lo is not None and hi is not None and interval(p, lo, hi) == b
                   for (lo, hi), b in zip(ends, bl[t])):
                for a, b in ends:
                    for c, d in ends:
                        try:
                            interval_block_leq(p, a, b, c, d)
                            tally.record("interval_block_order", True)
                        except TheoremFalsification as exc:
                            tally.record("interval_block_order", False, p, t, str(exc))

        if lattice and (tally.wants("block_ops_total_unique") or tally.wants("block_orders_coincide")):
            try:
                for b1 in bl[t]:
                    for b2 in bl[t]:
                        _absorbing_block(p, bl[t], b1, b2, p.join_table, "join")
                        _absorbing_block(p, bl[t], b1, b2, p.meet_table, "meet")
                total = True
                detail = ""
            except TheoremFalsification as exc:
                total, detail = False, str(exc)
            if tally.wants("block_ops_total_unique"):
                tally.record("block_ops_total_unique", total, p, t, detail)
            if tally.wants("block_orders_coincide") and total:
                tally.record("block_orders_coincide", orders_coincide(p, t), p, t)

    if lattice and tally.wants("lattice_conditions_3_4"):
        for r in closed:
            ok = check_condition(p, r, 3) is None and check_condition(p, r, 4) is None
            tally.record("lattice_conditions_3_4", ok, p, r)

    if tally.wants("tol_equals_con") and is_relatively_complemented(p):
        tally.note("relatively_complemented_posets")
        for t in tols:
            tally.record("tol_equals_con", t.is_transitive, p, t)

    cons = [t for t in tols if t.is_transitive]
    tally.note("congruences", len(cons))
    if tally.wants("congruences_are_tolerances"):
        via_partitions = {r.key() for r in all_congruences(p)}
        tally.record("congruences_are_tolerances", via_partitions == {r.key() for r in cons}, p)

    if any(tally.wants(c) for c in REFINEMENT_CLAIMS):
        _sweep_refinement(p, tols, bl, tally)

    return {c: tuple(v) for c, v in tally.counts.items()}, tally.failures, tally.obs


def _sweep_refinement(p: Poset, tols, bl, tally: _Tally) -> None:
    k = len(tols)
    quotients = {}
    ref = np.zeros((k, k), dtype=bool)
    for i, s in enumerate(tols):
        for j, t in enumerate(tols):
            rp = RefinementPair.build(p, s, t, bl[s], bl[t])
            ref[i, j] = valid = rp.valid
            if tally.wants("refinement_contained") and valid:
                tally.record("refinement_contained", bool(s <= t), p, s, f"T = {t.describe()}")
            if not valid:
                continue
            tally.note("refinement_pairs")
            if s not in quotients:
                quotients[s] = quotient_poset(p, s)
            by_s = quotients[s]
            try:
                ts = _quotient_relation(rp, by_s.poset)
            except TheoremFalsification as exc:
                if tally.wants("quotient_relation_reflexive_symmetric"):
                    tally.record("quotient_relation_reflexive_symmetric", False, p, s, f"T = {t.describe()}: {exc}")
                continue
            if tally.wants("quotient_relation_reflexive_symmetric"):
                tally.record("quotient_relation_reflexive_symmetric", True)
            w = tolerance_witness(by_s.poset, ts)
            if w is not None:
                tally.note("quotient_relation_not_tolerance")
                continue
            tally.note("quotient_relation_tolerance")
            if t not in quotients:
                quotients[t] = quotient_poset(p, t)
            dq = DoubleQuotient(rp, by_s, ts, quotients[t], quotient_poset(by_s.poset, ts), None)
            if tally.wants("injection"):
                try:
                    _injection(dq)
                    tally.record("injection", True)
                except TheoremFalsification as exc:
                    tally.record("injection", False, p, s, f"T = {t.describe()}: {exc}")
            if tally.wants("bijection") and s.is_transitive and t.is_transitive:
                try:
                    _bijection(dq)
                    tally.record("bijection", True)
                except TheoremFalsification as exc:
                    tally.record("bijection", False, p, s, f"T = {t.describe()}: {exc}")
    for i, s in enumerate(tols):
        if tally.wants("refinement_reflexive"):
            tally.record("refinement_reflexive", bool(ref[i, i]), p, s)
        if tally.wants("refinement_antisymmetric"):
            for j in range(i + 1, k):
                tally.record("refinement_antisymmetric", not (ref[i, j] and ref[j, i]), p, s,
                             f"T = {tols[j].describe()}")
    r = ref.astype(np.int64)
    tally.note("refinement_transitivity_violations", int((((r @ r) > 0) & ~ref).sum()))


def verify_theorems(max_n: int, claims: Optional[Iterable[str]] = None, workers: int = 1,
                    failure_cap: int = 20, bound: int = POSET_BOUND) -> VerificationReport:
    """Replay the selected claims on every poset with at most ``max_n``
    elements and every tolerance on it.

    Results are merged in canonical-form order, so the report does not
    depend on ``workers``.
    """
    if not 1 <= max_n <= bound:
        raise PosetError(f"sweep supports 1 <= max_n <= {bound}, got {max_n}")
    claims = tuple(CLAIMS) if claims is None else tuple(claims)
    unknown = [c for c in claims if c not in CLAIMS]
    if unknown:
        raise ValueError(f"unknown claim(s): {', '.join(unknown)}")
    claims = tuple(c for c in CLAIMS if c in claims)
    forms = [canonical_form(p) for n in range(1, max_n + 1) for p in all_posets(n)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_one, forms, [claims] * len(forms), [failure_cap] * len(forms)))
    else:
        results = [_sweep_one(f, claims, failure_cap) for f in forms]
    report = VerificationReport(max_n, claims, failure_cap=failure_cap)
    report.counters = {c: {"checked": 0, "passed": 0, "failed": 0} for c in claims}
    for counts, failures, obs in results:
        for c, (checked, failed) in counts.items():
            k = report.counters[c]
            k["checked"] += checked
            k["failed"] += failed
            k["passed"] += checked - failed
        for f in failures:
            if len(report.failures) < failure_cap:
                report.failures.append(f)
        for name, v in obs.items():
            report.observations[name] = report.observations.get(name, 0) + v
    return report
