"""The worked example posets and relations shipped under ``fixtures/``.

Each :class:`Fixture` bundles a poset, its named relations and the facts
those objects are known to satisfy.  :func:`replay` recomputes every fact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .order import Poset, bottom, is_directed, is_lattice, is_relatively_complemented, top
from .quotient import quotient_poset
from .relations import BinaryRelation, blocks, is_congruence, is_tolerance
from .textio import parse_poset, parse_relation


def fixture_dir() -> Path:
    return Path(str(resources.files("tolposet") / "fixtures"))


@lru_cache(maxsize=None)
def load_poset(name: str) -> Poset:
    path = fixture_dir() / f"{name}.poset"
    return parse_poset(path.read_text(encoding="utf-8"), source=path.name)


def load_relation(name: str) -> BinaryRelation:
    """Load ``fixtures/<name>.rel`` against the poset named inside the file."""
    path = fixture_dir() / f"{name}.rel"
    text = path.read_text(encoding="utf-8")
    poset_name = next(
        line.split(":", 1)[1].strip() for line in text.splitlines() if line.startswith("poset:")
    )
    return parse_relation(text, load_poset(poset_name), source=path.name, poset_name=poset_name)


@dataclass
class Fixture:
    name: str
    poset: str
    relations: dict[str, str]  # short name -> fixture file stem
    facts: dict = field(default_factory=dict)

    def load(self) -> tuple[Poset, dict[str, BinaryRelation]]:
        return load_poset(self.poset), {k: load_relation(v) for k, v in self.relations.items()}


def _blocks(p, r):
    return [p.format_set(b) for b in blocks(p, r)]


def _quotient_covers(p, r):
    q = quotient_poset(p, r)
    labels = q.poset.labels
    return [f"{labels[i]} < {labels[j]}" for i, j in q.cover_pairs()]


FIXTURES = [
    Fixture("fig1", "fig1", {"T1": "fig1-T1", "T2": "fig1-T2", "T1capT2": "fig1-T1capT2"}, {
        ("tolerance", "T1"): True,
        ("congruence", "T1"): False,
        ("tolerance", "T2"): True,
        ("congruence", "T2"): False,
        ("tolerance", "T1capT2"): False,
        ("blocks", "T1"): ["{0,a,b,c}", "{b,c,d,1}"],
        ("blocks", "T1capT2"): ["{0,a,b}", "{a,c}", "{b,d}", "{c,d,1}"],
        ("lattice", None): False,
    }),
    Fixture("fig2", "fig2", {f"T{i}": f"fig2-T{i}" for i in range(1, 5)}, {
        **{("congruence", f"T{i}"): True for i in range(1, 5)},
        ("blocks", "T3"): ["{0,a,b,c}", "{d}"],
    }),
    Fixture("fig3", "fig1", {"T1": "fig3-T1", "T2": "fig3-T2"}, {
        ("quotient", "T1"): ["{0,a,b,c} < {b,c,d,1}"],
        ("quotient", "T2"): ["{0,a} < {b,c}", "{b,c} < {d,1}"],
    }),
    Fixture("fig4", "fig4", {}, {
        ("lattice", None): False,
        ("relatively_complemented", None): True,
        ("directed", None): True,
        ("bottom_top", None): ("0", "1"),
    }),
    Fixture("fig5", "fig5", {f"C{i}": f"fig5-C{i}" for i in range(1, 9)}, {
        # C6 and C7 are drawn as congruences but fail condition (1)
        **{("congruence", f"C{i}"): i not in (6, 7) for i in range(1, 9)},
        ("relatively_complemented", None): True,
        ("directed", None): False,
    }),
    Fixture("fig7", "fig2", {"S": "fig7-S", "T": "fig7-T"}, {
        ("blocks", "S"): ["{0,a}", "{b,c}", "{d}"],
        ("quotient", "S"): ["{0,a} < {b,c}", "{0,a} < {d}"],
        ("quotient", "T"): [],
    }),
    Fixture("fig9", "fig1", {"S": "fig9-S", "T": "fig9-T"}, {
        ("blocks", "S"): ["{0,a}", "{b}", "{c}", "{d,1}"],
        ("congruence", "S"): True,
        ("congruence", "T"): True,
        ("quotient", "S"): ["{0,a} < {c}", "{0,a} < {d,1}", "{b} < {c}", "{b} < {d,1}"],
        ("quotient", "T"): ["{0,a} < {b,c}", "{b,c} < {d,1}"],
    }),
]


def replay(fx: Fixture) -> list[tuple[tuple, object, object]]:
    """Recompute each fact; returns ``(fact, expected, observed)`` triples."""
    p, rels = fx.load()
    out = []
    for fact, expected in fx.facts.items():
        kind, name = fact
        r = rels.get(name)
        if kind == "tolerance":
            got = is_tolerance(p, r)
        elif kind == "congruence":
            got = is_congruence(p, r)
        elif kind == "blocks":
            got = _blocks(p, r)
        elif kind == "quotient":
            got = _quotient_covers(p, r)
        elif kind == "lattice":
            got = is_lattice(p)
        elif kind == "relatively_complemented":
            got = is_relatively_complemented(p)
        elif kind == "directed":
            got = is_directed(p, range(p.n))
        elif kind == "bottom_top":
            got = (p.labels[bottom(p)], p.labels[top(p)])
        else:
            raise ValueError(f"unknown fact kind {kind!r}")
        out.append((fact, expected, got))
    return out
