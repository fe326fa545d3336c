"""Line-oriented text formats for posets and relations.

Poset files::

    # comment
    elements: 0 a b c d 1
    covers:   0<a 0<b a<c a<d b<c b<d c<1 d<1

Relation files (the relation is the diagonal plus the square of each group)::

    poset: fig1
    cliques: {0,a,b,c} {b,c,d,1}
"""
from __future__ import annotations

import re
from pathlib import Path
from typing import Optional, Union

from .errors import ParseError, PosetError
from .order import Poset
from .relations import BinaryRelation, blocks, from_cliques

_BAD_LABEL = re.compile(r"[\s<{},]")
_TOKEN = re.compile(r"\S+")


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield lineno, body


def _keyed(body: str, lineno: int, source: str) -> tuple[str, str, int]:
    m = re.match(r"\s*([A-Za-z]+)\s*:", body)
    if not m:
        col = len(body) - len(body.lstrip()) + 1
        raise ParseError("expected 'key:' at start of line", lineno, col, source)
    return m.group(1), body[m.end():], m.end()


def parse_poset(text: str, source: str = "<poset>") -> Poset:
    labels: Optional[list[str]] = None
    covers: Optional[list[tuple[str, str]]] = None
    covers_line = 1
    for lineno, body in _lines(text):
        key, rest, offset = _keyed(body, lineno, source)
        if key == "elements":
            if labels is not None:
                raise ParseError("duplicate 'elements:' line", lineno, 1, source)
            labels = []
            for m in _TOKEN.finditer(rest):
                tok, col = m.group(), offset + m.start() + 1
                if _BAD_LABEL.search(tok):
                    raise ParseError(f"invalid label {tok!r}", lineno, col, source)
                if tok in labels:
                    raise ParseError(f"duplicate label {tok!r}", lineno, col, source)
                labels.append(tok)
        elif key == "covers":
            if labels is None:
                raise ParseError("'covers:' before 'elements:'", lineno, 1, source)
            if covers is not None:
                raise ParseError("duplicate 'covers:' line", lineno, 1, source)
            covers, covers_line = [], lineno
            for m in _TOKEN.finditer(rest):
                tok, col = m.group(), offset + m.start() + 1
                parts = tok.split("<")
                if len(parts) != 2 or not all(parts):
                    raise ParseError(f"malformed cover {tok!r}, expected A<B", lineno, col, source)
                for part in parts:
                    if part not in labels:
                        raise ParseError(f"unknown label {part!r}", lineno, col, source)
                covers.append((parts[0], parts[1]))
        else:
            raise ParseError(f"unknown key {key!r}", lineno, 1, source)
    if labels is None:
        raise ParseError("missing 'elements:' line", 1, 1, source)
    try:
        return Poset.from_covers(labels, covers or [])
    except PosetError as exc:
        raise ParseError(str(exc), covers_line, 1, source) from None


def format_poset(p: Poset) -> str:
    covers = " ".join(f"{p.labels[i]}<{p.labels[j]}" for i, j in p.cover_pairs)
    return f"elements: {' '.join(p.labels)}\ncovers:{' ' if covers else ''}{covers}\n"


def parse_relation(text: str, p: Poset, source: str = "<relation>",
                   poset_name: Optional[str] = None) -> BinaryRelation:
    """Parse a clique file against ``p``.

    When the file names its poset and ``poset_name`` is given, the two must
    agree (a trailing ``.poset`` suffix is ignored).
    """
    groups: Optional[list[tuple[int, ...]]] = None
    for lineno, body in _lines(text):
        key, rest, offset = _keyed(body, lineno, source)
        if key == "poset":
            name = rest.strip()
            if poset_name is not None and name not in (poset_name, poset_name.removesuffix(".poset")):
                raise ParseError(f"relation is for poset {name!r}, not {poset_name!r}", lineno, offset + 1, source)
        elif key == "cliques":
            if groups is not None:
                raise ParseError("duplicate 'cliques:' line", lineno, 1, source)
            groups = []
            for m in _TOKEN.finditer(rest):
                tok, col = m.group(), offset + m.start() + 1
                if not (tok.startswith("{") and tok.endswith("}")):
                    raise ParseError(f"malformed group {tok!r}, expected {{A,B,...}}", lineno, col, source)
                inner = tok[1:-1]
                members = [x for x in inner.split(",")] if inner else []
                idx = []
                for x in members:
                    if not x:
                        raise ParseError(f"empty label in group {tok!r}", lineno, col, source)
                    try:
                        idx.append(p.index(x))
                    except PosetError:
                        raise ParseError(f"unknown label {x!r}", lineno, col, source) from None
                groups.append(tuple(sorted(set(idx))))
        else:
            raise ParseError(f"unknown key {key!r}", lineno, 1, source)
    if groups is None:
        raise ParseError("missing 'cliques:' line", 1, 1, source)
    return from_cliques(p, groups)


def format_relation(t: BinaryRelation, poset_name: Optional[str] = None) -> str:
    p = t.poset
    groups = " ".join(p.format_set(b) for b in blocks(p, t) if len(b) > 1)
    head = f"poset: {poset_name}\n" if poset_name else ""
    return f"{head}cliques: {groups}\n"


PathLike = Union[str, Path]


def read_poset(path: PathLike) -> Poset:
    path = Path(path)
    return parse_poset(path.read_text(encoding="utf-8"), source=str(path))


def read_relation(path: PathLike, p: Poset, poset_path: Optional[PathLike] = None) -> BinaryRelation:
    path = Path(path)
    name = Path(poset_path).name if poset_path is not None else None
    return parse_relation(path.read_text(encoding="utf-8"), p, source=str(path), poset_name=name)
