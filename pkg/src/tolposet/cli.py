"""Command line front end.

Exit status: 0 when the checked property holds, 1 when it does not, 2 on
usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .enumeration import CLAIMS, all_congruences, all_posets, all_tolerances, family_poset, verify_theorems
from .errors import ParseError, PosetError, RelationError, TheoremFalsification
from .quotient import hasse_dot, quotient_dot, quotient_poset
from .refinement import analyze
from .relations import blocks, is_congruence, tolerance_witness
from .textio import format_poset, read_poset, read_relation


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(obj) -> None:
    _emit(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False))


def _load(args, rel_attr: str = "rel"):
    p = read_poset(args.poset)
    path = getattr(args, rel_attr, None)
    r = read_relation(path, p, args.poset) if path else None
    return p, r


def cmd_check(args) -> int:
    p, t = _load(args)
    w = tolerance_witness(p, t)
    tol = w is None
    con = tol and t.is_transitive
    if args.json:
        _emit_json({"tolerance": tol, "congruence": con, "witness": w.format(p) if w else None})
    else:
        _emit(f"tolerance: {_yn(tol)}")
        if w is not None:
            _emit(f"witness: {w.format(p)}")
        _emit(f"congruence: {_yn(con)}")
    return 0 if (con if args.congruence else tol) else 1


def cmd_blocks(args) -> int:
    p, t = _load(args)
    bs = [p.format_set(b) for b in blocks(p, t)]
    if args.json:
        _emit_json({"blocks": bs})
    else:
        for b in bs:
            _emit(b)
    return 0


def cmd_quotient(args) -> int:
    p, t = _load(args)
    q = quotient_poset(p, t)
    if args.dot:
        _emit(quotient_dot(q))
        return 0
    labels = q.poset.labels
    covers = [f"{labels[i]} < {labels[j]}" for i, j in q.cover_pairs()]
    if args.json:
        _emit_json({"blocks": list(labels), "covers": covers})
        return 0
    for lab in labels:
        _emit(lab)
    _emit("covers:")
    for c in covers:
        _emit(c)
    return 0


def cmd_enumerate(args) -> int:
    if args.what == "posets":
        if args.n is None:
            raise SystemExit("enumerate --what posets needs --n")
        ps = all_posets(args.n)
        if args.json:
            _emit_json([format_poset(p) for p in ps])
        else:
            _emit("\n".join(format_poset(p) for p in ps))
        return 0
    if not args.poset:
        raise SystemExit("enumerate needs --poset")
    p = read_poset(args.poset)
    fam = all_tolerances(p) if args.what == "tolerances" else all_congruences(p)
    if args.dot:
        _emit(hasse_dot(family_poset(fam), args.what))
    elif args.json:
        _emit_json([r.describe() for r in fam])
    else:
        for r in fam:
            _emit(r.describe())
    return 0


def _kv(value) -> str:
    if isinstance(value, bool):
        return _yn(value)
    if isinstance(value, list):
        return " ".join(value)
    if isinstance(value, dict):
        return ", ".join(f"{k} -> {v}" for k, v in value.items())
    return str(value)


def cmd_refine(args) -> int:
    p = read_poset(args.poset)
    s = read_relation(args.rel_s, p, args.poset)
    t = read_relation(args.rel_t, p, args.poset)
    facts = analyze(p, s, t)
    if args.json:
        _emit_json(facts)
    else:
        for k, v in facts.items():
            _emit(f"{k}: {_kv(v)}")
    return 0 if facts["refines"] else 1


def cmd_verify(args) -> int:
    claims = args.claims.split(",") if args.claims else None
    report = verify_theorems(args.max_n, claims, workers=args.workers, failure_cap=args.failure_cap)
    _emit(report.to_json() if args.json else report.summary())
    return 0 if report.ok else 1


def cmd_dot(args) -> int:
    p, t = _load(args)
    _emit(quotient_dot(quotient_poset(p, t)) if t is not None else hasse_dot(p))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tolposet", description="Tolerances on finite posets.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, rel=True, rel_required=True):
        sp.add_argument("--poset", required=True, metavar="FILE")
        if rel:
            sp.add_argument("--rel", required=rel_required, metavar="FILE")
        sp.add_argument("--json", action="store_true", help="structured output")

    sp = sub.add_parser("check", help="tolerance / congruence verdict")
    common(sp)
    sp.add_argument("--congruence", action="store_true", help="exit status reflects the congruence verdict")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("blocks", help="list the blocks of a relation")
    common(sp)
    sp.set_defaults(func=cmd_blocks)

    sp = sub.add_parser("quotient", help="quotient poset P/T")
    common(sp)
    sp.add_argument("--dot", action="store_true")
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("enumerate", help="all tolerances, congruences or posets")
    sp.add_argument("--poset", metavar="FILE")
    sp.add_argument("--what", choices=("tolerances", "congruences", "posets"), default="tolerances")
    sp.add_argument("--n", type=int, help="size for --what posets")
    sp.add_argument("--dot", action="store_true", help="Hasse diagram of the family under inclusion")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("refine", help="S <= T, T/S and the block maps")
    sp.add_argument("--poset", required=True, metavar="FILE")
    sp.add_argument("--rel-s", required=True, metavar="FILE")
    sp.add_argument("--rel-t", required=True, metavar="FILE")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_refine)

    sp = sub.add_parser("verify", help="exhaustive sweep over small posets")
    sp.add_argument("--max-n", type=int, default=4)
    sp.add_argument("--claims", help=f"comma separated subset of: {','.join(CLAIMS)}")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--failure-cap", type=int, default=20)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("dot", help="Hasse diagram of a poset or of P/T in DOT")
    common(sp, rel_required=False)
    sp.set_defaults(func=cmd_dot)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, PosetError, RelationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TheoremFalsification as exc:
        print(f"THEOREM FALSIFIED: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
