"""Refining one tolerance by another, and where the isomorphism breaks.

For lattices (L/S)/(T/S) and L/T are isomorphic.  For posets the block map
g: (P/S)/(T/S) -> P/T is still a bijection that preserves order, but its
inverse need not, and no order isomorphism may exist at all.

Run:  python3 demos/03_refinement.py
"""
from tolposet import exists_order_preserving_bijection, refines
from tolposet.figures import load_poset, load_relation
from tolposet.refinement import analyze, double_quotient

for poset, s_name, t_name in (("fig2", "fig7-S", "fig7-T"), ("fig1", "fig9-S", "fig9-T")):
    P = load_poset(poset)
    S, T = load_relation(s_name), load_relation(t_name)
    print(f"== {s_name} <= {t_name}: {refines(P, S, T)}")
    for key, value in analyze(P, S, T).items():
        print(f"   {key}: {value}")
    dq = double_quotient(P, S, T)
    iso = (exists_order_preserving_bijection(dq.by_t, dq.nested)
           and exists_order_preserving_bijection(dq.nested, dq.by_t))
    print("   isomorphic:", iso, "\n")
