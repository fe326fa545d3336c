"""Quotient posets P/T: blocks ordered by mutual domination.

Run:  python3 demos/02_quotients.py
"""
from tolposet import Poset, czedli_join, czedli_meet, from_cliques, orders_coincide, quotient_poset
from tolposet.figures import load_poset, load_relation
from tolposet.quotient import quotient_dot

P = load_poset("fig1")
for name in ("fig3-T1", "fig3-T2"):
    q = quotient_poset(P, load_relation(name))
    covers = ", ".join(f"{q.poset.labels[i]} < {q.poset.labels[j]}" for i, j in q.cover_pairs())
    print(f"{name}: {len(q)} blocks; {covers}")

print("\nDOT for the three-block quotient:")
print(quotient_dot(quotient_poset(P, load_relation("fig3-T2"))))

# On a lattice the blocks also carry a join and meet: the unique block
# containing all pairwise joins (meets) of members.
C = Poset.chain(4)
T = from_cliques(C, [(0, 1), (1, 2), (2, 3)])
B = quotient_poset(C, T).blocks
print("4-chain, T with blocks", B)
print("  join of", B[0], "and", B[2], "->", czedli_join(C, T, B[0], B[2]))
print("  meet of", B[0], "and", B[2], "->", czedli_meet(C, T, B[0], B[2]))
print("  lattice order agrees with block order:", orders_coincide(C, T))
