"""Tolerances on a six-element poset and the blocks they cut out.

Run:  python3 demos/01_tolerances_and_blocks.py
"""
from tolposet import all_tolerances, blocks, from_label_cliques, is_congruence, is_directed, tolerance_witness
from tolposet.figures import load_poset

# Two atoms a, b under two coatoms c, d, with a bottom 0 and top 1.
# a and b have no join (both c and d are minimal upper bounds).
P = load_poset("fig1")
print("elements:", " ".join(P.labels))
print("leq matrix:\n", P.leq.astype(int))

T1 = from_label_cliques(P, [list("0abc"), list("bcd1")])
T2 = from_label_cliques(P, [list("0abd"), list("acd1")])
for name, t in (("T1", T1), ("T2", T2)):
    print(f"{name} = {t.describe():<20} tolerance={tolerance_witness(P, t) is None} congruence={is_congruence(P, t)}")

# Tolerances are not closed under intersection on posets.
meet = T1 & T2
w = tolerance_witness(P, meet)
print("\nT1 & T2 =", meet.describe())
print("  fails:", w.format(P))
for b in blocks(P, meet):
    print(f"  block {P.format_set(b):<10} directed={is_directed(P, b)}")

# The full family, smallest first.
fam = all_tolerances(P)
print(f"\n{len(fam)} tolerances in all; the non-trivial ones:")
for t in fam.members[1:-1]:
    print("  ", t.describe())
