"""Exhaustive check of the structural claims on all small posets.

Every poset up to isomorphism with at most N elements is generated, every
tolerance on it enumerated, and each claim is checked on each instance.

Run:  python3 demos/04_sweep.py [N]      (default N = 4; N = 6 takes minutes)
"""
import sys

from tolposet import verify_theorems
from tolposet.enumeration import CLAIM_TEXT

n = int(sys.argv[1]) if len(sys.argv) > 1 else 4
report = verify_theorems(n)
print(report.summary())
for f in report.failures[:5]:
    print(f"{f['claim']}: poset {f['poset']} relation {f['relation']}")
    print("   claim:", CLAIM_TEXT[f["claim"]])
