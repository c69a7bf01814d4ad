"""Checking bounds case by case, then as a seeded suite.

Each catalog case turns operands into one or more (lhs, rhs) pairs with error
half-widths. A report is certified when the comparison holds after both sides
are widened by their half-widths.
"""
import numpy as np

from semihilbert import catalog as cat
from semihilbert import suite
from semihilbert.structure import make_weight

for case in cat.list_cases()[:6]:
    print(f"{case.id}  {case.kind}  {case.name}")
print("...")

ops = suite.draw_operands("C04", seed=3, dim=4, rank=2, trial=0)
for r in cat.evaluate("C04", ops):
    print(f"C04/{r.label}: lhs {r.lhs:.6f} <= rhs {r.rhs:.6f}  ratio {r.ratio:.4f}  "
          f"certified {r.certified}")

# the nilpotent Jordan block sits exactly on the lower bound w >= ||T||/2
N = np.array([[0, 1], [0, 0]], dtype=complex)
low = next(r for r in cat.evaluate("C01", cat.Operands(make_weight(np.eye(2)), {"T": N}))
           if r.label == "lower")
print(f"\nJordan block: ||T||/2 = {low.lhs:.6f}, w(T) = {low.rhs:.6f}")

rep = suite.run_suite(cases="C01,C06,C28", dims=(2, 3), trials=20, seed=1, extras=False)
print()
for cid, res in rep["cases"].items():
    print(f"{cid}: {res['evaluated']} trials, {res['violations']} violations")
print(f"wall time {rep['wall_time']['total']:.2f} s")
