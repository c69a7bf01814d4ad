"""A counterexample to the product bound with an A-positive factor.

The claim is w_A(TS) <= ||T||_A w_A(S) whenever T is A-positive. Already at
A = I in dimension 2 it breaks: T is a rank one projection and S a nilpotent
matrix with w(S) = 1.
"""
import math

import numpy as np

from semihilbert import catalog as cat
from semihilbert.structure import make_weight

T = np.diag([1.0, 0.0]).astype(complex)
S = np.array([[1, 1], [-1, -1]], dtype=complex)
ops = cat.Operands(make_weight(np.eye(2)), {"T": T, "S": S})

for r in cat.evaluate("C09", ops):
    print(f"{r.label}: w(product) = {r.lhs:.9f}  bound = {r.rhs:.9f}  certified {r.certified}")
print(f"exact value (1 + sqrt 2)/2 = {(1 + math.sqrt(2)) / 2:.9f}")

# interpolating between ||S|| and w(S): the argument survives up to alpha = 1/2
for alpha in cat.ALPHAS:
    r = cat.positive_product_family(ops, alpha)
    print(f"alpha = {alpha:<4}  lhs {r.lhs:.6f}  rhs {r.rhs:.6f}  certified {r.certified}")

# the same thing shows up on random draws
from semihilbert import suite

rep = suite.run_suite(cases="C09", dims=(2, 3), trials=50, seed=2, extras=False)
res = rep["cases"]["C09"]
print(f"\nrandom draws: {res['violations']}/{res['evaluated']} uncertified")
