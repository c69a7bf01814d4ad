"""A short walk through the semi-Hilbertian toolkit.

A singular weight A makes only part of the space visible. Operators are judged
through that window: the A-adjoint, the A-seminorm and the two radii all live
on the compression of T to the range of A.
"""
import numpy as np

import semihilbert as sh

A = np.diag([1.0, 0.0])
T = np.array([[2, 0], [3, 5]], dtype=complex)
w = sh.make_weight(A)
print(f"rank of A: {w.rank}")

# T sends the null space of A into itself, so it has an A-adjoint
print("T in B_A:", sh.in_BA(w, T).ok)
print("A-adjoint:\n", np.round(sh.sharp(w, T), 12))

op = sh.bind(w, T)
print(f"||T||_A  = {sh.op_seminorm(op).value:.12f}")
for algo in ("compression", "theta_sweep"):
    r = sh.a_numerical_radius(op, algo)
    print(f"w_A(T)   = {r.value:.12f}  [{algo}, +/- {r.error_halfwidth:.1e}]")
for algo in ("eigen", "limit_formula"):
    r = sh.a_spectral_radius(op, algo)
    print(f"r_A(T)   = {r.value:.12f}  [{algo}]")

# the lower entries of T are invisible to A: changing them changes nothing
T2 = T.copy()
T2[1] = [-7, 1]
print("same w_A after editing the invisible row:",
      np.isclose(sh.a_numerical_radius(sh.bind(w, T2)).value,
                 sh.a_numerical_radius(op).value))

# a random rank-2 weight in dimension 4 and an operator drawn inside B_A
w = sh.gen_weight(4, 2, 7)
op = sh.gen_operator(w, "general_in_BA", 7)
print(f"\nrandom: ||T||_A = {sh.op_seminorm(op).value:.6f}, "
      f"w_A = {sh.a_numerical_radius(op).value:.6f}, "
      f"r_A = {sh.a_spectral_radius(op).value:.6f}")
