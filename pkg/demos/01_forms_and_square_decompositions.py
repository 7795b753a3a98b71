#!/usr/bin/env python3
# Difference-of-squares structure of a real (2,2)-form.
#
# A real-valued bihomogeneous polynomial H(v) of bidegree (2,2) on C^n is a
# Hermitian matrix on the basis of monomials v_i v_k (i <= k).  Its
# eigendecomposition splits it into |f_1|^2 + ... - |g_1|^2 - ..., and the
# larger side of that split is the decomposition length N.

import numpy as np

import curvkit as ck

# --- the classic example (|v1|^2 - |v2|^2)^2 ------------------------------
# On the pair basis (v1^2, v1 v2, v2^2) it is the diagonal matrix (1, -2, 1).
form = ck.HermitianForm22(np.diag([1.0, -2.0, 1.0]))
print("H(1, 1)  =", form.evaluate([1.0, 1.0]))       # 0: |v1| = |v2|
print("H(1, 0)  =", form.evaluate([1.0, 0.0]))       # 1
print("H(2, 2i) =", form.evaluate([2.0, 2.0j]))      # 0 again (scale free)

n_plus, n_minus, n_zero = ck.signature(form)
print("signature:", (n_plus, n_minus, n_zero), "-> N =", max(n_plus, n_minus))

dec = ck.decompose(form)
print("positive squares:", [q.matrix.round(6).tolist() for q in dec.pos])
print("negative squares:", [q.matrix.round(6).tolist() for q in dec.neg])

# The split reassembles to the original matrix.
back = ck.from_quadric_squares(dec.pos, dec.neg)
print("reassembly error:", np.linalg.norm(back.matrix - form.matrix))

# --- a random Hermitian form ----------------------------------------------
rng = ck.Rng(seed=7)
random_form = ck.HermitianForm22(rng.complex_normal((6, 6)))  # n = 3
dec = ck.decompose(random_form)
v = rng.complex_normal(3)
print("\nrandom form at v:     ", random_form.evaluate(v))
print("squares evaluated at v:", dec.evaluate(v))

# --- holomorphic systems cutting out the zero set --------------------------
# For every unitary U, common zeros of the system f_p - sum_j U_pj g_j land in
# the zero set of H.  With one square per side this is a single quadric.
f = ck.QuadraticForm(np.diag([1.0, 0.0]))
g = ck.QuadraticForm(np.diag([0.0, 1.0]))
split = ck.SquareDecomposition(2, pos=(f,), neg=(g,))
h = ck.from_quadric_squares(split.pos, split.neg)   # |v1^2|^2 - |v2^2|^2
for u in (1.0, -1.0):
    (system,) = ck.dangelo_system(split, [[u]])
    root = [1.0, 1.0] if u > 0 else [1.0, 1.0j]
    print(f"U = [{u:+.0f}]: system root {root} -> H =", h.evaluate(root))
