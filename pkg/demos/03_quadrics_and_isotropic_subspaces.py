#!/usr/bin/env python3
# Complex quadrics: kernels, Takagi frames, and maximal isotropic subspaces.
#
# A rank-r quadric in C^n contains linear subspaces up to dimension
# (n - r) + floor(r/2) and no further.  The witness construction works in the
# conjugated Takagi frame, where the quadric is diagonal: kernel columns come
# for free and pairs of frame columns combine into isotropic directions.

import numpy as np

import curvkit as ck

rng = ck.Rng(seed=2024)

# --- rank and kernel ---------------------------------------------------------
q = ck.QuadraticForm(np.array([
    [0.0, 0.0, 0.0, 0.5, 0.0],
    [0.0, 0.0, 0.0, 0.0, 0.5],
    [0.0, 0.0, 0.0, 0.0, 0.0],
    [0.5, 0.0, 0.0, 0.0, 0.0],
    [0.0, 0.5, 0.0, 0.0, 0.0],
], dtype=complex))  # z1 z4 + z2 z5 in C^5
rank, kernel = ck.rank_and_kernel(q)
print("rank =", rank, " kernel dim =", kernel.dim)
print("kernel contains e3:", kernel.contains([0, 0, 1, 0, 0]))

# --- Takagi factorization ----------------------------------------------------
w, s = ck.takagi(q)
print("singular values:", s.round(12))
print("factorization residual:", np.linalg.norm(w @ np.diag(s) @ w.T - q.matrix))

# --- maximal isotropic subspace ------------------------------------------------
witness = ck.max_isotropic(q)
print("isotropic bound:", ck.isotropic_bound(5, rank), " witness dim:", witness.dim)
print("vanishes on witness:", ck.vanishes_on(q, witness))

# Full-rank quadrics admit nothing larger than floor(n/2).
full = ck.random_symmetric_with_rank(6, 6, rng)
print("\nfull rank in C^6: witness dim =", ck.max_isotropic(full).dim)
too_big = ck.Subspace(rng.orthonormal(6, 4))
print("random 4-plane inside it?", ck.vanishes_on(full, too_big))

# --- kernels of quadrics sharing a subspace -----------------------------------
# Quadrics through a common subspace of dimension floor(N n/(N+1)) + 1 must
# have intersecting kernels; one dimension lower and the intersection can die.
n, count = 7, 2
threshold = (count * n) // (count + 1) + 1
shared = ck.Subspace(rng.orthonormal(n, threshold))
quads = ck.random_quadrics_on(shared, count, seed=5)
print("\nshared dim", threshold, "-> common kernel dim:", ck.common_kernel(quads).dim)

family, shared_l, meta = ck.sharp_family(n, count)
print("sharp family at dim", meta["eta"], "-> common kernel dim:",
      ck.common_kernel([f for f in family if not f.is_zero(1e-12)]).dim)

# --- subspace intersections ----------------------------------------------------
subs = [ck.Subspace(rng.orthonormal(5, 4)) for _ in range(3)]
meet = ck.intersect(subs)
print("\nthree 4-planes in C^5 intersect in dim", meet.dim, "(bound: 2)")
