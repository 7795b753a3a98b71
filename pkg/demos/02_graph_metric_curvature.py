#!/usr/bin/env python3
# Curvature of a graph metric, recovered from a single square.
#
# A hypersurface written locally as a graph z_0 = f(z_1, ..., z_n) inside a
# flat ambient space inherits the curvature R[i,j,k,l] = -F[i,k] conj(F[j,l])
# at the base point, where F is the matrix of second derivatives of f.  The
# sectional curvature is -|v^T F v|^2 / |v|^4: semi-negative, with zeros along
# the quadric cone v^T F v = 0.

import numpy as np

import curvkit as ck

# --- nondegenerate Hessian --------------------------------------------------
curv = ck.graph_curvature([np.eye(2)], orientation=-1)
print("R[1,1,1,1]        =", curv.tensor[0, 0, 0, 0])
print("H(1, 0)           =", ck.hsc(curv, None, [1.0, 0.0]))
print("H(1, i)           =", ck.hsc(curv, None, [1.0, 1.0j]), " (isotropic direction)")
print("Ricci:\n", ck.ricci(curv).real)
print("scalar curvature  =", ck.scalar(curv))

# The sectional-curvature form has exactly one (negative) square.
dec = ck.decompose(ck.hsc_numerator_form(curv))
print("decomposition: N =", dec.N, " sides =", (len(dec.pos), len(dec.neg)))

# --- degenerate Hessian: flat directions ------------------------------------
flat = ck.graph_curvature([np.diag([1.0, 0.0])], orientation=-1)
kernel = ck.curvature_kernel(flat)
print("\ndegenerate model: kernel dim =", kernel.dim, " n_R =", flat.n - kernel.dim)
print("Ricci:\n", ck.ricci(flat).real)

# Kernel directions annihilate the whole tensor in one slot, not just two.
report = ck.kernel_propagation_check(flat, kernel.basis[:, 0])
print("|R(.,.,v,vbar)| =", report.residual_vv, " |R(.,.,.,vbar)| =", report.residual_v)

# A non-kernel direction does not satisfy the hypothesis.
report = ck.kernel_propagation_check(flat, [1.0, 0.0])
print("e1 hypothesis met:", report.hypothesis_met)

# --- recovery from the squares ----------------------------------------------
rng = ck.Rng(seed=1)
hessian = rng.symmetric(3)
model = ck.graph_curvature([hessian], orientation=-1)
dec = ck.decompose(ck.hsc_numerator_form(model))
rebuilt = ck.recover(dec)
print("\nrecovery error:", np.linalg.norm(rebuilt.tensor - model.tensor))
