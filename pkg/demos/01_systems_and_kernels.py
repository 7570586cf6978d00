"""
Orthonormal systems and their kernels
=====================================

Evaluate the cosine, Haar and doubled systems, check that they are
orthonormal, and look at the kernels B_n and Q_n at one point.
"""

import numpy as np

from onsfourier import (B_kernel, KernelContext, Q_antideriv, Q_kernel, cosine,
                        double_system, eval_phi, g, gram_matrix, haar)

# The three families.  Haar takes the mean value at its interior jumps.
cos, hr = cosine(), haar()
dbl = double_system(cos)
u = np.array([0.0, 0.125, 0.25, 0.5, 0.75])
for sys in (cos, hr, dbl):
    print(f"{sys.name:>16}  phi_3(u) =", np.round(eval_phi(sys, 3, u), 4))

# Gram matrices on 16 functions should be the identity up to roundoff.
for sys in (cos, hr, dbl, double_system(hr)):
    G = gram_matrix(sys, 16)
    print(f"{sys.name:>16}  max |G - I| = {np.abs(G - np.eye(16)).max():.1e}")

# g_k is the antiderivative of phi_k; Bessel's inequality gives sum g_k(u)^2 <= u.
k = np.arange(1, 65)
for uu in (0.1, 0.25, 0.5):
    print(f"u={uu}: sum g_k^2 = {np.sum(g(cos, k, uu) ** 2):.6f}")

# Kernels at x = 0.3, n = 8.  Q_n is the u-antiderivative of B_n.
ctx = KernelContext(cos, 8, 0.3)
grid = np.linspace(0, 1, 6)
print("B_8(u, 0.3) =", np.round(B_kernel(ctx, grid), 4))
print("Q_8(u, 0.3) =", np.round(Q_kernel(ctx, grid), 4))
print("int_0^u Q_8 =", np.round(Q_antideriv(ctx, grid), 5))
