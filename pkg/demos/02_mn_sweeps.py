"""
The boundedness functional M_n(x)
=================================

M_n(x) is computed in closed form, so a full sweep over n and x is cheap.
For cosine it stays under 1/6; for Haar it stays under 2.
"""

import numpy as np

from onsfourier import cosine, haar, mn_values
from onsfourier.kernels import in_G_proxy, lemma1_stat

xs = np.linspace(0, 1, 101)
for sys, bound in ((cosine(), 1 / 6), (haar(), 2.0)):
    table = np.array([mn_values(sys, n, xs) for n in range(1, 257)])
    n_star, x_star = np.unravel_index(table.argmax(), table.shape)
    print(f"{sys.name}: max M_n = {table.max():.5f} at n={n_star + 1}, x={xs[x_star]:.2f} "
          f"(bound {bound:.4f})")

# Growth in n at a fixed point: it levels off rather than growing.
for n in (4, 16, 64, 256):
    print(f"n={n:>3}  M_n(0.3): cosine {mn_values(cosine(), n, [0.3])[0]:.5f}  "
          f"haar {mn_values(haar(), n, [0.3])[0]:.5f}")

# The ratio (1/n^2) sum phi_k(x)^2 decays like 1/n for these systems.
for n in (16, 256):
    print(f"n={n}: scaled ratio at 0.3 = {lemma1_stat(cosine(), 0.3, n).scaled:.4f}")
print("0.3 passes the finite G test:", in_G_proxy(cosine(), 0.3, 512))
