"""
Exact identities behind boundedness on C_L
==========================================

Integration by parts for partial sums, the windowed Abel summation and the
segment bound on |Q_n|, checked numerically.  Residuals sit at roundoff.
"""

import numpy as np

from onsfourier import check_lemma3, check_lemma4, cosine, haar, theorem2_trace
from onsfourier.functions import COS4PI_SHIFT, CUBE
from onsfourier.verify import abel_terms

# S_n(x, f) = f(1) int B_n - int f' Q_n
for sys in (cosine(), haar()):
    for n in (4, 64):
        r = check_lemma4(sys, COS4PI_SHIFT, 0.3, n)
        print(f"{sys.name} n={n}: integration by parts residual {r.residual:.1e}")

# Abel summation of int g F over n windows, g = u^2, F = u.
t = abel_terms(lambda u: np.asarray(u) ** 2, lambda u: np.asarray(u), 2)
print(f"lhs {t.lhs:.6f} = shift {t.shift:.6f} + local {t.local:.6f} + tail {t.tail:.6f}"
      f"  (last window's local part {t.last_local:.6f})")

# Each window integral of |Q_n| stays below (1/n) (sum phi_k(x)^2)^(1/2).
reports = check_lemma3(cosine(), 0.7, 16)
print("segment bound holds in all", len(reports), "windows:", all(r.passed for r in reports))

# Partial sums of u^3 at x = 0.3 do not grow with n.
res = theorem2_trace(cosine(), CUBE, 0.3, 512)
v = np.abs(res.trace.values)
print(f"max |S_n| for n<=256: {v[:256].max():.4f}, for 256<n<=512: {v[256:].max():.4f}")
