"""
Extremal functions and doubled systems
======================================

Build f_n whose slope follows the sign of int_0^y Q_n, split its pairing with
Q_n into three sums, then check the doubled systems' vanishing moments.
"""

import numpy as np

from onsfourier import build_extremal, cosine, decompose_eq23, haar, partition_Dn, sign_profile, theorem4_demo
from onsfourier.sharpness import lower_bound_probe

sys, n, t = cosine(), 32, 0.1
profile = sign_profile(sys, n, t)
fn = build_extremal(profile)
print(f"{len(profile.crossings)} sign changes, leading sign {profile.leading_sign:+d}, "
      f"lip_norm {fn.lip_norm:.3f}")

d = decompose_eq23(sys, n, t, fn)
print(f"S1 {d.S1:+.6f}  S2 {d.S2:+.6f}  S3 {d.S3:+.6f}  sum {d.total:+.6f}  "
      f"direct {d.lhs:+.6f}")

part = partition_Dn(sys, n, t, profile)
print(f"windows with a sign change: {list(part.D)}")
print(f"their share {part.statistic:.4f} vs bound {part.bound:.4f}")

lb = lower_bound_probe(sys, n, t)
print(f"L = {lb.L:.5f}, M_n = {lb.M:.5f}, per-term identity residual {lb.report.residual:.1e}")

# Doubling twice kills the zeroth and first moments; coefficients halve.
for base in (cosine(), haar()):
    reports = theorem4_demo(base, 16)
    worst = max(r.residual for r in reports)
    print(f"{base.name}: {len(reports)} checks, worst residual {worst:.1e}")
