"""Constructions showing the M_n condition and the moment hypotheses are sharp.

Two pieces live here:

* the extremal sequence f_n(u) = int_0^u sign(int_0^y Q_n(v, t) dv) dy, its
  windowed Abel decomposition S1 + S2 + S3, and the split of window indices
  into those where the sign is constant (F) and those where it is not (D);
* the doubled systems Phi = double(base), G = double(Phi) together with the
  squeezed test functions, where the zeroth and first moments of G vanish
  while coefficients are halved at each squeeze.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .functions import COS4PI_SHIFT, squeeze
from .kernels import KernelContext, M_functional, Q_antideriv, Q_kernel, fourier_coeff
from .quadrature import QuadratureSpec, add_extrema, integrate
from .systems import SystemDescriptor, double_system
from .verify import CheckReport

__all__ = [
    "SignProfile",
    "ExtremalFunction",
    "Decomposition",
    "Partition",
    "sign_profile",
    "build_extremal",
    "decompose_eq23",
    "partition_Dn",
    "lower_bound_probe",
    "theorem4_demo",
    "sharpness_summary",
    "SHARPNESS_GRID",
]

ZERO_TOL = 1e-14

# (system name, n, t) cells used by the sharpness checks
SHARPNESS_GRID = tuple((s, n, t) for s in ("cosine", "haar")
                       for n in (2, 8, 32, 128) for t in (0.1, 0.3, 0.7))


@dataclass(frozen=True)
class SignProfile:
    """Piecewise-constant sign of y -> int_0^y Q_n(v, t) dv on [0, 1].

    ``signs[j]`` holds on the j-th piece between consecutive entries of
    ``[0, *crossings, 1]``.
    """

    crossings: tuple[float, ...]
    signs: tuple[int, ...]
    sys: SystemDescriptor
    n: int
    t: float

    @property
    def leading_sign(self) -> int:
        return self.signs[0]

    @property
    def knots(self) -> np.ndarray:
        return np.array([0.0, *self.crossings, 1.0])

    def sign_at(self, y) -> np.ndarray:
        """Sign on the piece containing ``y`` (pieces are closed on the left)."""
        idx = np.searchsorted(self.crossings, y, side="right")
        return np.asarray(self.signs)[idx]


def _classify(vals):
    return np.where(np.abs(vals) <= ZERO_TOL, 0, np.sign(vals)).astype(int)


def _refine(fn, lo, hi, cls_lo, xtol=1e-13):
    """Bisect to the point where the sign class stops being ``cls_lo``."""
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if _classify(fn(mid)) == cls_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sign_profile(sys: SystemDescriptor, n: int, t: float,
                 samples_per_window: int = 16) -> SignProfile:
    """Locate the sign changes of y -> int_0^y Q_n(v, t) dv.

    The function is sampled at ``samples_per_window * n`` points plus the
    system breakpoints and every class change (+, 0, -) is bisected to 1e-13.
    Extrema located through the derivative Q_n guard against sign excursions
    narrower than one sample cell.
    Values within ``ZERO_TOL`` of zero count as zero.  Only interior samples
    are classified: the integral vanishes at 0, and at 1 it may vanish too
    (cosine), so the end pieces take the class of their nearest interior sample.
    """
    ctx = KernelContext(sys, n, t)
    grid = np.linspace(0.0, 1.0, samples_per_window * n + 1)
    grid = np.union1d(grid, ctx.breakpoints())
    grid = add_extrema(lambda y: Q_antideriv(ctx, y), lambda u: Q_kernel(ctx, u), grid, 1e-13)[1:-1]
    cls = _classify(Q_antideriv(ctx, grid))
    crossings, signs = [], [int(cls[0])]
    for j in range(1, len(grid)):
        if cls[j] != cls[j - 1]:
            crossings.append(float(_refine(lambda y: Q_antideriv(ctx, y),
                                           grid[j - 1], grid[j], cls[j - 1])))
            signs.append(int(cls[j]))
    return SignProfile(tuple(crossings), tuple(signs), sys, n, t)


@dataclass(frozen=True)
class ExtremalFunction:
    """f_n(u) = int_0^u sign(...) dy as an exact piecewise-linear function."""

    profile: SignProfile
    knots: np.ndarray
    knot_values: np.ndarray
    lip_norm: float

    def __call__(self, u):
        return np.interp(u, self.knots, self.knot_values)

    @property
    def slopes(self) -> np.ndarray:
        return np.asarray(self.profile.signs, dtype=float)

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return self.profile.crossings


def build_extremal(profile: SignProfile) -> ExtremalFunction:
    knots = profile.knots
    values = np.concatenate([[0.0], np.cumsum(np.diff(knots) * np.asarray(profile.signs))])
    # sup-norm plus the Lipschitz seminorm, which is 1 unless f_n vanishes identically
    lip = float(np.max(np.abs(values))) + (1.0 if any(profile.signs) else 0.0)
    return ExtremalFunction(profile, knots, values, lip)


class Decomposition(NamedTuple):
    S1: float
    S2: float
    S3: float
    total: float
    lhs: float
    residual: float


def decompose_eq23(sys: SystemDescriptor, n: int, t: float, fn: ExtremalFunction,
                   quad: QuadratureSpec | None = None) -> Decomposition:
    """Split int_0^1 f_n Q_n(., t) into the windowed Abel terms.

    S1 = sum_{i<n} (f_n(i/n) - f_n((i+1)/n)) int_0^{i/n} Q_n
    S2 = sum_{i<=n} int_{D_i} (f_n(u) - f_n(i/n)) Q_n(u, t) du
    S3 = f_n(1) int_0^1 Q_n

    The left side is integrated directly, so ``residual`` measures the
    quadrature error only.
    """
    ctx = KernelContext(sys, n, t)
    nodes = np.arange(0, n + 1) / n
    f_nodes = fn(nodes)
    Y = np.atleast_1d(Q_antideriv(ctx, nodes))
    S1 = float(np.sum((f_nodes[1:-1] - f_nodes[2:]) * Y[1:-1]))
    bps = sorted(set(ctx.breakpoints()) | set(fn.breakpoints))
    S2 = 0.0
    for i in range(1, n + 1):
        S2 += integrate(lambda u: (fn(u) - f_nodes[i]) * Q_kernel(ctx, u),
                        nodes[i - 1], nodes[i], quad, bps)
    S3 = float(f_nodes[-1] * Y[-1])
    lhs = integrate(lambda u: fn(u) * Q_kernel(ctx, u), 0.0, 1.0, quad,
                    bps + list(nodes[1:-1]))
    total = S1 + S2 + S3
    return Decomposition(S1, S2, S3, total, lhs, abs(lhs - total))


class Partition(NamedTuple):
    D: tuple[int, ...]
    F: tuple[int, ...]
    statistic: float  # (1/n) sum_{i in D} |int_0^{i/n} Q_n|
    bound: float  # (1/n) (sum_k phi_k(t)^2)^{1/2}


def partition_Dn(sys: SystemDescriptor, n: int, t: float,
                 profile: SignProfile | None = None) -> Partition:
    """Split {1..n-1} by whether the sign of int_0^y Q_n stays equal to its value at i/n.

    Index i goes to D when some y in the window [i/n, (i+1)/n] -- the one on
    which f_n has slope sign(int_0^{i/n} Q_n) -- carries a different sign.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    profile = profile or sign_profile(sys, n, t)
    ctx = KernelContext(sys, n, t)
    Y = np.atleast_1d(Q_antideriv(ctx, np.arange(1, n) / n))
    at_node = _classify(Y)
    cr = np.asarray(profile.crossings)
    D, F = [], []
    for i in range(1, n):
        lo, hi = i / n, (i + 1) / n
        crosses = bool(np.any((cr > lo) & (cr < hi)))
        window_sign = int(profile.sign_at(0.5 * (lo + hi)))
        (D if crosses or window_sign != at_node[i - 1] else F).append(i)
    stat = float(np.sum(np.abs(Y[np.asarray(D, dtype=int) - 1])) / n) if D else 0.0
    bound = float(np.sqrt(np.sum(np.square(ctx.phi_at_x))) / n)
    return Partition(tuple(D), tuple(F), stat, bound)


class LowerBound(NamedTuple):
    report: CheckReport
    L: float
    M: float
    gap: float
    per_term_residuals: np.ndarray


def lower_bound_probe(sys: SystemDescriptor, n: int, t: float,
                      quad: QuadratureSpec | None = None, tol: float = 1e-10) -> LowerBound:
    """Compare L = |int f_n Q_n(., t)| with M_n(t) and check the per-term F identity.

    For i in F the Abel term equals -(1/n)|int_0^{i/n} Q_n| exactly; the
    report's residual is the largest deviation from that.  The gap M - L is
    a diagnostic only.
    """
    ctx = KernelContext(sys, n, t)
    profile = sign_profile(sys, n, t)
    fn = build_extremal(profile)
    part = partition_Dn(sys, n, t, profile)
    dec = decompose_eq23(sys, n, t, fn, quad)
    L = abs(dec.lhs)
    M = M_functional(ctx)
    F = np.asarray(part.F, dtype=int)
    if F.size:
        Y = np.atleast_1d(Q_antideriv(ctx, F / n))
        terms = (fn(F / n) - fn((F + 1) / n)) * Y
        res = np.abs(terms + np.abs(Y) / n)
    else:
        res = np.zeros(0)
    worst = float(res.max()) if res.size else 0.0
    report = CheckReport.make(
        "per_term", worst, tol,
        f"sys={sys.name} n={n} t={t!r} L={L!r} M={M!r} gap={M - L!r} |F|={F.size}")
    return LowerBound(report, L, M, M - L, res)


def sharpness_summary(sys: SystemDescriptor, n: int, t: float,
                      quad: QuadratureSpec | None = None) -> dict:
    """Everything the ``sharpness`` CLI subcommand reports, as a plain dict."""
    profile = sign_profile(sys, n, t)
    fn = build_extremal(profile)
    dec = decompose_eq23(sys, n, t, fn, quad)
    ctx = KernelContext(sys, n, t)
    out = {
        "sys": sys.name, "n": n, "t": t,
        "crossings": list(profile.crossings),
        "signs": list(profile.signs),
        "S1": dec.S1, "S2": dec.S2, "S3": dec.S3,
        "total": dec.total, "lhs": dec.lhs, "residual": dec.residual,
        "lip_norm": fn.lip_norm,
        "M_n": M_functional(ctx),
        "L_n": abs(dec.lhs),
        "D_indices": [],
        "per_term_residual": 0.0,
    }
    if n >= 2:
        probe = lower_bound_probe(sys, n, t, quad)
        out["D_indices"] = list(partition_Dn(sys, n, t, profile).D)
        out["per_term_residual"] = probe.report.residual
    return out


# -- doubled systems ---------------------------------------------------------------

def theorem4_demo(base: SystemDescriptor, n_max: int,
                  quad: QuadratureSpec | None = None, tol: float = 1e-9) -> list[CheckReport]:
    """Moment and coefficient-halving checks for Phi = double(base), G = double(Phi).

    With f(u) = 1 - cos 4 pi (u - 1/2), g = squeeze(f) and h = squeeze(g):
    int G_k = 0, int u G_k = 0, C_k(g, Phi) = C_k(f, base) / 2 and
    C_k(h, G) = C_k(g, Phi) / 2 for k = 1..n_max.
    """
    if n_max > base.max_index:
        raise IndexError("n_max exceeds the base system's max_index")
    phi_sys = double_system(base)
    g_sys = double_system(phi_sys)
    f = COS4PI_SHIFT
    gf = squeeze(f, "g")
    hf = squeeze(gf, "h")

    def coeff(sys, fun, k):
        return fourier_coeff(sys, fun, k, quad)

    one = lambda u: np.ones_like(np.asarray(u, dtype=float))
    ident = lambda u: np.asarray(u, dtype=float)
    reports = []
    for k in range(1, n_max + 1):
        tag = f"base={base.name} k={k}"
        reports.append(CheckReport.make("G_mean", abs(coeff(g_sys, one, k)), tol, tag))
        reports.append(CheckReport.make("G_first_moment", abs(coeff(g_sys, ident, k)), tol, tag))
        c_f = coeff(base, f, k)
        c_g = coeff(phi_sys, gf, k)
        c_h = coeff(g_sys, hf, k)
        reports.append(CheckReport.make("halving_phi", abs(c_g - c_f / 2), tol,
                                        f"{tag} C(g,Phi)={c_g!r} C(f,base)={c_f!r}"))
        reports.append(CheckReport.make("halving_G", abs(c_h - c_g / 2), tol,
                                        f"{tag} C(h,G)={c_h!r} C(g,Phi)={c_g!r}"))
    return reports
