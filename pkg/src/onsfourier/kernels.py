"""Fourier coefficients, partial sums, the kernels B_n and Q_n, and M_n(x).

The functional

    M_n(x) = (1/n) sum_{i=1}^{n-1} | int_0^{i/n} Q_n(u, x) du |,
    Q_n(u, x) = sum_{k<=n} g_k(u) phi_k(x),

is evaluated entirely in closed form through the second antiderivatives G2,
so its value does not depend on any quadrature setting.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .quadrature import QuadratureSpec, integrate, gauss_mesh
from .systems import G2, SystemDescriptor, breakpoints, breakpoints_upto, eval_phi, g

__all__ = [
    "KernelContext",
    "SweepTrace",
    "Lemma1Stat",
    "fourier_coeff",
    "gram_matrix",
    "coefficients",
    "clear_cache",
    "partial_sum",
    "partial_sum_trace",
    "B_kernel",
    "Q_kernel",
    "Q_antideriv",
    "M_functional",
    "mn_values",
    "mn_trace",
    "lemma1_stat",
    "in_G_proxy",
    "e_phi_probe",
]


@dataclass(frozen=True)
class KernelContext:
    """Frozen (system, n, x) bundle with phi_k(x), k = 1..n, precomputed."""

    sys: SystemDescriptor
    n: int
    x: float
    phi_at_x: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 1 <= self.n <= self.sys.max_index:
            raise IndexError(f"n={self.n} outside 1..{self.sys.max_index}")
        if not 0.0 <= self.x <= 1.0:
            raise ValueError("x must lie in [0, 1]")
        phi = np.asarray(eval_phi(self.sys, np.arange(1, self.n + 1), self.x), dtype=float)
        phi.setflags(write=False)
        object.__setattr__(self, "phi_at_x", phi)

    @property
    def k(self) -> np.ndarray:
        return np.arange(1, self.n + 1)

    def breakpoints(self) -> tuple[float, ...]:
        return breakpoints_upto(self.sys, self.n)


@dataclass(frozen=True)
class SweepTrace:
    label: str
    n_values: tuple[int, ...]
    values: tuple[float, ...]
    x: float
    sys_name: str

    def __post_init__(self):
        n = tuple(int(v) for v in self.n_values)
        vals = tuple(float(v) for v in self.values)
        if len(n) != len(vals):
            raise ValueError("n_values and values differ in length")
        if any(b <= a for a, b in zip(n, n[1:])):
            raise ValueError("n_values must be strictly increasing")
        object.__setattr__(self, "n_values", n)
        object.__setattr__(self, "values", vals)

    @property
    def running_max(self) -> np.ndarray:
        """Running maximum of |value|."""
        return np.maximum.accumulate(np.abs(self.values))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values else 0.0


# -- coefficients --------------------------------------------------------------

_cache: dict = {}
_cache_lock = threading.Lock()


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()


def _periods(sys: SystemDescriptor, k: int) -> int:
    """Number of oscillation periods of phi_k on [0, 1] (zero for Haar)."""
    if sys.family == "cosine":
        return k
    if sys.family == "haar":
        return 0
    return 2 * _periods(sys.base, k)


def fourier_coeff(sys: SystemDescriptor, f, k: int,
                  quad: QuadratureSpec | None = None) -> float:
    """C_k(f) = int_0^1 f phi_k, by breakpoint-aware quadrature.

    ``f`` must accept numpy arrays.  If it has a ``breakpoints`` attribute
    those are honoured along with the basis function's own.
    """
    bps = list(breakpoints(sys, k)) + list(getattr(f, "breakpoints", ()))
    # panels of about two periods of the basis keep high indices cheap
    panels = max(1, _periods(sys, k) // 2)
    bps += list(np.arange(1, panels) / panels)
    return integrate(lambda u: f(u) * eval_phi(sys, k, u), 0.0, 1.0, quad, bps)


def gram_matrix(sys: SystemDescriptor, n: int, nodes_per_panel: int = 32) -> np.ndarray:
    """Inner products int_0^1 phi_j phi_k for j, k <= n on one shared mesh.

    Panels split at every breakpoint of phi_1..phi_n and are at most one
    period of the fastest product wide, so each panel sees a smooth integrand.
    """
    panels = max(1, 2 * _periods(sys, n))
    edges = np.union1d(np.linspace(0.0, 1.0, panels + 1), breakpoints_upto(sys, n))
    u, w = gauss_mesh(edges, nodes_per_panel)
    phi = eval_phi(sys, np.arange(1, n + 1)[:, None], u[None, :])
    return (phi * w) @ phi.T


def coefficients(sys: SystemDescriptor, f, n: int,
                 quad: QuadratureSpec | None = None) -> np.ndarray:
    """C_1(f), ..., C_n(f), cached per (system, function, quadrature spec)."""
    key = (sys, f, quad)
    cached = _cache.get(key)
    if cached is not None and len(cached) >= n:
        return cached[:n]
    have = 0 if cached is None else len(cached)
    new = [fourier_coeff(sys, f, k, quad) for k in range(have + 1, n + 1)]
    merged = np.concatenate([cached if cached is not None else np.empty(0), new])
    merged.setflags(write=False)
    with _cache_lock:
        current = _cache.get(key)
        if current is None or len(current) < n:
            _cache[key] = current = merged
    return current[:n]


def partial_sum(ctx: KernelContext, f, quad: QuadratureSpec | None = None) -> float:
    """S_n(x, f) = sum_{k<=n} C_k(f) phi_k(x)."""
    return float(np.dot(coefficients(ctx.sys, f, ctx.n, quad), ctx.phi_at_x))


def partial_sum_trace(sys: SystemDescriptor, f, x: float, n_max: int,
                      quad: QuadratureSpec | None = None, label: str = "S_n") -> SweepTrace:
    """S_n(x, f) for n = 1..n_max as a trace (one pass over the cumulative sum)."""
    ctx = KernelContext(sys, n_max, x)
    vals = np.cumsum(coefficients(sys, f, n_max, quad) * ctx.phi_at_x)
    return SweepTrace(label, tuple(range(1, n_max + 1)), tuple(vals), x, sys.name)


# -- kernels -----------------------------------------------------------------

def _kernel(fn, ctx, u):
    u = np.asarray(u, dtype=float)
    vals = fn(ctx.sys, ctx.k[:, None], u.reshape(1, -1))
    out = ctx.phi_at_x @ vals
    return out.reshape(u.shape) if u.ndim else float(out[0])


def B_kernel(ctx: KernelContext, u):
    """B_n(u, x) = sum_{k<=n} phi_k(u) phi_k(x)."""
    return _kernel(eval_phi, ctx, u)


def Q_kernel(ctx: KernelContext, u):
    """Q_n(u, x) = sum_{k<=n} g_k(u) phi_k(x)."""
    return _kernel(g, ctx, u)


def Q_antideriv(ctx: KernelContext, y):
    """int_0^y Q_n(u, x) du = sum_{k<=n} G2_k(y) phi_k(x), without quadrature."""
    return _kernel(G2, ctx, y)


def mn_values(sys: SystemDescriptor, n: int, xs) -> np.ndarray:
    """M_n(x) for every x in ``xs`` at a single n."""
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if n == 1:
        return np.zeros(xs.shape)
    k = np.arange(1, n + 1)
    y = np.arange(1, n) / n
    inner = eval_phi(sys, k[None, :], xs[:, None]) @ G2(sys, k[:, None], y[None, :])
    return np.abs(inner).sum(axis=1) / n


def M_functional(ctx: KernelContext) -> float:
    """M_n(x); zero for n = 1 (empty sum)."""
    if ctx.n == 1:
        return 0.0
    y = np.arange(1, ctx.n) / ctx.n
    return float(np.abs(Q_antideriv(ctx, y)).sum() / ctx.n)


def mn_trace(sys: SystemDescriptor, x: float, n_values) -> SweepTrace:
    vals = [float(mn_values(sys, int(n), [x])[0]) for n in n_values]
    return SweepTrace("M_n", tuple(n_values), tuple(vals), x, sys.name)


# -- ratio statistic and the set G -----------------------------------------------

class Lemma1Stat(NamedTuple):
    scaled: float  # sqrt(n) * ratio, bounded a.e.
    ratio: float  # (1/n^2) sum_{k<=n} phi_k(x)^2


def lemma1_stat(sys: SystemDescriptor, x: float, n: int) -> Lemma1Stat:
    phi = eval_phi(sys, np.arange(1, n + 1), x)
    ratio = float(np.sum(np.square(phi)) / n**2)
    return Lemma1Stat(float(np.sqrt(n) * ratio), ratio)


def in_G_proxy(sys: SystemDescriptor, x: float, n_max: int, n_head: int = 64) -> bool:
    """Finite stand-in for membership of x in G.

    True when the ratio (1/n^2) sum phi_k(x)^2 over n_head < n <= n_max never
    exceeds its maximum over n <= n_head.  This is a report, not a proof.
    """
    phi2 = np.square(eval_phi(sys, np.arange(1, n_max + 1), x))
    n = np.arange(1, n_max + 1)
    ratio = np.cumsum(phi2) / n**2
    if n_max <= n_head:
        return True
    return bool(ratio[n_head:].max() <= ratio[:n_head].max())


# -- E(phi) probes -------------------------------------------------------------

def _q(u):
    return np.ones_like(np.asarray(u, dtype=float))


def _p(u):
    return np.asarray(u, dtype=float)


def e_phi_probe(sys: SystemDescriptor, x: float, n_max: int,
                quad: QuadratureSpec | None = None) -> tuple[SweepTrace, SweepTrace]:
    """Traces of S_n(x, q) with q = 1 and S_n(x, p) with p(u) = u, n = 1..n_max.

    Both staying bounded is the hypothesis q, p in E(phi) used for C_L
    boundedness.  ``SweepTrace.running_max`` gives the running maxima.
    """
    tq = partial_sum_trace(sys, _q, x, n_max, quad, "S_n(x,q)")
    tp = partial_sum_trace(sys, _p, x, n_max, quad, "S_n(x,p)")
    return tq, tp
