"""Executable checks of the identities and inequalities behind C_L boundedness.

Each check returns a :class:`CheckReport`; ``passed`` is ``residual <= tolerance``.
The corpus runners at the bottom drive the named suites used by the CLI.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from .functions import COS4PI_SHIFT, CUBE, SQ, CLFunction
from .kernels import (
    KernelContext,
    Q_kernel,
    B_kernel,
    SweepTrace,
    e_phi_probe,
    mn_trace,
    partial_sum,
    partial_sum_trace,
)
from .quadrature import QuadratureSpec, find_crossings, integrate
from .systems import SystemDescriptor, cosine, double_system, g, haar

__all__ = [
    "CheckReport",
    "Theorem2Result",
    "check_lemma4",
    "abel_terms",
    "abel_identity",
    "check_bessel",
    "check_lemma3",
    "theorem2_trace",
    "q_crossings",
    "SUITES",
    "run_suite",
]


@dataclass(frozen=True)
class CheckReport:
    name: str
    residual: float
    tolerance: float
    passed: bool
    inputs: str

    @classmethod
    def make(cls, name: str, residual: float, tolerance: float, inputs: str) -> CheckReport:
        residual = float(residual)
        return cls(name, residual, float(tolerance), bool(residual <= tolerance), inputs)

    def to_dict(self) -> dict:
        return asdict(self)


# -- integration by parts ---------------------------------------------------------

def check_lemma4(sys: SystemDescriptor, f: CLFunction, x: float, n: int,
                 quad: QuadratureSpec | None = None, tol: float = 1e-8) -> CheckReport:
    """|S_n(x,f) - (f(1) int B_n(u,x) du - int f'(u) Q_n(u,x) du)|."""
    ctx = KernelContext(sys, n, x)
    lhs = partial_sum(ctx, f.value, quad)
    bps = list(ctx.breakpoints()) + list(f.breakpoints)
    # window grid keeps panels short against the oscillation of the kernels
    bps += list(np.arange(1, n) / n)
    f1 = float(np.asarray(f.value(np.array([1.0])))[0])
    b_int = integrate(lambda u: B_kernel(ctx, u), 0.0, 1.0, quad, bps)
    q_int = integrate(lambda u: f.derivative(u) * Q_kernel(ctx, u), 0.0, 1.0, quad, bps)
    residual = abs(lhs - (f1 * b_int - q_int))
    return CheckReport.make("lemma4", residual, tol, f"sys={sys.name} f={f.name} x={x!r} n={n}")


# -- Abel summation identity ---------------------------------------------------

class AbelTerms(NamedTuple):
    lhs: float
    shift: float  # sum over i < n of window-mean differences times int_0^{i/n} F
    local: float  # sum over i <= n of int_{D_i} (g - mean_i g) F
    tail: float  # mean of g over the last window times int_0^1 F
    last_local: float  # the i = n block of ``local``

    @property
    def rhs(self) -> float:
        return self.shift + self.local + self.tail


def abel_terms(g_fn, F, n: int, quad: QuadratureSpec | None = None,
               breakpoints=()) -> AbelTerms:
    """Terms of the windowed Abel summation of int_0^1 g F over the n-grid.

    With D_i = [(i-1)/n, i/n]:

        int g F = n sum_{i<n} int_{D_i} (g(x) - g(x + 1/n)) dx * int_0^{i/n} F
                + n sum_{i<=n} int_{D_i} int_{D_i} (g(x) - g(u)) du F(x) dx
                + n int_{D_n} g * int_0^1 F

    which holds exactly for every n.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    bps = list(breakpoints)
    win = lambda i: ((i - 1) / n, i / n)
    lhs = integrate(lambda u: g_fn(u) * F(u), 0.0, 1.0, quad, bps + list(np.arange(1, n) / n))
    cum_F = np.cumsum([integrate(F, *win(i), quad, bps) for i in range(1, n + 1)])
    shift = 0.0
    for i in range(1, n):
        a, b = win(i)
        diff = integrate(lambda x: g_fn(x) - g_fn(x + 1.0 / n), a, b, quad,
                         bps + [p - 1.0 / n for p in bps])
        shift += n * diff * cum_F[i - 1]
    blocks = []
    for i in range(1, n + 1):
        a, b = win(i)
        inner_mean = n * integrate(g_fn, a, b, quad, bps)
        # n * int_{D_i} (g(x)/n - int_{D_i} g) F(x) dx
        blocks.append(integrate(lambda x: (g_fn(x) - inner_mean) * F(x), a, b, quad, bps))
    tail = n * integrate(g_fn, 1.0 - 1.0 / n, 1.0, quad, bps) * cum_F[-1]
    return AbelTerms(lhs, shift, float(np.sum(blocks)), tail, blocks[-1])


def abel_identity(g_fn, F, n: int, quad: QuadratureSpec | None = None,
                  breakpoints=(), tol: float = 1e-8, label: str = "") -> CheckReport:
    """Residual of the windowed Abel summation identity (see :func:`abel_terms`)."""
    t = abel_terms(g_fn, F, n, quad, breakpoints)
    return CheckReport.make("abel", abs(t.lhs - t.rhs), tol, f"pair={label or 'custom'} n={n}")


# -- Bessel bound on the first antiderivatives -------------------------------------

def check_bessel(sys: SystemDescriptor, u: float, n: int, tol: float = 1e-12) -> CheckReport:
    """sum_{k<=n} g_k(u)^2 <= u, since g_k(u) is the k-th coefficient of 1_[0,u]."""
    total = float(np.sum(np.square(g(sys, np.arange(1, n + 1), u))))
    return CheckReport.make("bessel", max(0.0, total - u), tol,
                            f"sys={sys.name} u={u!r} n={n} sum={total!r}")


# -- segment bound on |Q_n| --------------------------------------------------------

def q_crossings(ctx: KernelContext, samples_per_window: int = 8) -> list[float]:
    """Zeros of u -> Q_n(u, x).

    A uniform scan of ``samples_per_window`` points per window plus the
    system breakpoints, refined by bisection; B_n, the u-derivative of Q_n,
    exposes root pairs that fall inside one scan cell.
    """
    grid = np.union1d(np.linspace(0.0, 1.0, samples_per_window * ctx.n + 1), ctx.breakpoints())
    return find_crossings(lambda u: Q_kernel(ctx, u), grid, df=lambda u: B_kernel(ctx, u))


def check_lemma3(sys: SystemDescriptor, x: float, n: int,
                 quad: QuadratureSpec | None = None, tol: float = 1e-9) -> list[CheckReport]:
    """int_{D_i} |Q_n(u,x)| du <= (1/n) (sum_k phi_k(x)^2)^{1/2} for every window D_i."""
    ctx = KernelContext(sys, n, x)
    bound = float(np.sqrt(np.sum(np.square(ctx.phi_at_x))) / n)
    bps = sorted(set(ctx.breakpoints()) | set(q_crossings(ctx)))
    reports = []
    for i in range(1, n + 1):
        lhs = integrate(lambda u: np.abs(Q_kernel(ctx, u)), (i - 1) / n, i / n, quad, bps)
        reports.append(CheckReport.make(
            "lemma3", max(0.0, lhs - bound), tol,
            f"sys={sys.name} x={x!r} n={n} i={i} integral={lhs!r} bound={bound!r}"))
    return reports


# -- partial-sum no-growth pipeline ----------------------------------------------

GROWTH_SLACK = 0.05


class Theorem2Result(NamedTuple):
    trace: SweepTrace
    report: CheckReport
    mn: SweepTrace
    probe_q: SweepTrace
    probe_p: SweepTrace


def theorem2_trace(sys: SystemDescriptor, f: CLFunction, x: float, n_max: int,
                   quad: QuadratureSpec | None = None) -> Theorem2Result:
    """Empirical no-growth test of S_n(x, f) for f in C_L.

    Boundedness cannot be checked finitely; the surrogate asserts that the
    largest |S_n| over (n_max/2, n_max] exceeds the largest over [1, n_max/2]
    by at most ``GROWTH_SLACK``.  M_n(x) and the q = 1, p = u probes are
    recorded alongside as the hypotheses.
    """
    f.validate()
    trace = partial_sum_trace(sys, f.value, x, n_max, quad, f"S_n(x,{f.name})")
    mn = mn_trace(sys, x, range(1, n_max + 1))
    tq, tp = e_phi_probe(sys, x, n_max, quad)
    vals = np.abs(trace.values)
    half = n_max // 2
    head = float(vals[:half].max()) if half else 0.0
    tail = float(vals[half:].max())
    inputs = (
        f"no-growth surrogate: sys={sys.name} f={f.name} x={x!r} n_max={n_max} "
        f"head_max={head!r} tail_max={tail!r} max_Mn={mn.max_abs()!r} "
        f"max|S_n(x,q)|={tq.max_abs()!r} max|S_n(x,p)|={tp.max_abs()!r}"
    )
    report = CheckReport.make("theorem2", max(0.0, tail - head), GROWTH_SLACK, inputs)
    return Theorem2Result(trace, report, mn, tq, tp)


# -- corpus runners ------------------------------------------------------------------

ABEL_PAIRS = [
    ("(u,1)", lambda u: np.asarray(u, dtype=float), lambda u: np.ones_like(np.asarray(u, dtype=float))),
    ("(u^2,u)", lambda u: np.asarray(u, dtype=float) ** 2, lambda u: np.asarray(u, dtype=float)),
    ("(sin2pi u,cos2pi u)", lambda u: np.sin(2 * np.pi * np.asarray(u, dtype=float)),
     lambda u: np.cos(2 * np.pi * np.asarray(u, dtype=float))),
    ("(u^3,u^2)", lambda u: np.asarray(u, dtype=float) ** 3, lambda u: np.asarray(u, dtype=float) ** 2),
]
ABEL_NS = (2, 4, 8, 16, 64)
LEMMA4_FUNCS = (SQ, CUBE, COS4PI_SHIFT)
GRID_X = (0.1, 0.3, 0.7)


def _families():
    return (cosine(), haar(), double_system(cosine()))


def suite_abel(quad=None):
    return [abel_identity(gf, F, n, quad, label=name)
            for name, gf, F in ABEL_PAIRS for n in ABEL_NS]


def suite_lemma4(quad=None):
    return [check_lemma4(s, f, x, n, quad)
            for f in LEMMA4_FUNCS for s in (cosine(), haar())
            for n in (4, 16, 64) for x in GRID_X]


def suite_bessel(quad=None):
    us = np.linspace(0.0, 1.0, 101)
    return [check_bessel(s, float(u), n)
            for s in _families() for n in range(1, 65) for u in us]


def suite_lemma3(quad=None):
    return [r for s in (cosine(), haar()) for x in GRID_X for n in (4, 16, 64)
            for r in check_lemma3(s, x, n, quad)]


def suite_theorem2(quad=None):
    return [theorem2_trace(s, CUBE, 0.3, 512, quad).report for s in (cosine(), haar())]


SUITES = {
    "bessel": suite_bessel,
    "lemma3": suite_lemma3,
    "lemma4": suite_lemma4,
    "abel": suite_abel,
    "theorem2": suite_theorem2,
}


def run_suite(name: str, quad: QuadratureSpec | None = None) -> list[CheckReport]:
    """Run one named suite (or ``all``); reports come back sorted by name and inputs."""
    names = list(SUITES) if name == "all" else [name]
    for nm in names:
        if nm not in SUITES:
            raise KeyError(f"unknown suite {nm!r}; choose from {sorted(SUITES) + ['all']}")
    reports = [r for nm in names for r in SUITES[nm](quad)]
    return sorted(reports, key=lambda r: (r.name, r.inputs))
