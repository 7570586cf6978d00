"""Breakpoint-aware composite Gauss-Legendre integration on [0, 1].

The interval is first split at the declared breakpoints.  Each piece is
integrated with a fixed-order Gauss-Legendre panel and compared against the
same rule on the two halves; pieces that disagree by more than their share of
the tolerance are bisected, at most ``max_panel_splits`` times.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

__all__ = [
    "QuadratureSpec",
    "QuadratureError",
    "DEFAULT_SPEC",
    "integrate",
    "find_crossings",
    "add_extrema",
    "gauss_mesh",
]

_EPS = np.finfo(float).eps


class QuadratureError(ArithmeticError):
    """Raised when a panel cannot meet its tolerance within the split budget."""

    def __init__(self, estimate: float, error: float, where: tuple[float, float]):
        self.estimate = estimate
        self.error = error
        self.where = where
        super().__init__(
            f"tolerance not reached on [{where[0]:.6g}, {where[1]:.6g}]: "
            f"estimate {estimate:.17g}, estimated error {error:.3g}"
        )


@dataclass(frozen=True)
class QuadratureSpec:
    nodes_per_panel: int = 32
    breakpoints: tuple[float, ...] = field(default=())
    target_tol: float = 1e-11
    max_panel_splits: int = 12

    def __post_init__(self):
        bp = tuple(float(b) for b in self.breakpoints)
        if any(b1 > b2 for b1, b2 in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be sorted")
        object.__setattr__(self, "breakpoints", bp)
        if not self.target_tol > 0:
            raise ValueError("target_tol must be positive")
        if self.nodes_per_panel < 1 or self.max_panel_splits < 0:
            raise ValueError("invalid panel settings")


DEFAULT_SPEC = QuadratureSpec()


@lru_cache(maxsize=16)
def _rule(n: int):
    return np.polynomial.legendre.leggauss(n)


def _evaluate(f, x):
    return np.broadcast_to(np.asarray(f(x), dtype=float), x.shape)


def _panel(f, a, b, nodes, weights):
    half = 0.5 * (b - a)
    vals = _evaluate(f, 0.5 * (a + b) + half * nodes)
    return half * np.dot(weights, vals), half * np.dot(weights, np.abs(vals))


def _adaptive(f, a, b, whole, tol, depth, spec, nodes, weights):
    """Return (estimate, unresolved error, first unresolved panel or None)."""
    mid = 0.5 * (a + b)
    left, left_abs = _panel(f, a, mid, nodes, weights)
    right, right_abs = _panel(f, mid, b, nodes, weights)
    fine = left + right
    err = abs(fine - whole)
    # roundoff floor: differences below a few ulps of the absolute mass are noise
    if err <= max(tol, 64 * _EPS * (left_abs + right_abs)):
        return fine, 0.0, None
    if depth >= spec.max_panel_splits:
        return fine, err, (a, b)
    lv, le, lw = _adaptive(f, a, mid, left, tol / 2, depth + 1, spec, nodes, weights)
    rv, re, rw = _adaptive(f, mid, b, right, tol / 2, depth + 1, spec, nodes, weights)
    return lv + rv, le + re, lw or rw


def gauss_mesh(edges, nodes_per_panel: int = 32):
    """Nodes and weights of the fixed composite rule on consecutive ``edges``."""
    edges = np.asarray(edges, dtype=float)
    nodes, weights = _rule(nodes_per_panel)
    half = 0.5 * np.diff(edges)[:, None]
    mid = 0.5 * (edges[:-1] + edges[1:])[:, None]
    return (mid + half * nodes).ravel(), (half * weights).ravel()


def integrate(f, a: float, b: float, spec: QuadratureSpec | None = None,
              breakpoints=()) -> float:
    """Integrate the vectorised callable ``f`` over [a, b].

    ``breakpoints`` are merged with ``spec.breakpoints``; points outside the
    open interval (a, b) are ignored.  No panel straddles a breakpoint.
    Raises :class:`QuadratureError` with the best whole-interval estimate if
    some panel misses its tolerance after ``max_panel_splits`` bisections.
    """
    spec = spec or DEFAULT_SPEC
    if not 0.0 <= a <= b <= 1.0:
        raise ValueError(f"need 0 <= a <= b <= 1, got [{a}, {b}]")
    if a == b:
        return 0.0
    pts = np.concatenate([np.asarray(spec.breakpoints, dtype=float),
                          np.asarray(breakpoints, dtype=float).ravel()])
    pts = np.unique(pts[(pts > a) & (pts < b)])
    edges = np.concatenate([[a], pts, [b]])
    nodes, weights = _rule(spec.nodes_per_panel)
    total, bad_err, where = 0.0, 0.0, None
    for lo, hi in zip(edges[:-1], edges[1:]):
        tol = spec.target_tol * (hi - lo) / (b - a)
        whole, _ = _panel(f, lo, hi, nodes, weights)
        val, err, w = _adaptive(f, lo, hi, whole, tol, 0, spec, nodes, weights)
        total += val
        bad_err += err
        where = where or w
    if where is not None:
        raise QuadratureError(float(total), bad_err, where)
    return float(total)


def _bisect(f, lo, hi, sign_lo, xtol):
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if np.sign(_evaluate(f, np.array([mid]))[0]) == sign_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def find_crossings(f, grid, xtol: float = 1e-13, df=None) -> list[float]:
    """Sign changes of ``f`` located by scanning ``grid`` and bisecting to ``xtol``.

    Interior grid points where ``f`` is exactly zero between values of opposite
    sign are returned as they are.  With the derivative ``df``, a pair of roots
    hidden inside one grid cell is also found: where ``df`` changes sign in a
    cell whose ends agree in sign, the extremum is bisected and tested.
    """
    grid = np.asarray(grid, dtype=float)
    if df is not None:
        grid = add_extrema(f, df, grid, xtol)
    vals = _evaluate(f, grid)
    signs = np.sign(vals)
    out = []
    last = 0  # index of the last nonzero sample
    while last < len(grid) and signs[last] == 0:
        last += 1
    for j in range(last + 1, len(grid)):
        if signs[j] == 0:
            continue
        if signs[j] != signs[last]:
            if j == last + 1:
                out.append(_bisect(f, grid[last], grid[j], signs[last], xtol))
            else:
                out.append(float(grid[last + 1]))
        last = j
    return out


def add_extrema(f, df, grid, xtol):
    """Add to ``grid`` the interior extrema of ``f`` in cells where ``df`` flips sign."""
    dsign = np.sign(_evaluate(df, grid))
    fsign = np.sign(_evaluate(f, grid))
    extra = []
    for j in range(len(grid) - 1):
        if dsign[j] * dsign[j + 1] < 0 and fsign[j] * fsign[j + 1] >= 0:
            extra.append(_bisect(df, grid[j], grid[j + 1], dsign[j], xtol))
    if not extra:
        return grid
    return np.union1d(grid, extra)
