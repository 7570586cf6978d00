"""Orthonormal systems on [0, 1] with closed-form antiderivatives.

Three families are supported:

* ``cosine``  -- phi_k(u) = sqrt(2) cos(2 pi k u), k >= 1
* ``haar``    -- the Haar system with chi_1 = 1 and L2-normalised wavelets
* ``doubled:<base>`` -- odd reflection of a base system into two squeezed
  halves, Phi_k(u) = base_k(2u) on [0, 1/2) and -base_k(2u - 1) on [1/2, 1].

Every family provides exact values of the basis function ``phi``, its first
antiderivative ``g`` (g_k(u) = int_0^u phi_k) and second antiderivative ``G2``
(G2_k(y) = int_0^y g_k).  All three accept numpy arrays for both the index
and the argument and broadcast them against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "SystemDescriptor",
    "cosine",
    "haar",
    "double_system",
    "parse_system",
    "eval_phi",
    "g",
    "G2",
    "breakpoints",
    "breakpoints_upto",
    "DEFAULT_MAX_INDEX",
]

DEFAULT_MAX_INDEX = 1024
SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class SystemDescriptor:
    """An orthonormal system family truncated at ``max_index``.

    Instances are immutable and hashable, so they double as cache keys.
    """

    family: str
    max_index: int = DEFAULT_MAX_INDEX
    base: SystemDescriptor | None = None

    def __post_init__(self):
        if self.family not in ("cosine", "haar", "doubled"):
            raise ValueError(f"unknown system family {self.family!r}")
        if self.family == "doubled":
            if self.base is None:
                raise ValueError("doubled system needs a base system")
            object.__setattr__(self, "max_index", self.base.max_index)
        elif self.base is not None:
            raise ValueError(f"{self.family} system takes no base")
        if self.max_index < 1:
            raise ValueError("max_index must be positive")

    @property
    def name(self) -> str:
        if self.family == "doubled":
            return "doubled:" + self.base.name
        return self.family

    def __str__(self):
        return self.name

    def phi(self, k, u):
        return eval_phi(self, k, u)

    def g(self, k, u):
        return g(self, k, u)

    def G2(self, k, y):
        return G2(self, k, y)


def cosine(max_index: int = DEFAULT_MAX_INDEX) -> SystemDescriptor:
    return SystemDescriptor("cosine", max_index)


def haar(max_index: int = DEFAULT_MAX_INDEX) -> SystemDescriptor:
    return SystemDescriptor("haar", max_index)


def double_system(base: SystemDescriptor) -> SystemDescriptor:
    """Return the doubled system built from ``base``.

    The result has zero mean in every element.  Doubling twice also kills the
    first moment: int_0^1 u G_k(u) du = 0.
    """
    return SystemDescriptor("doubled", base.max_index, base)


def parse_system(name: str, max_index: int = DEFAULT_MAX_INDEX) -> SystemDescriptor:
    """Parse ``cosine``, ``haar`` or ``doubled:<name>`` (nesting allowed)."""
    name = name.strip().lower()
    if name.startswith("doubled:"):
        return double_system(parse_system(name[len("doubled:"):], max_index))
    if name in ("cosine", "haar"):
        return SystemDescriptor(name, max_index)
    raise ValueError(f"unknown system name {name!r}")


def _check_index(sys: SystemDescriptor, k) -> np.ndarray:
    k = np.asarray(k)
    if not np.issubdtype(k.dtype, np.integer):
        if not np.all(np.mod(k, 1) == 0):
            raise IndexError("basis index must be an integer")
        k = k.astype(np.int64)
    if k.size and (k.min() < 1 or k.max() > sys.max_index):
        raise IndexError(
            f"basis index out of range 1..{sys.max_index} for {sys.name}"
        )
    return k


def _haar_params(k):
    """Support [a, b], midpoint m and height h of the Haar function chi_k (k >= 2)."""
    km1 = np.maximum(k - 1, 1)
    s = np.floor(np.log2(km1)).astype(np.int64)
    j = k - 2**s
    width = 2.0 ** (-s)
    a = (j - 1) * width
    b = a + width
    m = a + width / 2
    h = 2.0 ** (s / 2)
    return a, m, b, h


# -- cosine ------------------------------------------------------------------

def _cos_phi(k, u):
    return SQRT2 * np.cos(2 * np.pi * k * u)


def _cos_g(k, u):
    return SQRT2 * np.sin(2 * np.pi * k * u) / (2 * np.pi * k)


def _cos_G2(k, y):
    # 1 - cos(2x) = 2 sin(x)^2 avoids cancellation for small y
    return SQRT2 * 2 * np.sin(np.pi * k * y) ** 2 / (2 * np.pi * k) ** 2


# -- haar --------------------------------------------------------------------

def _haar_phi(k, u):
    k, u = np.broadcast_arrays(k, np.asarray(u, dtype=float))
    a, m, b, h = _haar_params(k)
    val = np.where((u > a) & (u < m), h, 0.0)
    val = np.where((u > m) & (u < b), -h, val)
    # jump points: mean of one-sided limits, one-sided at 0 and 1
    val = np.where(u == a, np.where(a == 0, h, h / 2), val)
    val = np.where(u == b, np.where(b == 1, -h, -h / 2), val)
    return np.where(k == 1, 1.0, val)


def _haar_g(k, u):
    k, u = np.broadcast_arrays(k, np.asarray(u, dtype=float))
    a, m, b, h = _haar_params(k)
    up = np.where(u <= m, h * (u - a), h * (b - u))
    val = np.where((u > a) & (u < b), up, 0.0)
    return np.where(k == 1, u, val)


def _haar_G2(k, y):
    k, y = np.broadcast_arrays(k, np.asarray(y, dtype=float))
    a, m, b, h = _haar_params(k)
    w = m - a
    rising = h * (y - a) ** 2 / 2
    falling = h * w**2 - h * (b - y) ** 2 / 2
    val = np.where(y <= a, 0.0, np.where(y <= m, rising, np.where(y < b, falling, h * w**2)))
    return np.where(k == 1, y**2 / 2, val)


# -- doubled -----------------------------------------------------------------

def _halves(u):
    u = np.asarray(u, dtype=float)
    left = np.clip(2 * u, 0.0, 1.0)
    right = np.clip(2 * u - 1, 0.0, 1.0)
    return u, left, right


def _doubled_phi(base, k, u):
    u, left, right = _halves(u)
    lo = eval_phi(base, k, left)
    hi = -eval_phi(base, k, right)
    mid = (eval_phi(base, k, 1.0) - eval_phi(base, k, 0.0)) / 2
    return np.where(u < 0.5, lo, np.where(u > 0.5, hi, mid))


def _doubled_g(base, k, u):
    u, left, right = _halves(u)
    lo = g(base, k, left) / 2
    hi = (g(base, k, 1.0) - g(base, k, right)) / 2
    return np.where(u <= 0.5, lo, hi)


def _doubled_G2(base, k, y):
    y, left, right = _halves(y)
    lo = G2(base, k, left) / 4
    hi = (
        G2(base, k, 1.0) / 4
        + g(base, k, 1.0) * (y - 0.5) / 2
        - G2(base, k, right) / 4
    )
    return np.where(y <= 0.5, lo, hi)


def _dispatch(sys, k, u, table):
    k = _check_index(sys, k)
    if sys.family == "doubled":
        out = table["doubled"](sys.base, k, u)
    else:
        out = table[sys.family](k, u)
    out = np.asarray(out, dtype=float)
    return out if out.ndim else float(out)


def eval_phi(sys: SystemDescriptor, k, u):
    """Value of the k-th basis function at ``u``.

    At interior jump points (Haar, doubled) the mean of the one-sided limits
    is returned; at 0 and 1 the one-sided limit.
    """
    return _dispatch(sys, k, u, {"cosine": _cos_phi, "haar": _haar_phi,
                                 "doubled": _doubled_phi})


def g(sys: SystemDescriptor, k, u):
    """First antiderivative int_0^u phi_k(t) dt, in closed form."""
    return _dispatch(sys, k, u, {"cosine": _cos_g, "haar": _haar_g,
                                 "doubled": _doubled_g})


def G2(sys: SystemDescriptor, k, y):
    """Second antiderivative int_0^y g_k(u) du, in closed form."""
    return _dispatch(sys, k, y, {"cosine": _cos_G2, "haar": _haar_G2,
                                 "doubled": _doubled_G2})


def breakpoints(sys: SystemDescriptor, k: int) -> list[float]:
    """Interior points of (0, 1) where phi_k or g_k is not smooth."""
    k = int(_check_index(sys, k))
    if sys.family == "cosine":
        return []
    if sys.family == "haar":
        if k == 1:
            return []
        a, m, b, _ = (float(v) for v in _haar_params(np.int64(k)))
        return [p for p in (a, m, b) if 0.0 < p < 1.0]
    inner = breakpoints(sys.base, k)
    return [p / 2 for p in inner] + [0.5] + [p / 2 + 0.5 for p in inner]


@lru_cache(maxsize=256)
def breakpoints_upto(sys: SystemDescriptor, n: int) -> tuple[float, ...]:
    """Sorted union of ``breakpoints(sys, k)`` over k = 1..n."""
    pts = set()
    for k in range(1, n + 1):
        pts.update(breakpoints(sys, k))
    return tuple(sorted(pts))
