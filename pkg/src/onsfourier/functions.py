"""Functions of the class C_L: derivative is Lipschitz on [0, 1]."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .quadrature import QuadratureSpec, integrate

__all__ = ["CLFunction", "squeeze", "CATALOG", "get_function", "chebyshev_points"]


def chebyshev_points(m: int) -> np.ndarray:
    """``m`` Chebyshev points of the first kind mapped to (0, 1), ascending."""
    j = np.arange(m)
    return np.sort(0.5 - 0.5 * np.cos((2 * j + 1) * np.pi / (2 * m)))


@dataclass(frozen=True)
class CLFunction:
    """A function on [0, 1] with its derivative and the derivative's Lipschitz constant.

    ``breakpoints`` lists the points where the derivative is not smooth, so
    quadrature can split there.
    """

    value: Callable
    derivative: Callable
    lip_constant_of_derivative: float
    name: str = "custom"
    breakpoints: tuple[float, ...] = field(default=())

    def __call__(self, u):
        return self.value(u)

    def validate(self, pairs: int = 200, quad: QuadratureSpec | None = None) -> None:
        """Check the C_L invariants on Chebyshev-distributed samples.

        Raises ``ValueError`` if the derivative breaks its Lipschitz bound or
        does not integrate back to the function.
        """
        if self.lip_constant_of_derivative < 0:
            raise ValueError("Lipschitz constant must be nonnegative")
        xs = chebyshev_points(pairs)
        ys = xs[::-1]
        d = np.abs(np.asarray(self.derivative(xs)) - np.asarray(self.derivative(ys)))
        bound = self.lip_constant_of_derivative * np.abs(xs - ys) + 1e-12
        if np.any(d > bound):
            i = int(np.argmax(d - bound))
            raise ValueError(
                f"{self.name}: derivative not {self.lip_constant_of_derivative}-Lipschitz "
                f"at ({xs[i]:.6g}, {ys[i]:.6g})"
            )
        f0 = float(np.asarray(self.value(np.array([0.0])))[0])
        for u in xs[::20]:
            lhs = float(np.asarray(self.value(np.array([u])))[0]) - f0
            rhs = integrate(self.derivative, 0.0, float(u), quad, self.breakpoints)
            if abs(lhs - rhs) > 1e-9:
                raise ValueError(f"{self.name}: derivative does not integrate to value at {u:.6g}")


def squeeze(f: CLFunction, name: str | None = None) -> CLFunction:
    """``f(2u)`` on [0, 1/2) and 0 on [1/2, 1].

    Stays in C_L only when f(1) = f'(1) = 0, which holds for the catalog's
    ``cos4pi-shift``.
    """

    def value(u):
        u = np.asarray(u, dtype=float)
        return np.where(u < 0.5, f.value(np.clip(2 * u, 0.0, 1.0)), 0.0)

    def derivative(u):
        u = np.asarray(u, dtype=float)
        return np.where(u < 0.5, 2 * f.derivative(np.clip(2 * u, 0.0, 1.0)), 0.0)

    bps = tuple(sorted({p / 2 for p in f.breakpoints} | {0.5}))
    return CLFunction(value, derivative, 4 * f.lip_constant_of_derivative,
                      name or f"squeeze({f.name})", bps)


def _poly(power: int) -> CLFunction:
    names = {0: "one", 1: "id", 2: "sq", 3: "cube"}

    def value(u):
        return np.asarray(u, dtype=float) ** power

    def derivative(u):
        u = np.asarray(u, dtype=float)
        return power * u ** (power - 1) if power else np.zeros_like(u)

    lip = float(power * (power - 1))  # sup |f''| on [0, 1]
    return CLFunction(value, derivative, lip, names[power])


def _cos4pi_shift() -> CLFunction:
    return CLFunction(
        lambda u: 1.0 - np.cos(4 * np.pi * (np.asarray(u, dtype=float) - 0.5)),
        lambda u: 4 * np.pi * np.sin(4 * np.pi * (np.asarray(u, dtype=float) - 0.5)),
        16 * np.pi**2,
        "cos4pi-shift",
    )


ONE = _poly(0)
ID = _poly(1)
SQ = _poly(2)
CUBE = _poly(3)
COS4PI_SHIFT = _cos4pi_shift()
# the piecewise catalog entry is the squeezed test function from the doubling construction
PIECEWISE = squeeze(COS4PI_SHIFT, "piecewise")

CATALOG = {f.name: f for f in (ONE, ID, SQ, CUBE, COS4PI_SHIFT, PIECEWISE)}


def get_function(name: str) -> CLFunction:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown function {name!r}; choose from {sorted(CATALOG)}") from None
