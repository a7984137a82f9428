"""Real-space side: Hermite functions, Gauss-Hermite quadrature, grids.

Basis functions are evaluated through a normalized recurrence that carries
the Gaussian and the normalization inside the iteration, so levels well past
the point where n! overflows remain finite.  Quadrature nodes are Newton
roots of the orthonormal Hermite polynomial with the classic asymptotic
initial guesses; weights follow from the derivative identity.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .perturbation import WavefunctionSeries


def hermite_poly(n: int, y):
    """Physicists' Hermite polynomial by the three-term recurrence."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    y = np.asarray(y, dtype=float)
    h_prev = np.ones_like(y)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * y
    for k in range(1, n):
        h_prev, h = h, 2.0 * y * h - 2.0 * k * h_prev
    return h if h.ndim else float(h)


def _weighted_hermite(n: int, y):
    """h_n(y) = H_n(y) exp(-y^2/2) / sqrt(2^n n! sqrt(pi)), stable in n."""
    y = np.asarray(y, dtype=float)
    h_prev = math.pi ** -0.25 * np.exp(-0.5 * y * y)
    if n == 0:
        return h_prev
    h = math.sqrt(2.0) * y * h_prev
    for k in range(1, n):
        h_prev, h = h, math.sqrt(2.0 / (k + 1)) * y * h - math.sqrt(k / (k + 1.0)) * h_prev
    return h


def _orthonormal_hermite_pair(n: int, y: float) -> tuple[float, float]:
    """(p_n, p_{n-1}) of the orthonormal polynomials for exp(-y^2) weight."""
    p_prev = math.pi ** -0.25
    p = math.sqrt(2.0) * y * p_prev
    for k in range(1, n):
        p_prev, p = p, math.sqrt(2.0 / (k + 1)) * y * p - math.sqrt(k / (k + 1.0)) * p_prev
    return p, p_prev


@dataclass(frozen=True)
class HermiteBasisFunction:
    """Unit-norm oscillator eigenfunction at level n and frequency omega."""

    n: int
    omega: float

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("level index must be nonnegative")
        if not self.omega > 0.0:
            raise ValueError("omega out of domain: need omega > 0, got %g" % self.omega)

    def __call__(self, x):
        y = math.sqrt(self.omega) * np.asarray(x, dtype=float)
        val = self.omega**0.25 * _weighted_hermite(self.n, y)
        return val if val.ndim else float(val)

    def degree(self) -> int:
        return self.n


def eval_basis(fn: HermiteBasisFunction, x):
    return fn(x)


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Hermite nodes/weights for the exp(-y^2) weight function."""

    nodes: np.ndarray
    weights: np.ndarray
    count: int


def gauss_hermite(count: int) -> QuadratureRule:
    """Rule with ``count`` nodes, exact through polynomial degree 2*count-1."""
    if count < 1:
        raise ValueError("node count must be at least 1")
    if count == 1:
        return QuadratureRule(
            nodes=np.array([0.0]), weights=np.array([math.sqrt(math.pi)]), count=1
        )
    half = (count + 1) // 2
    roots = []
    z = 0.0
    for i in range(half):
        if i == 0:
            z = math.sqrt(2.0 * count + 1) - 1.85575 * (2.0 * count + 1) ** (-1.0 / 6.0)
        elif i == 1:
            z -= 1.14 * count**0.426 / z
        elif i == 2:
            z = 1.86 * z - 0.86 * roots[0]
        elif i == 3:
            z = 1.91 * z - 0.91 * roots[1]
        else:
            z = 2.0 * z - roots[i - 2]
        for _ in range(100):
            p, p_prev = _orthonormal_hermite_pair(count, z)
            dz = p / (math.sqrt(2.0 * count) * p_prev)
            z -= dz
            if abs(dz) < 1e-15:
                break
        roots.append(z)
    pos = np.array(roots[::-1])  # ascending positive half
    if count % 2 == 0:
        nodes = np.concatenate([-pos[::-1], pos])
    else:
        nodes = np.concatenate([-pos[:0:-1], pos])
        nodes[half - 1] = 0.0
    weights = np.empty_like(nodes)
    for i, y in enumerate(nodes):
        _, p_prev = _orthonormal_hermite_pair(count, y)
        weights[i] = 1.0 / (count * p_prev * p_prev)
    return QuadratureRule(nodes=nodes, weights=weights, count=count)


def eval_series_position(series: WavefunctionSeries, x):
    """Sum of c_k times the level-(n +- 2k) basis function at x."""
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    for level, c in zip(series.levels(), series.coeffs):
        if c == 0.0:
            continue
        total = total + c * HermiteBasisFunction(int(level), series.omega)(x)
    return total if total.ndim else float(total)


def _omega_of(obj) -> float:
    return float(obj.omega)


def _degree_of(obj) -> int:
    if isinstance(obj, HermiteBasisFunction):
        return obj.n
    levels = obj.levels()
    return int(levels.max())


def _value_of(obj, x):
    if isinstance(obj, HermiteBasisFunction):
        return obj(x)
    return eval_series_position(obj, x)


def overlap(f, g, rule: QuadratureRule) -> float:
    """Integral of f(x) g(x) dx for basis functions or coefficient series.

    The product decays like exp(-(omega_f + omega_g) x^2 / 2); substituting
    y = sqrt(sigma) x with sigma the mean frequency turns the integrand into
    a pure polynomial against exp(-y^2), which the rule handles exactly up
    to its degree bound.
    """
    sigma = 0.5 * (_omega_of(f) + _omega_of(g))
    degree = _degree_of(f) + _degree_of(g)
    if rule.count < degree / 2 + 2:
        warnings.warn(
            "quadrature rule of size %d is below the exactness bound for "
            "combined degree %d" % (rule.count, degree),
            stacklevel=2,
        )
    xs = rule.nodes / math.sqrt(sigma)
    lifted = rule.weights * np.exp(rule.nodes**2)
    vals = _value_of(f, xs) * _value_of(g, xs)
    return float(np.sum(lifted * vals) / math.sqrt(sigma))


@dataclass(frozen=True)
class GridFunction:
    """Sampled values on a strictly increasing grid."""

    xs: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if len(self.xs) != len(self.values):
            raise ValueError("grid and values must have equal length")
        if np.any(np.diff(self.xs) <= 0):
            raise ValueError("grid must be strictly increasing")


def default_grid(omega: float, points: int = 401) -> np.ndarray:
    """401 points across [-L, L] with L = 8/sqrt(omega) unless overridden."""
    half_width = 8.0 / math.sqrt(omega)
    return np.linspace(-half_width, half_width, points)


def sample_basis(fn: HermiteBasisFunction, xs: np.ndarray) -> GridFunction:
    return GridFunction(xs=np.asarray(xs, dtype=float), values=fn(xs))


def sample_series(series: WavefunctionSeries, xs: np.ndarray) -> GridFunction:
    return GridFunction(
        xs=np.asarray(xs, dtype=float), values=eval_series_position(series, xs)
    )
