"""Rayleigh-Schrodinger machinery for the two-quantum coupling.

The coupling connects number states only across +-2 levels, so with a
nondegenerate diagonal every sum in the standard recursion is finite and the
whole correction series can be generated to arbitrary order on a small
vector of levels.  On the two selection branches one side of the band is
exactly zero and all corrections vanish identically; at any other frequency
(the variational choice in particular) they do not.

Wavefunction series use intermediate normalization: the base-level
coefficient is pinned to 1 and never rescaled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hamiltonian import ModeDecomposition, TransformParams, omega_u_zero, omega_v_zero

RAISING = "raising"
LOWERING = "lowering"


@dataclass(frozen=True)
class PerturbationResult:
    """Zeroth-order energy and corrections 1..K for one level."""

    n: int
    omega: float
    zeroth: float
    corrections: tuple[float, ...]

    def total(self) -> float:
        return self.zeroth + sum(self.corrections)

    def max_abs_correction(self) -> float:
        return max((abs(c) for c in self.corrections), default=0.0)


@dataclass(frozen=True)
class WavefunctionSeries:
    """Coefficients c_k over number states |n + 2k> or |n - 2k>.

    c_0 = 1 by the intermediate-normalization convention.  The lowering
    series is finite (k runs to floor(n/2)); the raising series is an
    infinite tail truncated at the requested order.
    """

    n: int
    branch: str
    omega: float
    coeffs: tuple[float, ...]

    def __post_init__(self):
        if self.branch not in (RAISING, LOWERING):
            raise ValueError("branch must be %r or %r" % (RAISING, LOWERING))

    def levels(self) -> np.ndarray:
        k = np.arange(len(self.coeffs))
        if self.branch == RAISING:
            return self.n + 2 * k
        return self.n - 2 * k

    def order(self) -> int:
        return len(self.coeffs) - 1


def first_order(decomp: ModeDecomposition, n: int) -> float:
    """Diagonal coupling element <n|H_N|n>; identically zero here.

    Computed through the polynomial matrix element rather than returned as a
    constant, so a broken decomposition would show up.
    """
    if n < 0:
        raise ValueError("level index must be nonnegative")
    return float(decomp.coupling_polynomial().matrix_element(n, n).real)


def rs_corrections(
    decomp: ModeDecomposition, n: int, max_order: int
) -> PerturbationResult:
    """Corrections 1..max_order from the standard recursion.

    States are carried as coefficient vectors over levels 0..L-1 with
    L = n + 2*max_order + 4; the band structure cannot reach further in
    max_order steps, so the window is exact, not a truncation.
    """
    if n < 0:
        raise ValueError("level index must be nonnegative")
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    if decomp.h_d == 0.0:
        raise ValueError("degenerate unperturbed spectrum: h_d = 0")

    size = n + 2 * max_order + 4
    e0 = decomp.e0(np.arange(size))
    up = np.array([decomp.hn_raise(m) for m in range(size)])      # m -> m+2
    down = np.array([decomp.hn_lower(m) for m in range(size)])    # m -> m-2

    def apply_coupling(vec: np.ndarray) -> np.ndarray:
        out = np.zeros_like(vec)
        out[2:] += up[:-2] * vec[:-2]
        out[:-2] += down[2:] * vec[2:]
        return out

    states = [np.zeros(size)]
    states[0][n] = 1.0
    eps: list[float] = []
    for order in range(1, max_order + 1):
        w_prev = apply_coupling(states[order - 1])
        e_m = w_prev[n]
        eps.append(float(e_m))
        nxt = w_prev.copy()
        for j in range(1, order):
            nxt -= eps[j - 1] * states[order - j]
        gaps = e0[n] - e0
        nxt[n] = 0.0
        mask = np.arange(size) != n
        nxt[mask] = nxt[mask] / gaps[mask]
        states.append(nxt)
    return PerturbationResult(
        n=n, omega=decomp.omega, zeroth=float(decomp.e0(n)), corrections=tuple(eps)
    )


def _log_fact_ratio(a: int, b: int) -> float:
    """log(a!/b!) for a >= b via lgamma."""
    return math.lgamma(a + 1) - math.lgamma(b + 1)


def _closed_coeff_raising(f: float, n: int, k: int) -> float:
    # f^k sqrt((n+2k)!/n!) / (2^k k!), assembled in log space
    if k == 0:
        return 1.0
    if f == 0.0:
        return 0.0
    mag = math.exp(
        0.5 * _log_fact_ratio(n + 2 * k, n) - k * math.log(2.0) - math.lgamma(k + 1)
    )
    return (f**k) * mag


def _closed_coeff_lowering(f: float, n: int, k: int) -> float:
    # f^k sqrt(n!/(n-2k)!) / (2^k k!), valid for 2k <= n
    if k == 0:
        return 1.0
    if f == 0.0:
        return 0.0
    mag = math.exp(
        0.5 * _log_fact_ratio(n, n - 2 * k) - k * math.log(2.0) - math.lgamma(k + 1)
    )
    return (f**k) * mag


def build_series_raising(
    params: TransformParams, n: int, max_order: int
) -> WavefunctionSeries:
    """Upward series at omega1: c_k = f^k sqrt((n+2k)!/n!) / (2^k k!)."""
    if n < 0 or max_order < 0:
        raise ValueError("n and max_order must be nonnegative")
    f = params.f
    coeffs = tuple(_closed_coeff_raising(f, n, k) for k in range(max_order + 1))
    return WavefunctionSeries(
        n=n, branch=RAISING, omega=omega_u_zero(params), coeffs=coeffs
    )


def build_series_lowering(params: TransformParams, n: int) -> WavefunctionSeries:
    """Downward series at omega2; terminates after floor(n/2) steps."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    f = params.f
    coeffs = tuple(_closed_coeff_lowering(f, n, k) for k in range(n // 2 + 1))
    return WavefunctionSeries(
        n=n, branch=LOWERING, omega=omega_v_zero(params), coeffs=coeffs
    )


def series_by_recursion(
    params: TransformParams, n: int, max_order: int, branch: str
) -> WavefunctionSeries:
    """Same coefficients built from the two-term eigenvalue recursion.

    Inserting the series into the branch eigenvalue problem couples
    neighbouring coefficients only, giving

        raising:  c_k = f * sqrt((n+2k)(n+2k-1)) / (2k) * c_{k-1}
        lowering: c_k = f * sqrt((n-2k+2)(n-2k+1)) / (2k) * c_{k-1}

    This is the independent route against the closed forms.
    """
    if n < 0 or max_order < 0:
        raise ValueError("n and max_order must be nonnegative")
    f = params.f
    if branch == RAISING:
        coeffs = [1.0]
        for k in range(1, max_order + 1):
            step = f * math.sqrt((n + 2 * k) * (n + 2 * k - 1)) / (2.0 * k)
            coeffs.append(step * coeffs[-1])
        return WavefunctionSeries(
            n=n, branch=RAISING, omega=omega_u_zero(params), coeffs=tuple(coeffs)
        )
    if branch == LOWERING:
        coeffs = [1.0]
        for k in range(1, n // 2 + 1):
            step = f * math.sqrt((n - 2 * k + 2) * (n - 2 * k + 1)) / (2.0 * k)
            coeffs.append(step * coeffs[-1])
        return WavefunctionSeries(
            n=n, branch=LOWERING, omega=omega_v_zero(params), coeffs=tuple(coeffs)
        )
    raise ValueError("branch must be %r or %r" % (RAISING, LOWERING))


def partial_square_norms(series: WavefunctionSeries) -> np.ndarray:
    """Cumulative sums of |c_k|^2, for monitoring tail behaviour."""
    c = np.asarray(series.coeffs)
    return np.cumsum(c * c)


def coefficient_ratios(series: WavefunctionSeries) -> np.ndarray:
    """|c_{k+1}/c_k| for consecutive nonzero coefficients."""
    c = np.asarray(series.coeffs)
    nz = c[:-1] != 0.0
    out = np.full(len(c) - 1, np.nan)
    out[nz] = np.abs(c[1:][nz] / c[:-1][nz])
    return out
