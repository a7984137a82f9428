"""Dense Fock-basis truncations: structure tags, spectra, residuals.

No general nonsymmetric eigensolver lives here on purpose.  Spectra are read
off only where the matrix is triangular (one coupling side dead), which is
exact; everywhere else claims are checked through residuals of explicit
vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hamiltonian import ModeDecomposition, TransformParams, branch_decomposition
from .hamiltonian import BRANCH_U_ZERO, BRANCH_V_ZERO, build_hamiltonian
from .ladder import LadderPolynomial
from .perturbation import (
    LOWERING,
    RAISING,
    WavefunctionSeries,
    build_series_lowering,
    build_series_raising,
)

STRUCTURE_DIAGONAL = "diagonal"
STRUCTURE_LOWER = "lower_band2"
STRUCTURE_UPPER = "upper_band2"
STRUCTURE_FULL = "full_band2"

_ZERO_BAND_TOL = 1e-13


@dataclass(frozen=True)
class FockMatrix:
    """Dense complex truncation; entry (m, n) is <m|op|n>."""

    dim: int
    entries: np.ndarray

    @staticmethod
    def from_polynomial(poly: LadderPolynomial, dim: int) -> "FockMatrix":
        return FockMatrix(dim=dim, entries=poly.to_matrix(dim))

    @staticmethod
    def from_decomposition(decomp: ModeDecomposition, dim: int) -> "FockMatrix":
        """Banded entries written directly from the closed-form bands."""
        if dim < 1:
            raise ValueError("truncation size must be at least 1")
        m = np.zeros((dim, dim), dtype=complex)
        idx = np.arange(dim)
        m[idx, idx] = decomp.e0(idx)
        for j in range(dim - 2):
            m[j + 2, j] = decomp.hn_raise(j)
            m[j, j + 2] = decomp.hn_lower(j + 2)
        return FockMatrix(dim=dim, entries=m)

    def max_abs_imag(self) -> float:
        return float(np.max(np.abs(self.entries.imag)))

    def real(self) -> np.ndarray:
        return self.entries.real


def classify_structure(matrix: FockMatrix, tol: float = _ZERO_BAND_TOL) -> str:
    """Tag by which +-2 bands carry weight; anything else counts as full."""
    a = np.abs(matrix.entries)
    idx = np.arange(max(matrix.dim - 2, 0))
    band_lower = a[idx + 2, idx].max(initial=0.0)   # rows m = n + 2
    band_upper = a[idx, idx + 2].max(initial=0.0)   # rows m = n - 2
    stray = a.copy()
    np.fill_diagonal(stray, 0.0)
    stray[idx + 2, idx] = 0.0
    stray[idx, idx + 2] = 0.0
    # weight anywhere off the diagonal and the +-2 bands disqualifies both tags
    if stray.max(initial=0.0) > tol or (band_lower > tol and band_upper > tol):
        return STRUCTURE_FULL
    if band_lower > tol:
        return STRUCTURE_LOWER
    if band_upper > tol:
        return STRUCTURE_UPPER
    return STRUCTURE_DIAGONAL


def triangular_spectrum(matrix: FockMatrix) -> np.ndarray:
    """Diagonal read-off, valid only when one coupling side is absent."""
    tag = classify_structure(matrix)
    if tag == STRUCTURE_FULL:
        raise ValueError(
            "spectrum extraction requires triangular branch, got %s" % tag
        )
    return np.real(np.diagonal(matrix.entries)).copy()


def series_vector(series: WavefunctionSeries, dim: int) -> np.ndarray:
    """Embed the coefficient sequence into a length-``dim`` Fock vector."""
    levels = series.levels()
    need = int(levels.max()) + 1
    if series.branch == RAISING:
        need = series.n + 2 * series.order() + 3
    if dim < need:
        raise ValueError(
            "dimension mismatch: need at least %d rows, got %d" % (need, dim)
        )
    vec = np.zeros(dim)
    vec[levels] = np.asarray(series.coeffs)
    return vec


def eigen_residual(matrix: FockMatrix, series: WavefunctionSeries, energy: float) -> float:
    """Max-norm of (M - E) c over rows the truncation cannot pollute.

    For the finite lowering series every row counts.  The raising series is
    an infinite tail cut at order K, so rows within reach of the last kept
    coefficient are left to ``boundary_defect`` and only rows
    0..n+2K-2 are scored here.
    """
    vec = series_vector(series, matrix.dim)
    resid = matrix.real() @ vec - energy * vec
    if series.branch == LOWERING:
        return float(np.max(np.abs(resid)))
    top = series.n + 2 * series.order() - 2
    top = max(top, 0)
    return float(np.max(np.abs(resid[: top + 1])))


def boundary_defect(matrix: FockMatrix, series: WavefunctionSeries, energy: float) -> float:
    """Truncation leakage of a raising series: the rows eigen_residual skips."""
    if series.branch != RAISING:
        return 0.0
    vec = series_vector(series, matrix.dim)
    resid = matrix.real() @ vec - energy * vec
    top = max(series.n + 2 * series.order() - 2, 0)
    return float(np.max(np.abs(resid[top + 1 :]), initial=0.0))


def overlap_with_base(series: WavefunctionSeries) -> float:
    """<base level | series> under intermediate normalization, i.e. c_0."""
    return float(series.coeffs[0])


def energy_functional(matrix: FockMatrix, series: WavefunctionSeries, n: int) -> float:
    """Row n of M c, the bra-side energy <n|H|series>."""
    vec = series_vector(series, matrix.dim)
    if not 0 <= n < matrix.dim:
        raise ValueError("dimension mismatch: row %d outside 0..%d" % (n, matrix.dim - 1))
    return float((matrix.real() @ vec)[n])


def expectation_consistency(
    params: TransformParams, n: int, max_order: int
) -> tuple[float, float, float, float]:
    """Four routes to the same number n + 1/2.

    Returns (<n|H_D|n> on the lowering branch, <n|H_D|n> on the raising
    branch, <n|H|series> lowering, <n|H|series> raising).
    """
    dim = n + 2 * max_order + 4
    dec_v = branch_decomposition(params, BRANCH_V_ZERO)
    dec_u = branch_decomposition(params, BRANCH_U_ZERO)
    hd_v = FockMatrix.from_polynomial(dec_v.diagonal_polynomial(), dim)
    hd_u = FockMatrix.from_polynomial(dec_u.diagonal_polynomial(), dim)
    h_v = FockMatrix.from_decomposition(dec_v, dim)
    h_u = FockMatrix.from_decomposition(dec_u, dim)
    low = build_series_lowering(params, n)
    high = build_series_raising(params, n, max_order)
    return (
        float(hd_v.real()[n, n]),
        float(hd_u.real()[n, n]),
        energy_functional(h_v, low, n),
        energy_functional(h_u, high, n),
    )


def commutator_defect(params: TransformParams, omega: float) -> float:
    """Max coefficient of [H, H_D] at the given frequency.

    Zero exactly when the coupling is absent at this omega; on the
    selection frequencies that happens precisely on the lam = -beta line.
    """
    decomp = build_hamiltonian(params, omega)
    h = decomp.to_polynomial()
    h_d = decomp.diagonal_polynomial()
    return h.commutator(h_d).max_abs_coeff()
