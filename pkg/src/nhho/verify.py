"""Cross-verification battery for every identity the construction claims.

Each check recomputes both sides of one claim through routes that share as
little code as practical (polynomial algebra vs closed forms, recursion vs
factorial formulas, Fock matrices vs quadrature) and reports the measured
defect against a fixed tolerance.  ``fault="flip-v-sign"`` deliberately
corrupts one input so the battery can demonstrate that it really does fail
when a claim breaks; that path exists for negative-control runs only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hamiltonian import (
    BRANCH_U_ZERO,
    BRANCH_V_ZERO,
    BRANCH_VARIATIONAL,
    TransformParams,
    branch_decomposition,
    build_hamiltonian,
    hamiltonian_polynomial,
    hermiticity_defect,
    omega_u_zero,
    omega_v_zero,
    omega_variational,
    verify_canonical_commutator,
)
from .ladder import LadderPolynomial
from .lie import case_coefficients, decomposition_coefficients, lie_energy
from .perturbation import (
    LOWERING,
    RAISING,
    build_series_lowering,
    build_series_raising,
    first_order,
    rs_corrections,
    series_by_recursion,
)
from .position_space import HermiteBasisFunction, gauss_hermite, overlap
from .spectral import (
    STRUCTURE_DIAGONAL,
    STRUCTURE_LOWER,
    STRUCTURE_UPPER,
    FockMatrix,
    classify_structure,
    commutator_defect,
    eigen_residual,
    expectation_consistency,
    triangular_spectrum,
)

FAULT_FLIP_V = "flip-v-sign"


@dataclass(frozen=True)
class CheckResult:
    """One named claim with its measured defect and the gate it faced."""

    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""


def all_passed(results: list[CheckResult]) -> bool:
    return all(r.passed for r in results)


def run_verification(
    params: TransformParams,
    n: int = 2,
    orders: int = 10,
    dim: int = 64,
    fault: str | None = None,
) -> list[CheckResult]:
    """Run the full battery at one parameter point.

    ``n`` picks the level used for series and residual checks, ``orders``
    the perturbative depth, ``dim`` the Fock truncation and quadrature size.
    """
    if fault not in (None, FAULT_FLIP_V):
        raise ValueError("unknown fault %r; available: %s" % (fault, FAULT_FLIP_V))
    if n < 0:
        raise ValueError("level index must be nonnegative")
    if orders < 2 or dim < n + 2 * orders + 4:
        raise ValueError(
            "need orders >= 2 and dim >= n + 2*orders + 4 to run every check"
        )

    out: list[CheckResult] = []

    def record(name, measured, tolerance, detail=""):
        out.append(
            CheckResult(
                name=name,
                passed=measured <= tolerance,
                measured=float(measured),
                tolerance=float(tolerance),
                detail=detail,
            )
        )

    lam, beta = params.lam, params.beta
    s = lam + beta
    f = params.f
    w1 = omega_u_zero(params)
    w2 = omega_v_zero(params)
    wv = omega_variational(params)
    probe_omegas = (1.0, w1, w2, wv)

    # [x', p'] = i at every frequency, through the operator algebra
    imag_unit = LadderPolynomial.identity(1j)
    defect = max(
        (verify_canonical_commutator(params, w) - imag_unit).max_abs_coeff()
        for w in probe_omegas
    )
    record("canonical-commutator", defect, 1e-13)

    # closed-form h_d, u, v against squaring the operators symbolically
    defect = max(
        (build_hamiltonian(params, w).to_polynomial() - hamiltonian_polynomial(params, w)).max_abs_coeff()
        for w in probe_omegas
    )
    record("closed-form-vs-algebra", defect, 1e-12)

    record(
        "hamiltonian-real-coefficients",
        max(hamiltonian_polynomial(params, w).max_abs_imag() for w in probe_omegas),
        1e-13,
    )

    # u - v = 4*(lam + beta) independent of frequency
    defect = 0.0
    for w in (1.0, w1, w2):
        dec = build_hamiltonian(params, w)
        v_eff = -dec.v if fault == FAULT_FLIP_V else dec.v
        defect = max(defect, abs((dec.u - v_eff) - 4.0 * s))
    record(
        "u-v-difference",
        defect,
        1e-12,
        detail="fault injected" if fault == FAULT_FLIP_V else "",
    )

    # selected frequencies really kill their coupling in the generic formulas
    defect = max(
        abs(build_hamiltonian(params, w1).u), abs(build_hamiltonian(params, w2).v)
    )
    record("couplings-die-at-selection", defect, 1e-12)

    dec_u0 = branch_decomposition(params, BRANCH_U_ZERO)
    dec_v0 = branch_decomposition(params, BRANCH_V_ZERO)
    dec_var = branch_decomposition(params, BRANCH_VARIATIONAL)

    record(
        "half-integer-diagonal",
        max(abs(dec_u0.h_d - 0.5), abs(dec_v0.h_d - 0.5)),
        0.0,
    )

    # structure tags of the truncated matrices
    mat_u0 = FockMatrix.from_decomposition(dec_u0, dim)
    mat_v0 = FockMatrix.from_decomposition(dec_v0, dim)
    want_u0 = STRUCTURE_LOWER if abs(f) > 1e-14 else STRUCTURE_DIAGONAL
    want_v0 = STRUCTURE_UPPER if abs(f) > 1e-14 else STRUCTURE_DIAGONAL
    tag_u0 = classify_structure(mat_u0)
    tag_v0 = classify_structure(mat_v0)
    ok = tag_u0 == want_u0 and tag_v0 == want_v0
    record(
        "matrix-structure",
        0.0 if ok else 1.0,
        0.0,
        detail="got %s / %s" % (tag_u0, tag_v0),
    )

    defect = 0.0
    half_levels = np.arange(dim) + 0.5
    for mat in (mat_u0, mat_v0):
        defect = max(defect, float(np.max(np.abs(triangular_spectrum(mat) - half_levels))))
    record("triangular-spectrum", defect, 0.0)

    # every correction order dies on both selection branches
    levels = range(min(5, dim // 4) + 1)
    defect = max(
        rs_corrections(dec_u0, k, orders).max_abs_correction() for k in levels
    )
    record("corrections-vanish-raising-branch", defect, 1e-12)
    defect = max(
        rs_corrections(dec_v0, k, orders).max_abs_correction() for k in levels
    )
    record("corrections-vanish-lowering-branch", defect, 1e-12)

    # away from the selection frequencies: first order still zero ...
    record(
        "first-order-vanishes",
        max(abs(first_order(dec_var, k)) for k in levels),
        1e-13,
    )

    # ... odd orders zero by parity, second order matching the closed form
    res_var = rs_corrections(dec_var, 0, orders)
    record(
        "odd-orders-vanish",
        max(abs(c) for c in res_var.corrections[0::2]),
        0.0,
    )
    g = math.sqrt((1.0 - lam * lam) * (1.0 - beta * beta))
    closed2 = s * s / (4.0 * g * (1.0 + lam * beta))
    record(
        "second-order-closed-form",
        abs(res_var.corrections[1] - closed2),
        1e-12,
        detail="value %.6g" % closed2,
    )

    # wavefunction coefficients: recursion route vs factorial closed forms
    defect = 0.0
    for base in (n, n + 1):
        up_a = build_series_raising(params, base, orders)
        up_b = series_by_recursion(params, base, orders, RAISING)
        dn_a = build_series_lowering(params, base)
        dn_b = series_by_recursion(params, base, orders, LOWERING)
        for left, right in ((up_a, up_b), (dn_a, dn_b)):
            ca = np.asarray(left.coeffs)
            cb = np.asarray(right.coeffs)
            scale = np.maximum(1.0, np.abs(ca))
            defect = max(defect, float(np.max(np.abs(ca - cb) / scale)))
    record("series-recursion-vs-closed", defect, 1e-12)

    # the series solve the truncated eigenproblem at energy n + 1/2
    low = build_series_lowering(params, n)
    high = build_series_raising(params, n, orders)
    record(
        "eigen-residual-lowering",
        eigen_residual(mat_v0, low, n + 0.5),
        1e-10,
    )
    record(
        "eigen-residual-raising",
        eigen_residual(mat_u0, high, n + 0.5),
        1e-10,
    )

    # four expectation routes agree on n + 1/2
    routes = expectation_consistency(params, n, orders)
    record(
        "expectation-consistency",
        max(abs(r - (n + 0.5)) for r in routes),
        1e-12,
    )

    # closed-form spectrum from the algebra coefficients, both readings
    defect = 0.0
    for branch, dec in ((BRANCH_U_ZERO, dec_u0), (BRANCH_V_ZERO, dec_v0)):
        for coeffs in (case_coefficients(params, branch), decomposition_coefficients(dec)):
            for k in levels:
                defect = max(defect, abs(lie_energy(coeffs, k) - (k + 0.5)))
    record("closed-form-spectrum", defect, 0.0)

    # position-space machinery: orthonormality and series overlaps
    rule = gauss_hermite(max(dim, 2 * n + 8))
    nb = min(8, dim - 1)
    defect = 0.0
    for i in range(nb + 1):
        for j in range(i, nb + 1):
            val = overlap(
                HermiteBasisFunction(i, w1), HermiteBasisFunction(j, w1), rule
            )
            defect = max(defect, abs(val - (1.0 if i == j else 0.0)))
    record("orthonormal-basis", defect, 1e-10)

    defect = 0.0
    for level, coeff in zip(low.levels(), low.coeffs):
        val = overlap(low, HermiteBasisFunction(int(level), low.omega), rule)
        defect = max(defect, abs(val - coeff))
    record("series-overlap-coefficients", defect, 1e-10)

    # Hermitian exactly on the lam = -beta line, and visibly not off it
    mirrored = TransformParams(lam=lam, beta=-lam)
    mirror_defect = max(
        hermiticity_defect(mirrored, w).max_abs_coeff() for w in probe_omegas
    )
    actual = hermiticity_defect(params, 1.0).max_abs_coeff()
    expect_nonzero = abs(s) / (1.0 + lam * beta)
    ok = mirror_defect <= 1e-14 and actual >= 0.49 * expect_nonzero
    record(
        "hermiticity",
        mirror_defect if ok else max(mirror_defect, 1.0),
        1e-14,
        detail="off-line defect %.6g" % actual,
    )

    # [H, H_D] at the selection frequency has coupling-strength size 2|f|
    defect = abs(commutator_defect(params, w1) - 2.0 * abs(f))
    mirror = commutator_defect(mirrored, omega_u_zero(mirrored))
    record("commutator-defect", max(defect, mirror), 1e-12)

    return out
