"""Closed-form spectrum of the quadratic ladder Hamiltonian."""

import math

import numpy as np
import pytest

from nhho.hamiltonian import (
    BRANCH_U_ZERO,
    BRANCH_V_ZERO,
    TransformParams,
    branch_decomposition,
)
from nhho.lie import (
    SHIFT_AS_PRINTED,
    SHIFT_ROOT_MATCHED,
    LieCoefficients,
    case_coefficients,
    decomposition_coefficients,
    lie_energy,
)


def test_branch_energies_are_half_integers():
    rng = np.random.default_rng(47)
    for _ in range(100):
        p = TransformParams(
            lam=float(rng.uniform(-0.9, 0.9)), beta=float(rng.uniform(-0.9, 0.9))
        )
        for branch in (BRANCH_U_ZERO, BRANCH_V_ZERO):
            coeffs = case_coefficients(p, branch)
            dec_coeffs = decomposition_coefficients(branch_decomposition(p, branch))
            for n in range(11):
                assert abs(lie_energy(coeffs, n) - (n + 0.5)) <= 1e-12
                assert abs(lie_energy(dec_coeffs, n) - (n + 0.5)) <= 1e-12


def test_case_coefficient_values():
    p = TransformParams(0.5, 0.2)
    f = p.f
    cu = case_coefficients(p, BRANCH_U_ZERO)
    cv = case_coefficients(p, BRANCH_V_ZERO)
    assert (cu.s0, cu.s1, cu.s2) == (1.0, -0.5 * f, 0.0)
    assert (cv.s0, cv.s1, cv.s2) == (1.0, 0.0, 0.5 * f)
    assert cu.s3 == 0.0 and cu.s4 == 0.0
    # reading the decomposition directly gives twice the published coupling;
    # the dead side zeroes the product, so both conventions yield n + 1/2
    du = decomposition_coefficients(branch_decomposition(p, BRANCH_U_ZERO))
    assert du.s0 == 1.0
    assert du.s1 == pytest.approx(-f, abs=1e-14)
    assert du.s1 == pytest.approx(2.0 * cu.s1, abs=1e-14)
    assert du.s2 == 0.0
    with pytest.raises(ValueError, match="unknown branch"):
        case_coefficients(p, "variational")


def test_general_quadratic_energy():
    # s1 s2 != 0 tilts the level spacing to sqrt(s0^2 - 4 s1 s2)
    c = LieCoefficients(s0=2.0, s1=0.3, s2=0.4)
    gap = math.sqrt(4.0 - 4.0 * 0.12)
    for n in range(5):
        assert lie_energy(c, n) == pytest.approx(gap * (n + 0.5), abs=1e-14)
    with pytest.raises(ValueError, match="no real spectrum"):
        lie_energy(LieCoefficients(s0=1.0, s1=1.0, s2=1.0), 0)
    with pytest.raises(ValueError, match="nonnegative"):
        lie_energy(c, -1)


def test_linear_terms_require_explicit_reading():
    c = LieCoefficients(s0=2.0, s1=0.3, s2=0.4, s3=0.1, s4=0.0)
    with pytest.raises(ValueError, match="shift_reading"):
        lie_energy(c, 0)
    printed = lie_energy(c, 0, shift_reading=SHIFT_AS_PRINTED)
    rooted = lie_energy(c, 0, shift_reading=SHIFT_ROOT_MATCHED)
    # the two published readings genuinely disagree once s1 s2 != 0
    assert printed != rooted
    shift_num = 0.4 * 0.1**2
    root_arg = 4.0 - 4.0 * 0.12
    assert printed == pytest.approx(
        math.sqrt(root_arg) * 0.5 + shift_num / (4.0 - 4.0 * 2.0 * 0.12), abs=1e-14
    )
    assert rooted == pytest.approx(
        math.sqrt(root_arg) * 0.5 + shift_num / root_arg, abs=1e-14
    )
    with pytest.raises(ValueError, match="unknown shift_reading"):
        lie_energy(c, 0, shift_reading="whichever")
    # with both linear terms absent no reading is needed and none is consulted
    quiet = LieCoefficients(s0=2.0, s1=0.3, s2=0.4)
    assert lie_energy(quiet, 1) == lie_energy(quiet, 1, shift_reading=None)


def test_shift_denominator_guard():
    # printed reading: s0 = 4 s1 s2 kills its denominator while the
    # root argument s0^2 - 4 s1 s2 = 2 stays healthy
    c = LieCoefficients(s0=2.0, s1=1.0, s2=0.5, s3=0.2, s4=0.0)
    assert lie_energy(c, 0, shift_reading=SHIFT_ROOT_MATCHED) > 0.0
    with pytest.raises(ValueError, match="denominator vanishes"):
        lie_energy(c, 0, shift_reading=SHIFT_AS_PRINTED)
