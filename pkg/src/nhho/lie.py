"""Closed-form spectrum of the general quadratic ladder Hamiltonian.

For H = s0 (adag a + 1/2) + s1 adag^2 + s2 a^2 + s3 adag + s4 a the level
energies are sqrt(s0^2 - 4 s1 s2) (n + 1/2) plus a constant shift built from
s3 and s4.  The published shift denominator (s0^2 - 4 s0 s1 s2) does not
match the square-root argument (s0^2 - 4 s1 s2) and with s3 = s4 = 0 the
difference can never be observed, so when the linear terms are present the
caller must pick a reading explicitly instead of this module guessing one.

Both selection branches of the transformed oscillator land in the s3 = s4 = 0,
s1 * s2 = 0 corner where the formula collapses to n + 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .hamiltonian import (
    BRANCH_U_ZERO,
    BRANCH_V_ZERO,
    ModeDecomposition,
    TransformParams,
)

SHIFT_AS_PRINTED = "printed"
SHIFT_ROOT_MATCHED = "root-matched"


@dataclass(frozen=True)
class LieCoefficients:
    """Coefficients of (adag a + 1/2), adag^2, a^2, adag, a in that order."""

    s0: float
    s1: float
    s2: float
    s3: float = 0.0
    s4: float = 0.0


def lie_energy(c: LieCoefficients, n: int, shift_reading: str | None = None) -> float:
    """Level-n energy of the quadratic Hamiltonian.

    ``shift_reading`` selects the denominator of the linear-term shift:
    ``"printed"`` uses s0^2 - 4 s0 s1 s2, ``"root-matched"`` uses
    s0^2 - 4 s1 s2.  It is required only when s3 or s4 is nonzero; with both
    linear terms absent the shift is identically zero and no reading is
    needed.
    """
    if n < 0:
        raise ValueError("level index must be nonnegative")
    root_arg = c.s0 * c.s0 - 4.0 * c.s1 * c.s2
    if not root_arg > 0.0:
        raise ValueError(
            "no real spectrum: s0^2 - 4 s1 s2 = %g is not positive" % root_arg
        )
    level = math.sqrt(root_arg) * (n + 0.5)
    if c.s3 == 0.0 and c.s4 == 0.0:
        return level
    if shift_reading is None:
        raise ValueError(
            "linear terms present but no shift_reading chosen; the published "
            "shift denominator is ambiguous, pass 'printed' or 'root-matched'"
        )
    if shift_reading == SHIFT_AS_PRINTED:
        denom = c.s0 * c.s0 - 4.0 * c.s0 * c.s1 * c.s2
    elif shift_reading == SHIFT_ROOT_MATCHED:
        denom = root_arg
    else:
        raise ValueError("unknown shift_reading %r" % shift_reading)
    if denom == 0.0:
        raise ValueError("shift denominator vanishes for these coefficients")
    shift = (c.s2 * c.s3**2 + c.s1 * c.s4**2 - c.s0 * c.s3 * c.s4) / denom
    return level + shift


def case_coefficients(params: TransformParams, branch: str) -> LieCoefficients:
    """Published coefficient sets for the two selection branches.

    Note these carry half the coupling that the decomposition itself
    produces (see ``decomposition_coefficients``); since the dead side makes
    s1 * s2 = 0 either way, the energies agree regardless.
    """
    f = params.f
    if branch == BRANCH_U_ZERO:
        return LieCoefficients(s0=1.0, s1=-0.5 * f, s2=0.0)
    if branch == BRANCH_V_ZERO:
        return LieCoefficients(s0=1.0, s1=0.0, s2=0.5 * f)
    raise ValueError("unknown branch %r" % branch)


def decomposition_coefficients(decomp: ModeDecomposition) -> LieCoefficients:
    """Quadratic-form coefficients read straight off a decomposition."""
    return LieCoefficients(
        s0=2.0 * decomp.h_d,
        s1=decomp.v / decomp.denom,
        s2=decomp.u / decomp.denom,
    )
