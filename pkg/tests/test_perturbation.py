"""Correction recursion and wavefunction series against independent routes."""

import math

import numpy as np
import pytest

from nhho.hamiltonian import (
    BRANCH_U_ZERO,
    BRANCH_V_ZERO,
    BRANCH_VARIATIONAL,
    ModeDecomposition,
    TransformParams,
    branch_decomposition,
)
from nhho.perturbation import (
    LOWERING,
    RAISING,
    build_series_lowering,
    build_series_raising,
    coefficient_ratios,
    first_order,
    partial_square_norms,
    rs_corrections,
    series_by_recursion,
)

ANCHOR = TransformParams(0.5, 0.2)


def random_params(rng, bound=0.9):
    return TransformParams(
        lam=float(rng.uniform(-bound, bound)), beta=float(rng.uniform(-bound, bound))
    )


def test_first_order_vanishes_everywhere():
    rng = np.random.default_rng(31)
    for _ in range(20):
        p = random_params(rng)
        for branch in (BRANCH_U_ZERO, BRANCH_V_ZERO, BRANCH_VARIATIONAL):
            dec = branch_decomposition(p, branch)
            for n in range(6):
                assert abs(first_order(dec, n)) <= 1e-15


def test_corrections_vanish_on_selection_branches():
    rng = np.random.default_rng(33)
    for _ in range(20):
        p = random_params(rng)
        for branch in (BRANCH_U_ZERO, BRANCH_V_ZERO):
            dec = branch_decomposition(p, branch)
            for n in (0, 3, 7):
                res = rs_corrections(dec, n, 8)
                assert res.max_abs_correction() <= 1e-12
                assert res.total() == pytest.approx(n + 0.5, abs=1e-12)


def sum_over_states_second_order(dec, n):
    """Textbook second order through polynomial matrix elements only."""
    w = dec.coupling_polynomial()
    total = 0.0
    for k in (n - 2, n + 2):
        if k < 0:
            continue
        total += float((w.matrix_element(n, k) * w.matrix_element(k, n)).real) / (
            dec.e0(n) - dec.e0(k)
        )
    return total


def test_variational_second_order():
    dec = branch_decomposition(ANCHOR, BRANCH_VARIATIONAL)
    res = rs_corrections(dec, 0, 4)
    lam, beta = ANCHOR.lam, ANCHOR.beta
    g = math.sqrt((1.0 - lam**2) * (1.0 - beta**2))
    closed = (lam + beta) ** 2 / (4.0 * g * (1.0 + lam * beta))
    # value frozen from the closed form above: 0.49/(4*sqrt(0.72)*1.1)
    assert closed == pytest.approx(0.13124330408386675, abs=1e-15)
    assert res.corrections[1] == pytest.approx(closed, abs=1e-12)
    rng = np.random.default_rng(35)
    for _ in range(25):
        p = random_params(rng, bound=0.8)
        d = branch_decomposition(p, BRANCH_VARIATIONAL)
        for n in (0, 2, 5):
            got = rs_corrections(d, n, 2).corrections[1]
            assert got == pytest.approx(sum_over_states_second_order(d, n), abs=1e-12)


def test_variational_odd_orders_zero():
    # the coupling moves levels by +-2, so odd orders cannot return to n
    dec = branch_decomposition(ANCHOR, BRANCH_VARIATIONAL)
    for n in (0, 1, 4):
        res = rs_corrections(dec, n, 9)
        assert all(c == 0.0 for c in res.corrections[0::2])
        assert any(c != 0.0 for c in res.corrections[1::2])


def test_variational_series_sums_to_half_integer():
    # the operator is the same at every frequency, so the resummed series
    # must land back on n + 1/2
    dec = branch_decomposition(ANCHOR, BRANCH_VARIATIONAL)
    for n in (0, 1, 2):
        res = rs_corrections(dec, n, 100)
        assert res.total() == pytest.approx(n + 0.5, abs=1e-10)


def test_rs_corrections_validation():
    dec = branch_decomposition(ANCHOR, BRANCH_U_ZERO)
    with pytest.raises(ValueError, match="nonnegative"):
        rs_corrections(dec, -1, 4)
    with pytest.raises(ValueError, match="at least 1"):
        rs_corrections(dec, 0, 0)
    degenerate = ModeDecomposition(omega=1.0, h_d=0.0, u=1.0, v=1.0, f=0.5, denom=4.0)
    with pytest.raises(ValueError, match="degenerate"):
        rs_corrections(degenerate, 0, 2)


def test_raising_coefficient_pattern():
    # c_k * 2^k k! / (f^k sqrt((n+2k)!/n!)) == 1, the 2, 8, 48 denominators
    f = ANCHOR.f
    for n in range(9):
        series = series_by_recursion(ANCHOR, n, 10, RAISING)
        for k in range(1, 11):
            ratio = math.exp(
                0.5 * (math.lgamma(n + 2 * k + 1) - math.lgamma(n + 1))
            )
            normalized = series.coeffs[k] * (2.0**k) * math.factorial(k) / (f**k * ratio)
            assert normalized == pytest.approx(1.0, abs=1e-12)
    first_three = [1.0 / 2.0, 1.0 / 8.0, 1.0 / 48.0]
    series = build_series_raising(ANCHOR, 0, 3)
    for k, inv_denom in enumerate(first_three, start=1):
        expect = f**k * math.sqrt(math.factorial(2 * k)) * inv_denom
        assert series.coeffs[k] == pytest.approx(expect, abs=1e-14)


def test_recursion_matches_closed_forms():
    rng = np.random.default_rng(37)
    for _ in range(30):
        p = random_params(rng)
        n = int(rng.integers(0, 9))
        up_closed = build_series_raising(p, n, 12)
        up_rec = series_by_recursion(p, n, 12, RAISING)
        down_closed = build_series_lowering(p, n)
        down_rec = series_by_recursion(p, n, 12, LOWERING)
        for left, right in ((up_closed, up_rec), (down_closed, down_rec)):
            ca = np.asarray(left.coeffs)
            cb = np.asarray(right.coeffs)
            assert ca.shape == cb.shape
            scale = np.maximum(1.0, np.abs(ca))
            assert np.max(np.abs(ca - cb) / scale) <= 1e-12


def test_lowering_series_terminates():
    for n in range(13):
        series = build_series_lowering(ANCHOR, n)
        assert len(series.coeffs) == n // 2 + 1
        assert series.levels()[-1] == n - 2 * (n // 2)
        # one more recursion step would carry a vanishing square-root factor
        k = n // 2 + 1
        assert (n - 2 * k + 2) * (n - 2 * k + 1) == 0
    assert build_series_lowering(ANCHOR, 0).coeffs == (1.0,)
    assert build_series_lowering(ANCHOR, 1).coeffs == (1.0,)


def test_series_metadata():
    up = build_series_raising(ANCHOR, 2, 4)
    assert up.branch == RAISING
    assert up.order() == 4
    assert list(up.levels()) == [2, 4, 6, 8, 10]
    assert up.coeffs[0] == 1.0
    down = build_series_lowering(ANCHOR, 5)
    assert down.branch == LOWERING
    assert list(down.levels()) == [5, 3, 1]
    with pytest.raises(ValueError):
        series_by_recursion(ANCHOR, 1, 3, "sideways")
    with pytest.raises(ValueError):
        build_series_raising(ANCHOR, -1, 3)


def test_ratio_and_norm_monitors():
    series = build_series_raising(ANCHOR, 0, 40)
    ratios = coefficient_ratios(series)
    f = ANCHOR.f
    for k in range(1, 40):
        expect = f * math.sqrt((2 * k + 2) * (2 * k + 1)) / (2.0 * (k + 1))
        assert ratios[k] == pytest.approx(expect, rel=1e-12)
    # the ratio tends to f from below: a geometric, square-summable tail
    assert ratios[-1] == pytest.approx(f, rel=1e-2)
    assert np.all(ratios < abs(f))
    norms = partial_square_norms(series)
    assert norms[0] == 1.0
    assert np.all(np.diff(norms) >= 0.0)
    # sum of c_k^2 for n = 0 is the central-binomial series in f^2
    assert norms[-1] == pytest.approx(1.0 / math.sqrt(1.0 - f * f), rel=1e-12)
