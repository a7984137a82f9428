"""Hermite evaluation, quadrature, and position-space series checks."""

import math

import numpy as np
import pytest
from numpy.polynomial import hermite as np_hermite

from nhho.hamiltonian import TransformParams, omega_u_zero, omega_v_zero
from nhho.perturbation import build_series_lowering, build_series_raising
from nhho.position_space import (
    GridFunction,
    HermiteBasisFunction,
    QuadratureRule,
    default_grid,
    eval_series_position,
    gauss_hermite,
    hermite_poly,
    overlap,
    sample_basis,
    sample_series,
)

ANCHOR = TransformParams(0.5, 0.2)


def test_hermite_poly_against_numpy():
    ys = np.linspace(-4.0, 4.0, 41)
    for n in range(16):
        coeffs = np.zeros(n + 1)
        coeffs[n] = 1.0
        expect = np_hermite.hermval(ys, coeffs)
        got = hermite_poly(n, ys)
        scale = np.maximum(1.0, np.abs(expect))
        assert np.max(np.abs(got - expect) / scale) <= 1e-12
    assert hermite_poly(3, 0.5) == pytest.approx(8 * 0.5**3 - 12 * 0.5, abs=1e-13)
    with pytest.raises(ValueError):
        hermite_poly(-1, 0.0)


def test_basis_matches_naive_formula():
    # the stabilized recurrence against explicit H_n e^{-y^2/2}/sqrt(2^n n! sqrt(pi))
    xs = np.linspace(-3.0, 3.0, 25)
    omega = 1.7
    for n in range(31):
        fn = HermiteBasisFunction(n, omega)
        y = math.sqrt(omega) * xs
        naive = (
            omega**0.25
            * hermite_poly(n, y)
            * np.exp(-0.5 * y * y)
            / math.sqrt(2.0**n * math.factorial(n) * math.sqrt(math.pi))
        )
        assert np.max(np.abs(fn(xs) - naive)) <= 1e-11


def test_basis_values_and_parity():
    omega = 2.4
    assert HermiteBasisFunction(0, omega)(0.0) == pytest.approx(
        (omega / math.pi) ** 0.25, abs=1e-14
    )
    for n in (1, 3, 5, 9):
        assert HermiteBasisFunction(n, omega)(0.0) == 0.0
    fn = HermiteBasisFunction(4, omega)
    assert fn(0.7) == pytest.approx(fn(-0.7), abs=1e-14)
    with pytest.raises(ValueError):
        HermiteBasisFunction(2, -1.0)
    with pytest.raises(ValueError):
        HermiteBasisFunction(-1, 1.0)


def test_gauss_hermite_against_numpy():
    for count in (1, 2, 3, 5, 8, 16, 32, 64, 128):
        rule = gauss_hermite(count)
        nodes, weights = np.polynomial.hermite.hermgauss(count)
        assert rule.count == count
        assert np.max(np.abs(rule.nodes - nodes)) <= 5e-14
        assert np.max(np.abs(rule.weights - weights)) <= 5e-14
        # symmetry comes out exact, not just approximate
        assert np.array_equal(rule.nodes, -rule.nodes[::-1])
    with pytest.raises(ValueError):
        gauss_hermite(0)


def test_quadrature_moments():
    # integral of y^{2k} e^{-y^2} = Gamma(k + 1/2), exact below the degree bound
    rule = gauss_hermite(24)
    for k in range(0, 23):
        got = float(np.sum(rule.weights * rule.nodes ** (2 * k)))
        expect = math.gamma(k + 0.5)
        assert got == pytest.approx(expect, rel=1e-12)


def test_orthonormality_both_frequencies():
    rule = gauss_hermite(64)
    for omega in (omega_u_zero(ANCHOR), omega_v_zero(ANCHOR)):
        fns = [HermiteBasisFunction(n, omega) for n in range(21)]
        for i in range(21):
            for j in range(i, 21):
                val = overlap(fns[i], fns[j], rule)
                assert val == pytest.approx(1.0 if i == j else 0.0, abs=1e-10)


def test_cross_frequency_overlap_closed_form():
    # <0, wf | 0, wg> = sqrt(2 sqrt(wf wg) / (wf + wg))
    rule = gauss_hermite(48)
    for wf, wg in ((1.0, 3.0), (0.4, 2.2), (2.4, 8.0 / 15.0)):
        got = overlap(HermiteBasisFunction(0, wf), HermiteBasisFunction(0, wg), rule)
        expect = math.sqrt(2.0 * math.sqrt(wf * wg) / (wf + wg))
        assert got == pytest.approx(expect, abs=1e-12)


def test_quadrature_warning_when_undersized():
    rule = gauss_hermite(4)
    with pytest.warns(UserWarning, match="exactness bound"):
        overlap(HermiteBasisFunction(10, 1.0), HermiteBasisFunction(10, 1.0), rule)


def test_series_evaluation():
    xs = np.linspace(-2.0, 2.0, 9)
    down = build_series_lowering(ANCHOR, 0)
    base = HermiteBasisFunction(0, down.omega)
    assert np.max(np.abs(eval_series_position(down, xs) - base(xs))) == 0.0
    up = build_series_raising(ANCHOR, 1, 3)
    manual = sum(
        c * HermiteBasisFunction(int(level), up.omega)(xs)
        for level, c in zip(up.levels(), up.coeffs)
    )
    assert np.max(np.abs(eval_series_position(up, xs) - manual)) <= 1e-14
    assert isinstance(eval_series_position(up, 0.3), float)


def test_ground_state_gaussian_identity():
    omega2 = omega_v_zero(ANCHOR)
    xs = default_grid(omega2)
    down = build_series_lowering(ANCHOR, 0)
    gaussian = (omega2 / math.pi) ** 0.25 * np.exp(-0.5 * omega2 * xs * xs)
    assert np.max(np.abs(eval_series_position(down, xs) - gaussian)) <= 1e-12


def test_lowering_states_decay():
    omega2 = omega_v_zero(ANCHOR)
    edge = 10.0 / math.sqrt(omega2)
    for n in range(13):
        series = build_series_lowering(ANCHOR, n)
        for x in (-edge, edge):
            assert abs(eval_series_position(series, x)) <= 1e-10


def test_grid_helpers():
    xs = default_grid(4.0)
    assert len(xs) == 401
    assert xs[0] == -4.0 and xs[-1] == 4.0
    assert abs(xs[200]) <= 1e-15
    gf = sample_basis(HermiteBasisFunction(2, 1.0), xs)
    assert isinstance(gf, GridFunction)
    assert len(gf.values) == 401
    series = build_series_lowering(ANCHOR, 2)
    gf2 = sample_series(series, xs)
    assert gf2.values[200] == pytest.approx(eval_series_position(series, 0.0), abs=1e-15)
    with pytest.raises(ValueError, match="equal length"):
        GridFunction(xs=np.array([0.0, 1.0]), values=np.array([1.0]))
    with pytest.raises(ValueError, match="increasing"):
        GridFunction(xs=np.array([0.0, 0.0]), values=np.array([1.0, 2.0]))


def test_quadrature_rule_is_plain_data():
    rule = gauss_hermite(6)
    assert isinstance(rule, QuadratureRule)
    assert len(rule.nodes) == 6 and len(rule.weights) == 6
    assert float(np.sum(rule.weights)) == pytest.approx(math.sqrt(math.pi), rel=1e-13)
