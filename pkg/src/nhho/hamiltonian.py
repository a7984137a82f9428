"""Transformed oscillator Hamiltonian and its ladder-operator decomposition.

The coordinate and momentum are mixed by two real parameters::

    x' = (x + i*lam*p) / sqrt(1 + beta*lam)
    p' = (p + i*beta*x) / sqrt(1 + beta*lam)

which preserves [x', p'] = i but makes H = (x'^2 + p'^2)/2 non-Hermitian
whenever lam + beta != 0.  Expanding x and p over ladder operators at a free
frequency ``omega`` splits H into a diagonal part ``h_d * (2 adag a + 1)``
plus a two-quantum coupling ``(u * a^2 + v * adag^2) / (4 (1 + lam*beta))``.

Either off-diagonal side can be tuned away: ``u`` vanishes at
``omega1 = (1+beta)/(1-lam)`` and ``v`` at ``omega2 = (1-beta)/(1+lam)``.
At those frequencies the remaining matrix is triangular in the number basis,
the diagonal reads n + 1/2, and every perturbative correction vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ladder import LadderPolynomial

BRANCH_U_ZERO = "u0"
BRANCH_V_ZERO = "v0"
BRANCH_VARIATIONAL = "variational"


@dataclass(frozen=True)
class TransformParams:
    """Mixing parameters (lam, beta), restricted to the open unit square.

    |lam| < 1 and |beta| < 1 keep 1 + lam*beta > 0, both selected frequencies
    positive, and the coupling f = (lam+beta)/(1+lam*beta) inside (-1, 1);
    f composes like a tanh addition law in the parameters.
    """

    lam: float
    beta: float

    def __post_init__(self):
        if not abs(self.lam) < 1.0:
            raise ValueError(
                "lambda out of domain: need |lambda| < 1, got %g" % self.lam
            )
        if not abs(self.beta) < 1.0:
            raise ValueError(
                "beta out of domain: need |beta| < 1, got %g" % self.beta
            )

    @property
    def f(self) -> float:
        """Two-quantum coupling strength (lam+beta)/(1+lam*beta)."""
        return (self.lam + self.beta) / (1.0 + self.lam * self.beta)


@dataclass(frozen=True)
class ModeDecomposition:
    """Split of H at a chosen frequency: H = h_d*(2 adag a + 1) + H_N.

    ``u`` and ``v`` are the numerators of the ``a^2`` and ``adag^2`` couplings;
    the actual coupling coefficients are u/denom and v/denom with
    denom = 4*(1 + lam*beta).  ``f`` is cached for convenience.
    """

    omega: float
    h_d: float
    u: float
    v: float
    f: float
    denom: float

    def e0(self, n: int) -> float:
        """Unperturbed level h_d * (2n + 1)."""
        return self.h_d * (2 * n + 1)

    def hn_raise(self, m: int) -> float:
        """<m+2| H_N |m>, the adag^2 band."""
        return self.v * math.sqrt((m + 1) * (m + 2)) / self.denom

    def hn_lower(self, m: int) -> float:
        """<m-2| H_N |m>, the a^2 band (zero for m < 2)."""
        if m < 2:
            return 0.0
        return self.u * math.sqrt(m * (m - 1)) / self.denom

    def diagonal_polynomial(self) -> LadderPolynomial:
        return LadderPolynomial({(1, 1): 2.0 * self.h_d, (0, 0): self.h_d})

    def coupling_polynomial(self) -> LadderPolynomial:
        return LadderPolynomial(
            {(0, 2): self.u / self.denom, (2, 0): self.v / self.denom}
        )

    def to_polynomial(self) -> LadderPolynomial:
        return self.diagonal_polynomial() + self.coupling_polynomial()


def _check_omega(omega: float) -> None:
    if not omega > 0.0:
        raise ValueError("omega out of domain: need omega > 0, got %g" % omega)


def transformed_position(params: TransformParams, omega: float) -> LadderPolynomial:
    """(x + i*lam*p)/sqrt(1+beta*lam) over ladder operators at ``omega``.

    The i from the momentum cancels against the i*lam prefactor, so both
    coefficients come out real.
    """
    _check_omega(omega)
    norm = math.sqrt(1.0 + params.beta * params.lam)
    ca = (1.0 / math.sqrt(2.0 * omega) + params.lam * math.sqrt(omega / 2.0)) / norm
    cd = (1.0 / math.sqrt(2.0 * omega) - params.lam * math.sqrt(omega / 2.0)) / norm
    return LadderPolynomial({(0, 1): ca, (1, 0): cd})


def transformed_momentum(params: TransformParams, omega: float) -> LadderPolynomial:
    """(p + i*beta*x)/sqrt(1+beta*lam); purely imaginary coefficients."""
    _check_omega(omega)
    norm = math.sqrt(1.0 + params.beta * params.lam)
    dplus = (math.sqrt(omega / 2.0) + params.beta / math.sqrt(2.0 * omega)) / norm
    dminus = (math.sqrt(omega / 2.0) - params.beta / math.sqrt(2.0 * omega)) / norm
    return LadderPolynomial({(1, 0): 1j * dplus, (0, 1): -1j * dminus})


def verify_canonical_commutator(
    params: TransformParams, omega: float
) -> LadderPolynomial:
    """[x', p'] computed through the polynomial algebra; should equal i*1."""
    x = transformed_position(params, omega)
    p = transformed_momentum(params, omega)
    return x.commutator(p)


def hamiltonian_polynomial(params: TransformParams, omega: float) -> LadderPolynomial:
    """H = (x'^2 + p'^2)/2 built by squaring the transformed operators."""
    x = transformed_position(params, omega)
    p = transformed_momentum(params, omega)
    return 0.5 * (x * x + p * p)


def build_hamiltonian(params: TransformParams, omega: float) -> ModeDecomposition:
    """Closed-form decomposition coefficients at an arbitrary frequency."""
    _check_omega(omega)
    lam, beta = params.lam, params.beta
    denom = 4.0 * (1.0 + lam * beta)
    base = -omega * (1.0 - lam * lam) + (1.0 - beta * beta) / omega
    h_d = ((1.0 - lam * lam) * omega + (1.0 - beta * beta) / omega) / denom
    u = base + 2.0 * (lam + beta)
    v = base - 2.0 * (lam + beta)
    return ModeDecomposition(omega=omega, h_d=h_d, u=u, v=v, f=params.f, denom=denom)


def branch_decomposition(params: TransformParams, branch: str) -> ModeDecomposition:
    """Decomposition at a selection frequency, with exact simplified values.

    At omega1 and omega2 the coefficients reduce algebraically to h_d = 1/2
    and a single surviving coupling numerator -+4*(lam+beta); using those
    values directly keeps the triangular diagonal at n + 1/2 to the last bit
    instead of the ~1e-16 residue the generic formulas leave.  At the
    variational frequency the reductions u = -v = 2*(lam+beta) and
    h_d = sqrt((1-lam^2)(1-beta^2))/(2(1+lam*beta)) are used.
    """
    lam, beta = params.lam, params.beta
    denom = 4.0 * (1.0 + lam * beta)
    s = lam + beta
    if branch == BRANCH_U_ZERO:
        return ModeDecomposition(
            omega=omega_u_zero(params), h_d=0.5, u=0.0, v=-4.0 * s,
            f=params.f, denom=denom,
        )
    if branch == BRANCH_V_ZERO:
        return ModeDecomposition(
            omega=omega_v_zero(params), h_d=0.5, u=4.0 * s, v=0.0,
            f=params.f, denom=denom,
        )
    if branch == BRANCH_VARIATIONAL:
        g = math.sqrt((1.0 - lam * lam) * (1.0 - beta * beta))
        return ModeDecomposition(
            omega=omega_variational(params), h_d=2.0 * g / denom,
            u=2.0 * s, v=-2.0 * s, f=params.f, denom=denom,
        )
    raise ValueError("unknown branch %r" % branch)


def omega_u_zero(params: TransformParams) -> float:
    """Frequency killing the a^2 coupling: (1+beta)/(1-lam)."""
    return (1.0 + params.beta) / (1.0 - params.lam)


def omega_v_zero(params: TransformParams) -> float:
    """Frequency killing the adag^2 coupling: (1-beta)/(1+lam)."""
    return (1.0 - params.beta) / (1.0 + params.lam)


def omega_variational(params: TransformParams) -> float:
    """Stationary point of the unperturbed level energy in omega."""
    return math.sqrt((1.0 - params.beta**2) / (1.0 - params.lam**2))


def u_zero_roots(params: TransformParams) -> tuple[float, float]:
    """Both roots of the u = 0 quadratic; the second equals -omega_v_zero."""
    lam, beta = params.lam, params.beta
    one = ((lam + beta) + (1.0 + lam * beta)) / (1.0 - lam * lam)
    other = ((lam + beta) - (1.0 + lam * beta)) / (1.0 - lam * lam)
    return one, other


def v_zero_roots(params: TransformParams) -> tuple[float, float]:
    """Both roots of the v = 0 quadratic; the second equals -omega_u_zero."""
    lam, beta = params.lam, params.beta
    one = (-(lam + beta) + (1.0 + lam * beta)) / (1.0 - lam * lam)
    other = (-(lam + beta) - (1.0 + lam * beta)) / (1.0 - lam * lam)
    return one, other


def hermiticity_defect(params: TransformParams, omega: float) -> LadderPolynomial:
    """H - H^+; vanishes exactly when lam + beta = 0."""
    h = hamiltonian_polynomial(params, omega)
    return h - h.adjoint()
