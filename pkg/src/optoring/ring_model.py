"""Ring-cavity optomechanics: parameters to stationary entanglement.

Three modes: two movable mirrors coupled by a position-position spring and
driven by the radiation pressure of one cavity field.  The module maps
laboratory inputs to derived quantities (drive-enhanced couplings, thermal
occupancies, effective detuning), builds the 6x6 drift and noise matrices
of the linearized fluctuation dynamics, solves for the stationary
covariance when the drift is Hurwitz, and evaluates all bipartite and
tripartite entanglement measures.

Fluctuation vector order: (dq1, dp1, dq2, dp2, dx, dy), optical mode last.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from . import gaussian_cv, numerics

HBAR = 1.054571817e-34  # J s
KB = 1.380649e-23  # J / K


class UnstableSystemError(Exception):
    """The drift matrix is not Hurwitz; no stationary covariance exists.

    Carries the stability margin (max real part of the drift spectrum).
    """

    def __init__(self, margin: float):
        super().__init__(f"drift matrix is not Hurwitz (margin {margin:.6e} rad/s)")
        self.margin = margin


@dataclass(frozen=True)
class PhysicalParams:
    """Laboratory inputs, SI units (angular frequencies in rad/s).

    Exactly one of ``delta`` (effective detuning, the quantity figure axes
    use) or ``delta_c`` (bare cavity-laser detuning, converted through the
    self-consistent radiation-pressure shift) must be set.
    """

    theta: float  # mirror incidence angle, rad
    omega_L: float  # laser frequency
    omega_m1: float  # mechanical frequencies
    omega_m2: float
    gamma_m1: float  # mechanical damping rates
    gamma_m2: float
    g1: float  # single-photon optomechanical coefficients
    g2: float
    kappa: float  # cavity decay rate
    lam: float  # mirror-mirror coupling strength
    power: float  # laser power, W
    temp1: float  # bath temperatures, K
    temp2: float
    delta: Optional[float] = None
    delta_c: Optional[float] = None

    def __post_init__(self) -> None:
        for name in ("omega_m1", "omega_m2", "kappa"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)!r}")
        for name in ("gamma_m1", "gamma_m2", "power", "temp1", "temp2", "omega_L"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative, got {getattr(self, name)!r}")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        if (self.delta is None) == (self.delta_c is None):
            raise ValueError("exactly one of delta (effective) or delta_c (cavity) must be set")


@dataclass(frozen=True)
class DerivedParams:
    """Quantities computed from :class:`PhysicalParams`."""

    eta1: float  # geometry-projected couplings g_i cos^2(theta/2), rad/s
    eta2: float
    eps_L: float  # drive amplitude, 1/s
    a_s: float  # steady intracavity amplitude magnitude (real >= 0 by phase choice)
    G1: float  # drive-enhanced couplings sqrt(2) eta_i |a_s|, rad/s
    G2: float
    n_th1: float  # thermal occupancies
    n_th2: float
    delta: float  # effective detuning, rad/s
    q1_s: float  # steady mirror displacements, dimensionless
    q2_s: float


@dataclass(frozen=True)
class EntanglementReport:
    """All stationary entanglement measures at one parameter point.

    Measure fields are ``None`` when the point is unstable.
    """

    stable: bool
    stability_margin: float
    e_m1m2: Optional[float] = None
    e_cm1: Optional[float] = None
    e_cm2: Optional[float] = None
    e_1v23: Optional[float] = None
    e_2v31: Optional[float] = None
    e_3v12: Optional[float] = None
    r_1: Optional[float] = None
    r_2: Optional[float] = None
    r_3: Optional[float] = None
    r_min: Optional[float] = None
    covariance: Optional[NDArray[np.float64]] = None


def default_params(**overrides) -> PhysicalParams:
    """Bundled reference parameter set (ring-cavity experiment values).

    Defaults describe the strong-drive regime (60 mW at 1 mK, resonant
    effective detuning, mirror coupling 0.1 omega_m); sweeps and figure
    presets override power, temperature, detuning and coupling as needed.
    """
    omega_m = 2 * math.pi * 1e7
    base = PhysicalParams(
        theta=math.pi / 3,
        omega_L=2 * math.pi * 3.7e14,
        omega_m1=omega_m,
        omega_m2=omega_m,
        gamma_m1=2 * math.pi * 1e2,
        gamma_m2=2 * math.pi * 1e2,
        g1=2 * math.pi * 35.0,
        g2=0.9 * 2 * math.pi * 35.0,
        kappa=math.pi * 1e7,
        lam=0.1 * omega_m,
        power=0.06,
        temp1=1e-3,
        temp2=1e-3,
        delta=omega_m,
    )
    return replace(base, **overrides) if overrides else base


def thermal_occupancy(omega_m: float, temp: float) -> float:
    """Bose-Einstein occupancy of a mechanical bath; exactly 0 at T = 0."""
    if temp == 0.0:
        return 0.0
    return 1.0 / math.expm1(HBAR * omega_m / (KB * temp))


def _cos_sq_half(theta: float) -> float:
    # grazing incidence decouples the light exactly; cos(pi/2) is not an
    # exact float zero, so snap it
    if theta == math.pi:
        return 0.0
    return math.cos(theta / 2.0) ** 2


def _positions(eta1: float, eta2: float, a_s_sq: float, p: PhysicalParams) -> tuple[float, float]:
    det = p.omega_m1 * p.omega_m2 - p.lam**2
    if det == 0.0:
        raise ValueError("degenerate stiffness: omega_m1 * omega_m2 - lam^2 = 0")
    rhs1 = -eta1 * a_s_sq
    rhs2 = eta2 * a_s_sq
    q1 = (p.omega_m2 * rhs1 - p.lam * rhs2) / det
    q2 = (p.omega_m1 * rhs2 - p.lam * rhs1) / det
    return q1, q2


def steady_state_positions(d: DerivedParams, p: PhysicalParams) -> tuple[float, float]:
    """Stationary mirror displacements from the exact coupled 2x2 system.

    Solves ``omega_m1 q1 + lam q2 = -eta1 |a_s|^2`` and
    ``lam q1 + omega_m2 q2 = +eta2 |a_s|^2``; at lam = 0 this reduces to
    the familiar single-mirror radiation-pressure displacements.
    """
    return _positions(d.eta1, d.eta2, d.a_s**2, p)


def effective_detuning_roots(delta_c: float, p: PhysicalParams) -> list[tuple[float, float]]:
    """All real solutions of the self-consistent effective detuning.

    Substituting the lam = 0 stationary positions into
    ``delta = delta_c + eta1 q1 - eta2 q2`` gives the real cubic
    ``delta (kappa^2 + delta^2) = delta_c (kappa^2 + delta^2) - K eps_L^2``
    with ``K = eta1^2/omega_m1 + eta2^2/omega_m2``.  Returns all real roots
    (1 or 3) as ``(delta, a_s)`` pairs sorted ascending in delta; root
    selection is the caller's job.
    """
    cos_sq = _cos_sq_half(p.theta)
    eta1 = p.g1 * cos_sq
    eta2 = p.g2 * cos_sq
    eps_l = math.sqrt(2.0 * p.kappa * p.power / (HBAR * p.omega_L))
    big_k = eta1**2 / p.omega_m1 + eta2**2 / p.omega_m2
    coeffs = [1.0, -delta_c, p.kappa**2, -delta_c * p.kappa**2 + big_k * eps_l**2]
    roots = np.roots(coeffs)
    real = sorted(
        float(z.real) for z in roots if abs(z.imag) <= 1e-9 * max(1.0, abs(z))
    )
    return [(d, eps_l / math.hypot(p.kappa, d)) for d in real]


def derive_params(p: PhysicalParams) -> DerivedParams:
    """Compute all derived quantities for one parameter point.

    The global optical phase is chosen so the steady amplitude is real and
    non-negative, making the enhanced couplings G1, G2 real.  In cavity
    detuning mode, the smallest-|a_s| real root of the self-consistent
    cubic (the branch continuously connected to the undriven limit) is
    selected.
    """
    cos_sq = _cos_sq_half(p.theta)
    eta1 = p.g1 * cos_sq
    eta2 = p.g2 * cos_sq
    eps_l = math.sqrt(2.0 * p.kappa * p.power / (HBAR * p.omega_L))
    if p.delta is not None:
        delta = p.delta
        a_s = eps_l / math.hypot(p.kappa, delta)
    else:
        roots = effective_detuning_roots(p.delta_c, p)
        if not roots:
            raise ValueError("no admissible real root for the effective detuning cubic")
        delta, a_s = min(roots, key=lambda pair: pair[1])
    q1_s, q2_s = _positions(eta1, eta2, a_s**2, p)
    return DerivedParams(
        eta1=eta1,
        eta2=eta2,
        eps_L=eps_l,
        a_s=a_s,
        G1=math.sqrt(2.0) * eta1 * a_s,
        G2=math.sqrt(2.0) * eta2 * a_s,
        n_th1=thermal_occupancy(p.omega_m1, p.temp1),
        n_th2=thermal_occupancy(p.omega_m2, p.temp2),
        delta=delta,
        q1_s=q1_s,
        q2_s=q2_s,
    )


def build_drift(d: DerivedParams, p: PhysicalParams) -> NDArray[np.float64]:
    """6x6 drift matrix of the linearized fluctuation dynamics."""
    return np.array([
        [0.0, p.omega_m1, 0.0, 0.0, 0.0, 0.0],
        [-p.omega_m1, -p.gamma_m1, -p.lam, 0.0, -d.G1, 0.0],
        [0.0, 0.0, 0.0, p.omega_m2, 0.0, 0.0],
        [-p.lam, 0.0, -p.omega_m2, -p.gamma_m2, d.G2, 0.0],
        [0.0, 0.0, 0.0, 0.0, -p.kappa, d.delta],
        [-d.G1, 0.0, d.G2, 0.0, -d.delta, -p.kappa],
    ])


def build_noise(d: DerivedParams, p: PhysicalParams) -> NDArray[np.float64]:
    """Diagonal matrix of symmetrized noise correlations."""
    return np.diag([
        0.0,
        p.gamma_m1 * (2.0 * d.n_th1 + 1.0),
        0.0,
        p.gamma_m2 * (2.0 * d.n_th2 + 1.0),
        p.kappa,
        p.kappa,
    ])


def steady_covariance(p: PhysicalParams) -> NDArray[np.float64]:
    """Stationary 6x6 covariance matrix of the fluctuations.

    Raises :class:`UnstableSystemError` (with margin) when the drift matrix
    is not Hurwitz or the Lyapunov system is singular.
    """
    d = derive_params(p)
    s = build_drift(d, p)
    verdict = numerics.is_hurwitz(s)
    if not verdict.stable:
        raise UnstableSystemError(verdict.margin)
    try:
        return numerics.solve_lyapunov(s, build_noise(d, p))
    except numerics.NoUniqueSolutionError as exc:
        raise UnstableSystemError(verdict.margin) from exc


def entanglement_report(p: PhysicalParams) -> EntanglementReport:
    """Full stationary entanglement report at one parameter point.

    Bipartite pairs: (mirror1, mirror2) -> e_m1m2, (mirror1, cavity) ->
    e_cm1, (mirror2, cavity) -> e_cm2; plus the three one-vs-two
    negativities and residual contangles.  Unstable points yield a report
    with ``stable=False`` and all measures ``None``.
    """
    d = derive_params(p)
    s = build_drift(d, p)
    verdict = numerics.is_hurwitz(s)
    if not verdict.stable:
        return EntanglementReport(stable=False, stability_margin=verdict.margin)
    try:
        cov = numerics.solve_lyapunov(s, build_noise(d, p))
    except numerics.NoUniqueSolutionError:
        return EntanglementReport(stable=False, stability_margin=verdict.margin)
    e_m1m2 = gaussian_cv.log_negativity(gaussian_cv.reduce(cov, (1, 2)), "M1M2")
    e_cm1 = gaussian_cv.log_negativity(gaussian_cv.reduce(cov, (1, 3)), "CM1")
    e_cm2 = gaussian_cv.log_negativity(gaussian_cv.reduce(cov, (2, 3)), "CM2")
    one_vs_two = [gaussian_cv.log_negativity(cov, label) for label in gaussian_cv.ONE_VS_TWO_PARTITIONS]
    res = gaussian_cv.residual_contangle(cov)
    return EntanglementReport(
        stable=True,
        stability_margin=verdict.margin,
        e_m1m2=e_m1m2,
        e_cm1=e_cm1,
        e_cm2=e_cm2,
        e_1v23=one_vs_two[0],
        e_2v31=one_vs_two[1],
        e_3v12=one_vs_two[2],
        r_1=res.r1,
        r_2=res.r2,
        r_3=res.r3,
        r_min=res.r_min,
        covariance=cov,
    )
