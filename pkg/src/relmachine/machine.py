"""Closed-form per-cycle statistics and performance bounds of the swap machine.

One cycle: both qubits thermalize against their (effective) baths, a swap
unitary exchanges their states, and they re-thermalize. Every statistic of the
cycle follows from the four dimensionless numbers of an operating point:
the two gaps and the two effective thermal products a = beta_eff_A * omega_A
and b = beta_eff_B * omega_B.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .detector import BathSpec, DetectorSpec, effective_inverse_temperature, \
    effective_temperature_high_T
from .numerics import DomainError, Tolerance, DEFAULT_TOLERANCE, \
    generalized_tur_rhs, maximize_scalar

__all__ = [
    "RegimeError",
    "DegeneratePointError",
    "OperatingRegime",
    "MachineConfig",
    "EffectivePoint",
    "CycleStatistics",
    "TurReport",
    "make_point",
    "make_point_high_t",
    "mean_work",
    "mean_heat_hot",
    "mean_heat_cold",
    "variance_work",
    "variance_heat_hot",
    "variance_heat_cold",
    "entropy_production",
    "snr",
    "classify_regime",
    "cycle_statistics",
    "tur_report",
    "otto_efficiency",
    "carnot_efficiency_eff",
    "efficiency_power_tradeoff_rhs",
    "cop",
    "cop_carnot_eff",
    "cop_tradeoff_rhs",
    "figure_of_merit",
    "figure_of_merit_high_t",
    "optimal_frequency_ratio_chi",
    "cop_at_max_chi",
    "optimize_figure_of_merit",
]

# relative half-width of the idle band around the regime boundaries
_BOUNDARY_RTOL = 1e-12


class RegimeError(ValueError):
    """Operation asked for outside its operating regime."""


class DegeneratePointError(ValueError):
    """Both thermal products coincide: all currents vanish identically."""


class OperatingRegime(enum.Enum):
    REFRIGERATOR = "refrigerator"
    ENGINE = "engine"
    ACCELERATOR = "accelerator"
    IDLE = "idle"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class MachineConfig:
    """Full machine description: gaps, baths, and detector speeds.

    Bath A is the hot one. Equal temperatures are admitted as the degenerate
    limit; T_A < T_B is rejected.
    """

    omega_A: float
    omega_B: float
    bath_A: BathSpec
    bath_B: BathSpec
    speed_A: float = 0.0
    speed_B: float = 0.0
    coupling_A: float = 1.0
    coupling_B: float = 1.0

    def __post_init__(self):
        # DetectorSpec re-validates gaps/speeds/couplings field by field
        self.detector_A()
        self.detector_B()
        if self.bath_A.temperature < self.bath_B.temperature:
            raise DomainError("bath A must be the hot bath "
                              "(temperature_A >= temperature_B)")

    def detector_A(self) -> DetectorSpec:
        return DetectorSpec(self.omega_A, self.speed_A, self.coupling_A)

    def detector_B(self) -> DetectorSpec:
        return DetectorSpec(self.omega_B, self.speed_B, self.coupling_B)


@dataclass(frozen=True)
class EffectivePoint:
    """Reduced operating point; everything downstream depends only on this."""

    omega_A: float
    omega_B: float
    beta_eff_A: float
    beta_eff_B: float

    def __post_init__(self):
        for name in ("omega_A", "omega_B", "beta_eff_A", "beta_eff_B"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise DomainError(f"{name} must be positive and finite")

    @property
    def a(self) -> float:
        """beta_eff_A * omega_A (dimensionless)."""
        return self.beta_eff_A * self.omega_A

    @property
    def b(self) -> float:
        """beta_eff_B * omega_B (dimensionless)."""
        return self.beta_eff_B * self.omega_B


@dataclass(frozen=True)
class CycleStatistics:
    """Immutable snapshot of one operating point (snr is NaN when idle)."""

    mean_work: float
    mean_heat_hot: float
    mean_heat_cold: float
    var_work: float
    var_heat_hot: float
    entropy_production: float
    snr: float
    regime: OperatingRegime


@dataclass(frozen=True)
class TurReport:
    """Noise-to-signal ratio against its three lower bounds."""

    snr: float
    classical_rhs: float
    shifted_rhs: float
    generalized_rhs: float
    ratio_R: float


def make_point(cfg: MachineConfig) -> EffectivePoint:
    """Operating point with the exact effective inverse temperatures."""
    beta_a = effective_inverse_temperature(cfg.detector_A(), cfg.bath_A)
    beta_b = effective_inverse_temperature(cfg.detector_B(), cfg.bath_B)
    return EffectivePoint(cfg.omega_A, cfg.omega_B, beta_a, beta_b)


def make_point_high_t(cfg: MachineConfig) -> EffectivePoint:
    """Operating point in the high-temperature (leading-order) approximation."""
    def beta_eff(bath: BathSpec, speed: float) -> float:
        if speed == 0.0:
            return bath.inverse_temperature
        return 1.0 / effective_temperature_high_T(bath, speed)

    return EffectivePoint(cfg.omega_A, cfg.omega_B,
                          beta_eff(cfg.bath_A, cfg.speed_A),
                          beta_eff(cfg.bath_B, cfg.speed_B))


def _tanh_half_diff(p: EffectivePoint) -> float:
    """tanh(b/2) - tanh(a/2) as sinh((b-a)/2)/(cosh(a/2) cosh(b/2)).

    The rewrite keeps full relative precision where both tanh saturate, which
    the downstream noise-to-signal identities need.
    """
    return math.sinh(0.5 * (p.b - p.a)) / (math.cosh(0.5 * p.a) * math.cosh(0.5 * p.b))


def mean_work(p: EffectivePoint) -> float:
    """<W> = (omega_B - omega_A)/2 * (tanh(b/2) - tanh(a/2)); negative = output."""
    return 0.5 * (p.omega_B - p.omega_A) * _tanh_half_diff(p)


def mean_heat_hot(p: EffectivePoint) -> float:
    """<Q_H> = omega_A/2 * (tanh(b/2) - tanh(a/2)); positive = out of the hot bath."""
    return 0.5 * p.omega_A * _tanh_half_diff(p)


def mean_heat_cold(p: EffectivePoint) -> float:
    """<Q_C> = omega_B/2 * (tanh(a/2) - tanh(b/2)) = -<W> - <Q_H> identically."""
    return -0.5 * p.omega_B * _tanh_half_diff(p)


def variance_work(p: EffectivePoint) -> float:
    """Var[W] = (omega_A-omega_B)^2 (2 + cosh a + cosh b) / (8 cosh^2(a/2) cosh^2(b/2))."""
    num = 2.0 + math.cosh(p.a) + math.cosh(p.b)
    den = 8.0 * math.cosh(0.5 * p.a) ** 2 * math.cosh(0.5 * p.b) ** 2
    return (p.omega_A - p.omega_B) ** 2 * num / den


def variance_heat_hot(p: EffectivePoint) -> float:
    """Var[Q_H] = omega_A^2/4 * (sech^2(a/2) + sech^2(b/2))."""
    sech2 = 1.0 / math.cosh(0.5 * p.a) ** 2 + 1.0 / math.cosh(0.5 * p.b) ** 2
    return 0.25 * p.omega_A ** 2 * sech2


def variance_heat_cold(p: EffectivePoint) -> float:
    """Var[Q_C]: per-cycle cold heat is -omega_B * (occupation swap), so the
    same sech structure scaled by omega_B^2."""
    sech2 = 1.0 / math.cosh(0.5 * p.a) ** 2 + 1.0 / math.cosh(0.5 * p.b) ** 2
    return 0.25 * p.omega_B ** 2 * sech2


def entropy_production(p: EffectivePoint) -> float:
    """<Sigma> = (beta_eff_B - beta_eff_A)<Q_H> + beta_eff_B <W>  >= 0.

    Algebraically (a - b)/2 * (tanh(a/2) - tanh(b/2)), which the implementation
    uses in its sinh/cosh form: x * sinh(x) >= 0 makes nonnegativity explicit.
    """
    x = 0.5 * (p.a - p.b)
    return x * math.sinh(x) / (math.cosh(0.5 * p.a) * math.cosh(0.5 * p.b))


def snr(p: EffectivePoint) -> float:
    """Noise-to-signal ratio Var[Q_H]/<Q_H>^2 (equal to Var[W]/<W>^2 off-degeneracy)."""
    if p.a == p.b:
        raise DegeneratePointError("currents vanish at a == b")
    qh = mean_heat_hot(p)
    return variance_heat_hot(p) / (qh * qh)


def classify_regime(p: EffectivePoint) -> OperatingRegime:
    """Refrigerator / engine / accelerator split, with idle boundaries.

    The frequency-ratio criterion omega_B/omega_A vs beta_eff_A/beta_eff_B is
    equivalent to comparing the products b vs a. Boundaries are idle within a
    relative half-width of 1e-12 (all currents vanish there).
    """
    scale = max(abs(p.a), abs(p.b))
    if abs(p.a - p.b) <= _BOUNDARY_RTOL * scale:
        return OperatingRegime.IDLE
    ratio = p.omega_B / p.omega_A
    if abs(ratio - 1.0) <= _BOUNDARY_RTOL:
        return OperatingRegime.IDLE
    if p.b < p.a:
        return OperatingRegime.REFRIGERATOR
    if ratio < 1.0:
        return OperatingRegime.ENGINE
    return OperatingRegime.ACCELERATOR


def cycle_statistics(p: EffectivePoint) -> CycleStatistics:
    """All first/second moments plus regime for one operating point."""
    regime = classify_regime(p)
    ratio = math.nan if p.a == p.b else snr(p)
    return CycleStatistics(
        mean_work=mean_work(p),
        mean_heat_hot=mean_heat_hot(p),
        mean_heat_cold=mean_heat_cold(p),
        var_work=variance_work(p),
        var_heat_hot=variance_heat_hot(p),
        entropy_production=entropy_production(p),
        snr=ratio,
        regime=regime,
    )


def tur_report(p: EffectivePoint, tol: Tolerance = DEFAULT_TOLERANCE) -> TurReport:
    """SNR against 2/Sigma, 2/Sigma - 1, and the inverse-x-tanh-x bound."""
    sigma = entropy_production(p)
    if sigma <= 0.0:
        raise DegeneratePointError("entropy production vanishes at this point")
    ratio = snr(p)
    return TurReport(
        snr=ratio,
        classical_rhs=2.0 / sigma,
        shifted_rhs=2.0 / sigma - 1.0,
        generalized_rhs=generalized_tur_rhs(sigma, tol),
        ratio_R=sigma * ratio,
    )


def _require(p: EffectivePoint, regime: OperatingRegime, what: str) -> None:
    actual = classify_regime(p)
    if actual is not regime:
        raise RegimeError(f"{what} is defined in the {regime.value} regime "
                          f"(operating point is {actual.value})")


def otto_efficiency(p: EffectivePoint) -> float:
    """eta = 1 - omega_B/omega_A = -<W>/<Q_H> at engine points."""
    _require(p, OperatingRegime.ENGINE, "otto_efficiency")
    return 1.0 - p.omega_B / p.omega_A


def carnot_efficiency_eff(p: EffectivePoint) -> float:
    """Carnot-form efficiency bound with effective temperatures:
    1 - T_eff_B/T_eff_A = 1 - beta_eff_A/beta_eff_B."""
    return 1.0 - p.beta_eff_A / p.beta_eff_B


def efficiency_power_tradeoff_rhs(p: EffectivePoint) -> float:
    """Efficiency ceiling at finite output power:

        eta <= eta_C_eff / (1 + 2 <P> T_eff_B / <P^2>)

    with <P> = -<W> and <P^2> the second moment Var[W] + <W>^2.
    """
    _require(p, OperatingRegime.ENGINE, "efficiency_power_tradeoff_rhs")
    w = mean_work(p)
    power = -w
    second_moment = variance_work(p) + w * w
    t_eff_b = 1.0 / p.beta_eff_B
    return carnot_efficiency_eff(p) / (1.0 + 2.0 * power * t_eff_b / second_moment)


def cop(p: EffectivePoint) -> float:
    """Coefficient of performance epsilon = omega_B / (omega_A - omega_B)."""
    _require(p, OperatingRegime.REFRIGERATOR, "cop")
    if p.omega_A == p.omega_B:
        raise DomainError("cop undefined at omega_A == omega_B")
    return p.omega_B / (p.omega_A - p.omega_B)


def cop_carnot_eff(p: EffectivePoint) -> float:
    """Carnot-form COP bound with effective temperatures:
    1/(T_eff_A/T_eff_B - 1) = beta_eff_A / (beta_eff_B - beta_eff_A).

    A bound (positive, second-law consequence) only under the physical
    ordering beta_eff_A < beta_eff_B; negative when motion inverts the
    effective temperatures.
    """
    if p.beta_eff_A == p.beta_eff_B:
        raise DomainError("COP bound diverges at equal effective temperatures")
    return p.beta_eff_A / (p.beta_eff_B - p.beta_eff_A)


def cop_tradeoff_rhs(p: EffectivePoint) -> float:
    """COP ceiling at finite cooling power:

        eps <= eps_C_eff / (1 + 2 T_eff_A eps_C_eff <Q_C> / <Q_C^2>)

    with <Q_C^2> the second moment Var[Q_C] + <Q_C>^2.
    """
    _require(p, OperatingRegime.REFRIGERATOR, "cop_tradeoff_rhs")
    qc = mean_heat_cold(p)
    second_moment = variance_heat_cold(p) + qc * qc
    eps_c = cop_carnot_eff(p)
    t_eff_a = 1.0 / p.beta_eff_A
    return eps_c / (1.0 + 2.0 * t_eff_a * eps_c * qc / second_moment)


def figure_of_merit(p: EffectivePoint) -> float:
    """chi = cop * <Q_C>: per-cycle refrigerator performance target."""
    _require(p, OperatingRegime.REFRIGERATOR, "figure_of_merit")
    return cop(p) * mean_heat_cold(p)


def figure_of_merit_high_t(omega_B: float, omega_A: float,
                           beta_eff_A: float, beta_eff_B: float) -> float:
    """chi with the cooling power linearized in the thermal products:

        chi = omega_B/(omega_A - omega_B) * omega_B/4
              * (beta_eff_A omega_A - beta_eff_B omega_B)

    This is the objective whose maximizer over omega_B has the closed form of
    `optimal_frequency_ratio_chi` (the COP factor is exact; only <Q_C> is
    expanded to leading order).
    """
    if omega_A == omega_B:
        raise DomainError("chi undefined at omega_A == omega_B")
    qc = 0.25 * omega_B * (beta_eff_A * omega_A - beta_eff_B * omega_B)
    return omega_B / (omega_A - omega_B) * qc


def optimal_frequency_ratio_chi(beta_eff_A: float, beta_eff_B: float) -> float:
    """Frequency ratio omega_B/omega_A maximizing the high-temperature chi:

        (beta_eff_A + 3 beta_eff_B - sqrt(disc)) / (4 beta_eff_B),
        disc = beta_eff_A^2 - 10 beta_eff_A beta_eff_B + 9 beta_eff_B^2

    Requires the refrigerator-feasible ordering beta_eff_A <= beta_eff_B, for
    which disc >= 0; the ratio then lies in (0, beta_eff_A/beta_eff_B].
    """
    for name, value in (("beta_eff_A", beta_eff_A), ("beta_eff_B", beta_eff_B)):
        if not (math.isfinite(value) and value > 0.0):
            raise DomainError(f"{name} must be positive and finite")
    disc = (beta_eff_A * beta_eff_A - 10.0 * beta_eff_A * beta_eff_B
            + 9.0 * beta_eff_B * beta_eff_B)
    if disc < 0.0:
        raise DomainError("no real optimum: need beta_eff_A <= beta_eff_B")
    return (beta_eff_A + 3.0 * beta_eff_B - math.sqrt(disc)) / (4.0 * beta_eff_B)


def cop_at_max_chi(eps_carnot_eff: float) -> float:
    """COP at the chi optimum: (sqrt(8 eps_C_eff + 9) - 3) / 2."""
    if not (math.isfinite(eps_carnot_eff) and eps_carnot_eff >= 0.0):
        raise DomainError("Carnot-form COP bound must be nonnegative")
    return 0.5 * (math.sqrt(8.0 * eps_carnot_eff + 9.0) - 3.0)


def optimize_figure_of_merit(beta_eff_A: float, beta_eff_B: float,
                             omega_A: float = 1.0,
                             tol: Tolerance = DEFAULT_TOLERANCE):
    """Golden-section maximization of the high-temperature chi over omega_B.

    Returns (omega_B_over_omega_A, chi_max); the bracket is the refrigerator
    window (0, omega_A * beta_eff_A/beta_eff_B), on which chi is unimodal.
    """
    hi = omega_A * beta_eff_A / beta_eff_B
    argmax, chi_max = maximize_scalar(
        lambda wb: figure_of_merit_high_t(wb, omega_A, beta_eff_A, beta_eff_B),
        0.0, hi, tol)
    return argmax / omega_A, chi_max
