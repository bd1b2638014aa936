"""Single moving two-level detector coupled to a thermal scalar-field bath.

A detector crossing the bath at constant speed v sees Doppler-shifted field
modes; its up/down transition rates satisfy detailed balance at a gap-dependent
effective temperature rather than at the bath temperature. Natural units
throughout (hbar = c = k_B = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .numerics import DomainError, log1mexp, log_ratio_one_minus_exp

__all__ = [
    "BathSpec",
    "DetectorSpec",
    "SteadyState",
    "transition_rate",
    "effective_inverse_temperature",
    "effective_temperature_high_T",
    "excitation_probability",
    "steady_state",
]

# below this speed the Doppler bracket is evaluated by its small-velocity
# expansion (through (u*v)^2); relative error stays under ~1e-13 for the
# physical range of beta*omega
_V_SERIES_CUTOFF = 1e-5
# beta*gamma*(1-v)*omega beyond which the redshifted Bose factor underflows
# and the asymptotic log form takes over
_X_ASYMPTOTIC = 500.0


@dataclass(frozen=True)
class BathSpec:
    """Thermal field bath at rest; `temperature` in energy units."""

    temperature: float

    def __post_init__(self):
        if not (math.isfinite(self.temperature) and self.temperature > 0.0):
            raise DomainError("bath temperature must be positive and finite")

    @property
    def inverse_temperature(self) -> float:
        return 1.0 / self.temperature


@dataclass(frozen=True)
class DetectorSpec:
    """Two-level detector: energy gap, constant speed v in [0, 1), coupling."""

    gap: float
    speed: float = 0.0
    coupling: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.gap) and self.gap > 0.0):
            raise DomainError("detector gap must be positive and finite")
        if not (0.0 <= self.speed < 1.0):
            raise DomainError("detector speed must lie in [0, 1)")
        if self.coupling == 0.0 or not math.isfinite(self.coupling):
            raise DomainError("coupling must be nonzero and finite")

    @property
    def lorentz_factor(self) -> float:
        return 1.0 / math.sqrt((1.0 - self.speed) * (1.0 + self.speed))


@dataclass(frozen=True)
class SteadyState:
    """Late-time reduced state of the detector: Gibbs form at beta_eff."""

    effective_inverse_temperature: float
    excitation_probability: float


def _bose(u: float) -> float:
    """1/(e^u - 1), with the correct +-0 overflow limits."""
    try:
        return 1.0 / math.expm1(u)
    except OverflowError:
        return 0.0


def transition_rate(d: DetectorSpec, b: BathSpec, omega: float) -> float:
    """Transition rate at frequency omega (omega > 0: excitation).

    Moving detector through a thermal bath:

        G(omega) = lambda^2/(4 pi beta gamma v)
                   * ln[(1 - e^{-beta gamma (1+v) omega})
                      / (1 - e^{-beta gamma (1-v) omega})]

    At v = 0 this reduces to lambda^2 * omega / (2 pi (e^{beta omega} - 1));
    as v -> 1 the rate vanishes and the bath looks like vacuum.
    """
    if omega == 0.0 or not math.isfinite(omega):
        raise DomainError("transition frequency must be nonzero and finite")
    beta = b.inverse_temperature
    gamma = d.lorentz_factor
    v = d.speed
    lam2 = d.coupling * d.coupling
    if v < _V_SERIES_CUTOFF:
        u = beta * gamma * omega
        n = _bose(u)
        corr = (u * v) ** 2 * n * (1.0 + n) * (1.0 + 2.0 * n) / 6.0
        return lam2 * omega / (2.0 * math.pi) * (n + corr)
    xp = beta * gamma * (1.0 + v) * omega
    xm = beta * gamma * (1.0 - v) * omega
    bracket = log_ratio_one_minus_exp(xp, xm)
    return lam2 / (4.0 * math.pi * beta * gamma * v) * bracket


def effective_inverse_temperature(d: DetectorSpec, b: BathSpec) -> float:
    """beta_eff at the detector gap, from the detailed-balance rate ratio.

    Uses ln(G(-w)/G(w)) = log1p(Delta/L) with Delta = 2 beta gamma v w and
    L the Doppler log bracket of the downhill rate; the couplings cancel and
    no small rate is ever formed explicitly.
    """
    omega = d.gap
    beta = b.inverse_temperature
    v = d.speed
    if v == 0.0:
        return beta
    gamma = d.lorentz_factor
    if v < _V_SERIES_CUTOFF:
        u = beta * gamma * omega
        if u > _X_ASYMPTOTIC:
            return u / omega
        n = _bose(u)
        t = n + (u * v) ** 2 * n * (1.0 + n) * (1.0 + 2.0 * n) / 6.0
        return math.log1p(1.0 / t) / omega
    xm = beta * gamma * (1.0 - v) * omega
    delta = 2.0 * beta * gamma * v * omega
    if xm > _X_ASYMPTOTIC:
        return (math.log(delta) + xm - log1mexp(delta)) / omega
    bracket = log_ratio_one_minus_exp(xm + delta, xm)
    return math.log1p(delta / bracket) / omega


def effective_temperature_high_T(b: BathSpec, speed: float) -> float:
    """Leading high-temperature effective temperature of a moving detector.

        T_eff = T * ln((1+v)/(1-v)) / (2 gamma v)

    Strictly below T for 0 < v < 1, approaching T as v -> 0.
    """
    if not (0.0 < speed < 1.0):
        raise DomainError("speed must lie in (0, 1); the v -> 0 limit is T itself")
    gamma = 1.0 / math.sqrt((1.0 - speed) * (1.0 + speed))
    rapidity = math.log1p(speed) - math.log1p(-speed)
    return b.temperature * rapidity / (2.0 * gamma * speed)


def excitation_probability(beta_eff: float, omega: float) -> float:
    """Excited-state population of the Gibbs state: 1/(1 + e^{beta_eff*omega})."""
    if not (math.isfinite(omega) and omega > 0.0):
        raise DomainError("gap must be positive and finite")
    if not math.isfinite(beta_eff):
        raise DomainError("beta_eff must be finite")
    x = beta_eff * omega
    if x >= 0.0:
        e = math.exp(-x)
        return e / (1.0 + e)
    return 1.0 / (1.0 + math.exp(x))


def steady_state(d: DetectorSpec, b: BathSpec) -> SteadyState:
    """Late-time steady state of the detector in the given bath."""
    beta_eff = effective_inverse_temperature(d, b)
    return SteadyState(beta_eff, excitation_probability(beta_eff, d.gap))
