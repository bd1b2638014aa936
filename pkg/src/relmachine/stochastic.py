"""Exact enumeration of one swap cycle's two-point-measurement outcomes.

The joint occupation (n_a, n_b) before the swap fixes the whole trajectory:
the swap exchanges the occupations deterministically, so there are exactly
four outcomes. This module is the independent oracle against which every
closed form in `machine` is checked.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .detector import excitation_probability
from .machine import EffectivePoint
from .numerics import DomainError

__all__ = [
    "Trajectory",
    "JointDistribution",
    "enumerate_distribution",
    "moments",
    "cgf_numeric",
    "cgf_analytic",
    "check_integral_ft",
    "check_exchange_ft",
]

# fixed outcome order: (n_a, n_b) lexicographic
_OUTCOMES = ((0, 0), (0, 1), (1, 0), (1, 1))


@dataclass(frozen=True)
class Trajectory:
    """One two-point-measurement outcome of a single cycle.

    With dn = n_b - n_a:
        work      = (omega_A - omega_B) * dn
        heat_hot  = -omega_A * dn
        entropy   = dn * (a - b)
    """

    n_a: int
    n_b: int
    probability: float
    work: float
    heat_hot: float
    entropy: float

    @property
    def heat_cold(self) -> float:
        """Cold heat closes the first law outcome by outcome."""
        return -self.work - self.heat_hot


@dataclass(frozen=True)
class JointDistribution:
    """The four-outcome joint distribution P(W, Q_H) at one operating point."""

    trajectories: tuple[Trajectory, ...]
    point: EffectivePoint


def enumerate_distribution(p: EffectivePoint) -> JointDistribution:
    """All four outcomes with product Gibbs weights."""
    pa = excitation_probability(p.beta_eff_A, p.omega_A)
    pb = excitation_probability(p.beta_eff_B, p.omega_B)
    weight_a = (1.0 - pa, pa)
    weight_b = (1.0 - pb, pb)
    trajectories = []
    for n_a, n_b in _OUTCOMES:
        dn = n_b - n_a
        trajectories.append(Trajectory(
            n_a=n_a,
            n_b=n_b,
            probability=weight_a[n_a] * weight_b[n_b],
            work=(p.omega_A - p.omega_B) * dn,
            heat_hot=-p.omega_A * dn,
            entropy=dn * (p.a - p.b),
        ))
    return JointDistribution(tuple(trajectories), p)


def moments(d: JointDistribution, m: int, n: int) -> float:
    """<W^m Q_H^n> as an exact probability-weighted sum (orders m + n <= 4)."""
    if m < 0 or n < 0:
        raise DomainError("moment orders must be nonnegative")
    if m + n > 4:
        raise DomainError("moment order above 4 is unsupported")
    return math.fsum(t.probability * t.work ** m * t.heat_hot ** n
                     for t in d.trajectories)


def cgf_numeric(d: JointDistribution, chi_w: complex, chi_h: complex) -> complex:
    """ln <exp(i chi_w W + i chi_h Q_H)> summed over the four outcomes."""
    total = sum(t.probability * cmath.exp(1j * (chi_w * t.work + chi_h * t.heat_hot))
                for t in d.trajectories)
    if total == 0:
        raise DomainError("characteristic function vanishes, logarithm singular")
    return cmath.log(total)


def cgf_analytic(p: EffectivePoint, chi_w: complex, chi_h: complex) -> complex:
    """Closed cosh-ratio form of the cumulant generating function.

    With psi = omega_A (chi_w - chi_h) - omega_B chi_w:

        C = ln[ cosh((a + i psi)/2) cosh((b - i psi)/2)
              / (cosh(a/2) cosh(b/2)) ]

    Satisfies C(0, 0) = 0, the entropy identity
    C(i beta_eff_B, i(beta_eff_B - beta_eff_A)) = 0, and the exchange symmetry
    C(i beta_eff_B - chi_w, i(beta_eff_B - beta_eff_A) - chi_h) = C(chi_w, chi_h).
    """
    psi = p.omega_A * (chi_w - chi_h) - p.omega_B * chi_w
    num = (cmath.cosh(0.5 * (p.a + 1j * psi))
           * cmath.cosh(0.5 * (p.b - 1j * psi)))
    den = math.cosh(0.5 * p.a) * math.cosh(0.5 * p.b)
    ratio = num / den
    if ratio == 0:
        raise DomainError("cosh zero hit, logarithm singular")
    return cmath.log(ratio)


def check_integral_ft(d: JointDistribution) -> float:
    """<e^{-sigma}>; equals 1 identically (integral fluctuation theorem)."""
    return math.fsum(t.probability * math.exp(-t.entropy) for t in d.trajectories)


def check_exchange_ft(d: JointDistribution) -> list[tuple[float, float, float]]:
    """(forward, reverse, entropy) per outcome; forward/reverse = e^entropy.

    The reverse of an outcome is its occupation-swapped partner (dn negated);
    the two zero-current outcomes are their own reverses with zero entropy.
    """
    by_occupation = {(t.n_a, t.n_b): t.probability for t in d.trajectories}
    return [(t.probability, by_occupation[(t.n_b, t.n_a)], t.entropy)
            for t in d.trajectories]
