import numpy as np
import pytest

from relmachine import EffectivePoint

# the worked engine point used throughout: a = 0.5, b = 1.0
WORKED = EffectivePoint(omega_A=1.0, omega_B=0.5, beta_eff_A=0.5, beta_eff_B=2.0)

# refrigerator companion: b = 0.4 < a = 0.5
FRIDGE = EffectivePoint(omega_A=1.0, omega_B=0.2, beta_eff_A=0.5, beta_eff_B=2.0)


def random_points(count, seed=20260808, a_hi=20.0, ratio_hi=2.0):
    """Seeded random operating points: a, b in (0, a_hi], ratio in (0, ratio_hi]."""
    rng = np.random.default_rng(seed)
    a = rng.uniform(1e-3, a_hi, count)
    b = rng.uniform(1e-3, a_hi, count)
    ratio = rng.uniform(0.02, ratio_hi, count)
    return [EffectivePoint(1.0, float(r), float(x), float(y / r))
            for x, y, r in zip(a, b, ratio)]


@pytest.fixture(scope="session")
def grid_points():
    return random_points(1000)
