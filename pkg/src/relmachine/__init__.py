"""Two-qubit swap thermal machine with moving detectors.

Exact per-cycle work/heat statistics, fluctuation-theorem checks, noise
bounds, and engine/refrigerator performance limits, with a CLI for sweeps
and machine-readable reports.
"""

from .numerics import (ConvergenceError, DomainError, Tolerance,
                       generalized_tur_rhs, inverse_x_tanh_x,
                       log_ratio_one_minus_exp, maximize_scalar, x_coth_half_x)
from .detector import (BathSpec, DetectorSpec, SteadyState,
                       effective_inverse_temperature,
                       effective_temperature_high_T, excitation_probability,
                       steady_state, transition_rate)
from .machine import (CycleStatistics, DegeneratePointError, EffectivePoint,
                      MachineConfig, OperatingRegime, RegimeError, TurReport,
                      carnot_efficiency_eff, classify_regime, cop,
                      cop_at_max_chi, cop_carnot_eff, cop_tradeoff_rhs,
                      cycle_statistics, efficiency_power_tradeoff_rhs,
                      entropy_production, figure_of_merit,
                      figure_of_merit_high_t, make_point, make_point_high_t,
                      mean_heat_cold, mean_heat_hot, mean_work,
                      optimal_frequency_ratio_chi, optimize_figure_of_merit,
                      otto_efficiency, snr, tur_report, variance_heat_cold,
                      variance_heat_hot, variance_work)
from .stochastic import (JointDistribution, Trajectory, cgf_analytic,
                         cgf_numeric, check_exchange_ft, check_integral_ft,
                         enumerate_distribution, moments)

__version__ = "0.1.0"
