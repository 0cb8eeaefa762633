#pragma once

#include <cmath>
#include <vector>

#include "sivsim/core/constants.hpp"
#include "sivsim/core/integrate.hpp"
#include "sivsim/siv/levels.hpp"

namespace sivsim::siv {

// Acoustic-phonon bath: the single proportionality constant chi*rho (s^2)
// enters the one-phonon rate prefactor 2*pi * chi*rho * Delta^3 with Delta
// in rad/s. chi and rho are never needed separately.
struct PhononBathParams {
  double coupling_density_product = 0.0;  // chi*rho, s^2
  double temperature = 0.0;               // K

  void validate() const {
    if (coupling_density_product < 0 || temperature < 0)
      throw PhysicsError("PhononBathParams: negative coupling or temperature");
  }
};

// Upward / downward orbital relaxation rates (plain 1/s).
struct TransitionRates {
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;

  double total() const { return gamma_plus + gamma_minus; }
  void validate() const {
    if (gamma_plus < 0 || gamma_minus < gamma_plus)
      throw PhysicsError("TransitionRates: require gamma_minus >= gamma_plus >= 0");
  }
};

// Thermal occupation n(delta, T) of a mode at ordinary frequency delta (Hz).
// Returns 0 at T = 0.
inline double bose_occupation(double delta_hz, double temperature) {
  if (!(delta_hz > 0)) throw PhysicsError("bose_occupation: delta must be positive");
  if (temperature < 0) throw PhysicsError("bose_occupation: negative temperature");
  if (temperature == 0) return 0.0;
  const double x = constants::planck_over_kb * delta_hz / temperature;
  if (x > 700) return 0.0;
  return 1.0 / std::expm1(x);
}

// One-phonon rates: gamma+ = 2*pi*chi*rho*Delta^3 * n, gamma- = ... * (n+1).
// Detailed balance gamma+/gamma- = exp(-h Delta / kB T) holds exactly.
inline TransitionRates phonon_rates(const SiVLevelParams& level, const PhononBathParams& bath) {
  level.validate();
  bath.validate();
  const double delta_ang = angular(level.delta_gs);
  const double prefactor =
      two_pi * bath.coupling_density_product * delta_ang * delta_ang * delta_ang;
  const double n = bose_occupation(level.delta_gs, bath.temperature);
  return TransitionRates{prefactor * n, prefactor * (n + 1.0)};
}

// chi*rho such that gamma+ + gamma- equals `target_total_rate` (1/s) at the
// given operating point.
inline double calibrate_coupling_density(double delta_gs_hz, double temperature,
                                         double target_total_rate) {
  const double delta_ang = angular(delta_gs_hz);
  const double n = bose_occupation(delta_gs_hz, temperature);
  return target_total_rate / (two_pi * delta_ang * delta_ang * delta_ang * (2.0 * n + 1.0));
}

// High-temperature limit: gamma ~ (2*pi/hbar) * chi*rho * Delta^2 * kB * T,
// i.e. the one-phonon rate with n replaced by its Rayleigh-Jeans value.
// Valid for T > h*Delta/kB; `regime_warning` is set when called outside.
inline double linear_rate_approx(const SiVLevelParams& level, const PhononBathParams& bath,
                                 bool* regime_warning = nullptr) {
  level.validate();
  bath.validate();
  const double t_crossover = constants::planck_over_kb * level.delta_gs;
  if (regime_warning) *regime_warning = bath.temperature <= t_crossover;
  const double delta_ang = angular(level.delta_gs);
  return (two_pi / constants::hbar) * bath.coupling_density_product * delta_ang * delta_ang *
         constants::boltzmann * bath.temperature;
}

// Upper- to lower-branch population ratio at thermal equilibrium,
// I_D / I_C = exp(-h Delta / kB T).
inline double thermal_line_ratio(double delta_hz, double temperature) {
  if (!(delta_hz > 0)) throw PhysicsError("thermal_line_ratio: delta must be positive");
  if (temperature < 0) throw PhysicsError("thermal_line_ratio: negative temperature");
  if (temperature == 0) return 0.0;
  const double x = constants::planck_over_kb * delta_hz / temperature;
  return std::exp(-x);
}

// Empirical fit used as a named preset alongside the first-principles rate:
// 1/gamma+ = 200 * (exp(2.4 K / T) - 1) ns.
inline double empirical_upward_relaxation_time(double temperature) {
  if (!(temperature > 0))
    throw PhysicsError("empirical_upward_relaxation_time: temperature must be positive");
  return 200e-9 * std::expm1(2.4 / temperature);
}
inline double empirical_gamma_plus(double temperature) {
  return 1.0 / empirical_upward_relaxation_time(temperature);
}

enum class Branch { LB, UB };

struct BranchPopulations {
  std::vector<double> time;       // s
  std::vector<double> lower;      // population of LB
  std::vector<double> upper;      // population of UB
};

// Closed-form two-level rate-equation solution. Relaxes toward the thermal
// ratio at total rate gamma+ + gamma-; total population is conserved exactly.
inline BranchPopulations orbital_relaxation_trajectory(const TransitionRates& rates,
                                                       Branch initial, const TimeGrid& grid) {
  rates.validate();
  const double total = rates.total();
  const double p_upper_eq = total > 0 ? rates.gamma_plus / total : (initial == Branch::UB ? 1.0 : 0.0);
  const double p0 = initial == Branch::UB ? 1.0 : 0.0;

  BranchPopulations out;
  out.time = grid.points();
  out.lower.resize(out.time.size());
  out.upper.resize(out.time.size());
  for (size_t i = 0; i < out.time.size(); ++i) {
    const double decay = total > 0 ? std::exp(-total * out.time[i]) : 1.0;
    const double p_up = p_upper_eq + (p0 - p_upper_eq) * decay;
    out.upper[i] = p_up;
    out.lower[i] = 1.0 - p_up;
  }
  return out;
}

}  // namespace sivsim::siv
