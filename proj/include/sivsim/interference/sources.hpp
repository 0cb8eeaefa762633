#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "sivsim/core/constants.hpp"
#include "sivsim/core/errors.hpp"

namespace sivsim::interference {

// Stationary (CW-excited) single-photon source described by its measured
// optical properties. linewidth is the Lorentzian FWHM in Hz.
struct SinglePhotonSource {
  double frequency = 406.7e12;      // Hz
  double linewidth = 135e6;         // Hz, FWHM
  double lifetime = 1.73e-9;        // s
  double polarization_angle = 0.0;  // rad
  double emission_rate = 1.0e5;     // detected counts/s
  double background_fraction = 0.0; // in [0, 1)

  void validate() const {
    if (!(lifetime > 0)) throw PhysicsError("SinglePhotonSource: lifetime must be positive");
    const double limit = 1.0 / (two_pi * lifetime);
    if (linewidth < limit * (1.0 - 1e-9))
      throw PhysicsError("SinglePhotonSource: linewidth below the transform limit");
    if (background_fraction < 0 || background_fraction >= 1)
      throw PhysicsError("SinglePhotonSource: background fraction must be in [0,1)");
    if (!(emission_rate > 0))
      throw PhysicsError("SinglePhotonSource: emission rate must be positive");
  }

  // amplitude decay rate of the first-order coherence, |g1(tau)| = e^{-rate |tau|}
  double coherence_rate() const { return pi * linewidth; }
  // autocorrelation of one CW single-photon source: re-excitation on the
  // lifetime scale after each emission
  double antibunching_g2(double tau) const { return 1.0 - std::exp(-std::abs(tau) / lifetime); }
};

struct DetectorModel {
  double timing_jitter_sigma = 0.0;  // s, Gaussian smearing of the coincidence delay
  double dark_rate = 0.0;            // counts/s per detector
  double coincidence_bin = 0.0;      // s (0 = treat curves as continuous)

  void validate() const {
    if (timing_jitter_sigma < 0 || dark_rate < 0 || coincidence_bin < 0)
      throw PhysicsError("DetectorModel: negative detector parameter");
  }
};

// Gaussian smearing of an even correlation deviation: returns
// integral f(tau - u) N(u; sigma) du, evaluated by dense trapezoid over
// +/- 6 sigma. f must decay to zero away from tau = 0.
inline double gaussian_smear(const std::function<double(double)>& f, double sigma, double tau) {
  if (sigma <= 0) return f(tau);
  const int n = 240;
  const double span = 6.0 * sigma;
  const double du = 2.0 * span / n;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double u = -span + i * du;
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    acc += w * std::exp(-u * u / (2.0 * sigma * sigma)) * f(tau - u);
  }
  return acc * du / (sigma * std::sqrt(two_pi));
}

// Average over the coincidence bin (boxcar of width `bin` centered on tau).
inline double bin_average(const std::function<double(double)>& f, double bin, double tau) {
  if (bin <= 0) return f(tau);
  const int n = 8;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double u = tau - bin / 2.0 + bin * i / n;
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    acc += w * f(u);
  }
  return acc / n;
}

}  // namespace sivsim::interference
