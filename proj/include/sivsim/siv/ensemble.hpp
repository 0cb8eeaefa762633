#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "sivsim/core/constants.hpp"
#include "sivsim/core/errors.hpp"

namespace sivsim::siv {

// Optical parameters of one emitter. All linewidths are FWHM in ordinary
// frequency (Hz); gamma_rad + gamma_dephasing is the total transition width.
struct EmitterOpticalParams {
  double zpl_frequency = 406.7001e12;  // Hz
  double lifetime = 1.73e-9;           // s
  double gamma_rad = 94e6;             // Hz, transform-limited part
  double gamma_dephasing = 0.0;        // Hz, pure-dephasing contribution
  double zpl_branching = 0.7;          // fraction emitted into the ZPL
  double inhomogeneous_width = 1e9;    // Hz, FWHM of the ensemble distribution

  double total_linewidth() const { return gamma_rad + gamma_dephasing; }

  void validate() const {
    if (!(lifetime > 0)) throw PhysicsError("EmitterOpticalParams: lifetime must be positive");
    if (gamma_rad < 0 || gamma_dephasing < 0 || inhomogeneous_width < 0)
      throw PhysicsError("EmitterOpticalParams: negative linewidth");
    if (zpl_branching < 0 || zpl_branching > 1)
      throw PhysicsError("EmitterOpticalParams: zpl_branching must be in [0,1]");
    // transform-limit consistency: total width can't beat 1/(2*pi*T1)
    const double limit = 1.0 / (two_pi * lifetime);
    if (total_linewidth() < limit * (1.0 - 1e-9))
      throw PhysicsError("EmitterOpticalParams: linewidth below the transform limit");
  }
};

namespace detail {

// Deterministic standard-normal draw; Box-Muller on raw 53-bit uniforms so
// results do not depend on the standard library's distribution internals.
inline double standard_normal(std::mt19937_64& rng) {
  const double u1 = ((rng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
  const double u2 = (rng() >> 11) * 0x1.0p-53;          // [0, 1)
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace detail

// n ZPL frequencies drawn from a Gaussian of FWHM = inhomogeneous_width
// centered on zpl_frequency. Strain broadening is a sum of many small
// shifts, hence Gaussian rather than Lorentzian.
inline std::vector<double> sample_inhomogeneous_ensemble(const EmitterOpticalParams& params,
                                                         int n, std::uint64_t seed) {
  params.validate();
  if (n < 1) throw PhysicsError("sample_inhomogeneous_ensemble: need n >= 1");
  const double sigma = params.inhomogeneous_width / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  std::mt19937_64 rng(seed);
  std::vector<double> freqs(static_cast<size_t>(n));
  for (auto& f : freqs) f = params.zpl_frequency + sigma * detail::standard_normal(rng);
  return freqs;
}

}  // namespace sivsim::siv
