#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "sivsim/interference/hom.hpp"
#include "sivsim/interference/raman.hpp"
#include "sivsim/interference/sources.hpp"

namespace sivsim::interference {

// Two Raman-driven emitters radiating into one waveguide mode behind a
// polarizer. When tuned, the Raman lines are resonant and emission is
// collective; untuned, the residual detuning beat distinguishes them.
struct TwoEmitterWaveguide {
  std::array<SinglePhotonSource, 2> sources;
  std::array<RamanConfig, 2> raman;
  double relative_phase = 0.0;  // propagation + control phase mismatch, rad
  bool tuned = false;

  double effective_frequency(int i) const { return raman.at(i).raman_frequency(); }

  void validate() const {
    for (const auto& s : sources) s.validate();
    for (const auto& r : raman) r.validate();
    if (tuned) {
      const double df = std::abs(effective_frequency(0) - effective_frequency(1));
      const double lw = std::min(sources[0].linewidth, sources[1].linewidth);
      if (df > 1e-6 * lw)
        throw PhysicsError("TwoEmitterWaveguide: tuned flag set but Raman lines differ");
    }
  }
};

// Emission-rate enhancement of the shared-excitation superposition state
// relative to the mean single-emitter rate, for waveguide coupling
// amplitudes (c1, c2) and phase mismatch dphi between the state and the
// collection mode:
//   R = |c1 + c2 e^{i dphi}|^2 / (c1^2 + c2^2),
// which is 2 for symmetric couplings at the matched phase, 1 when either
// coupling vanishes, and degrades continuously in between.
inline double superradiant_rate(double c1, double c2, double phase_mismatch = 0.0) {
  if (c1 < 0 || c2 < 0) throw PhysicsError("superradiant_rate: amplitudes must be >= 0");
  const double denom = c1 * c1 + c2 * c2;
  if (denom == 0) throw PhysicsError("superradiant_rate: both couplings vanish");
  const std::complex<double> sum = c1 + c2 * std::exp(std::complex<double>(0.0, phase_mismatch));
  return std::norm(sum) / denom;
}

inline double superradiant_rate(const TwoEmitterWaveguide& system) {
  system.validate();
  if (!system.tuned)
    throw PhysicsError("superradiant_rate: collective emission requires tuned Raman lines");
  const double c1 = std::sqrt(system.sources[0].emission_rate);
  const double c2 = std::sqrt(system.sources[1].emission_rate);
  return superradiant_rate(c1, c2, system.relative_phase);
}

// Single-mode intensity autocorrelation of the summed field:
//   g2(tau) = 1 + p1^2 (g11-1) + p2^2 (g22-1) + 2 p1 p2 V beta(tau),
// the interference term now entering with a plus sign (one detector, one
// spatial mode): for tuned lines it doubles the zero-delay cross term, the
// collective-emission peak; for untuned lines it oscillates at the beat and
// is washed out by detector jitter.
struct WaveguideModel {
  double p1 = 0.5, p2 = 0.5, p_b = 0.0;
  double beat_hz = 0.0;
  double coh_rate = 0.0;
  double refill1 = 0.0, refill2 = 0.0;
  DetectorModel detector;

  double ideal_deviation(double tau) const {
    const double at = std::abs(tau);
    const double self = p1 * p1 * (-std::exp(-refill1 * at)) + p2 * p2 * (-std::exp(-refill2 * at));
    const double beta = std::cos(two_pi * beat_hz * tau) * std::exp(-coh_rate * at);
    return self + 2.0 * p1 * p2 * beta;
  }

  double operator()(double tau) const {
    auto dev = [this](double t) { return ideal_deviation(t); };
    auto smeared = [&](double t) {
      return gaussian_smear(dev, detector.timing_jitter_sigma, t);
    };
    return 1.0 + bin_average(smeared, detector.coincidence_bin, tau);
  }
};

inline WaveguideModel make_waveguide_model(const TwoEmitterWaveguide& system,
                                           const DetectorModel& detector) {
  system.validate();
  detector.validate();
  const auto& s1 = system.sources[0];
  const auto& s2 = system.sources[1];
  const double r1 = s1.emission_rate, r2 = s2.emission_rate;
  const double total = r1 + r2 + detector.dark_rate;
  WaveguideModel m;
  m.p1 = r1 * (1.0 - s1.background_fraction) / total;
  m.p2 = r2 * (1.0 - s2.background_fraction) / total;
  m.p_b = 1.0 - m.p1 - m.p2;
  m.beat_hz = system.tuned ? 0.0
                           : system.effective_frequency(0) - system.effective_frequency(1);
  m.coh_rate = s1.coherence_rate() + s2.coherence_rate();
  m.refill1 = 1.0 / s1.lifetime;
  m.refill2 = 1.0 / s2.lifetime;
  m.detector = detector;
  return m;
}

inline G2Result waveguide_g2(const TwoEmitterWaveguide& system, const DetectorModel& detector,
                             const std::vector<double>& tau) {
  const WaveguideModel m = make_waveguide_model(system, detector);
  G2Result out;
  out.tau = tau;
  out.g2.reserve(tau.size());
  for (double t : tau) out.g2.push_back(m(t));
  out.zero_delay = m(0.0);
  out.signal_fraction = m.p1 + m.p2;
  return out;
}

// Autocorrelation of one emitter alone in the waveguide, with background.
inline G2Result waveguide_g2_single(const SinglePhotonSource& source,
                                    const DetectorModel& detector,
                                    const std::vector<double>& tau) {
  source.validate();
  detector.validate();
  const double p = source.emission_rate * (1.0 - source.background_fraction) /
                   (source.emission_rate + detector.dark_rate);
  auto dev = [&](double t) { return -p * p * std::exp(-std::abs(t) / source.lifetime); };
  auto smeared = [&](double t) { return gaussian_smear(dev, detector.timing_jitter_sigma, t); };
  G2Result out;
  out.tau = tau;
  out.g2.reserve(tau.size());
  for (double t : tau)
    out.g2.push_back(1.0 + bin_average(smeared, detector.coincidence_bin, t));
  out.zero_delay = 1.0 + bin_average(smeared, detector.coincidence_bin, 0.0);
  out.signal_fraction = p;
  return out;
}

// Background fraction that reproduces a measured single-emitter zero-delay
// value for the given detector jitter and source refill time.
inline double calibrate_waveguide_background(const SinglePhotonSource& source,
                                             const DetectorModel& detector,
                                             double target_single_zero) {
  auto self = [&](double t) { return std::exp(-std::abs(t) / source.lifetime); };
  const double smeared_dip = gaussian_smear(self, detector.timing_jitter_sigma, 0.0);
  if (!(smeared_dip > 0))
    throw PhysicsError("calibrate_waveguide_background: degenerate antibunching dip");
  const double p_sq = (1.0 - target_single_zero) / smeared_dip;
  if (p_sq <= 0 || p_sq > 1.0)
    throw PhysicsError(
        "calibrate_waveguide_background: target not reachable with this jitter and lifetime");
  return 1.0 - std::sqrt(p_sq);
}

}  // namespace sivsim::interference
