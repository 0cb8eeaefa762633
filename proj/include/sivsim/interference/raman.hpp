#pragma once

#include <cmath>

#include "sivsim/core/constants.hpp"
#include "sivsim/core/errors.hpp"

namespace sivsim::interference {

// Raman drive between the metastable orbital states: excitation at detuning
// Delta from the |u> -> |e> leg produces a spontaneous line at nu_ec and a
// Raman line at nu_ec - Delta.
struct RamanConfig {
  double drive_detuning = 0.0;        // Delta, Hz (positive = red of the transition)
  double transition_frequency = 406.7e12;  // nu_ec, Hz
  double control_phase = 0.0;         // rad, contribution to the two-emitter phase
  double drive_rabi = 100e6;          // Hz

  static constexpr double tuning_bound = 10e9;  // +/- 10 GHz preset

  // true when the requested detuning exceeds the validated tuning range
  bool out_of_range() const { return std::abs(drive_detuning) > tuning_bound; }

  void validate() const {
    if (!(drive_rabi >= 0)) throw PhysicsError("RamanConfig: negative drive");
  }

  double raman_frequency() const { return transition_frequency - drive_detuning; }
};

struct SpectralLine {
  double frequency = 0.0;  // Hz
  double fwhm = 0.0;       // Hz
  double weight = 0.0;     // relative integrated intensity
};

struct RamanSpectrum {
  SpectralLine spontaneous;  // at nu_ec, emitter-linewidth wide
  SpectralLine raman;        // at nu_ec - Delta, control-field limited
  bool detuning_out_of_range = false;
};

// Two-component emission spectrum. The spontaneous line carries the full
// emitter linewidth; the Raman line is limited by the scattering rate of the
// off-resonant control field (power-broadened Lorentzian form), floored at
// `fourier_floor` and never wider than the emitter line. The split between
// the components is a branching parameter, not modeled microscopically.
inline RamanSpectrum raman_spectrum(const RamanConfig& config, double emitter_linewidth = 300e6,
                                    double raman_branching = 0.7, double fourier_floor = 1e6) {
  config.validate();
  if (!(emitter_linewidth > 0))
    throw PhysicsError("raman_spectrum: emitter linewidth must be positive");

  RamanSpectrum out;
  out.detuning_out_of_range = config.out_of_range();

  out.spontaneous.frequency = config.transition_frequency;
  out.spontaneous.fwhm = emitter_linewidth;
  out.spontaneous.weight = 1.0 - raman_branching;

  const double omega = config.drive_rabi;
  const double delta = config.drive_detuning;
  const double g = emitter_linewidth;
  double raman_width =
      g * (omega * omega / 2.0) / (delta * delta + g * g / 4.0 + omega * omega / 2.0);
  raman_width = std::clamp(raman_width, fourier_floor, g);

  out.raman.frequency = config.raman_frequency();
  out.raman.fwhm = raman_width;
  out.raman.weight = raman_branching;
  return out;
}

}  // namespace sivsim::interference
