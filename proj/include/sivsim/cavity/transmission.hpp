#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "sivsim/cavity/system.hpp"

namespace sivsim::cavity {

struct SpectrumPoint {
  double frequency = 0.0;     // Hz, absolute probe frequency
  double transmission = 0.0;  // relative to the bare-cavity peak, in [0,1]
};

// Linear-response transmission relative to the bare-cavity peak. Each
// unsaturated emitter contributes its susceptibility to the cavity
// denominator:
//   t(w) = (kappa/2) / ( i(wc - w) + kappa/2 + sum_i g_i^2 / (i(wi - w) + G2_i) )
// with G2_i the emitter coherence half-width. On double resonance with one
// emitter this gives the familiar 1/(1+C) field suppression.
inline double linear_transmission(const CoupledSystem& system, double probe_hz) {
  const double kappa_ang = angular(system.cavity.kappa);
  Complex denom(kappa_ang / 2.0, angular(system.cavity.resonance - probe_hz));
  for (const auto& e : system.emitters) {
    const double g_ang = angular(e.g);
    const Complex emitter_pole(pi * e.optical.total_linewidth(),
                               angular(e.optical.zpl_frequency - probe_hz));
    denom += g_ang * g_ang / emitter_pole;
  }
  const Complex t = (kappa_ang / 2.0) / denom;
  return std::norm(t);
}

// Full nonlinear transmission at one probe frequency. The spectroscopic
// observable is the coherent transmitted amplitude |<a>|^2, normalized by
// the bare-cavity on-resonance value; the emitter's incoherent emission into
// the cavity mode belongs to the scattered field, not the probe beam.
inline double full_transmission(const CoupledSystem& system, double probe_hz,
                                double drive_amplitude_hz, int* n_fock_used = nullptr) {
  DriveParams drive{probe_hz, drive_amplitude_hz};
  const auto sol = solve_steady(system, drive);
  if (n_fock_used) *n_fock_used = sol.n_fock;
  const double eps = angular(drive_amplitude_hz);
  const double kappa_ang = angular(system.cavity.kappa);
  const double n_bare_peak = (eps * eps) / (kappa_ang * kappa_ang / 4.0);
  return std::norm(sol.field_amplitude) / n_bare_peak;
}

// Probe sweep. The weak_drive path is linear response; otherwise each point
// is a full steady-state solve at the given drive amplitude.
inline std::vector<SpectrumPoint> transmission_spectrum(const CoupledSystem& system,
                                                        const std::vector<double>& probe_hz,
                                                        bool weak_drive,
                                                        double drive_amplitude_hz = 0.0) {
  system.validate();
  std::vector<SpectrumPoint> out;
  out.reserve(probe_hz.size());
  for (double f : probe_hz) {
    const double t = weak_drive ? linear_transmission(system, f)
                                : full_transmission(system, f, drive_amplitude_hz);
    out.push_back({f, t});
  }
  return out;
}

// On-resonance extinction with a mode-matching/background efficiency scalar:
//   dT/T = efficiency * (1 - 1/(1+C)^2).
inline double extinction(const CoupledSystem& system, double fit_efficiency) {
  if (fit_efficiency < 0 || fit_efficiency > 1)
    throw PhysicsError("extinction: efficiency must lie in [0,1]");
  const double c = cooperativity(system);
  const double ideal = 1.0 - 1.0 / ((1.0 + c) * (1.0 + c));
  return fit_efficiency * ideal;
}

// Efficiency that reproduces a measured extinction; reported, never hidden.
inline double fit_extinction_efficiency(const CoupledSystem& system, double target_extinction) {
  const double c = cooperativity(system);
  const double ideal = 1.0 - 1.0 / ((1.0 + c) * (1.0 + c));
  if (!(ideal > 0)) throw PhysicsError("fit_extinction_efficiency: no emitter response");
  return target_extinction / ideal;
}

struct DipShape {
  double center = 0.0;  // Hz
  double depth = 0.0;   // transmission units, relative to the local baseline
  double fwhm = 0.0;    // Hz
};

// Local minima of a sampled spectrum with interpolated half-depth widths.
inline std::vector<DipShape> find_dips(const std::vector<SpectrumPoint>& spectrum) {
  std::vector<DipShape> dips;
  for (size_t i = 1; i + 1 < spectrum.size(); ++i) {
    if (spectrum[i].transmission < spectrum[i - 1].transmission &&
        spectrum[i].transmission <= spectrum[i + 1].transmission) {
      DipShape dip;
      dip.center = spectrum[i].frequency;
      // baseline: the larger shoulder on each side
      size_t lo = i, hi = i;
      while (lo > 0 && spectrum[lo - 1].transmission > spectrum[lo].transmission) --lo;
      while (hi + 1 < spectrum.size() &&
             spectrum[hi + 1].transmission > spectrum[hi].transmission)
        ++hi;
      const double baseline = 0.5 * (spectrum[lo].transmission + spectrum[hi].transmission);
      dip.depth = baseline - spectrum[i].transmission;
      const double half = spectrum[i].transmission + dip.depth / 2.0;
      auto cross = [&](size_t from, int step) -> double {
        size_t j = from;
        while (j + step >= 0 && j + step < spectrum.size()) {
          const size_t k = j + step;
          if (spectrum[k].transmission >= half) {
            const double t0 = spectrum[j].transmission, t1 = spectrum[k].transmission;
            const double f0 = spectrum[j].frequency, f1 = spectrum[k].frequency;
            return f0 + (half - t0) / (t1 - t0) * (f1 - f0);
          }
          j = k;
        }
        return spectrum[j].frequency;
      };
      dip.fwhm = std::abs(cross(i, +1) - cross(i, -1));
      dips.push_back(dip);
    }
  }
  return dips;
}

struct SaturationPoint {
  double amplitude = 0.0;          // Hz, drive field strength
  double on_resonance = 0.0;       // transmission at the emitter frequency
  double dip_depth = 0.0;          // relative to bare cavity at that probe
  double fitted_linewidth = 0.0;   // Hz, FWHM of the transmission dip
  double photon_number = 0.0;      // intracavity, steady state
  double input_flux = 0.0;         // photons/s impinging on the cavity
  double scattered_rate = 0.0;     // photons/s removed from the transmitted beam
};

// Saturation of the single-emitter dip with increasing probe power. The
// input flux uses the symmetric two-sided relation n_bare = 2 F / kappa, so
// F = eps^2 / kappa_in in angular units.
inline std::vector<SaturationPoint> saturation_curve(const CoupledSystem& system,
                                                     const std::vector<double>& amplitudes_hz,
                                                     int n_probe = 41) {
  system.validate();
  if (system.emitters.size() != 1)
    throw PhysicsError("saturation_curve: expected a single-emitter system");
  const auto& e = system.emitters.front();
  const double f_e = e.optical.zpl_frequency;
  // probe window: a few broadened linewidths around the emitter
  const double c = cooperativity(system);
  const double width = e.optical.total_linewidth() * (1.0 + c) * 6.0;

  std::vector<SaturationPoint> out;
  for (double amp : amplitudes_hz) {
    SaturationPoint p;
    p.amplitude = amp;
    std::vector<SpectrumPoint> spec;
    spec.reserve(static_cast<size_t>(n_probe));
    for (int i = 0; i < n_probe; ++i) {
      const double f = f_e - width / 2.0 + width * i / (n_probe - 1);
      spec.push_back({f, full_transmission(system, f, amp)});
    }
    p.on_resonance = full_transmission(system, f_e, amp);
    const auto dips = find_dips(spec);
    if (!dips.empty()) {
      const auto deepest = std::max_element(
          dips.begin(), dips.end(),
          [](const DipShape& a, const DipShape& b) { return a.depth < b.depth; });
      p.dip_depth = deepest->depth;
      p.fitted_linewidth = deepest->fwhm;
    }
    DriveParams drive{f_e, amp};
    const auto sol = solve_steady(system, drive);
    p.photon_number = sol.photon_number;
    const double eps = angular(amp);
    p.input_flux = eps * eps / angular(system.cavity.kappa_in);
    p.scattered_rate = (1.0 - p.on_resonance) * p.input_flux;
    out.push_back(p);
  }
  return out;
}

}  // namespace sivsim::cavity
