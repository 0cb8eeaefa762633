#pragma once

#include <vector>

#include "sivsim/core/constants.hpp"
#include "sivsim/core/lindblad.hpp"
#include "sivsim/core/steady_state.hpp"
#include "sivsim/siv/ensemble.hpp"

namespace sivsim::cavity {

// One-sided numbers are per-mirror intensity rates; kappa is the total
// intensity decay (bare-line FWHM). All in ordinary frequency (Hz).
struct CavityParams {
  double resonance = 406.7e12;
  double kappa = 57e9;
  double kappa_in = 28.5e9;
  double kappa_out = 28.5e9;
  double quality_factor = 0.0;  // 0 = derive from resonance/kappa

  double effective_quality_factor() const { return resonance / kappa; }

  void validate() const {
    if (!(kappa > 0) || !(kappa_in > 0) || !(kappa_out > 0))
      throw PhysicsError("CavityParams: rates must be positive");
    if (kappa_in + kappa_out > kappa * (1.0 + 1e-12))
      throw PhysicsError("CavityParams: port rates exceed total decay");
    if (quality_factor > 0 &&
        std::abs(quality_factor - effective_quality_factor()) > 0.05 * quality_factor)
      throw PhysicsError("CavityParams: quality factor inconsistent with kappa = omega/Q");
  }
};

struct CoupledEmitter {
  siv::EmitterOpticalParams optical;
  double g = 0.0;  // single-photon Rabi frequency, Hz
};

struct CoupledSystem {
  CavityParams cavity;
  std::vector<CoupledEmitter> emitters;

  void validate() const {
    cavity.validate();
    for (const auto& e : emitters) {
      e.optical.validate();
      if (!(e.g > 0)) throw PhysicsError("CoupledSystem: emitter coupling must be positive");
    }
  }
};

struct DriveParams {
  double frequency = 406.7e12;  // Hz
  double amplitude = 0.0;       // field drive strength, Hz

  void validate() const {
    if (amplitude < 0) throw PhysicsError("DriveParams: negative drive amplitude");
  }
};

// C = 4 g^2 / (kappa gamma); dimensionless, any consistent units.
inline double cooperativity(double g, double kappa, double gamma) {
  if (!(g >= 0) || !(kappa > 0) || !(gamma > 0))
    throw PhysicsError("cooperativity: rates must be positive");
  return 4.0 * g * g / (kappa * gamma);
}

inline double cooperativity(const CoupledSystem& system) {
  if (system.emitters.size() != 1)
    throw PhysicsError("cooperativity: expected a single-emitter system");
  const auto& e = system.emitters.front();
  return cooperativity(e.g, system.cavity.kappa, e.optical.total_linewidth());
}

// Bad-cavity Purcell decay: the cavity adds 4 g^2/kappa to the free-space
// rate 1/lifetime when emitter and cavity are resonant.
inline double purcell_lifetime(const CoupledSystem& system) {
  system.validate();
  if (system.emitters.size() != 1)
    throw PhysicsError("purcell_lifetime: expected a single-emitter system");
  const auto& e = system.emitters.front();
  const double g_ang = angular(e.g);
  const double kappa_ang = angular(system.cavity.kappa);
  const double rate = 1.0 / e.optical.lifetime + 4.0 * g_ang * g_ang / kappa_ang;
  return 1.0 / rate;
}

// Lindblad model of the driven emitter-cavity system in the frame rotating
// at the drive frequency. Basis order: cavity Fock space first, then one
// two-level subsystem per emitter.
//
// Channels: photon loss (a, kappa), population decay (sigma-, 2 pi
// gamma_rad) and pure dephasing (sigma_z, pi gamma_d / 2) per emitter, so
// the emitter linewidth comes out as gamma_rad + gamma_d exactly.
inline LindbladModel build_model(const CoupledSystem& system, const DriveParams& drive,
                                 int n_fock) {
  system.validate();
  drive.validate();
  std::vector<int> dims{n_fock};
  for (size_t i = 0; i < system.emitters.size(); ++i) dims.push_back(2);
  HilbertSpace space(dims);

  const Operator a = embed(space, 0, ops::destroy(n_fock));
  const double delta_c = angular(system.cavity.resonance - drive.frequency);
  const double eps = angular(drive.amplitude);

  Matrix h = delta_c * (a.adjoint() * a).matrix() + eps * (a.matrix() + a.adjoint().matrix());
  std::vector<std::pair<Operator, double>> channels;
  channels.emplace_back(a, angular(system.cavity.kappa));

  for (size_t i = 0; i < system.emitters.size(); ++i) {
    const auto& e = system.emitters[i];
    const Operator sm = embed(space, static_cast<int>(i) + 1, ops::sigma_minus());
    const Operator sz = embed(space, static_cast<int>(i) + 1, ops::sigma_z());
    const double delta_e = angular(e.optical.zpl_frequency - drive.frequency);
    const double g_ang = angular(e.g);
    h += delta_e * (sm.adjoint() * sm).matrix();
    h += g_ang * (a.adjoint().matrix() * sm.matrix() + a.matrix() * sm.adjoint().matrix());
    channels.emplace_back(sm, angular(e.optical.gamma_rad));
    if (e.optical.gamma_dephasing > 0)
      channels.emplace_back(sz, pi * e.optical.gamma_dephasing / 2.0);
  }
  return LindbladModel(Operator(space, h), std::move(channels));
}

struct SteadySolution {
  DensityMatrix state;
  LindbladModel model;
  int n_fock;
  double photon_number;        // <a^+ a>, total intracavity photons
  Complex field_amplitude;     // <a>, the coherent component
};

// Steady state with the Fock cutoff doubled (floor 4) until the photon
// number moves by less than 1e-6.
inline SteadySolution solve_steady(const CoupledSystem& system, const DriveParams& drive,
                                   int max_fock = 256) {
  double last_n = -1.0;
  for (int n_fock = 4; n_fock <= max_fock; n_fock *= 2) {
    LindbladModel model = build_model(system, drive, n_fock);
    SteadyStateOptions opt;
    opt.check_uniqueness = false;
    DensityMatrix rho = steady_state(model, opt);
    const Operator a = embed(model.space(), 0, ops::destroy(n_fock));
    const double n = expectation(a.adjoint() * a, rho).real();
    if (last_n >= 0 && std::abs(n - last_n) < 1e-6) {
      const Complex alpha = expectation(a, rho);
      return SteadySolution{std::move(rho), std::move(model), n_fock, n, alpha};
    }
    last_n = n;
  }
  throw PhysicsError("solve_steady: Fock cutoff did not converge");
}

}  // namespace sivsim::cavity
