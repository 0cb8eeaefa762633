#pragma once

#include <vector>

#include "sivsim/cavity/system.hpp"
#include "sivsim/core/correlation.hpp"

namespace sivsim::cavity {

enum class Port { transmitted, scattered };

struct G2Curve {
  std::vector<double> tau;  // s
  std::vector<double> g2;
  int n_fock = 0;
};

// Normalized intensity autocorrelation of the chosen output port under a
// coherent probe. Transmitted photons are the cavity output (mode operator
// a); scattered photons are the emitter's free-space fluorescence
// (sigma_minus of the first emitter).
inline G2Curve photon_statistics(const CoupledSystem& system, const DriveParams& drive,
                                 Port port, const TimeGrid& taugrid) {
  system.validate();
  drive.validate();
  const auto sol = solve_steady(system, drive);
  const auto& space = sol.model.space();

  Operator port_op = port == Port::transmitted
                         ? embed(space, 0, ops::destroy(sol.n_fock))
                         : [&] {
                             if (system.emitters.empty())
                               throw PhysicsError(
                                   "photon_statistics: scattered port needs an emitter");
                             return embed(space, 1, ops::sigma_minus());
                           }();

  G2Curve curve;
  curve.tau = taugrid.points();
  curve.g2 = normalized_g2(sol.model, sol.state, port_op, taugrid);
  curve.n_fock = sol.n_fock;
  return curve;
}

}  // namespace sivsim::cavity
