#pragma once

#include <vector>

#include "sivsim/core/integrate.hpp"
#include "sivsim/core/steady_state.hpp"

namespace sivsim {

// Two-time correlation by the quantum regression theorem:
//   G(tau) = Tr[ B e^{L tau}( A rho_ss A^+ ) ]
// computed by propagating A rho A^+ under the same master equation.
inline std::vector<Complex> two_time_correlation(const LindbladModel& model,
                                                 const DensityMatrix& rho_ss, const Operator& a,
                                                 const Operator& b, const TimeGrid& taugrid,
                                                 const IntegratorOptions& opt = {},
                                                 double stationarity_tol = 1e-8) {
  if (rho_ss.space() != model.space() || a.space() != model.space() ||
      b.space() != model.space())
    throw PhysicsError("two_time_correlation: Hilbert space mismatch");
  if (stationarity_residual(model, rho_ss) > stationarity_tol)
    throw PhysicsError("two_time_correlation: input state is not stationary");

  const Matrix seed = a.matrix() * rho_ss.matrix() * a.matrix().adjoint();
  std::vector<Complex> g;
  g.reserve(static_cast<size_t>(taugrid.n_points));
  auto rhs = [&model](double, const Matrix& m) { return model.apply(m); };
  integrate_dopri5(rhs, seed, taugrid.points(),
                   [&](int, const Matrix& m) { g.push_back((b.matrix() * m).trace()); }, opt);
  return g;
}

// Normalized intensity autocorrelation of the mode annihilated by `a`:
//   g2(tau) = <a^+(0) a^+(tau) a(tau) a(0)> / <a^+ a>^2
inline std::vector<double> normalized_g2(const LindbladModel& model, const DensityMatrix& rho_ss,
                                         const Operator& a, const TimeGrid& taugrid,
                                         const IntegratorOptions& opt = {}) {
  const Operator n_op = a.adjoint() * a;
  const double n_mean = expectation(n_op, rho_ss).real();
  if (n_mean <= 0) throw PhysicsError("normalized_g2: mode has zero occupation");
  const auto g = two_time_correlation(model, rho_ss, a, n_op, taugrid, opt);
  std::vector<double> out(g.size());
  for (size_t i = 0; i < g.size(); ++i) out[i] = g[i].real() / (n_mean * n_mean);
  return out;
}

}  // namespace sivsim
