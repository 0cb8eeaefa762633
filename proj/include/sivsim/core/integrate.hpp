#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "sivsim/core/errors.hpp"
#include "sivsim/core/lindblad.hpp"

namespace sivsim {

// Uniform time grid in seconds.
struct TimeGrid {
  double start = 0.0;
  double stop = 0.0;
  int n_points = 2;

  TimeGrid(double start_, double stop_, int n) : start(start_), stop(stop_), n_points(n) {
    if (!(stop > start) || start < 0) throw PhysicsError("TimeGrid: need stop > start >= 0");
    if (n_points < 2) throw PhysicsError("TimeGrid: need at least 2 points");
  }

  double dt() const { return (stop - start) / (n_points - 1); }
  std::vector<double> points() const {
    std::vector<double> t(static_cast<size_t>(n_points));
    for (int i = 0; i < n_points; ++i) t[i] = start + i * dt();
    t.back() = stop;
    return t;
  }
};

struct IntegratorOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  long max_steps = 50'000'000;
  // Applied to the state after every accepted step; evolve_master uses this
  // to project truncation noise off the Hermitian manifold.
  std::function<void(Matrix&)> postprocess;
};

// Adaptive embedded Dormand-Prince 5(4) on a dense complex matrix state.
// The error estimate uses a max over entries of |err|/(atol + rtol*|y|).
// Walks through the sorted output times, stepping exactly onto each.
inline void integrate_dopri5(const std::function<Matrix(double, const Matrix&)>& rhs,
                             const Matrix& y0, const std::vector<double>& times,
                             const std::function<void(int, const Matrix&)>& observe,
                             const IntegratorOptions& opt = {}) {
  // Dormand-Prince coefficients
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                      b6 = 11.0 / 84;
  // embedded 4th-order weights
  static const double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                      e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

  if (times.empty()) return;
  double t = times.front();
  Matrix y = y0;
  observe(0, y);

  Matrix k1 = rhs(t, y);
  const double span = times.back() - times.front();
  if (span <= 0) return;

  auto error_norm = [&](const Matrix& err, const Matrix& ya, const Matrix& yb) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
      const double scale =
          opt.atol + opt.rtol * std::max(std::abs(ya.data()[i]), std::abs(yb.data()[i]));
      m = std::max(m, std::abs(err.data()[i]) / scale);
    }
    return m;
  };

  // initial step heuristic
  double h = span / 100.0;
  {
    const double d0 = y.cwiseAbs().maxCoeff() + opt.atol;
    const double d1 = k1.cwiseAbs().maxCoeff();
    if (d1 > 0) h = std::min(h, 0.01 * d0 / d1);
    if (!(h > 0)) h = span / 100.0;
  }

  long steps = 0;
  size_t next = 1;
  while (next < times.size()) {
    const double t_target = times[next];
    if (t >= t_target) {
      observe(static_cast<int>(next), y);
      ++next;
      continue;
    }
    bool clipped = false;
    double h_try = h;
    if (t + h_try >= t_target) {
      h_try = t_target - t;
      clipped = true;
    }

    const Matrix k2 = rhs(t + c2 * h_try, y + h_try * (a21 * k1));
    const Matrix k3 = rhs(t + c3 * h_try, y + h_try * (a31 * k1 + a32 * k2));
    const Matrix k4 = rhs(t + c4 * h_try, y + h_try * (a41 * k1 + a42 * k2 + a43 * k3));
    const Matrix k5 = rhs(t + c5 * h_try, y + h_try * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Matrix k6 =
        rhs(t + h_try, y + h_try * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Matrix y5 = y + h_try * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Matrix k7 = rhs(t + h_try, y5);
    const Matrix y4 =
        y + h_try * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double err = error_norm(y5 - y4, y, y5);
    if (err <= 1.0) {
      t += h_try;
      y = y5;
      if (opt.postprocess) opt.postprocess(y);
      k1 = k7;  // FSAL
      if (t >= t_target) {
        observe(static_cast<int>(next), y);
        ++next;
      }
      const double grow = std::clamp(0.9 * std::pow(std::max(err, 1e-12), -0.2), 0.2, 5.0);
      // a step clipped onto a grid point says nothing about the natural step
      h = clipped ? std::max(h, h_try * grow) : h_try * grow;
    } else {
      h = h_try * std::clamp(0.9 * std::pow(err, -0.25), 0.1, 0.9);
      if (h < 1e-15 * span)
        throw PhysicsError("integrate_dopri5: step size underflow at requested tolerance");
    }
    if (++steps > opt.max_steps)
      throw PhysicsError("integrate_dopri5: step budget exhausted before reaching grid end");
  }
}

// Master-equation evolution of rho0 over the grid. Every returned state is
// re-validated against the DensityMatrix invariants.
inline std::vector<DensityMatrix> evolve_master(const LindbladModel& model,
                                                const DensityMatrix& rho0, const TimeGrid& grid,
                                                const IntegratorOptions& opt = {}) {
  if (rho0.space() != model.space())
    throw PhysicsError("evolve_master: state and model on different Hilbert spaces");
  std::vector<DensityMatrix> out;
  out.reserve(static_cast<size_t>(grid.n_points));
  IntegratorOptions o = opt;
  o.postprocess = [](Matrix& y) { y = 0.5 * (y + Matrix(y.adjoint())); };
  auto rhs = [&model](double, const Matrix& rho) { return model.apply(rho); };
  integrate_dopri5(rhs, rho0.matrix(), grid.points(),
                   [&](int, const Matrix& rho) { out.emplace_back(model.space(), rho); }, o);
  return out;
}

// Same integration but returning raw matrices without invariant validation;
// used for the quantum regression theorem where the propagated object is not
// a physical state.
inline std::vector<Matrix> propagate_matrix(const LindbladModel& model, const Matrix& m0,
                                            const std::vector<double>& times,
                                            const IntegratorOptions& opt = {}) {
  std::vector<Matrix> out;
  out.reserve(times.size());
  auto rhs = [&model](double, const Matrix& rho) { return model.apply(rho); };
  integrate_dopri5(rhs, m0, times, [&](int, const Matrix& m) { out.push_back(m); }, opt);
  return out;
}

}  // namespace sivsim
