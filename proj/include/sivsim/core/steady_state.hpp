#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "sivsim/core/lindblad.hpp"

namespace sivsim {

struct SteadyStateOptions {
  // Residual bound: ||L vec(rho)|| <= residual_tol * ||L||_F.
  double residual_tol = 1e-9;
  // Rank-revealing factorization that detects degenerate manifolds. Costs
  // roughly 15x the plain solve; sweeps over drive or probe frequency turn
  // it off since a coherently driven, damped model has a unique steady state
  // and the residual check still guards the solution.
  bool check_uniqueness = true;
};

// Steady state as the null vector of the Liouvillian with trace
// normalization. One diagonal row of L is replaced by the trace functional;
// trace preservation makes the diagonal rows of L linearly dependent, so the
// replaced system is nonsingular exactly when the null space is
// one-dimensional. A rank-revealing factorization therefore doubles as the
// uniqueness check, and degenerate manifolds are reported as an error rather
// than silently resolved.
inline DensityMatrix steady_state(const LindbladModel& model,
                                  const SteadyStateOptions& opt = {}) {
  const int d = model.dim();
  const Matrix l = model.liouvillian_matrix();
  const double l_norm = l.norm();
  if (l_norm == 0) throw PhysicsError("steady_state: Liouvillian is identically zero");

  Matrix m = l;
  m.row(0).setZero();
  for (int i = 0; i < d; ++i) m(0, i + d * i) = 1.0;
  Vector rhs = Vector::Zero(d * d);
  rhs(0) = 1.0;

  Vector x;
  if (opt.check_uniqueness) {
    Eigen::FullPivLU<Matrix> lu(m);
    if (!lu.isInvertible()) {
      // confirm with the two smallest singular values when affordable
      if (d * d <= 2500) {
        Eigen::BDCSVD<Matrix> svd(l);
        const auto& sv = svd.singularValues();
        const double smallest = sv(sv.size() - 1);
        const double second = sv(sv.size() - 2);
        if (second <= 1e3 * std::max(smallest, 1e-30 * l_norm))
          throw PhysicsError(
              "steady_state: degenerate steady-state manifold (null space is not one-dimensional)");
      }
      throw PhysicsError("steady_state: Liouvillian null-space solve is singular");
    }
    x = lu.solve(rhs);
  } else {
    x = Eigen::PartialPivLU<Matrix>(m).solve(rhs);
  }
  Matrix rho = unvec(x, d);
  rho = 0.5 * (rho + Matrix(rho.adjoint()));
  rho /= rho.trace().real();

  const double residual = (l * vec(rho)).norm();
  if (!(residual <= opt.residual_tol * l_norm) || !rho.allFinite())
    throw PhysicsError("steady_state: residual check failed");

  return DensityMatrix(model.space(), rho);
}

// Frobenius-relative residual of a candidate stationary state.
inline double stationarity_residual(const LindbladModel& model, const DensityMatrix& rho) {
  const Matrix lrho = model.apply(rho.matrix());
  const Matrix l = model.liouvillian_matrix();
  return lrho.norm() / l.norm();
}

}  // namespace sivsim
