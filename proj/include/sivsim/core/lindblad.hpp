#pragma once

#include <utility>
#include <vector>

#include "sivsim/core/operators.hpp"

namespace sivsim {

// Hamiltonian (rad/s) plus weighted collapse channels (rates in 1/s).
// d(rho)/dt = -i[H, rho] + sum_k r_k (L rho L^+ - 1/2 {L^+L, rho})
class LindbladModel {
 public:
  LindbladModel(Operator hamiltonian, std::vector<std::pair<Operator, double>> channels)
      : h_(std::move(hamiltonian)), channels_(std::move(channels)) {
    if (!h_.is_hermitian(1e-10 * std::max(1.0, h_.matrix().cwiseAbs().maxCoeff())))
      throw PhysicsError("LindbladModel: Hamiltonian not Hermitian");
    for (const auto& [op, rate] : channels_) {
      if (op.space() != h_.space())
        throw PhysicsError("LindbladModel: collapse operator on a different Hilbert space");
      if (rate < 0) throw PhysicsError("LindbladModel: negative collapse rate");
    }
    // cache L^+L and sqrt(rate)-weighted forms used by the right-hand side
    for (const auto& [op, rate] : channels_) {
      ldagl_.push_back(rate * (op.matrix().adjoint() * op.matrix()));
    }
  }

  const Operator& hamiltonian() const { return h_; }
  const std::vector<std::pair<Operator, double>>& channels() const { return channels_; }
  const HilbertSpace& space() const { return h_.space(); }
  int dim() const { return h_.dim(); }

  // Lindblad right-hand side in matrix form; O(channels * d^3).
  Matrix apply(const Matrix& rho) const {
    Matrix out = -im * (h_.matrix() * rho - rho * h_.matrix());
    for (size_t k = 0; k < channels_.size(); ++k) {
      const auto& [op, rate] = channels_[k];
      out.noalias() += rate * (op.matrix() * rho * op.matrix().adjoint());
      out.noalias() -= 0.5 * (ldagl_[k] * rho + rho * ldagl_[k]);
    }
    return out;
  }

  // Dense superoperator acting on column-stacked vec(rho):
  // vec(A rho B) = (B^T (x) A) vec(rho).
  Matrix liouvillian_matrix() const {
    const int d = dim();
    const Matrix id = Matrix::Identity(d, d);
    const Matrix& h = h_.matrix();
    Matrix l = -im * (kron(id, h) - kron(h.transpose(), id));
    for (size_t k = 0; k < channels_.size(); ++k) {
      const Matrix& c = channels_[k].first.matrix();
      const double rate = channels_[k].second;
      l += rate * kron(c.conjugate(), c);
      const Matrix cc = c.adjoint() * c;
      l -= 0.5 * rate * (kron(id, cc) + kron(cc.transpose(), id));
    }
    return l;
  }

 private:
  Operator h_;
  std::vector<std::pair<Operator, double>> channels_;
  std::vector<Matrix> ldagl_;
};

inline Matrix vec(const Matrix& m) {
  return Eigen::Map<const Matrix>(m.data(), m.size(), 1);
}
inline Matrix unvec(const Matrix& v, int d) {
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

}  // namespace sivsim
