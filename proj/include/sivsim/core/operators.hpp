#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "sivsim/core/errors.hpp"
#include "sivsim/core/hilbert.hpp"

namespace sivsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex im{0.0, 1.0};

// Dense operator on a composite Hilbert space. Entries carry whatever units
// the context dictates; Hamiltonians are angular frequencies (rad/s).
class Operator {
 public:
  Operator(HilbertSpace space, Matrix m) : space_(std::move(space)), m_(std::move(m)) {
    const int d = space_.total_dim();
    if (m_.rows() != d || m_.cols() != d)
      throw PhysicsError("Operator: matrix shape does not match Hilbert space dimension");
  }

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

  Operator adjoint() const { return Operator(space_, m_.adjoint()); }
  bool is_hermitian(double tol = 1e-10) const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }

  Operator operator+(const Operator& o) const {
    check_same_space(o);
    return Operator(space_, m_ + o.m_);
  }
  Operator operator-(const Operator& o) const {
    check_same_space(o);
    return Operator(space_, m_ - o.m_);
  }
  Operator operator*(const Operator& o) const {
    check_same_space(o);
    return Operator(space_, m_ * o.m_);
  }
  friend Operator operator*(Complex c, const Operator& o) { return Operator(o.space_, c * o.m_); }
  friend Operator operator*(double c, const Operator& o) { return Operator(o.space_, c * o.m_); }

 private:
  void check_same_space(const Operator& o) const {
    if (space_ != o.space_) throw PhysicsError("Operator: Hilbert space mismatch");
  }
  HilbertSpace space_;
  Matrix m_;
};

// Kronecker product with the left factor as the slowest-varying index,
// matching HilbertSpace::flat_index.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Operator tensor_product(std::span<const Operator> factors) {
  if (factors.empty()) throw PhysicsError("tensor_product: empty factor list");
  HilbertSpace space = factors[0].space();
  Matrix m = factors[0].matrix();
  for (size_t k = 1; k < factors.size(); ++k) {
    space = space.joined(factors[k].space());
    m = kron(m, factors[k].matrix());
  }
  return Operator(std::move(space), std::move(m));
}

inline Operator tensor_product(const std::vector<Operator>& factors) {
  return tensor_product(std::span<const Operator>(factors));
}

// Embed a single-subsystem operator into `space` at slot `which`, tensoring
// identities elsewhere.
inline Operator embed(const HilbertSpace& space, int which, const Matrix& op) {
  if (which < 0 || which >= space.subsystem_count())
    throw PhysicsError("embed: subsystem index out of range");
  if (op.rows() != space.dim(which) || op.cols() != space.dim(which))
    throw PhysicsError("embed: operator does not fit subsystem dimension");
  Matrix m = Matrix::Identity(1, 1);
  for (int k = 0; k < space.subsystem_count(); ++k) {
    if (k == which)
      m = kron(m, op);
    else
      m = kron(m, Matrix::Identity(space.dim(k), space.dim(k)));
  }
  return Operator(space, std::move(m));
}

// Elementary matrices. Two-level basis order is {excited, ground}, so
// sigma_z = diag(+1, -1) and sigma_plus = |e><g| has its nonzero entry in
// the upper right.
namespace ops {

inline Matrix identity(int d) { return Matrix::Identity(d, d); }

inline Matrix sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix sigma_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
inline Matrix sigma_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
inline Matrix sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1;
  return m;
}
inline Matrix sigma_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1;
  return m;
}

// Bosonic annihilation operator on a Fock space truncated at n = d-1.
inline Matrix destroy(int d) {
  Matrix m = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return m;
}
inline Matrix create(int d) { return destroy(d).adjoint(); }
inline Matrix number(int d) {
  Matrix m = Matrix::Zero(d, d);
  for (int n = 0; n < d; ++n) m(n, n) = n;
  return m;
}

inline Matrix projector(int d, int i) {
  Matrix m = Matrix::Zero(d, d);
  m(i, i) = 1;
  return m;
}

inline Vector basis_state(int d, int i) {
  Vector v = Vector::Zero(d);
  v(i) = 1;
  return v;
}

}  // namespace ops

// Density matrix with validated invariants: Hermitian, unit trace,
// eigenvalues bounded below by a small negative tolerance.
class DensityMatrix {
 public:
  static constexpr double hermiticity_tol = 1e-10;
  static constexpr double trace_tol = 1e-9;
  static constexpr double positivity_tol = 1e-9;

  DensityMatrix(HilbertSpace space, Matrix m) : space_(std::move(space)), m_(std::move(m)) {
    const int d = space_.total_dim();
    if (m_.rows() != d || m_.cols() != d)
      throw PhysicsError("DensityMatrix: matrix shape does not match Hilbert space");
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > hermiticity_tol)
      throw PhysicsError("DensityMatrix: not Hermitian within tolerance");
    if (std::abs(m_.trace().real() - 1.0) > trace_tol || std::abs(m_.trace().imag()) > trace_tol)
      throw PhysicsError("DensityMatrix: trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -positivity_tol)
      throw PhysicsError("DensityMatrix: negative eigenvalue beyond tolerance");
  }

  // Pure state |psi><psi|.
  static DensityMatrix pure(const HilbertSpace& space, const Vector& psi) {
    Vector p = psi / psi.norm();
    return DensityMatrix(space, p * p.adjoint());
  }

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }

  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

 private:
  HilbertSpace space_;
  Matrix m_;
};

inline Complex expectation(const Operator& a, const DensityMatrix& rho) {
  return (a.matrix() * rho.matrix()).trace();
}
inline Complex expectation(const Matrix& a, const Matrix& rho) { return (a * rho).trace(); }

}  // namespace sivsim
