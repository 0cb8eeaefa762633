#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>

#include "sivsim/core/constants.hpp"
#include "sivsim/core/correlation.hpp"
#include "sivsim/core/integrate.hpp"
#include "sivsim/core/lindblad.hpp"
#include "sivsim/core/operators.hpp"
#include "sivsim/core/steady_state.hpp"

using namespace sivsim;

namespace {

Operator two_level(const Matrix& m) { return Operator(HilbertSpace({2}), m); }

// Independent oracle for the driven-damped two-level atom: the optical Bloch
// equations for H = (Omega/2) sigma_x with decay gamma on sigma_minus reduce
// to the affine system d(v,w)/dt = A (v,w) + b with
//   A = [[-gamma/2, -Omega], [Omega, -gamma]],  b = (0, -gamma),
// solved exactly through the eigendecomposition of A. P_e = (1+w)/2.
double damped_rabi_excited_population(double omega, double gamma, double t) {
  Eigen::Matrix2cd a;
  a << -gamma / 2.0, -omega, omega, -gamma;
  Eigen::Vector2cd b(0.0, -gamma);
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(a);
  const Eigen::Matrix2cd v = es.eigenvectors();
  const Eigen::Vector2cd lam = es.eigenvalues();
  const Eigen::Vector2cd x_ss = -a.inverse() * b;
  Eigen::Vector2cd x0(0.0, -1.0);  // start in |g>
  Eigen::Vector2cd c = v.inverse() * (x0 - x_ss);
  Eigen::Vector2cd x = x_ss;
  for (int k = 0; k < 2; ++k) x += c(k) * std::exp(lam(k) * t) * v.col(k);
  return (1.0 + x(1).real()) / 2.0;
}

// Seeded small Lindblad model with a guaranteed relaxation funnel so the
// Liouvillian has a spectral gap and a unique steady state.
LindbladModel random_gapped_model(std::uint64_t seed, int d) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53 - 0.5; };
  Matrix h(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) h(i, j) = Complex(uniform(), uniform());
  h = (h + Matrix(h.adjoint())).eval();
  Matrix c1(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c1(i, j) = Complex(uniform(), uniform());
  Matrix funnel = Matrix::Zero(d, d);
  for (int k = 1; k < d; ++k) funnel(0, k) = 1.0;
  HilbertSpace space({d});
  return LindbladModel(Operator(space, h),
                       {{Operator(space, c1), 0.8}, {Operator(space, funnel), 0.5}});
}

}  // namespace

TEST_CASE("tensor product identity and kron conventions") {
  const auto i2 = two_level(ops::identity(2));
  const auto t = tensor_product({i2, i2});
  REQUIRE(t.dim() == 4);
  REQUIRE((t.matrix() - ops::identity(4)).cwiseAbs().maxCoeff() == 0.0);

  const auto sz = two_level(ops::sigma_z());
  const auto zi = tensor_product({sz, i2});
  Matrix expected = Matrix::Zero(4, 4);
  expected.diagonal() << 1, 1, -1, -1;
  REQUIRE((zi.matrix() - expected).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(zi.space().dims() == std::vector<int>({2, 2}));
}

TEST_CASE("tensor product basis ordering for sigma_plus x sigma_minus") {
  // Hand-computed Kronecker product: sigma_plus = |0><1|, sigma_minus =
  // |1><0| in the {excited, ground} ordering, so the only nonzero entry sits
  // at row |0,1> = 1, column |1,0> = 2.
  const auto sp = two_level(ops::sigma_plus());
  const auto sm = two_level(ops::sigma_minus());
  const auto t = tensor_product({sp, sm});
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const double expected = (r == 1 && c == 2) ? 1.0 : 0.0;
      REQUIRE(std::abs(t.matrix()(r, c) - expected) == 0.0);
    }
  REQUIRE(t.space().flat_index({0, 1}) == 1);
  REQUIRE(t.space().flat_index({1, 0}) == 2);
}

TEST_CASE("tensor product rejects an empty factor list") {
  REQUIRE_THROWS_AS(tensor_product(std::vector<Operator>{}), PhysicsError);
}

TEST_CASE("matrix-form Lindblad RHS matches the dense superoperator") {
  const auto model = random_gapped_model(11, 3);
  std::mt19937_64 rng(99);
  auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53 - 0.5; };
  Matrix m(3, 3);
  for (int i = 0; i < 9; ++i) m.data()[i] = Complex(uniform(), uniform());
  m = (m + Matrix(m.adjoint())).eval();
  const Matrix direct = model.apply(m);
  const Matrix via_super = unvec(model.liouvillian_matrix() * vec(m), 3);
  REQUIRE((direct - via_super).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("free decay of a two-level atom is exponential") {
  HilbertSpace space({2});
  const double gamma = 2.0e8;
  LindbladModel model(Operator(space, Matrix::Zero(2, 2)),
                      {{Operator(space, ops::sigma_minus()), gamma}});
  auto rho0 = DensityMatrix(space, ops::projector(2, 0));
  TimeGrid grid(0.0, 30e-9, 61);
  const auto states = evolve_master(model, rho0, grid);
  const auto times = grid.points();
  for (size_t i = 0; i < states.size(); ++i) {
    const double p_e = states[i].matrix()(0, 0).real();
    REQUIRE(std::abs(p_e - std::exp(-gamma * times[i])) < 1e-6);
  }
}

TEST_CASE("no Hamiltonian and no channels leaves the state untouched") {
  HilbertSpace space({2});
  LindbladModel model(Operator(space, Matrix::Zero(2, 2)), {});
  Matrix rho(2, 2);
  rho << 0.25, Complex(0.1, 0.05), Complex(0.1, -0.05), 0.75;
  const auto states = evolve_master(model, DensityMatrix(space, rho), TimeGrid(0, 1e-6, 5));
  for (const auto& s : states) REQUIRE((s.matrix() - rho).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("driven-damped Rabi oscillations match the optical Bloch oracle") {
  HilbertSpace space({2});
  const double omega = angular(50e6);
  const double gamma = 1.0e8;
  Matrix h = 0.5 * omega * ops::sigma_x();
  LindbladModel model(Operator(space, h), {{Operator(space, ops::sigma_minus()), gamma}});
  auto rho0 = DensityMatrix(space, ops::projector(2, 1));
  TimeGrid grid(0.0, 100e-9, 101);
  const auto states = evolve_master(model, rho0, grid);
  const auto times = grid.points();
  for (size_t i = 0; i < states.size(); ++i) {
    const double p_e = states[i].matrix()(0, 0).real();
    REQUIRE(std::abs(p_e - damped_rabi_excited_population(omega, gamma, times[i])) < 1e-5);
  }
  // frozen oracle spot checks (values from the closed-form Bloch solution)
  REQUIRE(std::abs(damped_rabi_excited_population(omega, gamma, 10e-9) - 0.7001385830) < 1e-7);
  REQUIRE(std::abs(damped_rabi_excited_population(omega, gamma, 40e-9) - 0.4524427402) < 1e-7);
}

TEST_CASE("evolution preserves trace, positivity, hermiticity") {
  const auto model = random_gapped_model(3, 4);
  HilbertSpace space({4});
  Matrix rho0 = Matrix::Zero(4, 4);
  rho0(1, 1) = 0.6;
  rho0(2, 2) = 0.4;
  const auto states = evolve_master(model, DensityMatrix(space, rho0), TimeGrid(0, 20.0, 41));
  for (const auto& s : states) {
    REQUIRE(std::abs(s.matrix().trace().real() - 1.0) < 1e-8);
    REQUIRE(std::abs(s.matrix().trace().imag()) < 1e-10);
    REQUIRE(s.min_eigenvalue() > -1e-8);
    REQUIRE((s.matrix() - s.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("steady state of pure decay is the ground state") {
  HilbertSpace space({2});
  LindbladModel model(Operator(space, Matrix::Zero(2, 2)),
                      {{Operator(space, ops::sigma_minus()), 1.0e7}});
  const auto rho = steady_state(model);
  REQUIRE(std::abs(rho.matrix()(1, 1).real() - 1.0) < 1e-12);
  REQUIRE(std::abs(rho.matrix()(0, 0).real()) < 1e-12);
}

TEST_CASE("steady state of a thermal channel pair satisfies detailed balance") {
  HilbertSpace space({2});
  const double up = 3.0e6, down = 8.0e6;
  LindbladModel model(Operator(space, Matrix::Zero(2, 2)),
                      {{Operator(space, ops::sigma_plus()), up},
                       {Operator(space, ops::sigma_minus()), down}});
  const auto rho = steady_state(model);
  const double p_e = rho.matrix()(0, 0).real();
  const double p_g = rho.matrix()(1, 1).real();
  REQUIRE(std::abs(p_e / p_g - up / down) < 1e-10);
}

TEST_CASE("weakly driven empty cavity reaches a coherent state") {
  const int ncut = 12;
  HilbertSpace space({ncut});
  const double kappa = 1.0e9;
  const double delta = 0.3e9;
  const double eps = 0.05e9;
  Matrix h = delta * ops::number(ncut) + eps * (ops::destroy(ncut) + ops::create(ncut));
  LindbladModel model(Operator(space, h), {{Operator(space, ops::destroy(ncut)), kappa}});
  const auto rho = steady_state(model);
  const double n = expectation(Operator(space, ops::number(ncut)), rho).real();
  const double expected = eps * eps / (delta * delta + kappa * kappa / 4.0);
  REQUIRE(std::abs(n - expected) < 1e-6 * expected);
}

TEST_CASE("degenerate steady-state manifold is reported, not resolved") {
  HilbertSpace space({2});
  // pure dephasing conserves both populations: every diagonal state is steady
  LindbladModel model(Operator(space, Matrix::Zero(2, 2)),
                      {{Operator(space, ops::sigma_z()), 1.0e6}});
  REQUIRE_THROWS_AS(steady_state(model), PhysicsError);
}

TEST_CASE("steady state agrees with the long-time limit of evolution") {
  for (std::uint64_t seed : {7u, 21u, 42u}) {
    const int d = 3;
    const auto model = random_gapped_model(seed, d);
    const auto rho_ss = steady_state(model);
    HilbertSpace space({d});
    const auto rho0 = DensityMatrix(space, ops::projector(d, d - 1));
    const auto states = evolve_master(model, rho0, TimeGrid(0, 80.0, 3));
    REQUIRE((states.back().matrix() - rho_ss.matrix()).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("coherent drive through an empty cavity has flat g2") {
  const int ncut = 10;
  HilbertSpace space({ncut});
  const double kappa = 1.0e9, eps = 0.04e9;
  Matrix h = eps * (ops::destroy(ncut) + ops::create(ncut));
  LindbladModel model(Operator(space, h), {{Operator(space, ops::destroy(ncut)), kappa}});
  const auto rho = steady_state(model);
  const auto g2 = normalized_g2(model, rho, Operator(space, ops::destroy(ncut)),
                                TimeGrid(0, 10e-9, 21));
  for (double v : g2) REQUIRE(std::abs(v - 1.0) < 1e-6);
}

TEST_CASE("resonance fluorescence is antibunched at zero delay and ergodic at long delay") {
  HilbertSpace space({2});
  const double gamma = 1.0e9;
  const double omega = angular(0.12e9);
  Matrix h = 0.5 * omega * ops::sigma_x();
  LindbladModel model(Operator(space, h), {{Operator(space, ops::sigma_minus()), gamma}});
  const auto rho = steady_state(model);
  const auto g2 =
      normalized_g2(model, rho, Operator(space, ops::sigma_minus()), TimeGrid(0, 40e-9, 81));
  REQUIRE(std::abs(g2.front()) < 1e-6);
  REQUIRE(std::abs(g2.back() - 1.0) < 1e-4);
}

TEST_CASE("two-time correlation at tau=0 equals the static expectation") {
  const auto model = random_gapped_model(5, 3);
  const auto rho = steady_state(model);
  HilbertSpace space({3});
  Matrix am = Matrix::Zero(3, 3);
  am(0, 2) = 1.0;
  am(1, 0) = 0.5;
  const Operator a(space, am);
  const Operator b(space, ops::number(3));
  const auto g = two_time_correlation(model, rho, a, b, TimeGrid(0, 1.0, 2));
  const Complex direct =
      (b.matrix() * a.matrix() * rho.matrix() * a.matrix().adjoint()).trace();
  REQUIRE(std::abs(g.front() - direct) < 1e-10);
}

TEST_CASE("two-time correlation rejects a non-stationary state") {
  const auto model = random_gapped_model(5, 3);
  HilbertSpace space({3});
  const auto not_steady = DensityMatrix(space, ops::projector(3, 2));
  const Operator a(space, ops::number(3));
  REQUIRE_THROWS_AS(two_time_correlation(model, not_steady, a, a, TimeGrid(0, 1.0, 2)),
                    PhysicsError);
}

TEST_CASE("density matrix invariants are enforced") {
  HilbertSpace space({2});
  Matrix bad_trace(2, 2);
  bad_trace << 0.6, 0, 0, 0.6;
  REQUIRE_THROWS_AS(DensityMatrix(space, bad_trace), PhysicsError);
  Matrix not_herm(2, 2);
  not_herm << 0.5, Complex(0.2, 0.1), Complex(0.3, 0.0), 0.5;
  REQUIRE_THROWS_AS(DensityMatrix(space, not_herm), PhysicsError);
  Matrix neg(2, 2);
  neg << 1.2, 0, 0, -0.2;
  REQUIRE_THROWS_AS(DensityMatrix(space, neg), PhysicsError);
}
