#pragma once

#include <array>

#include "sivsim/core/constants.hpp"
#include "sivsim/core/operators.hpp"

namespace sivsim::siv {

// Ground-state manifold parameters. Frequencies are ordinary (Hz), magnetic
// field in Tesla.
struct SiVLevelParams {
  double delta_gs = 45e9;          // spin-orbit splitting between orbital branches
  double strain_splitting = 0.0;   // transverse strain coupling |e+> <-> |e->
  std::array<double, 3> b_field = {0.0, 0.0, 0.0};
  double spin_g_factor = 2.0;
  double orbital_quenching = 0.1;  // effective orbital g reduction, in [0,1]

  void validate() const {
    if (!(delta_gs > 0)) throw PhysicsError("SiVLevelParams: delta_gs must be positive");
    if (strain_splitting < 0) throw PhysicsError("SiVLevelParams: strain_splitting must be >= 0");
    if (orbital_quenching < 0 || orbital_quenching > 1)
      throw PhysicsError("SiVLevelParams: orbital_quenching must be in [0,1]");
  }
};

// 4x4 ground-state Hamiltonian (rad/s) on orbital {e+, e-} (x) spin {down, up}.
//
// Spin-orbit: +(Delta/2) sigma_z for spin-down, -(Delta/2) sigma_z for
// spin-up, so at zero strain and field the spectrum is two doublets at
// +/- Delta/2. Transverse strain couples the orbitals with a spin-independent
// off-diagonal element, so the total branch splitting becomes
// sqrt(Delta^2 + (2*strain)^2). The Zeeman term uses an effective spin
// g-factor and a quenched orbital moment along z.
inline Operator ground_hamiltonian(const SiVLevelParams& p) {
  p.validate();
  HilbertSpace space({2, 2});

  const Matrix sz_orb = ops::sigma_z();
  const Matrix sx_orb = ops::sigma_x();
  const Matrix id2 = ops::identity(2);
  // spin basis order {down, up}: S_z |up> = +1/2 |up>
  Matrix s_z(2, 2), s_x(2, 2), s_y(2, 2);
  s_z << -0.5, 0, 0, 0.5;
  s_x << 0, 0.5, 0.5, 0;
  s_y << 0, Complex(0, -0.5), Complex(0, 0.5), 0;
  Matrix spin_sign = -2.0 * s_z;  // diag(+1, -1): + for down, - for up

  Matrix h = 0.5 * angular(p.delta_gs) * kron(sz_orb, spin_sign);
  h += angular(p.strain_splitting) * kron(sx_orb, id2);

  const double mu_b_over_hbar = constants::bohr_magneton / constants::hbar;
  const auto& b = p.b_field;
  Matrix zeeman_spin = p.spin_g_factor * mu_b_over_hbar *
                       (b[0] * s_x + b[1] * s_y + b[2] * s_z);
  h += kron(id2, zeeman_spin);
  // orbital moment L_z = +/-1 on {e+, e-}, quenched by lattice coupling
  h += p.orbital_quenching * mu_b_over_hbar * b[2] * kron(sz_orb, id2);

  return Operator(space, h);
}

// Eigenvalues of the ground Hamiltonian in ordinary frequency (Hz), sorted.
inline Eigen::VectorXd ground_spectrum(const SiVLevelParams& p) {
  const Operator h = ground_hamiltonian(p);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues() / two_pi;
}

}  // namespace sivsim::siv
