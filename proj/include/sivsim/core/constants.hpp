#pragma once

#include <numbers>

// Physical constants (SI, 2019 redefinition) and frequency-unit helpers.
//
// Convention used throughout the library: Hamiltonians and decay rates are
// stored as angular frequencies (rad/s), while user-facing parameters and
// config files carry ordinary frequencies (Hz). Conversion happens exactly
// once, at the boundary.

namespace sivsim {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

namespace constants {

inline constexpr double planck = 6.62607015e-34;        // J s
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double boltzmann = 1.380649e-23;       // J/K
inline constexpr double bohr_magneton = 9.2740100783e-24;  // J/T

// h/kB in s*K: exponent of Boltzmann factors is (h*nu/kB/T) = planck_over_kb*nu/T
inline constexpr double planck_over_kb = planck / boltzmann;

}  // namespace constants

// ordinary frequency (Hz) -> angular frequency (rad/s)
inline constexpr double angular(double hz) { return two_pi * hz; }
// angular frequency (rad/s) -> ordinary frequency (Hz)
inline constexpr double ordinary(double rad_per_s) { return rad_per_s / two_pi; }

}  // namespace sivsim
