#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sivsim/interference/sources.hpp"

namespace sivsim::interference {

// Cross-correlation between the two output ports of a 50:50 beamsplitter fed
// by two independent CW single-photon sources. Built from stationary
// first-order coherences: with intensity fractions p1, p2 (signal) and p_b
// (uncorrelated background),
//   g2(tau) = 1 + p1^2 (g11 - 1) + p2^2 (g22 - 1) - 2 p1 p2 V beta(tau)
// where beta(tau) = cos(2 pi delta tau) e^{-(G1+G2)|tau|} carries the
// detuning beat and the mode overlap V = cos^2(d_theta) the polarization
// distinguishability. The result is smeared by detector jitter and averaged
// over the coincidence bin.
struct HomModel {
  double p1 = 0.5, p2 = 0.5, p_b = 0.0;  // intensity fractions, sum to 1
  double overlap = 1.0;                   // V
  double beat_hz = 0.0;                   // source detuning
  double coh_rate = 0.0;                  // G1 + G2, 1/s
  double refill1 = 0.0, refill2 = 0.0;    // 1/lifetime
  DetectorModel detector;

  double ideal_deviation(double tau) const {
    const double at = std::abs(tau);
    const double self = p1 * p1 * (-std::exp(-refill1 * at)) + p2 * p2 * (-std::exp(-refill2 * at));
    const double beta = std::cos(two_pi * beat_hz * tau) * std::exp(-coh_rate * at);
    return self - 2.0 * p1 * p2 * overlap * beta;
  }

  double operator()(double tau) const {
    auto dev = [this](double t) { return ideal_deviation(t); };
    auto smeared = [&](double t) {
      return gaussian_smear(dev, detector.timing_jitter_sigma, t);
    };
    return 1.0 + bin_average(smeared, detector.coincidence_bin, tau);
  }
};

inline HomModel make_hom_model(const SinglePhotonSource& s1, const SinglePhotonSource& s2,
                               const DetectorModel& detector) {
  s1.validate();
  s2.validate();
  detector.validate();
  const double r1 = s1.emission_rate, r2 = s2.emission_rate;
  const double total = r1 + r2 + 2.0 * detector.dark_rate;
  HomModel m;
  m.p1 = r1 * (1.0 - s1.background_fraction) / total;
  m.p2 = r2 * (1.0 - s2.background_fraction) / total;
  m.p_b = 1.0 - m.p1 - m.p2;
  const double dtheta = s1.polarization_angle - s2.polarization_angle;
  m.overlap = std::cos(dtheta) * std::cos(dtheta);
  m.beat_hz = s1.frequency - s2.frequency;
  m.coh_rate = s1.coherence_rate() + s2.coherence_rate();
  m.refill1 = 1.0 / s1.lifetime;
  m.refill2 = 1.0 / s2.lifetime;
  m.detector = detector;
  return m;
}

struct G2Result {
  std::vector<double> tau;
  std::vector<double> g2;
  double zero_delay = 0.0;
  double signal_fraction = 0.0;
};

inline G2Result hom_g2(const SinglePhotonSource& s1, const SinglePhotonSource& s2,
                       const DetectorModel& detector, const std::vector<double>& tau) {
  const HomModel m = make_hom_model(s1, s2, detector);
  G2Result out;
  out.tau = tau;
  out.g2.reserve(tau.size());
  for (double t : tau) out.g2.push_back(m(t));
  out.zero_delay = m(0.0);
  out.signal_fraction = m.p1 + m.p2;
  return out;
}

// Interference visibility from the zero-delay values of the parallel- and
// orthogonal-polarization measurements: eta = 1 - g2_par(0) / g2_perp(0).
inline double hom_visibility(const G2Result& parallel, const G2Result& perpendicular) {
  if (parallel.tau != perpendicular.tau)
    throw PhysicsError("hom_visibility: curves must share one tau grid");
  if (perpendicular.zero_delay == 0.0)
    throw PhysicsError("hom_visibility: perpendicular curve vanishes at zero delay");
  return 1.0 - parallel.zero_delay / perpendicular.zero_delay;
}

struct HomImperfectionFit {
  double jitter_sigma = 0.0;        // s
  double background_fraction = 0.0; // shared by both sources
  double g2_parallel_zero = 0.0;
  double g2_perp_zero = 0.0;
  int iterations = 0;
};

// Joint least-squares fit of detector jitter and a shared background
// fraction to measured zero-delay values for the parallel and orthogonal
// configurations. Damped Gauss-Newton with a numerical Jacobian; the
// least-squares optimum is reported even when the pair is not exactly
// attainable.
inline HomImperfectionFit fit_hom_imperfections(SinglePhotonSource s1, SinglePhotonSource s2,
                                                const DetectorModel& detector_template,
                                                double target_parallel, double target_perp) {
  auto evaluate = [&](double sigma, double b, double& g_par, double& g_perp) {
    SinglePhotonSource a = s1, c = s2;
    a.background_fraction = b;
    c.background_fraction = b;
    DetectorModel det = detector_template;
    det.timing_jitter_sigma = sigma;
    a.polarization_angle = 0.0;
    c.polarization_angle = 0.0;
    g_par = make_hom_model(a, c, det)(0.0);
    c.polarization_angle = pi / 2.0;
    g_perp = make_hom_model(a, c, det)(0.0);
  };

  double sigma = 0.4e-9, b = 0.03;
  double g_par = 0, g_perp = 0;
  double lambda = 1e-3;
  int iter = 0;
  for (; iter < 80; ++iter) {
    evaluate(sigma, b, g_par, g_perp);
    const double r1 = g_par - target_parallel;
    const double r2 = g_perp - target_perp;
    const double cost = r1 * r1 + r2 * r2;
    if (cost < 1e-14) break;

    const double ds = std::max(1e-3 * sigma, 1e-12);
    const double db = 1e-4;
    double gp1, gq1, gp2, gq2;
    evaluate(sigma + ds, b, gp1, gq1);
    evaluate(sigma, std::min(b + db, 0.94), gp2, gq2);
    const double j11 = (gp1 - g_par) / ds, j12 = (gp2 - g_par) / db;
    const double j21 = (gq1 - g_perp) / ds, j22 = (gq2 - g_perp) / db;

    // solve (J^T J + lambda diag) step = -J^T r
    const double a11 = j11 * j11 + j21 * j21, a12 = j11 * j12 + j21 * j22;
    const double a22 = j12 * j12 + j22 * j22;
    const double b1 = -(j11 * r1 + j21 * r2), b2 = -(j12 * r1 + j22 * r2);
    const double m11 = a11 * (1 + lambda), m22 = a22 * (1 + lambda);
    const double det = m11 * m22 - a12 * a12;
    if (std::abs(det) < 1e-300) break;
    const double step_s = (b1 * m22 - a12 * b2) / det;
    const double step_b = (m11 * b2 - a12 * b1) / det;

    const double new_sigma = std::clamp(sigma + step_s, 0.0, 5e-9);
    const double new_b = std::clamp(b + step_b, 0.0, 0.94);
    double np, nq;
    evaluate(new_sigma, new_b, np, nq);
    const double new_cost =
        (np - target_parallel) * (np - target_parallel) + (nq - target_perp) * (nq - target_perp);
    if (new_cost < cost) {
      sigma = new_sigma;
      b = new_b;
      lambda = std::max(lambda / 3.0, 1e-9);
      if (cost - new_cost < 1e-16) break;
    } else {
      lambda *= 10.0;
      if (lambda > 1e8) break;
    }
  }
  evaluate(sigma, b, g_par, g_perp);
  return HomImperfectionFit{sigma, b, g_par, g_perp, iter};
}

// Period of the detuning beat in the parallel-polarization curve, extracted
// from the oscillatory part: the same model evaluated with and without the
// beat is differenced, and the spacing of consecutive extrema of that
// residual equals half the beat period (exact for cos(w t) e^{-a t}).
inline double hom_beat_period(const SinglePhotonSource& s1, const SinglePhotonSource& s2,
                              const DetectorModel& detector) {
  HomModel with_beat = make_hom_model(s1, s2, detector);
  HomModel no_beat = with_beat;
  no_beat.beat_hz = 0.0;

  const double beat = std::abs(with_beat.beat_hz);
  if (beat == 0.0) throw PhysicsError("hom_beat_period: sources are degenerate");
  const double horizon = 2.2 / beat;
  const double dt = 1.0 / (beat * 400.0);

  auto residual = [&](double t) { return with_beat(t) - no_beat(t); };
  std::vector<double> extrema;
  double prev = residual(0.0);
  double cur = residual(dt);
  for (double t = 2 * dt; t < horizon && extrema.size() < 4; t += dt) {
    const double next = residual(t);
    const double d1 = cur - prev, d2 = next - cur;
    if (d1 * d2 < 0.0) {
      // parabolic refinement of the extremum position
      const double denom = d1 - d2;
      const double shift = denom != 0.0 ? 0.5 * (d1 + d2) / denom : 0.0;
      extrema.push_back(t - dt + shift * dt);
    }
    prev = cur;
    cur = next;
  }
  if (extrema.size() < 2) throw PhysicsError("hom_beat_period: no oscillation detected");
  double spacing = 0.0;
  for (size_t i = 1; i < extrema.size(); ++i) spacing += extrema[i] - extrema[i - 1];
  spacing /= (extrema.size() - 1);
  return 2.0 * spacing;
}

}  // namespace sivsim::interference
