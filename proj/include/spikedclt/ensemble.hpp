#pragma once

#include <cmath>
#include <string>

#include "spikedclt/errors.hpp"

namespace spikedclt {

// The three spiked Hermitian ensembles:
//   A — central Wishart with one covariance eigenvalue 1+delta,
//   B — non-central Wishart with a rank-one non-centrality of eigenvalue n*nu,
//   C — non-central F matrix W1*W2^{-1}, rank-one non-centrality in W1.
enum class Model { A, B, C };

enum class SpikeRegime { zero_spike, subcritical, critical, supercritical };

const char* to_string(Model m);
const char* to_string(SpikeRegime r);

struct EnsembleSpec {
  Model model = Model::A;
  double c = 1.0;             // limit of m/n (models A, B)
  double c1 = 0.0, c2 = 0.0;  // limits of m1/n, m2/n (model C)
  double spike = 0.0;         // delta for model A, nu for models B and C

  static EnsembleSpec model_a(double c, double delta);
  static EnsembleSpec model_b(double c, double nu);
  static EnsembleSpec model_c(double c1, double c2, double nu);

  // Throws domain_error unless c >= 1 (A/B), c1 > 1 and c2 > 1 (C), spike >= 0.
  void validate() const;
};

// Bulk support [a, b] of the limiting eigenvalue density (one-cut regime).
struct SupportInterval {
  double a = 0.0;
  double b = 0.0;
  double center = 0.0;      // (a+b)/2
  double half_width = 0.0;  // (b-a)/2

  double x_of_angle(double theta) const { return center + half_width * std::cos(theta); }
};

SupportInterval make_interval(double a, double b);

// Saddlepoint data of the spike. S is the branch-resolved sqrt((z0-a)(z0-b)):
// positive below the criticality threshold, negative above it, zero exactly at
// it. w is the Joukowski parameter, z0 = center + half_width*(w + 1/w)/2 with
// |w| > 1 iff subcritical. z0, S, w are NaN in the zero_spike regime.
struct SpikeGeometry {
  double z0 = std::nan("");
  double S = std::nan("");
  double w = std::nan("");
  SpikeRegime regime = SpikeRegime::zero_spike;
  double threshold = 0.0;
};

SupportInterval support_interval(const EnsembleSpec& spec);

// Spike value at which the outlier eigenvalue detaches from the bulk:
// 1/sqrt(c) (A), sqrt(c) (B), (c1 + sqrt(c1 c2 (c1+c2-1)))/(c2-1) (C).
double criticality_threshold(const EnsembleSpec& spec);

// critical_band is relative: |spike - threshold| < critical_band*threshold is
// classified critical (z0 = b, S = 0 make the spike correction degenerate).
SpikeGeometry spike_geometry(const EnsembleSpec& spec, double critical_band = 1e-9);

}  // namespace spikedclt
