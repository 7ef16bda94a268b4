#include "spikedclt/ensemble.hpp"

#include <cmath>

namespace spikedclt {

const char* to_string(Model m) {
  switch (m) {
    case Model::A: return "A";
    case Model::B: return "B";
    case Model::C: return "C";
  }
  return "?";
}

const char* to_string(SpikeRegime r) {
  switch (r) {
    case SpikeRegime::zero_spike: return "zero_spike";
    case SpikeRegime::subcritical: return "subcritical";
    case SpikeRegime::critical: return "critical";
    case SpikeRegime::supercritical: return "supercritical";
  }
  return "?";
}

EnsembleSpec EnsembleSpec::model_a(double c, double delta) {
  EnsembleSpec s;
  s.model = Model::A;
  s.c = c;
  s.spike = delta;
  s.validate();
  return s;
}

EnsembleSpec EnsembleSpec::model_b(double c, double nu) {
  EnsembleSpec s;
  s.model = Model::B;
  s.c = c;
  s.spike = nu;
  s.validate();
  return s;
}

EnsembleSpec EnsembleSpec::model_c(double c1, double c2, double nu) {
  EnsembleSpec s;
  s.model = Model::C;
  s.c1 = c1;
  s.c2 = c2;
  s.spike = nu;
  s.validate();
  return s;
}

void EnsembleSpec::validate() const {
  if (!(spike >= 0.0) || !std::isfinite(spike))
    throw domain_error("spike must be a finite value >= 0");
  switch (model) {
    case Model::A:
    case Model::B:
      if (!(c >= 1.0) || !std::isfinite(c))
        throw domain_error("models A/B require aspect ratio c >= 1");
      break;
    case Model::C:
      if (!(c1 > 1.0) || !(c2 > 1.0) || !std::isfinite(c1) || !std::isfinite(c2))
        throw domain_error("model C requires aspect ratios c1 > 1 and c2 > 1");
      break;
  }
}

SupportInterval make_interval(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw domain_error("support interval requires finite a < b");
  SupportInterval s;
  s.a = a;
  s.b = b;
  s.center = 0.5 * (a + b);
  s.half_width = 0.5 * (b - a);
  return s;
}

SupportInterval support_interval(const EnsembleSpec& spec) {
  spec.validate();
  if (spec.model == Model::C) {
    const double c1 = spec.c1, c2 = spec.c2;
    const double root = 2.0 * std::sqrt(c1 * c2 * (c1 + c2 - 1.0));
    const double base = c1 * (c1 + c2 - 1.0) + c2;
    const double den = (c1 + c2) * (c1 + c2);
    return make_interval((base - root) / den, (base + root) / den);
  }
  const double sc = std::sqrt(spec.c);
  return make_interval((1.0 - sc) * (1.0 - sc), (1.0 + sc) * (1.0 + sc));
}

double criticality_threshold(const EnsembleSpec& spec) {
  spec.validate();
  switch (spec.model) {
    case Model::A: return 1.0 / std::sqrt(spec.c);
    case Model::B: return std::sqrt(spec.c);
    case Model::C:
      return (spec.c1 + std::sqrt(spec.c1 * spec.c2 * (spec.c1 + spec.c2 - 1.0))) /
             (spec.c2 - 1.0);
  }
  throw domain_error("unknown model");
}

SpikeGeometry spike_geometry(const EnsembleSpec& spec, double critical_band) {
  spec.validate();
  SpikeGeometry g;
  g.threshold = criticality_threshold(spec);
  if (spec.spike == 0.0) {
    g.regime = SpikeRegime::zero_spike;
    return g;
  }

  const double s = spec.spike;
  switch (spec.model) {
    case Model::A:
      g.z0 = (1.0 + spec.c * s) * (1.0 + s) / s;
      g.S = (1.0 - spec.c * s * s) / s;
      break;
    case Model::B:
      g.z0 = (1.0 + s) * (spec.c + s) / s;
      g.S = spec.c / s - s;
      break;
    case Model::C: {
      const double c1 = spec.c1, c2 = spec.c2;
      g.z0 = (1.0 + s) * (c1 + s) / (s * (c1 + c2 + s));
      g.S = (c1 * (c1 + c2) + 2.0 * c1 * s - (c2 - 1.0) * s * s) /
            (s * (c1 + c2 + s) * (c1 + c2));
      break;
    }
  }

  if (std::abs(s - g.threshold) < critical_band * g.threshold) {
    g.regime = SpikeRegime::critical;
    g.S = 0.0;
  } else if (s < g.threshold) {
    g.regime = SpikeRegime::subcritical;
  } else {
    g.regime = SpikeRegime::supercritical;
  }

  // Joukowski parameter from z0 = center + hw*(w + 1/w)/2 together with
  // S = hw*(w - 1/w)/2; the branch-resolved S picks the root with |w| > 1
  // exactly in the subcritical regime.
  const SupportInterval iv = support_interval(spec);
  g.w = (g.z0 - iv.center + g.S) / iv.half_width;
  return g;
}

}  // namespace spikedclt
