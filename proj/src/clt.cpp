#include "spikedclt/clt.hpp"

#include <cmath>

namespace spikedclt {

LinearStatistic compose_for_model_c(const LinearStatistic& stat) {
  LinearStatistic g;
  g.name = stat.name + "(x/(1-x))";
  g.params = stat.params;
  auto f = stat.evaluate;
  g.evaluate = [f](double x) { return f(x / (1.0 - x)); };
  if (stat.has_derivative()) {
    auto fd = stat.derivative;
    g.derivative = [fd](double x) {
      const double om = 1.0 - x;
      return fd(x / om) / (om * om);
    };
  }
  // Map the domain bound through the increasing bijection u -> u/(1+u); a
  // bound of -1 or below never binds on (0, 1).
  if (std::isfinite(stat.domain_lower)) {
    if (stat.domain_lower > -1.0)
      g.domain_lower = stat.domain_lower / (1.0 + stat.domain_lower);
    g.requires_positive_support = stat.requires_positive_support;
  }
  return g;
}

CltParams clt_params(const EnsembleSpec& spec, const LinearStatistic& stat, int n,
                     const QuadratureConfig& cfg) {
  spec.validate();
  cfg.validate();
  if (n < 2) throw domain_error("clt_params: requires n >= 2");

  const SupportInterval support = support_interval(spec);
  const LinearStatistic working =
      (spec.model == Model::C) ? compose_for_model_c(stat) : stat;
  const auto domain = check_domain(working, support);
  if (!domain.ok) throw domain_error(domain.violation);

  const ChebyshevSeries series = chebyshev_coefficients(working, support, cfg);
  const SpikeGeometry geom = spike_geometry(spec);

  CltParams out;
  out.n = n;
  out.regime = geom.regime;
  out.mu = mean_integral(series, spec, cfg);
  out.sigma2 = variance_from_series(series);
  out.mu_bar = spike_correction(series, geom, cfg);
  out.predicted_mean = n * out.mu + out.mu_bar;
  out.outlier_adjusted_mean = out.predicted_mean;
  if (geom.regime == SpikeRegime::supercritical)
    out.outlier_adjusted_mean += working.evaluate(geom.z0);
  return out;
}

std::pair<double, double> predicted_distribution(const CltParams& params) {
  return {params.predicted_mean, std::sqrt(params.sigma2)};
}

}  // namespace spikedclt
