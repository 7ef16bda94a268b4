#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "spikedclt/ensemble.hpp"

namespace spikedclt {

// A linear spectral statistic is determined by the scalar map f applied to
// each eigenvalue. derivative is optional: the production variance path only
// needs f, the principal-value oracle also needs f'.
struct LinearStatistic {
  std::string name;
  std::vector<double> params;
  std::function<double(double)> evaluate;
  std::function<double(double)> derivative;  // empty when unavailable
  double domain_lower = -std::numeric_limits<double>::infinity();
  bool requires_positive_support = false;

  bool has_derivative() const { return static_cast<bool>(derivative); }
};

// kind in {linear, polynomial, lrt, capacity, log1p, chebyshev}.
//   polynomial: params = c0, c1, ... (sum ck x^k)
//   lrt:        params = {c}, f(x) = x/c - ln(x/c) - 1, requires c > 1
//   capacity:   params = {T}, f(x) = ln(1 + x/T), requires T > 0
//   chebyshev:  params = series coefficients a0, a1, ... on *cheb_interval
// cheb_interval is only consulted for kind = chebyshev and is required there.
LinearStatistic make_statistic(const std::string& kind, const std::vector<double>& params,
                               const SupportInterval* cheb_interval = nullptr);

// CLI grammar: linear | lrt | capacity:T=<v> | log1p | poly:c0,c1,... | cheb:a0,a1,...
// lrt binds the ratio of the model at hand (models A/B only); cheb coefficients
// are interpreted on the model's support interval.
LinearStatistic parse_statistic(const std::string& text, const EnsembleSpec& spec,
                                const SupportInterval& support);

struct DomainCheck {
  bool ok = true;
  std::string violation;  // empty when ok
};

// ok iff the statistic is defined on an open neighbourhood of [a, b]:
// domain_lower < a strictly, or the statistic is unrestricted.
DomainCheck check_domain(const LinearStatistic& stat, const SupportInterval& interval);

// f(x) with a domain check; throws domain_error naming x when undefined.
double evaluate_statistic(const LinearStatistic& stat, double x);

}  // namespace spikedclt
