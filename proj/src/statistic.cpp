#include "spikedclt/statistic.hpp"

#include <cmath>
#include <sstream>

namespace spikedclt {

namespace {

double horner(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> poly_derivative(const std::vector<double>& coeffs) {
  std::vector<double> d;
  for (std::size_t k = 1; k < coeffs.size(); ++k) d.push_back(double(k) * coeffs[k]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

// Clenshaw recurrence for sum_k a_k T_k(t); valid for all real t since the
// series here is a finite polynomial.
double clenshaw(const std::vector<double>& a, double t) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = a.size(); k-- > 1;) {
    const double b0 = 2.0 * t * b1 - b2 + a[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + 0.5 * a[0];
}

// Coefficients of the derivative of a Chebyshev series (standard backward
// recurrence), in the scaled variable t.
std::vector<double> cheb_derivative_coeffs(const std::vector<double>& a) {
  const std::size_t n = a.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  for (std::size_t k = n - 1; k-- > 0;) {
    d[k] = (k + 2 < n ? d[k + 2] : 0.0) + 2.0 * double(k + 1) * a[k + 1];
  }
  return d;
}

}  // namespace

LinearStatistic make_statistic(const std::string& kind, const std::vector<double>& params,
                               const SupportInterval* cheb_interval) {
  LinearStatistic s;
  s.name = kind;
  s.params = params;

  if (kind == "linear") {
    if (!params.empty()) throw domain_error("linear statistic takes no parameters");
    s.evaluate = [](double x) { return x; };
    s.derivative = [](double) { return 1.0; };
    return s;
  }

  if (kind == "polynomial" || kind == "poly") {
    if (params.empty()) throw domain_error("polynomial statistic needs coefficients");
    s.name = "polynomial";
    auto dcoef = poly_derivative(params);
    s.evaluate = [params](double x) { return horner(params, x); };
    s.derivative = [dcoef](double x) { return horner(dcoef, x); };
    return s;
  }

  if (kind == "lrt") {
    if (params.size() != 1) throw domain_error("lrt statistic takes a single ratio parameter");
    const double c = params[0];
    if (!(c > 1.0)) throw domain_error("lrt statistic requires c > 1");
    s.evaluate = [c](double x) { return x / c - std::log(x / c) - 1.0; };
    s.derivative = [c](double x) { return 1.0 / c - 1.0 / x; };
    s.domain_lower = 0.0;
    s.requires_positive_support = true;
    return s;
  }

  if (kind == "capacity") {
    if (params.size() != 1) throw domain_error("capacity statistic takes a single parameter T");
    const double T = params[0];
    if (!(T > 0.0)) throw domain_error("capacity statistic requires T > 0");
    s.evaluate = [T](double x) { return std::log1p(x / T); };
    s.derivative = [T](double x) { return 1.0 / (T + x); };
    s.domain_lower = -T;
    s.requires_positive_support = true;
    return s;
  }

  if (kind == "log1p") {
    if (!params.empty()) throw domain_error("log1p statistic takes no parameters");
    s.evaluate = [](double x) { return std::log1p(x); };
    s.derivative = [](double x) { return 1.0 / (1.0 + x); };
    s.domain_lower = -1.0;
    s.requires_positive_support = true;
    return s;
  }

  if (kind == "chebyshev" || kind == "cheb") {
    if (params.empty()) throw domain_error("chebyshev statistic needs coefficients");
    if (cheb_interval == nullptr)
      throw domain_error("chebyshev statistic needs a caller-supplied interval");
    s.name = "chebyshev";
    const double center = cheb_interval->center, hw = cheb_interval->half_width;
    auto dcoef = cheb_derivative_coeffs(params);
    s.evaluate = [params, center, hw](double x) { return clenshaw(params, (x - center) / hw); };
    s.derivative = [dcoef, center, hw](double x) {
      return clenshaw(dcoef, (x - center) / hw) / hw;
    };
    return s;
  }

  throw domain_error("unknown statistic kind: " + kind);
}

namespace {

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(tok, &pos);
    } catch (const std::exception&) {
      throw domain_error("bad number in statistic spec: '" + tok + "'");
    }
    if (pos != tok.size()) throw domain_error("bad number in statistic spec: '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw domain_error("empty coefficient list in statistic spec");
  return out;
}

}  // namespace

LinearStatistic parse_statistic(const std::string& text, const EnsembleSpec& spec,
                                const SupportInterval& support) {
  if (text == "linear") return make_statistic("linear", {});
  if (text == "log1p") return make_statistic("log1p", {});
  if (text == "lrt") {
    if (spec.model == Model::C)
      throw domain_error("lrt statistic binds the Wishart ratio c; use models A/B");
    return make_statistic("lrt", {spec.c});
  }
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  if (head == "capacity") {
    if (colon == std::string::npos || text.compare(colon, 3, ":T=") != 0)
      throw domain_error("capacity statistic syntax is capacity:T=<value>");
    return make_statistic("capacity", parse_number_list(text.substr(colon + 3)));
  }
  if (head == "poly") {
    if (colon == std::string::npos) throw domain_error("poly statistic syntax is poly:c0,c1,...");
    return make_statistic("polynomial", parse_number_list(text.substr(colon + 1)));
  }
  if (head == "cheb") {
    if (colon == std::string::npos) throw domain_error("cheb statistic syntax is cheb:a0,a1,...");
    return make_statistic("chebyshev", parse_number_list(text.substr(colon + 1)), &support);
  }
  throw domain_error("unknown statistic spec: '" + text + "'");
}

DomainCheck check_domain(const LinearStatistic& stat, const SupportInterval& interval) {
  DomainCheck r;
  if (std::isinf(stat.domain_lower) && stat.domain_lower < 0) return r;
  if (stat.domain_lower < interval.a) return r;
  std::ostringstream os;
  os << "statistic '" << stat.name << "' needs support above " << stat.domain_lower
     << " but the interval starts at a = " << interval.a;
  r.ok = false;
  r.violation = os.str();
  return r;
}

double evaluate_statistic(const LinearStatistic& stat, double x) {
  if (x <= stat.domain_lower) {
    std::ostringstream os;
    os << "statistic '" << stat.name << "' undefined at x = " << x;
    throw domain_error(os.str());
  }
  return stat.evaluate(x);
}

}  // namespace spikedclt
