#include "spikedclt/identities.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "spikedclt/errors.hpp"

namespace spikedclt {

namespace {
constexpr double kPi = std::numbers::pi;
}

namespace quad {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
struct GLRule {
  std::vector<double> x, w;
};

const GLRule& gl_rule() {
  static const GLRule rule = [] {
    constexpr int n = 16;
    GLRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (z * p0 - p1) / (z * z - 1.0);
        const double dz = p0 / pp;
        z -= dz;
        if (std::abs(dz) < 1e-15) break;
      }
      r.x[i] = -z;
      r.x[n - 1 - i] = z;
      r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return r;
  }();
  return rule;
}

template <class T, class F>
T gl_panel(const F& f, double lo, double hi) {
  const GLRule& r = gl_rule();
  const double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
  T acc{};
  for (std::size_t i = 0; i < r.x.size(); ++i) acc += T(r.w[i]) * f(mid + hw * r.x[i]);
  return acc * T(hw);
}

template <class T, class F>
T adaptive_rec(const F& f, double lo, double hi, T whole, double tol,
               double floor_per_width, int depth) {
  const double mid = 0.5 * (lo + hi);
  const T left = gl_panel<T>(f, lo, mid);
  const T right = gl_panel<T>(f, mid, hi);
  // The floor keeps the recursion from chasing tolerances below the rounding
  // noise of the panel sums (which would split forever).
  const double accept = std::max(tol, floor_per_width * (hi - lo));
  if (std::abs(left + right - whole) <= accept || depth >= 24) return left + right;
  return adaptive_rec<T>(f, lo, mid, left, 0.5 * tol, floor_per_width, depth + 1) +
         adaptive_rec<T>(f, mid, hi, right, 0.5 * tol, floor_per_width, depth + 1);
}

template <class T, class F>
T adaptive_impl(const F& f, double lo, double hi, double tol) {
  if (lo == hi) return T{};
  const T whole = gl_panel<T>(f, lo, hi);
  const double scale = 1.0 + std::abs(whole);
  const double floor_per_width = 32.0 * 2.2e-16 * scale / (hi - lo);
  return adaptive_rec<T>(f, lo, hi, whole, tol * scale, floor_per_width, 0);
}

}  // namespace

double adaptive_gl(const std::function<double(double)>& f, double lo, double hi, double tol) {
  return adaptive_impl<double>(f, lo, hi, tol);
}

std::complex<double> adaptive_gl_c(const std::function<std::complex<double>(double)>& f,
                                   double lo, double hi, double tol) {
  return adaptive_impl<std::complex<double>>(f, lo, hi, tol);
}

double pv_angle(const std::function<double(double)>& H, double theta0, double tol) {
  if (!(theta0 > 0.0 && theta0 < kPi))
    throw domain_error("pv_angle: singular angle must be interior to (0, pi)");
  const double d = std::min(theta0, kPi - theta0);
  const double ct = std::cos(theta0), st = std::sin(theta0);

  // Symmetric pair about the singularity, combined over the common denominator
  // so that no large intermediate reciprocals are formed:
  //   D-+ = cos(t0) - cos(t0 -+ u) = cos(t0)(1-cos u) -+ sin(t0) sin(u).
  auto paired = [&](double u) {
    const double sh = std::sin(0.5 * u);
    const double omc = 2.0 * sh * sh;  // 1 - cos u, no cancellation at small u
    const double su = std::sin(u);
    const double hm = H(theta0 - u), hp = H(theta0 + u);
    const double num = ct * omc * (hm + hp) + st * su * (hm - hp);
    const double den = (ct * omc - st * su) * (ct * omc + st * su);
    return num / den;
  };
  double total = adaptive_impl<double>(paired, 0.0, d, tol);

  // Leftover piece at distance >= d from the singularity.
  double lo = 0.0, hi = 0.0;
  if (theta0 > 0.5 * kPi) {
    lo = 0.0;
    hi = theta0 - d;
  } else {
    lo = theta0 + d;
    hi = kPi;
  }
  if (hi > lo)
    total += adaptive_impl<double>(
        [&](double phi) { return H(phi) / (ct - std::cos(phi)); }, lo, hi, tol);
  return total;
}

}  // namespace quad

namespace {

using cplx = std::complex<double>;

struct IdentitySpec {
  int arity;                   // expected parameter count
  bool needs_b_below_one;      // ln(1-x) family
  std::function<cplx(const std::vector<double>&)> lhs;
  std::function<cplx(const std::vector<double>&)> rhs;
};

double xa(double a, double b, double phi) { return 0.5 * (a + b) + 0.5 * (b - a) * std::cos(phi); }

// The shared angle substitution x = center + hw*cos(phi) turns every
// 1/sqrt((b-x)(x-a)) weight into a plain d(phi) integral.
double smooth_rhs(double a, double b, const std::function<double(double)>& g) {
  return quad::adaptive_gl([&](double phi) { return g(xa(a, b, phi)); }, 0.0, kPi, 1e-13);
}

cplx smooth_rhs_c(double a, double b, const std::function<cplx(double)>& g) {
  return quad::adaptive_gl_c([&](double phi) { return g(xa(a, b, phi)); }, 0.0, kPi, 1e-13);
}

double pv_rhs(double a, double b, double y, const std::function<double(double)>& H) {
  const double theta0 = std::acos((y - 0.5 * (a + b)) / (0.5 * (b - a)));
  return quad::pv_angle(H, theta0, 1e-13);
}

// Branch with A(z) ~ z at infinity: principal square roots per factor.
cplx branch_sqrt(cplx z, double a, double b) { return std::sqrt(z - a) * std::sqrt(z - b); }

const std::map<std::string, IdentitySpec>& catalog() {
  static const std::map<std::string, IdentitySpec> cat = [] {
    std::map<std::string, IdentitySpec> m;

    m["C248"] = {3, false,
                 [](const std::vector<double>& p) {
                   return cplx(2.0 * kPi *
                               std::log(0.5 * (std::sqrt(p[2] + p[0]) + std::sqrt(p[2] + p[1]))));
                 },
                 [](const std::vector<double>& p) {
                   return cplx(smooth_rhs(p[0], p[1],
                                          [&](double x) { return std::log(x + p[2]); }));
                 }};

    m["C263"] = {3, false,
                 [](const std::vector<double>& p) {
                   return cplx(kPi / std::sqrt((p[2] + p[0]) * (p[2] + p[1])));
                 },
                 [](const std::vector<double>& p) {
                   return cplx(
                       smooth_rhs(p[0], p[1], [&](double x) { return 1.0 / (x + p[2]); }));
                 }};

    m["C264"] = {2, false, [](const std::vector<double>&) { return cplx(kPi); },
                 [](const std::vector<double>& p) {
                   return cplx(smooth_rhs(p[0], p[1], [](double) { return 1.0; }));
                 }};

    m["C265"] = {2, false,
                 [](const std::vector<double>& p) { return cplx(kPi * 0.5 * (p[0] + p[1])); },
                 [](const std::vector<double>& p) {
                   return cplx(smooth_rhs(p[0], p[1], [](double x) { return x; }));
                 }};

    m["C250"] = {3, false,
                 [](const std::vector<double>& p) {
                   const double a = p[0], b = p[1], t = p[2];
                   const double s = std::sqrt(a * b) + std::sqrt((t + a) * (t + b));
                   const double q = (s * s - t * t) / ((std::sqrt(a) + std::sqrt(b)) *
                                                       (std::sqrt(a) + std::sqrt(b)));
                   return cplx(kPi / std::sqrt(a * b) * std::log(q));
                 },
                 [](const std::vector<double>& p) {
                   return cplx(smooth_rhs(p[0], p[1],
                                          [&](double x) { return std::log(x + p[2]) / x; }));
                 }};

    m["C251"] = {3, false,
                 [](const std::vector<double>& p) {
                   const double a = p[0], b = p[1], t = p[2];
                   const double d = std::sqrt(a + t) - std::sqrt(b + t);
                   return cplx(kPi * d * d / 2.0 +
                               kPi * 0.5 * (a + b) *
                                   std::log((2.0 * (t + std::sqrt((a + t) * (b + t))) + a + b) /
                                            4.0));
                 },
                 [](const std::vector<double>& p) {
                   return cplx(smooth_rhs(p[0], p[1],
                                          [&](double x) { return x * std::log(x + p[2]); }));
                 }};

    m["C253"] = {2, true,
                 [](const std::vector<double>& p) {
                   return cplx(2.0 * kPi *
                               std::log(0.5 * (std::sqrt(1 - p[0]) + std::sqrt(1 - p[1]))));
                 },
                 [](const std::vector<double>& p) {
                   return cplx(
                       smooth_rhs(p[0], p[1], [](double x) { return std::log(1.0 - x); }));
                 }};

    m["C254"] = {2, true,
                 [](const std::vector<double>& p) {
                   const double a = p[0], b = p[1];
                   const double d = std::sqrt(a * b) - std::sqrt((1 - a) * (1 - b));
                   const double q = (1 - d * d) / ((std::sqrt(a) + std::sqrt(b)) *
                                                   (std::sqrt(a) + std::sqrt(b)));
                   return cplx(kPi / std::sqrt(a * b) * std::log(q));
                 },
                 [](const std::vector<double>& p) {
                   return cplx(
                       smooth_rhs(p[0], p[1], [](double x) { return std::log(1.0 - x) / x; }));
                 }};

    m["C255"] = {2, true,
                 [](const std::vector<double>& p) {
                   const double a = p[0], b = p[1];
                   const double r = std::sqrt((1 - a) * (1 - b));
                   return cplx(2.0 * kPi / r *
                               std::log(0.5 / std::sqrt(1 - a) + 0.5 / std::sqrt(1 - b)));
                 },
                 [](const std::vector<double>& p) {
                   return cplx(smooth_rhs(
                       p[0], p[1], [](double x) { return std::log(1.0 - x) / (x - 1.0); }));
                 }};

    m["C266"] = {3, false, [](const std::vector<double>&) { return cplx(0.0); },
                 [](const std::vector<double>& p) {
                   const double B = 0.5 * (p[1] - p[0]);
                   return cplx(pv_rhs(p[0], p[1], p[2], [B](double) { return 1.0 / B; }));
                 }};

    m["C267"] = {3, false,
                 [](const std::vector<double>& p) {
                   return cplx(kPi * (1.0 - std::sqrt(p[0] * p[1]) / p[2]));
                 },
                 [](const std::vector<double>& p) {
                   const double B = 0.5 * (p[1] - p[0]);
                   return cplx(pv_rhs(p[0], p[1], p[2], [&, B](double phi) {
                     const double s = std::sin(phi);
                     return B * s * s / xa(p[0], p[1], phi);
                   }));
                 }};

    m["C268"] = {3, false,
                 [](const std::vector<double>& p) {
                   return cplx(kPi * (p[2] - 0.5 * (p[0] + p[1])));
                 },
                 [](const std::vector<double>& p) {
                   const double B = 0.5 * (p[1] - p[0]);
                   return cplx(pv_rhs(p[0], p[1], p[2], [B](double phi) {
                     const double s = std::sin(phi);
                     return B * s * s;
                   }));
                 }};

    m["C269"] = {3, true,
                 [](const std::vector<double>& p) {
                   return cplx(kPi * (std::sqrt((1 - p[0]) * (1 - p[1])) / (1.0 - p[2]) - 1.0));
                 },
                 [](const std::vector<double>& p) {
                   const double B = 0.5 * (p[1] - p[0]);
                   return cplx(pv_rhs(p[0], p[1], p[2], [&, B](double phi) {
                     const double s = std::sin(phi);
                     return B * s * s / (1.0 - xa(p[0], p[1], phi));
                   }));
                 }};

    m["C263neg"] = {3, false,
                    [](const std::vector<double>& p) {
                      return cplx(-kPi / std::sqrt((p[2] - p[0]) * (p[2] - p[1])));
                    },
                    [](const std::vector<double>& p) {
                      return cplx(smooth_rhs(p[0], p[1],
                                             [&](double x) { return 1.0 / (x - p[2]); }));
                    }};

    m["Cpvnull"] = {3, false, [](const std::vector<double>&) { return cplx(0.0); },
                    [](const std::vector<double>& p) {
                      const double S = std::sqrt((p[2] - p[0]) * (p[2] - p[1]));
                      return cplx(smooth_rhs(p[0], p[1], [&](double x) {
                        return S / (p[2] - x) - 1.0;
                      }));
                    }};

    m["CH"] = {4, true,
               [](const std::vector<double>& p) {
                 const double a = p[0], b = p[1];
                 const cplx z(p[2], p[3]);
                 const cplx A = branch_sqrt(z, a, b);
                 const cplx num = 2.0 * A + 2.0 * z - a - b;
                 const cplx den = 2.0 * A * std::sqrt((1 - a) * (1 - b)) + z * (2.0 - a - b) -
                                  a - b + 2.0 * a * b;
                 return kPi / A * std::log(num / den);
               },
               [](const std::vector<double>& p) {
                 const cplx z(p[2], p[3]);
                 return smooth_rhs_c(p[0], p[1], [&](double x) {
                   return cplx(std::log(1.0 - x)) / (x - z);
                 });
               }};

    m["CG"] = {5, false,
               [](const std::vector<double>& p) {
                 const double a = p[0], b = p[1], t = p[2];
                 const cplx z(p[3], p[4]);
                 const cplx A = branch_sqrt(z, a, b);
                 const cplx tz = t + z;
                 const cplx R = std::sqrt(A * A + (a + b - 2.0 * z) * tz + tz * tz);
                 const cplx num = 2.0 * A * A + (a + b - 2.0 * z) * tz + 2.0 * A * R;
                 const cplx den = tz * tz * (a + b - 2.0 * z + 2.0 * A);
                 return kPi / A * std::log(num / den);
               },
               [](const std::vector<double>& p) {
                 const cplx z(p[3], p[4]);
                 return smooth_rhs_c(p[0], p[1], [&](double x) {
                   return cplx(std::log(x + p[2])) / (x - z);
                 });
               }};

    return m;
  }();
  return cat;
}

}  // namespace

const std::vector<std::string>& identity_catalog() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : catalog()) v.push_back(k);
    return v;
  }();
  return ids;
}

IdentityCheck verify_identity(const std::string& id, const std::vector<double>& params) {
  const auto it = catalog().find(id);
  if (it == catalog().end()) throw domain_error("unknown identity id: " + id);
  const IdentitySpec& spec = it->second;
  if (static_cast<int>(params.size()) != spec.arity)
    throw domain_error("identity " + id + " expects " + std::to_string(spec.arity) +
                       " parameters");
  const double a = params[0], b = params[1];
  if (!(0.0 < a && a < b)) throw domain_error("identity " + id + " requires 0 < a < b");
  if (spec.needs_b_below_one && !(b < 1.0))
    throw domain_error("identity " + id + " requires b < 1");
  if (id == "CH" || id == "CG") {
    const double zr = params[spec.arity - 2], zi = params[spec.arity - 1];
    if (zi == 0.0 && zr >= a && zr <= b)
      throw domain_error("identity " + id + " needs z off the cut [a, b]");
  }

  IdentityCheck out;
  out.lhs = spec.lhs(params);
  out.rhs = spec.rhs(params);
  out.residual = std::abs(out.lhs - out.rhs) / (1.0 + std::abs(out.lhs));
  return out;
}

std::vector<IdentitySummary> run_identity_suite(int draws_per_identity, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto unif = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };

  std::vector<IdentitySummary> out;
  for (const auto& id : identity_catalog()) {
    const IdentitySpec& spec = catalog().at(id);
    IdentitySummary sum{id, draws_per_identity, 0.0};
    for (int d = 0; d < draws_per_identity; ++d) {
      double a, b;
      if (spec.needs_b_below_one) {
        a = unif(0.02, 0.55);
        b = unif(a + 0.05, 0.97);
      } else {
        a = unif(0.05, 2.0);
        b = a + unif(0.1, 3.0);
      }
      std::vector<double> p{a, b};
      if (id == "C266" || id == "C267" || id == "C268" || id == "C269") {
        p.push_back(a + (0.02 + 0.96 * unif(0.0, 1.0)) * (b - a));
      } else if (id == "CH" || id == "CG") {
        if (id == "CG") p.push_back(b + unif(0.05, 5.0));  // t
        // z: real beyond the cut, real below it, or complex away from it.
        const double mode = unif(0.0, 1.0);
        if (mode < 0.35) {
          p.push_back(b + unif(0.05, 4.0));
          p.push_back(0.0);
        } else if (mode < 0.5) {
          p.push_back(a - unif(0.05, 3.0));
          p.push_back(0.0);
        } else {
          p.push_back(unif(a - 2.0, b + 2.0));
          p.push_back((unif(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * unif(0.2, 2.5));
        }
      } else if (spec.arity == 3) {
        p.push_back(b + unif(0.05, 5.0));  // t > b
      }
      sum.max_residual = std::max(sum.max_residual, verify_identity(id, p).residual);
    }
    out.push_back(sum);
  }
  return out;
}

}  // namespace spikedclt
