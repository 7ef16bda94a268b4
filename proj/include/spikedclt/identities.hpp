#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace spikedclt {

// Catalog of the closed-form integral identities over sqrt((b-x)(x-a)) weights
// used throughout the derivations, each paired with an independent adaptive
// quadrature of its left side. Parameters are a flat list per id:
//   C248, C250, C251, C263, C263neg, Cpvnull, CG : (a, b, t [, z_re, z_im for CG])
//   C264, C265, C253, C254, C255                 : (a, b)
//   C266, C267, C268                             : (a, b, y)        y in (a,b)
//   C269                                         : (a, b, x)        x in (a,b)
//   CH                                           : (a, b, z_re, z_im)
// Constraints: 0 < a < b always; b < 1 for the ln(1-x) ids (C253..C255, C269, CH);
// t > b; y (or x) strictly inside (a, b); z off the cut [a, b].
struct IdentityCheck {
  std::complex<double> lhs;  // closed form
  std::complex<double> rhs;  // adaptive quadrature (principal value where needed)
  double residual = 0.0;     // |lhs-rhs| / (1+|lhs|)
};

const std::vector<std::string>& identity_catalog();

IdentityCheck verify_identity(const std::string& id, const std::vector<double>& params);

struct IdentitySummary {
  std::string id;
  int draws = 0;
  double max_residual = 0.0;
};

// Randomized parameter sweep of the whole catalog (the executable formula sheet).
std::vector<IdentitySummary> run_identity_suite(int draws_per_identity, std::uint64_t seed);

// Shared quadrature utilities (used by the identity suite and tests).
namespace quad {

// Adaptive Gauss-Legendre on [lo, hi]; T is double or std::complex<double>.
double adaptive_gl(const std::function<double(double)>& f, double lo, double hi,
                   double tol = 1e-12);
std::complex<double> adaptive_gl_c(const std::function<std::complex<double>(double)>& f,
                                   double lo, double hi, double tol = 1e-12);

// P.V. integral over [0, pi] of H(phi)/(cos(theta0) - cos(phi)) for theta0 in
// (0, pi), by symmetric pairing around the singular angle.
double pv_angle(const std::function<double(double)>& H, double theta0, double tol = 1e-12);

}  // namespace quad

}  // namespace spikedclt
