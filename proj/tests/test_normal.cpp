#include <doctest.h>

#include <cmath>

#include "spikedclt/normal.hpp"
#include "spikedclt/errors.hpp"

using namespace spikedclt;

TEST_CASE("normal cdf and quantile") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  // Classic two-sided 95% critical value.
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(normal_quantile(0.95) == doctest::Approx(1.6448536269514722).epsilon(1e-12));

  // Round trips to absolute 1e-12 across the working range.
  for (double p = 1e-10; p < 1.0; p = p * 1.7 + 1e-3) {
    CHECK(std::abs(normal_cdf(normal_quantile(p)) - p) < 1e-12);
  }
  // Symmetry.
  for (double p : {0.01, 0.1, 0.3, 0.45}) {
    CHECK(normal_quantile(p) == doctest::Approx(-normal_quantile(1.0 - p)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(normal_quantile(1.5), domain_error);
}
