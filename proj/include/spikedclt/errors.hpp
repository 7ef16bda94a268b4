#pragma once

#include <stdexcept>

namespace spikedclt {

// Input is outside the mathematical domain of an operation (bad ratios,
// statistic undefined on the support, critical-regime refusal, ...).
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// A numeric procedure failed to converge or lost too much precision.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace spikedclt
