#pragma once

#include "saw/interval.hpp"

namespace saw {

struct FindOptions {
  /// Candidate sub-boxes examined per set before giving up.
  std::size_t candidate_budget = 4096;
  /// Certification budget per candidate sub-box.
  std::size_t cert_budget = 256;
};

/// An open box certified inside every set listed in `inside` and disjoint
/// from every set listed in `outside`; the two lists partition 0..k-1.
struct UniformBoxResult {
  Box v;
  std::vector<std::size_t> inside;
  std::vector<std::size_t> outside;
  /// certificates[i] is the status of set i on v.
  std::vector<BoxStatus> certificates;
};

/// Shrinks `initial` one set at a time, breadth first over the bisection
/// tree; within a level the first FullyOut box wins, else the first FullyIn.
/// Throws BudgetExhausted naming the first set that could not be certified.
UniformBoxResult find_uniform_box(const std::vector<SemiAlgebraicSet>& lambdas, const Box& initial,
                                  const FindOptions& options = {});

}  // namespace saw
