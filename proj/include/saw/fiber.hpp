#pragma once

#include "saw/semialgebraic.hpp"

#include <optional>
#include <span>

namespace saw {

enum class Answer { In, Out, Unknown };

std::string to_string(Answer a);

struct FiberOptions {
  /// Boxes examined per disjunct before giving up.
  std::size_t cert_budget = 256;
  /// Subintervals scanned per univariate root isolation.
  std::size_t root_grid = 8;
};

/// Decides whether some completion of `fixed` (free where nullopt) lies in k.
/// In: a member exists, either exactly rational or a simple root certified by
/// a sign change together with strict monotonicity. Out: every disjunct is
/// certified empty over the box given by `bounds` on the free coordinates,
/// which must enclose k there. Unknown otherwise.
Answer fiber_search(const SemiAlgebraicSet& k, std::span<const std::optional<Rational>> fixed,
                    std::span<const std::optional<Interval>> bounds, const FiberOptions& options = {});

}  // namespace saw
