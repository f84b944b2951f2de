#pragma once

#include "saw/fiber.hpp"
#include "saw/rae.hpp"

#include <functional>

namespace saw {

struct OracleOptions {
  /// Range assumed for coordinates without a declared bound; when absent,
  /// such coordinates are an error wherever a fiber search needs them.
  std::optional<Interval> search_range;
  FiberOptions fiber;
  /// Points tried per query where a projection can only be sampled.
  std::size_t sample_budget = 64;
};

/// Three-valued membership: In and Out are always backed by an exact check,
/// a certificate, or a certified root; Unknown is never coerced.
class MembershipOracle {
 public:
  using Query = std::function<Answer(PointView)>;

  MembershipOracle(std::size_t arity, Query query, std::string provenance);
  static MembershipOracle of_set(const SemiAlgebraicSet& x, std::string provenance);

  std::size_t arity() const { return arity_; }
  const std::string& provenance() const { return provenance_; }
  Answer operator()(PointView p) const;

  /// Points of interest (e.g. images of distinguished points) for samplers.
  std::vector<Point> hints;
  /// Exact set when the expression needed no projection.
  std::optional<SemiAlgebraicSet> closed_form;
  /// Enclosure of the denoted set; nullopt marks an unbounded coordinate.
  CoordBounds bounds;

 private:
  std::size_t arity_;
  Query query_;
  std::string provenance_;
};

/// Oracle for { y : y_j = z_{out[j]} for some z in k }. `k_bounds` must
/// enclose k; missing entries fall back to options.search_range.
MembershipOracle projected_oracle(SemiAlgebraicSet k, std::vector<std::size_t> out, CoordBounds k_bounds,
                                  const OracleOptions& options, std::string provenance);

/// Oracle for e(s). Projections of projection-free subtrees, and of
/// intersections and products of such, are merged into one fiber search;
/// remaining connectives combine answers with three-valued logic.
MembershipOracle eval_oracle(const Expr& e, const SemiAlgebraicSet& s, const OracleOptions& options = {});

}  // namespace saw
