#pragma once

#include "saw/harness.hpp"

namespace saw {

enum class Method { Structural, Sampled };

std::string to_string(Method m);

struct ExpressionVerdict {
  std::size_t id = 0;
  std::string expression;
  Method method = Method::Structural;
  Verdict verdict = Verdict::Unknown;
  std::optional<Point> witness;
  /// Structural only: the normal form of each component, in order.
  std::vector<std::string> normal_forms;
  /// Sampled comparison of e(A) and e(B); for structural verdicts a spot check.
  EqualityVerdict sampled;
  /// One-pass only: points In for e(tau(sphere)) but not for e(B), plus
  /// points In for e(B) but not for e(tau(ball)).
  std::optional<std::size_t> squeeze_violations;
};

/// A candidate tau that failed the one-pass equality test.
struct RejectedTau {
  AffineMap tau;
  std::size_t expression = 0;
  EqualityVerdict reason;
};

/// a = tau(sphere); b = tau(sphere) plus its distinguished center.
struct WitnessPair {
  AffineMap tau = AffineMap::identity(3);
  SemiAlgebraicSet a;
  SemiAlgebraicSet b;
  /// Box every normal form is valid on (cpfree); tau(closed ball) lies inside.
  Box v;
  std::vector<ExpressionVerdict> verdicts;
  std::vector<RejectedTau> rejected;
  /// False when the one-pass search ran out of candidates.
  bool found = true;
  /// Certificate boxes behind the normal forms' uniform boxes.
  std::size_t cert_boxes = 0;

  bool all_equal() const;
};

/// Center of v, scale margin * min_width(v) / 2; the closed ball image lies in v.
AffineMap choose_tau(const Box& v, const Rational& margin);

struct WitnessOptions {
  /// Starting box for normalization.
  Box initial = Box::cube(3, -2, 2);
  Rational margin{1, 2};
  NormalizeOptions normalize;
  OracleOptions oracle;
  /// Spot checks split their samples between a box around tau's image and
  /// the projected initial box.
  EqualityOptions equality;
};

/// Requires each expression to be product-free with output arity n - 1, n in {3, 4}.
WitnessPair witness_cpfree(const std::vector<Expr>& exprs, std::size_t n, const WitnessOptions& options = {});

struct OnePassSearch {
  /// Empty means a 3^n grid over the initial box, centre first.
  std::vector<Point> centers;
  /// Scales 2^-m for m in [first_exponent, last_exponent].
  unsigned first_exponent = 1;
  unsigned last_exponent = 12;
  /// Samples per candidate when testing tau(sphere) against tau(ball).
  std::size_t candidate_samples = 2000;
};

/// Requires each expression to be positive one-pass over input arity 3. Picks
/// the schedule-earliest tau whose normal-form oracles show no conflict
/// between tau(sphere) and tau(ball) at an Unknown rate within the ceiling.
WitnessPair witness_onepass(const std::vector<Expr>& exprs, const OnePassSearch& search = {},
                            const WitnessOptions& options = {});

/// Counts points answered In for `lower` but not In for `upper`, over the
/// hints of `lower` and seeded samples of the regions.
std::size_t squeeze_violations(const MembershipOracle& lower, const MembershipOracle& upper,
                               const std::vector<Box>& regions, const EqualityOptions& options);

}  // namespace saw
