#pragma once

#include "saw/geometry.hpp"
#include "saw/polynomial.hpp"
#include "saw/semialgebraic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace saw {

inline constexpr std::size_t kDefaultCertBudget = 4096;

/// Natural interval extension, term by term; encloses p over closure(b) and
/// is inclusion monotone.
Interval poly_range(const Polynomial& p, const Box& b);

/// Natural extension intersected with the Taylor form at the box center.
/// Tighter near zeros of translated quadrics; not inclusion monotone.
Interval poly_range_tight(const Polynomial& p, const Box& b);

enum class Relation { Positive, Negative, NonZero, Zero };
enum class SignVerdict { CertTrue, CertFalse, Mixed, Unknown };

/// CertTrue/CertFalse only when subdivided enclosures prove that the relation
/// holds/fails everywhere on the closed box. Mixed when one sub-box proves it
/// holds and another proves it fails. Budget counts boxes examined.
SignVerdict certify_sign(const Polynomial& p, const Box& b, Relation rel, std::size_t budget = kDefaultCertBudget);

enum class Containment { FullyIn, FullyOut, Mixed, Unknown };

struct CertTrace {
  std::size_t boxes_examined = 0;
  std::size_t max_depth = 0;
  std::size_t leaves_in = 0;
  std::size_t leaves_out = 0;
  std::size_t leaves_undecided = 0;
};

struct BoxStatus {
  Containment status = Containment::Unknown;
  CertTrace trace;
  std::optional<Point> member;
  std::optional<Point> non_member;
};

/// FullyIn iff closure(b) is certified inside X (hence b is), FullyOut iff
/// closure(b) is certified disjoint from X, Mixed iff a member and a
/// non-member rational point were exhibited, Unknown otherwise.
BoxStatus certify_set_status(const SemiAlgebraicSet& x, const Box& b, std::size_t budget = kDefaultCertBudget);

enum class Monotonicity { Increasing, Decreasing, Constant };

struct Regularity {
  bool regular = false;
  std::vector<Monotonicity> profile;
};

Regularity certify_regular(const Polynomial& f, const Box& b, std::size_t budget = kDefaultCertBudget);

std::string to_string(SignVerdict v);
std::string to_string(Containment c);
std::string to_string(Monotonicity m);

}  // namespace saw
