#pragma once

#include "saw/oracle.hpp"
#include "saw/rewrite.hpp"

#include <cstdint>
#include <map>

namespace saw {

struct EqualityOptions {
  std::size_t samples = 10000;
  /// Largest tolerated fraction of samples where either oracle says Unknown.
  double unknown_ceiling = 0.01;
  std::uint64_t seed = 1;
  /// Sample coordinates are dyadic with this many bits inside the region.
  unsigned bits = 12;
  /// Bisection depth of the box cover used to certify closed forms.
  std::size_t cover_depth = 9;
  std::size_t cert_budget = 64;
  std::size_t threads = 1;
};

enum class Verdict { Equal, Differ, Unknown };

std::string to_string(Verdict v);

struct EqualityVerdict {
  Verdict verdict = Verdict::Unknown;
  /// Equal only: the symmetric difference was certified empty on the region.
  bool certified = false;
  std::size_t samples = 0;
  std::size_t unknown = 0;
  /// Differ only: a point where one oracle says In and the other Out.
  std::optional<Point> witness;

  double unknown_rate() const { return samples ? static_cast<double>(unknown) / static_cast<double>(samples) : 0.0; }
};

/// Compares two oracles on the hints of both, then on seeded samples of the
/// region; the first In/Out conflict in sample order is the witness.
EqualityVerdict sets_equal(const MembershipOracle& x, const MembershipOracle& y, const Box& region,
                           const EqualityOptions& options = {});
/// Splits the samples evenly across the regions, in order; closed forms are
/// certified on the first region only.
EqualityVerdict sets_equal(const MembershipOracle& x, const MembershipOracle& y, const std::vector<Box>& regions,
                           const EqualityOptions& options = {});

struct GridOptions {
  std::size_t cert_budget = 16;
  /// Oracle occupancy: sampled points per cell.
  std::size_t samples_per_cell = 8;
  std::uint64_t seed = 1;
};

/// Cells are half-open [lo + i r, lo + (i+1) r) per axis, indexed row-major
/// with the first axis slowest.
struct GridComponents {
  Rational resolution;
  Box region;
  std::vector<std::size_t> cells_per_axis;
  std::size_t components = 0;
  /// Occupied cell index -> component id; ids follow the smallest cell index.
  std::map<std::size_t, std::size_t> cell_component;
  /// Component of each seed's cell; nullopt when the cell is unoccupied or
  /// the seed lies outside the region.
  std::vector<std::optional<std::size_t>> seed_components;

  std::optional<std::size_t> cell_of(PointView p) const;
};

/// Occupancy is "not certified FullyOut"; distinguished points occupy their cell.
GridComponents grid_connectivity(const SemiAlgebraicSet& x, const Box& region, const Rational& resolution,
                                 const std::vector<Point>& seeds = {}, const GridOptions& options = {});
/// Occupancy is "some sample or hint in the cell is answered In".
GridComponents grid_connectivity(const MembershipOracle& x, const Box& region, const Rational& resolution,
                                 const std::vector<Point>& seeds = {}, const GridOptions& options = {});

struct ExtremeOptions {
  std::size_t samples = 100000;
  double tolerance = 1e-6;
  double gap_tolerance = 1e-2;
  std::size_t cert_budget = 256;
};

/// Extrema of f over tau(closed ball) and tau(sphere), in double precision.
struct ExtremeReport {
  double min_ball = 0, min_sphere = 0, max_ball = 0, max_sphere = 0;
  /// Largest gap between sorted sphere values, relative to max - min.
  double coverage_gap = 0;
  bool extrema_ok = false;
  bool image_interval_ok = false;
};

/// Throws Error unless f is certified regular on a box around tau(closed ball).
ExtremeReport check_extreme(const Polynomial& f, const AffineMap& tau, const ExtremeOptions& options = {});

struct CellCheckOptions {
  /// Random finite inputs S inside V.
  std::size_t inputs = 1000;
  /// Evaluation points per input, the points of S included.
  std::size_t points = 10000;
  std::size_t max_input_size = 6;
  /// Constant pairs tried until the root cell is the requested one.
  std::size_t attempts = 400;
  NormalizeOptions normalize;
};

struct CellCheck {
  NodeKind op = NodeKind::Union;
  FormKind left = FormKind::InputOnly, right = FormKind::InputOnly;
  /// False when no sampled constants produced the requested cell.
  bool realized = false;
  Expr expr;
  NormalForm form;
  Box v;
  std::optional<Containment> governing;
  std::size_t inputs_checked = 0;
  std::size_t points_checked = 0;
  std::size_t mismatches = 0;
  std::optional<Point> mismatch;
};

/// Builds (left op right) from random quadric or half-space constants G1, G2
/// on the box (-1,1)^3, normalizes it, and compares the expression with its
/// normal form on finite inputs inside V. Membership of a point in e(S)
/// depends on S only through whether the point lies in S, so points outside
/// every S share one cached evaluation.
CellCheck check_table_cell(NodeKind op, FormKind left, FormKind right, std::uint64_t seed,
                           const CellCheckOptions& options = {});

}  // namespace saw
