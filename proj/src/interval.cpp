#include "saw/interval.hpp"

#include <deque>

namespace saw {

Interval poly_range(const Polynomial& p, const Box& b) {
  require_dim(b.dim(), p.num_vars(), "poly_range");
  Interval sum = Interval::point(0);
  for (const auto& [e, c] : p.terms()) {
    Interval t = Interval::point(1);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) t = t * b.side(i).pow(e[i]);
    sum = sum + c * t;
  }
  return sum;
}

namespace {

Interval taylor_range(const Polynomial& p, const Box& b) {
  Point center = b.center();
  Polynomial q = p.shift_to(center);
  std::vector<Rational> radius(b.dim());
  for (std::size_t i = 0; i < b.dim(); ++i) radius[i] = b.width(i) / 2;
  Rational lo = 0, hi = 0;
  for (const auto& [e, c] : q.terms()) {
    Rational mag = abs(c);
    bool all_even = true, constant = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (unsigned k = 0; k < e[i]; ++k) mag *= radius[i];
      if (e[i] % 2) all_even = false;
      if (e[i]) constant = false;
    }
    if (constant) {
      lo += c;
      hi += c;
    } else if (all_even) {
      if (sgn(c) > 0)
        hi += mag;
      else
        lo -= mag;
    } else {
      lo -= mag;
      hi += mag;
    }
  }
  return {lo, hi};
}

}  // namespace

Interval poly_range_tight(const Polynomial& p, const Box& b) {
  Interval natural = poly_range(p, b);
  if (p.degree() <= 1) return natural;
  auto both = natural.intersect(taylor_range(p, b));
  return both ? *both : natural;
}

namespace {

enum class Tri { True, False, Undecided };

Tri relation_on(const Interval& r, Relation rel) {
  switch (rel) {
    case Relation::Positive:
      if (sgn(r.lo) > 0) return Tri::True;
      if (sgn(r.hi) <= 0) return Tri::False;
      return Tri::Undecided;
    case Relation::Negative:
      if (sgn(r.hi) < 0) return Tri::True;
      if (sgn(r.lo) >= 0) return Tri::False;
      return Tri::Undecided;
    case Relation::NonZero:
      if (!r.contains_zero()) return Tri::True;
      if (sgn(r.lo) == 0 && sgn(r.hi) == 0) return Tri::False;
      return Tri::Undecided;
    case Relation::Zero:
      if (sgn(r.lo) == 0 && sgn(r.hi) == 0) return Tri::True;
      if (!r.contains_zero()) return Tri::False;
      return Tri::Undecided;
  }
  return Tri::Undecided;
}

}  // namespace

SignVerdict certify_sign(const Polynomial& p, const Box& b, Relation rel, std::size_t budget) {
  require_dim(b.dim(), p.num_vars(), "certify_sign");
  std::deque<Box> queue{b};
  std::size_t examined = 0;
  bool saw_true = false, saw_false = false;
  while (!queue.empty()) {
    if (examined >= budget) return (saw_true && saw_false) ? SignVerdict::Mixed : SignVerdict::Unknown;
    Box box = std::move(queue.front());
    queue.pop_front();
    ++examined;
    switch (relation_on(poly_range_tight(p, box), rel)) {
      case Tri::True:
        saw_true = true;
        break;
      case Tri::False:
        saw_false = true;
        break;
      case Tri::Undecided: {
        auto [l, r] = box.bisect();
        queue.push_back(std::move(l));
        queue.push_back(std::move(r));
        break;
      }
    }
    if (saw_true && saw_false) return SignVerdict::Mixed;
  }
  return saw_true ? SignVerdict::CertTrue : SignVerdict::CertFalse;
}

namespace {

// Per-box proof state: atoms already certified true on an ancestor box stay
// true on every sub-box, and disjuncts certified empty stay empty.
struct PendingBox {
  Box box;
  std::size_t depth;
  std::vector<std::vector<std::size_t>> pending;  // per disjunct; empty vector means satisfied
  std::vector<bool> dead;
};

}  // namespace

BoxStatus certify_set_status(const SemiAlgebraicSet& x, const Box& b, std::size_t budget) {
  require_dim(b.dim(), x.num_vars(), "certify_set_status");
  BoxStatus out;
  const auto& ds = x.disjuncts();
  if (ds.empty()) {
    out.status = Containment::FullyOut;
    out.trace.boxes_examined = 1;
    out.trace.leaves_out = 1;
    return out;
  }
  PendingBox root{b, 0, {}, std::vector<bool>(ds.size(), false)};
  for (const auto& d : ds) {
    std::vector<std::size_t> atoms(d.atom_count());
    for (std::size_t i = 0; i < atoms.size(); ++i) atoms[i] = i;
    root.pending.push_back(std::move(atoms));
  }
  std::deque<PendingBox> queue;
  queue.push_back(std::move(root));
  auto decided = [&]() {
    if (out.member && out.non_member) {
      out.status = Containment::Mixed;
      return true;
    }
    return false;
  };
  while (!queue.empty()) {
    if (out.trace.boxes_examined >= budget) {
      out.trace.leaves_undecided += queue.size();
      out.status = (out.member && out.non_member) ? Containment::Mixed : Containment::Unknown;
      return out;
    }
    PendingBox cur = std::move(queue.front());
    queue.pop_front();
    ++out.trace.boxes_examined;
    out.trace.max_depth = std::max(out.trace.max_depth, cur.depth);
    bool in = false, all_dead = true;
    for (std::size_t k = 0; k < ds.size() && !in; ++k) {
      if (cur.dead[k]) continue;
      const auto& d = ds[k];
      std::vector<std::size_t> still;
      for (std::size_t a : cur.pending[k]) {
        bool is_eq = a < d.equations.size();
        const Polynomial& poly = is_eq ? d.equations[a] : d.strict_positives[a - d.equations.size()];
        Tri t = relation_on(poly_range_tight(poly, cur.box), is_eq ? Relation::Zero : Relation::Positive);
        if (t == Tri::False) {
          cur.dead[k] = true;
          break;
        }
        if (t == Tri::Undecided) still.push_back(a);
      }
      if (cur.dead[k]) continue;
      all_dead = false;
      cur.pending[k] = std::move(still);
      if (cur.pending[k].empty()) in = true;
    }
    if (in) {
      ++out.trace.leaves_in;
      if (!out.member) out.member = cur.box.center();
    } else if (all_dead) {
      ++out.trace.leaves_out;
      if (!out.non_member) out.non_member = cur.box.center();
    } else {
      Point c = cur.box.center();
      if (x.contains(c)) {
        if (!out.member) out.member = c;
      } else if (!out.non_member) {
        out.non_member = c;
      }
      if (decided()) return out;
      auto [l, r] = cur.box.bisect();
      queue.push_back(PendingBox{std::move(l), cur.depth + 1, cur.pending, cur.dead});
      queue.push_back(PendingBox{std::move(r), cur.depth + 1, std::move(cur.pending), std::move(cur.dead)});
      continue;
    }
    if (decided()) return out;
  }
  if (out.trace.leaves_in && !out.trace.leaves_out)
    out.status = Containment::FullyIn;
  else if (out.trace.leaves_out && !out.trace.leaves_in)
    out.status = Containment::FullyOut;
  else
    out.status = Containment::Mixed;
  return out;
}

Regularity certify_regular(const Polynomial& f, const Box& b, std::size_t budget) {
  require_dim(b.dim(), f.num_vars(), "certify_regular");
  Regularity r;
  for (std::size_t i = 0; i < f.num_vars(); ++i) {
    Polynomial d = f.derivative(i);
    if (d.is_zero()) {
      r.profile.push_back(Monotonicity::Constant);
    } else if (certify_sign(d, b, Relation::Positive, budget) == SignVerdict::CertTrue) {
      r.profile.push_back(Monotonicity::Increasing);
    } else if (certify_sign(d, b, Relation::Negative, budget) == SignVerdict::CertTrue) {
      r.profile.push_back(Monotonicity::Decreasing);
    } else {
      r.profile.clear();
      return r;
    }
  }
  r.regular = true;
  return r;
}

std::string to_string(SignVerdict v) {
  switch (v) {
    case SignVerdict::CertTrue: return "CertTrue";
    case SignVerdict::CertFalse: return "CertFalse";
    case SignVerdict::Mixed: return "Mixed";
    case SignVerdict::Unknown: return "Unknown";
  }
  return "?";
}

std::string to_string(Containment c) {
  switch (c) {
    case Containment::FullyIn: return "FullyIn";
    case Containment::FullyOut: return "FullyOut";
    case Containment::Mixed: return "Mixed";
    case Containment::Unknown: return "Unknown";
  }
  return "?";
}

std::string to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::Increasing: return "increasing";
    case Monotonicity::Decreasing: return "decreasing";
    case Monotonicity::Constant: return "constant";
  }
  return "?";
}

}  // namespace saw
