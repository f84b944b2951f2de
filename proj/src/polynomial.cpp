#include "saw/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace saw {

Polynomial::Polynomial(std::size_t num_vars, Terms terms) : num_vars_(num_vars) {
  for (auto& [e, c] : terms) {
    require_dim(e.size(), num_vars, "Polynomial");
    add_term(e, c);
  }
}

Polynomial Polynomial::constant(std::size_t num_vars, const Rational& c) {
  Polynomial p(num_vars);
  p.add_term(Exponents(num_vars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t num_vars, std::size_t var) {
  if (var >= num_vars) throw DimensionMismatch("Polynomial::variable: index out of range");
  Exponents e(num_vars, 0);
  e[var] = 1;
  Polynomial p(num_vars);
  p.add_term(e, 1);
  return p;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](unsigned k) { return k == 0; });
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Exponents(num_vars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
  return d;
}

unsigned Polynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

Rational Polynomial::eval(PointView point) const {
  require_dim(point.size(), num_vars_, "poly_eval");
  // Power tables per variable keep the cost at one multiply per factor.
  std::vector<std::vector<Rational>> powers(num_vars_);
  Rational sum = 0, term;
  for (const auto& [e, c] : terms_) {
    term = c;
    for (std::size_t i = 0; i < num_vars_; ++i) {
      unsigned k = e[i];
      if (k == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Rational(1));
      while (pw.size() <= k) pw.push_back(pw.back() * point[i]);
      term *= pw[k];
    }
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_dim(o.num_vars_, num_vars_, "Polynomial::+");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_dim(o.num_vars_, num_vars_, "Polynomial::-");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_dim(b.num_vars_, a.num_vars_, "Polynomial::*");
  Polynomial r(a.num_vars_);
  Polynomial::Exponents e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r = constant(num_vars_, 1);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= num_vars_) throw DimensionMismatch("Polynomial::derivative: index out of range");
  Polynomial r(num_vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    r.add_term(d, c * e[var]);
  }
  return r;
}

Polynomial Polynomial::remap(std::size_t new_num_vars, std::span<const std::size_t> target) const {
  require_dim(target.size(), num_vars_, "Polynomial::remap");
  for (std::size_t t : target)
    if (t >= new_num_vars) throw DimensionMismatch("Polynomial::remap: target out of range");
  Polynomial r(new_num_vars);
  Exponents d(new_num_vars);
  for (const auto& [e, c] : terms_) {
    std::fill(d.begin(), d.end(), 0u);
    for (std::size_t i = 0; i < num_vars_; ++i) d[target[i]] += e[i];
    r.add_term(d, c);
  }
  return r;
}

Polynomial Polynomial::shifted(std::size_t new_num_vars, std::size_t offset) const {
  std::vector<std::size_t> target(num_vars_);
  std::iota(target.begin(), target.end(), offset);
  return remap(new_num_vars, target);
}

Polynomial Polynomial::substitute(std::size_t var, const Polynomial& value) const {
  require_dim(value.num_vars_, num_vars_, "Polynomial::substitute");
  unsigned d = degree_in(var);
  std::vector<Polynomial> pw{constant(num_vars_, 1)};
  for (unsigned k = 1; k <= d; ++k) pw.push_back(pw.back() * value);
  Polynomial r(num_vars_);
  for (const auto& [e, c] : terms_) {
    Exponents rest = e;
    unsigned k = rest[var];
    rest[var] = 0;
    Polynomial mono(num_vars_);
    mono.add_term(rest, c);
    r += k == 0 ? mono : mono * pw[k];
  }
  return r;
}

Polynomial Polynomial::restrict(std::span<const std::optional<Rational>> assign) const {
  require_dim(assign.size(), num_vars_, "Polynomial::restrict");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < num_vars_; ++i)
    if (!assign[i]) keep.push_back(i);
  Polynomial r(keep.size());
  Exponents d(keep.size());
  std::vector<std::vector<Rational>> powers(num_vars_);
  for (const auto& [e, c] : terms_) {
    Rational v = c;
    std::size_t j = 0;
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (assign[i]) {
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(Rational(1));
        while (pw.size() <= e[i]) pw.push_back(pw.back() * *assign[i]);
        v *= pw[e[i]];
      } else {
        d[j++] = e[i];
      }
    }
    r.add_term(d, v);
  }
  return r;
}

namespace {

// Expands c * prod_i (a_i x_i + b_i)^{e_i} into r.
Polynomial affine_substitute(const Polynomial& p, std::span<const Rational> a, std::span<const Rational> b) {
  const std::size_t n = p.num_vars();
  // expansions[i][k] = coefficients of (a_i x + b_i)^k by power of x.
  std::vector<std::vector<std::vector<Rational>>> expansions(n);
  auto expansion = [&](std::size_t i, unsigned k) -> const std::vector<Rational>& {
    auto& ex = expansions[i];
    if (ex.empty()) ex.push_back({Rational(1)});
    while (ex.size() <= k) {
      const auto& prev = ex.back();
      std::vector<Rational> next(prev.size() + 1, Rational(0));
      for (std::size_t j = 0; j < prev.size(); ++j) {
        next[j] += prev[j] * b[i];
        next[j + 1] += prev[j] * a[i];
      }
      ex.push_back(std::move(next));
    }
    return ex[k];
  };
  Polynomial::Terms out;
  Polynomial::Exponents d(n);
  for (const auto& [e, c] : p.terms()) {
    // Cartesian product over the per-variable expansions.
    std::vector<const std::vector<Rational>*> parts(n);
    for (std::size_t i = 0; i < n; ++i) parts[i] = &expansion(i, e[i]);
    std::vector<unsigned> idx(n, 0);
    while (true) {
      Rational v = c;
      for (std::size_t i = 0; i < n && sgn(v) != 0; ++i) v *= (*parts[i])[idx[i]];
      if (sgn(v) != 0) {
        for (std::size_t i = 0; i < n; ++i) d[i] = idx[i];
        auto [it, ins] = out.try_emplace(d, v);
        if (!ins) it->second += v;
      }
      std::size_t i = 0;
      while (i < n && ++idx[i] >= parts[i]->size()) idx[i++] = 0;
      if (i == n) break;
    }
  }
  return Polynomial(n, std::move(out));
}

}  // namespace

Polynomial Polynomial::compose_affine(const AffineMap& tau) const {
  require_dim(tau.dim(), num_vars_, "poly_compose_affine");
  std::vector<Rational> a(num_vars_, 1 / tau.scale()), b(num_vars_);
  for (std::size_t i = 0; i < num_vars_; ++i) b[i] = -tau.translation()[i] / tau.scale();
  Polynomial r = affine_substitute(*this, a, b);
  Rational s = 1;
  for (unsigned k = 0; k < degree(); ++k) s *= tau.scale();
  return r *= s;
}

Polynomial Polynomial::shift_to(PointView center) const {
  require_dim(center.size(), num_vars_, "Polynomial::shift_to");
  std::vector<Rational> a(num_vars_, 1);
  return affine_substitute(*this, a, center);
}

Polynomial Polynomial::primitive() const {
  if (terms_.empty()) return *this;
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [e, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational factor(den_lcm, num_gcd);
  factor.canonicalize();
  Polynomial r = *this;
  return r *= factor;
}

std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b) {
  if (auto c = a.num_vars_ <=> b.num_vars_; c != 0) return c;
  auto ia = a.terms_.begin(), ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (auto c = ia->first <=> ib->first; c != 0) return c;
    int cmp = ::cmp(ia->second, ib->second);
    if (cmp != 0) return cmp < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (ia == a.terms_.end() && ib == b.terms_.end()) return std::strong_ordering::equal;
  return ia == a.terms_.end() ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponents, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    unsigned dx = std::accumulate(x.first.begin(), x.first.end(), 0u);
    unsigned dy = std::accumulate(y.first.begin(), y.first.end(), 0u);
    if (dx != dy) return dx > dy;
    return x.first > y.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [e, c] : ordered) {
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t n) : s_(text), n_(n) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial '" + std::string(s_) + "' at column " + std::to_string(pos_ + 1) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  Polynomial expr() {
    Polynomial p = term();
    while (true) {
      if (accept('+'))
        p += term();
      else if (accept('-'))
        p -= term();
      else
        return p;
    }
  }
  Polynomial term() {
    Polynomial p = factor();
    while (accept('*')) p = p * factor();
    return p;
  }
  Polynomial factor() {
    if (accept('-')) return -factor();
    Polynomial base = primary();
    if (accept('^')) {
      std::string k = digits();
      if (k.size() > 3) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(k)));
    }
    return base;
  }
  Polynomial primary() {
    skip();
    if (accept('(')) {
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (pos_ < s_.size() && s_[pos_] == 'x') {
      ++pos_;
      std::string idx = digits();
      std::size_t v = std::stoul(idx);
      if (v == 0 || v > n_) fail("variable x" + idx + " outside x1..x" + std::to_string(n_));
      return Polynomial::variable(n_, v - 1);
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::string num = digits();
      if (pos_ < s_.size() && s_[pos_] == '.') {
        ++pos_;
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        num += "." + std::string(s_.substr(start, pos_ - start));
        return Polynomial::constant(n_, parse_rational(num));
      }
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        std::string den = digits();
        if (mpz_class(den, 10) == 0) fail("zero denominator");
        return Polynomial::constant(n_, parse_rational(num + "/" + den));
      }
      return Polynomial::constant(n_, parse_rational(num));
    }
    fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end of input");
  }

  std::string_view s_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t num_vars) {
  return PolyParser(text, num_vars).parse();
}

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

UniPoly UniPoly::from(const Polynomial& p) {
  if (p.num_vars() != 1) throw DimensionMismatch("UniPoly::from: expected one variable");
  std::vector<Rational> c(p.degree() + 1, Rational(0));
  for (const auto& [e, v] : p.terms()) c[e[0]] = v;
  return UniPoly(std::move(c));
}

Rational UniPoly::eval(const Rational& x) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

Interval UniPoly::range(const Interval& x) const {
  if (c_.empty()) return Interval::point(0);
  // Centered form at the midpoint, intersected with the natural extension.
  Rational m = x.mid(), r = x.width() / 2;
  std::vector<Rational> t = c_;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = t.size() - 1; j > i; --j) t[j - 1] += t[j] * m;
  Interval centered = Interval::point(t[0]);
  Rational rk = 1;
  for (std::size_t k = 1; k < t.size(); ++k) {
    rk *= r;
    Rational a = abs(t[k]) * rk;
    if (k % 2 == 0)
      centered = centered + (sgn(t[k]) >= 0 ? Interval(0, a) : Interval(-a, 0));
    else
      centered = centered + Interval(-a, a);
  }
  Interval natural = Interval::point(0);
  for (std::size_t k = 0; k < c_.size(); ++k) natural = natural + c_[k] * x.pow(static_cast<unsigned>(k));
  return *centered.intersect(natural);
}

UniPoly UniPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<unsigned long>(k));
  return UniPoly(std::move(d));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw Error("UniPoly::divmod: division by zero");
  std::vector<Rational> rem = a.c_;
  if (a.degree() < b.degree()) return {UniPoly(), a};
  std::vector<Rational> q(a.c_.size() - b.c_.size() + 1, Rational(0));
  const Rational& lead = b.c_.back();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    Rational f = rem[k + b.degree()] / lead;
    q[k] = f;
    if (sgn(f) == 0) continue;
    for (int j = 0; j <= b.degree(); ++j) rem[k + j] -= f * b.c_[j];
  }
  return {UniPoly(std::move(q)), UniPoly(std::move(rem))};
}

UniPoly UniPoly::gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  Rational lead = a.c_.back();
  for (auto& v : a.c_) v /= lead;
  return a;
}

UniPoly UniPoly::squarefree() const {
  if (degree() <= 1) return *this;
  UniPoly g = gcd(*this, derivative());
  if (g.degree() <= 0) return *this;
  return divmod(*this, g).first;
}

}  // namespace saw
