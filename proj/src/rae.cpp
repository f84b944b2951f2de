#include "saw/rae.hpp"

#include <cctype>

namespace saw {

namespace {

Expr finish(Node n) { return std::make_shared<const Node>(std::move(n)); }

}  // namespace

bool is_binary(NodeKind k) {
  return k == NodeKind::Union || k == NodeKind::Intersection || k == NodeKind::Difference || k == NodeKind::Product;
}

const char* op_symbol(NodeKind k) {
  switch (k) {
    case NodeKind::Union: return "|";
    case NodeKind::Intersection: return "&";
    case NodeKind::Difference: return "\\";
    case NodeKind::Product: return "x";
    case NodeKind::Projection: return "proj";
    case NodeKind::Input: return "S";
    case NodeKind::Constant: return "const";
  }
  return "?";
}

Expr make_input(std::size_t n) {
  Node node;
  node.kind = NodeKind::Input;
  node.arity = n;
  return finish(std::move(node));
}

Expr make_constant(std::string name, SemiAlgebraicSet set) {
  Node node;
  node.kind = NodeKind::Constant;
  node.arity = set.num_vars();
  node.name = std::move(name);
  node.set = std::make_shared<const SemiAlgebraicSet>(std::move(set));
  return finish(std::move(node));
}

Expr make_binary(NodeKind kind, Expr left, Expr right) {
  if (!is_binary(kind)) throw Error("make_binary: not a binary operator");
  Node node;
  node.kind = kind;
  if (kind == NodeKind::Product) {
    node.arity = left->arity + right->arity;
  } else {
    if (left->arity != right->arity)
      throw ArityError(std::string("arity mismatch at '") + op_symbol(kind) + "': left has arity " +
                       std::to_string(left->arity) + ", right has arity " + std::to_string(right->arity));
    node.arity = left->arity;
  }
  node.left = std::move(left);
  node.right = std::move(right);
  return finish(std::move(node));
}

Expr make_projection(std::vector<std::size_t> indices, Expr child) {
  if (indices.empty()) throw ArityError("projection with no indices");
  for (std::size_t i : indices)
    if (i >= child->arity)
      throw ArityError("projection index " + std::to_string(i + 1) + " outside 1.." + std::to_string(child->arity));
  Node node;
  node.kind = NodeKind::Projection;
  node.arity = indices.size();
  node.indices = std::move(indices);
  node.left = std::move(child);
  return finish(std::move(node));
}

namespace {

class RaeParser {
 public:
  RaeParser(std::string_view text, const Environment& env, std::size_t n) : s_(text), env_(env), n_(n) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("expression '" + std::string(s_) + "' at column " + std::to_string(pos_ + 1) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string peek_ident() {
    skip();
    std::size_t end = pos_;
    while (end < s_.size() && ident_char(s_[end])) ++end;
    return std::string(s_.substr(pos_, end - pos_));
  }
  // The product operator is the bare identifier "x".
  bool accept_product() {
    if (peek_ident() != "x") return false;
    ++pos_;
    return true;
  }

  Expr binary(NodeKind kind, Expr l, Expr r, std::size_t column) {
    try {
      return make_binary(kind, std::move(l), std::move(r));
    } catch (const ArityError& e) {
      throw ArityError(std::string(e.what()) + " (column " + std::to_string(column + 1) + ")");
    }
  }

  Expr expr() {
    Expr e = inter();
    while (true) {
      skip();
      std::size_t at = pos_;
      if (accept('|'))
        e = binary(NodeKind::Union, e, inter(), at);
      else if (accept('\\'))
        e = binary(NodeKind::Difference, e, inter(), at);
      else
        return e;
    }
  }
  Expr inter() {
    Expr e = prod();
    while (true) {
      skip();
      std::size_t at = pos_;
      if (!accept('&')) return e;
      e = binary(NodeKind::Intersection, e, prod(), at);
    }
  }
  Expr prod() {
    Expr e = atom();
    while (true) {
      skip();
      std::size_t at = pos_;
      if (!accept_product()) return e;
      e = binary(NodeKind::Product, e, atom(), at);
    }
  }
  std::size_t index() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a projection index");
    std::string digits(s_.substr(start, pos_ - start));
    if (digits.size() > 6) fail("projection index too large");
    std::size_t v = std::stoul(digits);
    if (v == 0) fail("projection indices start at 1");
    return v - 1;
  }
  Expr atom() {
    skip();
    std::size_t at = pos_;
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    std::string id = peek_ident();
    if (id.empty()) fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end of input");
    if (id == "x") fail("product operator without left operand");
    pos_ += id.size();
    if (id == "proj") {
      expect('[');
      std::vector<std::size_t> idx{index()};
      while (accept(',')) idx.push_back(index());
      expect(']');
      expect('(');
      Expr child = expr();
      expect(')');
      try {
        return make_projection(std::move(idx), std::move(child));
      } catch (const ArityError& e) {
        throw ArityError(std::string(e.what()) + " (column " + std::to_string(at + 1) + ")");
      }
    }
    if (id == "S") return make_input(n_);
    if (auto it = env_.find(id); it != env_.end()) return make_constant(id, it->second);
    if (id.size() > 1 && id[0] == 'R' && id.find_first_not_of("0123456789", 1) == std::string::npos && id.size() < 5) {
      std::size_t k = std::stoul(id.substr(1));
      if (k > 0) return make_constant(id, SemiAlgebraicSet::universe(k));
    }
    pos_ = at;
    fail("unknown constant '" + id + "'");
  }

  std::string_view s_;
  const Environment& env_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

std::string print(const Expr& e, bool top) {
  switch (e->kind) {
    case NodeKind::Input: return "S";
    case NodeKind::Constant: return e->name;
    case NodeKind::Projection: {
      std::string s = "proj[";
      for (std::size_t i = 0; i < e->indices.size(); ++i) s += (i ? "," : "") + std::to_string(e->indices[i] + 1);
      return s + "](" + print(e->left, true) + ")";
    }
    default: {
      std::string s = print(e->left, false) + " " + op_symbol(e->kind) + " " + print(e->right, false);
      return top ? s : "(" + s + ")";
    }
  }
}

}  // namespace

Expr parse_rae(std::string_view text, const Environment& env, std::size_t n) {
  return RaeParser(text, env, n).parse();
}

std::string to_string(const Expr& e) { return print(e, true); }

bool same_tree(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->arity != b->arity || a->name != b->name || a->indices != b->indices) return false;
  if (a->kind == NodeKind::Constant && !(*a->set == *b->set)) return false;
  if (a->left && !same_tree(a->left, b->left)) return false;
  if (a->right && !same_tree(a->right, b->right)) return false;
  return true;
}

namespace {

void walk(const Expr& e, Classification& c, bool& has_difference) {
  switch (e->kind) {
    case NodeKind::Input: ++c.s_occurrences; return;
    case NodeKind::Constant: return;
    case NodeKind::Product: c.cartesian_product_free = false; break;
    case NodeKind::Projection: c.projection_free = false; break;
    case NodeKind::Difference: has_difference = true; break;
    default: break;
  }
  walk(e->left, c, has_difference);
  if (e->right) walk(e->right, c, has_difference);
}

}  // namespace

Classification classify(const Expr& e) {
  Classification c;
  bool has_difference = false;
  walk(e, c, has_difference);
  c.positive_one_pass = !has_difference && c.s_occurrences == 1;
  return c;
}

SemiAlgebraicSet eval_closed(const Expr& e, const SemiAlgebraicSet& s, std::size_t budget) {
  switch (e->kind) {
    case NodeKind::Input:
      require_dim(s.num_vars(), e->arity, "eval_closed input");
      return s;
    case NodeKind::Constant: return *e->set;
    case NodeKind::Union: return sa_union(eval_closed(e->left, s, budget), eval_closed(e->right, s, budget));
    case NodeKind::Intersection:
      return sa_intersect(eval_closed(e->left, s, budget), eval_closed(e->right, s, budget), budget);
    case NodeKind::Difference:
      return sa_difference(eval_closed(e->left, s, budget), eval_closed(e->right, s, budget), budget);
    case NodeKind::Product:
      return sa_product(eval_closed(e->left, s, budget), eval_closed(e->right, s, budget), budget);
    case NodeKind::Projection: break;
  }
  throw Error("eval_closed: expression contains a projection: " + to_string(e));
}

CoordBounds bounds_of(const SemiAlgebraicSet& x) {
  CoordBounds b(x.num_vars());
  if (const auto& box = x.declared_bound())
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = box->side(i);
  return b;
}

std::vector<Expr> constant_leaves(const Expr& e) {
  if (e->kind == NodeKind::Constant) return {e};
  std::vector<Expr> out;
  if (e->left) out = constant_leaves(e->left);
  if (e->right) {
    auto r = constant_leaves(e->right);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

}  // namespace saw
