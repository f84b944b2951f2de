#pragma once

#include "saw/semialgebraic.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace saw {

struct ArityError : Error {
  using Error::Error;
};

enum class NodeKind { Input, Constant, Union, Intersection, Difference, Product, Projection };

struct Node;
using Expr = std::shared_ptr<const Node>;

/// Immutable expression node. `arity` is computed at construction and the
/// arity rules hold at every node. Projection indices are 0-based.
struct Node {
  NodeKind kind = NodeKind::Input;
  std::size_t arity = 0;
  std::string name;
  std::shared_ptr<const SemiAlgebraicSet> set;
  Expr left;
  Expr right;
  std::vector<std::size_t> indices;
};

using Environment = std::map<std::string, SemiAlgebraicSet, std::less<>>;

Expr make_input(std::size_t n);
Expr make_constant(std::string name, SemiAlgebraicSet set);
/// Throws ArityError for Union/Intersection/Difference with unequal arities.
Expr make_binary(NodeKind kind, Expr left, Expr right);
/// Throws ArityError for an empty index list or an index outside the child.
Expr make_projection(std::vector<std::size_t> indices, Expr child);

bool is_binary(NodeKind k);
const char* op_symbol(NodeKind k);

/// Grammar: expr := inter (('|' | '\') inter)*; inter := prod ('&' prod)*;
/// prod := atom ('x' atom)*; atom := 'S' | NAME | 'R'k | 'proj[' i (',' i)* ']' '(' expr ')' | '(' expr ')'.
/// Names `R1`, `R2`, ... not bound in `env` denote the whole space.
Expr parse_rae(std::string_view text, const Environment& env, std::size_t n);

/// Nested binary operands are parenthesized, so parsing the output yields an
/// identical tree.
std::string to_string(const Expr& e);

bool same_tree(const Expr& a, const Expr& b);

struct Classification {
  bool cartesian_product_free = true;
  bool projection_free = true;
  bool positive_one_pass = false;
  std::size_t s_occurrences = 0;
};

Classification classify(const Expr& e);

/// Exact evaluation of a projection-free expression through set operations.
SemiAlgebraicSet eval_closed(const Expr& e, const SemiAlgebraicSet& s,
                             std::size_t budget = kDefaultDisjunctBudget);

/// Per-coordinate enclosure of e(S); nullopt marks an unbounded coordinate.
using CoordBounds = std::vector<std::optional<Interval>>;

CoordBounds bounds_of(const SemiAlgebraicSet& x);

/// Collects constant leaves in left-to-right order (duplicates kept).
std::vector<Expr> constant_leaves(const Expr& e);

}  // namespace saw
