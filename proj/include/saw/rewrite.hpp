#pragma once

#include "saw/findset.hpp"
#include "saw/oracle.hpp"
#include "saw/rae.hpp"

namespace saw {

/// Replaces every e1 & e2 by e1 \ (e1 \ e2); pointwise equivalent.
Expr eliminate_intersection(const Expr& e);

enum class FormKind { ConstOnly, InputOnly, InputUnionConst, ConstMinusInput };

/// One of gamma, S, S | gamma, gamma \ S. For ConstMinusInput the box the
/// form was derived on is certified inside gamma.
struct NormalForm {
  FormKind kind = FormKind::InputOnly;
  SemiAlgebraicSet gamma;

  /// The form as an expression whose constant is named `name`.
  Expr to_expr(const std::string& name = "Gamma") const;
};

std::string to_string(FormKind k);
std::string to_string(const NormalForm& f);

/// One table cell visited while combining child forms.
struct CellRecord {
  std::string path;
  NodeKind op = NodeKind::Union;
  FormKind left = FormKind::InputOnly;
  FormKind right = FormKind::InputOnly;
  FormKind result = FormKind::InputOnly;
  /// Set when the cell had two alternatives and a uniform box decided it.
  std::optional<Containment> governing;
};

struct NormalizeOptions {
  FindOptions find;
  std::size_t disjunct_budget = kDefaultDisjunctBudget;
};

struct NormalizeResult {
  NormalForm form;
  Box v;
  std::vector<CellRecord> trace;
  /// Boxes examined by the certificates of the accepted uniform boxes.
  std::size_t cert_boxes = 0;
};

/// Normal form of a projection-free, product-free expression valid for every
/// input S inside the returned box v, which is a sub-box of u. Throws
/// BudgetExhausted, prefixed with the node path, when a cell cannot be decided.
NormalizeResult normalize_cpfree(const Expr& e, const Box& u, const NormalizeOptions& options = {});

/// A projection leaf of the outer union/difference tree.
struct Component {
  std::vector<std::size_t> indices;
  Expr body;
  /// Bodies without S denote the same set for every input.
  bool input_free = false;
};

/// `outer` is the input expression; its projection leaves, in left-to-right
/// order, correspond to `components`.
struct ComponentDecomposition {
  Expr outer;
  std::vector<Component> components;
};

/// Requires a product-free, intersection-free expression whose leaves under
/// the outer union/difference tree are constants or projections of
/// projection-free bodies of the input's arity (or input-free bodies).
ComponentDecomposition extract_components(const Expr& e, std::size_t n);

/// Rebuilds the outer tree with component i's body replaced by bodies[i].
Expr reassemble(const ComponentDecomposition& d, const std::vector<Expr>& bodies);

/// proj_indices(lambda1 | (lambda2 & (S x R^k))), lambda_i in R^{n+k}.
/// Each bound list encloses its set; nullopt marks an unbounded coordinate.
/// Every pair in lambda2_links is a pair of coordinates equal on lambda2.
struct OnePassNF {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<std::size_t> indices;
  SemiAlgebraicSet lambda1;
  SemiAlgebraicSet lambda2;
  CoordBounds lambda1_bounds;
  CoordBounds lambda2_bounds;
  std::vector<std::pair<std::size_t, std::size_t>> lambda2_links;

  /// lambda1 | (lambda2 & (s x R^k)) for a concrete input.
  SemiAlgebraicSet instantiate(const SemiAlgebraicSet& s, std::size_t budget = kDefaultDisjunctBudget) const;
  /// Enclosure of instantiate(s).
  CoordBounds bounds(const SemiAlgebraicSet& s) const;
  MembershipOracle oracle(const SemiAlgebraicSet& s, const OracleOptions& options = {}) const;
};

std::string to_string(const OnePassNF& nf);

/// Requires classify(e).positive_one_pass; n is the input arity.
OnePassNF normalize_onepass(const Expr& e, std::size_t n, std::size_t budget = kDefaultDisjunctBudget);

}  // namespace saw
