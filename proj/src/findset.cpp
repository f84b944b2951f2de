#include "saw/findset.hpp"

namespace saw {

UniformBoxResult find_uniform_box(const std::vector<SemiAlgebraicSet>& lambdas, const Box& initial,
                                  const FindOptions& options) {
  UniformBoxResult r{initial, {}, {}, std::vector<BoxStatus>(lambdas.size())};
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    const SemiAlgebraicSet& lambda = lambdas[k];
    require_dim(lambda.num_vars(), initial.dim(), "find_uniform_box");
    if (lambda.is_trivially_empty()) {
      r.outside.push_back(k);
      r.certificates[k].status = Containment::FullyOut;
      continue;
    }
    std::vector<Box> level{r.v};
    std::size_t examined = 0;
    std::optional<std::pair<Box, BoxStatus>> in, out;
    while (!out && !in) {
      for (const Box& b : level) {
        if (examined++ >= options.candidate_budget)
          throw BudgetExhausted("find_uniform_box: set " + std::to_string(k + 1) + " of " +
                                std::to_string(lambdas.size()) + " not certified uniform on any sub-box of " +
                                to_string(r.v));
        BoxStatus s = certify_set_status(lambda, b, options.cert_budget);
        if (s.status == Containment::FullyOut) {
          out.emplace(b, std::move(s));
          break;
        }
        if (s.status == Containment::FullyIn && !in) in.emplace(b, std::move(s));
      }
      if (out || in) break;
      std::vector<Box> next;
      next.reserve(level.size() * 2);
      for (const Box& b : level) {
        auto [lo, hi] = b.bisect();
        next.push_back(std::move(lo));
        next.push_back(std::move(hi));
      }
      level = std::move(next);
    }
    auto& [box, status] = out ? *out : *in;
    (out ? r.outside : r.inside).push_back(k);
    r.v = box;
    r.certificates[k] = std::move(status);
  }
  // Later steps only shrink the box, so each certificate holds on the final
  // box; re-certify there to report its trace, keeping the original if the
  // smaller box happens to need more budget.
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (lambdas[k].is_trivially_empty()) continue;
    BoxStatus s = certify_set_status(lambdas[k], r.v, options.cert_budget);
    if (s.status == r.certificates[k].status) r.certificates[k] = std::move(s);
  }
  return r;
}

}  // namespace saw
