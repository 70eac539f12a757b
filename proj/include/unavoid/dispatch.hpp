#ifndef UNAVOID_DISPATCH_HPP
#define UNAVOID_DISPATCH_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "unavoid/embed_tree.hpp"
#include "unavoid/stub_embed.hpp"

namespace unavoid {

enum class Algorithm { arborescence, bi_arborescence, few_leaves, many_leaves, very_few_leaves };

inline constexpr std::array<Algorithm, 5> all_algorithms{Algorithm::arborescence, Algorithm::bi_arborescence,
                                                         Algorithm::few_leaves, Algorithm::many_leaves,
                                                         Algorithm::very_few_leaves};

inline std::string_view to_string(Algorithm alg) {
  switch (alg) {
    case Algorithm::arborescence: return "arborescence";
    case Algorithm::bi_arborescence: return "bi-arborescence";
    case Algorithm::few_leaves: return "few-leaves";
    case Algorithm::many_leaves: return "many-leaves";
    case Algorithm::very_few_leaves: return "very-few-leaves";
  }
  return "?";
}

struct BoundReport {
  int n = 0;
  int k = 0;
  std::array<std::optional<long>, 5> bound;  // indexed like all_algorithms
  long minimum = 0;
  Algorithm chosen = Algorithm::few_leaves;

  const std::optional<long>& operator[](Algorithm alg) const { return bound[static_cast<int>(alg)]; }
};

/// ceil(21n/8 - 47/16): what the better of the few- and many-leaves bounds
/// always achieves.
inline long combined_bound(long n) {
  const long num = 42 * n - 47;
  return num >= 0 ? (num + 15) / 16 : -((-num) / 16);
}

/// Every applicable order bound for `a`, the smallest one and the algorithm
/// that achieves it. Ties go to the earlier entry of all_algorithms.
inline BoundReport best_bound(const OrientedTree& a) {
  BoundReport r;
  r.n = a.size();
  r.k = leaf_count(a);
  auto set = [&](Algorithm alg, long v) { r.bound[static_cast<int>(alg)] = v; };
  int need = 0;
  if (best_arborescence_root(a, &need)) set(Algorithm::arborescence, need);
  if (auto s = best_bi_split(a)) set(Algorithm::bi_arborescence, s->total());
  set(Algorithm::few_leaves, few_leaves_bound(a));
  if (r.n >= 3) set(Algorithm::many_leaves, many_leaves_bound(a));
  if (!tree_metrics(a).is_path) set(Algorithm::very_few_leaves, very_few_bound(r.n, r.k));
  bool first = true;
  for (auto alg : all_algorithms)
    if (auto v = r[alg]; v && (first || *v < r.minimum)) {
      r.minimum = *v;
      r.chosen = alg;
      first = false;
    }
  return r;
}

inline Embedding run_algorithm(Algorithm alg, const OrientedTree& a, const Tournament& t) {
  switch (alg) {
    case Algorithm::arborescence: return embed_arborescence(a, t);
    case Algorithm::bi_arborescence: return embed_bi_arborescence(a, t);
    case Algorithm::few_leaves: return embed_few_leaves(a, t);
    case Algorithm::many_leaves: return embed_many_leaves(a, t);
    case Algorithm::very_few_leaves: return embed_very_few_leaves(a, t);
  }
  throw PreconditionError("unknown algorithm");
}

/// Runs the algorithm with the smallest bound that |T| meets.
inline Embedding embed_auto(const OrientedTree& a, const Tournament& t, Algorithm* used = nullptr) {
  auto rep = best_bound(a);
  std::optional<Algorithm> pick;
  for (auto alg : all_algorithms)
    if (auto v = rep[alg]; v && *v <= t.size() && (!pick || *v < *rep[*pick])) pick = alg;
  if (!pick)
    throw NoGuaranteeError("tournament of order " + std::to_string(t.size()) + " is below every bound (smallest is " +
                           std::to_string(rep.minimum) + ")");
  auto phi = run_algorithm(*pick, a, t);
  if (!is_valid_embedding(a, t, phi)) throw HardError("dispatched embedding invalid", to_text(a) + to_text(t));
  if (used) *used = *pick;
  return phi;
}

}  // namespace unavoid

#endif  // UNAVOID_DISPATCH_HPP
