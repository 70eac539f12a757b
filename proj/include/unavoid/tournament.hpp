#ifndef UNAVOID_TOURNAMENT_HPP
#define UNAVOID_TOURNAMENT_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unavoid/bitset.hpp"
#include "unavoid/error.hpp"

namespace unavoid {

/// Complete oriented graph on vertices 0..n-1. Row u holds the out-neighbours of u.
///
/// Construction goes through set_arc(); a Tournament is only guaranteed to be
/// complete once every pair has been oriented (see validate()).
class Tournament {
 public:
  Tournament() = default;
  explicit Tournament(int n) : n_(n), rows_(n, Bitset(n)) {}

  int size() const { return n_; }
  bool arc(int u, int v) const { return rows_[u].test(v); }
  const Bitset& out_row(int u) const { return rows_[u]; }

  /// Orients the pair {u,v} as u->v.
  void set_arc(int u, int v) {
    rows_[u].set(v);
    rows_[v].reset(u);
  }

  int out_degree(int u) const { return rows_[u].count(); }
  int in_degree(int u) const { return n_ - 1 - out_degree(u); }

  /// Out-neighbours of u inside `set`.
  int out_count(int u, const Bitset& set) const { return rows_[u].and_count(set); }

  /// Every arc flipped.
  Tournament reversed() const {
    Tournament r(n_);
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v) arc(u, v) ? r.set_arc(v, u) : r.set_arc(u, v);
    return r;
  }

  /// Subtournament induced on `vertices`; vertex i of the result is vertices[i].
  Tournament induced(std::span<const int> vertices) const {
    const int m = static_cast<int>(vertices.size());
    Tournament t(m);
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        arc(vertices[i], vertices[j]) ? t.set_arc(i, j) : t.set_arc(j, i);
    return t;
  }

  /// First violated invariant, if any.
  std::optional<std::string> validate() const {
    for (int u = 0; u < n_; ++u) {
      if (arc(u, u)) return "loop at " + std::to_string(u);
      for (int v = u + 1; v < n_; ++v)
        if (arc(u, v) == arc(v, u))
          return "pair (" + std::to_string(u) + "," + std::to_string(v) + ") is not antisymmetric";
    }
    return std::nullopt;
  }

  friend bool operator==(const Tournament&, const Tournament&) = default;

 private:
  int n_ = 0;
  std::vector<Bitset> rows_;
};

/// Positions of each vertex in an ordering.
inline std::vector<int> inverse_permutation(std::span<const int> order) {
  std::vector<int> pos(order.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  return pos;
}

}  // namespace unavoid

#endif  // UNAVOID_TOURNAMENT_HPP
