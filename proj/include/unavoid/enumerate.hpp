#ifndef UNAVOID_ENUMERATE_HPP
#define UNAVOID_ENUMERATE_HPP

#include <string>
#include <unordered_set>
#include <vector>

#include "unavoid/tree.hpp"

namespace unavoid {

/// One representative of every oriented tree on n nodes up to isomorphism,
/// built by hanging an in- or out-leaf on every node of the trees on n-1
/// nodes. Output order is deterministic.
inline std::vector<OrientedTree> next_tree_level(const std::vector<OrientedTree>& prev) {
  std::vector<OrientedTree> out;
  std::unordered_set<std::string> seen;
  for (const auto& t : prev) {
    const int n = t.size();
    for (int v = 0; v < n; ++v)
      for (bool away : {true, false}) {
        auto arcs = t.arcs();
        arcs.push_back(away ? Arc{v, n} : Arc{n, v});
        OrientedTree grown(n + 1, std::move(arcs));
        if (seen.insert(canonical_form(grown)).second) out.push_back(std::move(grown));
      }
  }
  return out;
}

/// levels[n] holds the trees on n nodes, for 1 <= n <= max_n; levels[0] is empty.
inline std::vector<std::vector<OrientedTree>> all_oriented_trees(int max_n) {
  std::vector<std::vector<OrientedTree>> levels(max_n + 1);
  if (max_n >= 1) levels[1].push_back(OrientedTree());
  for (int n = 2; n <= max_n; ++n) levels[n] = next_tree_level(levels[n - 1]);
  return levels;
}

}  // namespace unavoid

#endif  // UNAVOID_ENUMERATE_HPP
