#ifndef UNAVOID_GENERATE_HPP
#define UNAVOID_GENERATE_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "unavoid/error.hpp"
#include "unavoid/tournament.hpp"
#include "unavoid/tree.hpp"

namespace unavoid {

/// u->v iff u<v.
inline Tournament transitive(int n) {
  Tournament t(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) t.set_arc(u, v);
  return t;
}

/// u->v iff (v-u) mod n lies in `residues`. Requires n odd, |S|=(n-1)/2 and S disjoint from -S.
inline Tournament rotational(int n, const std::vector<int>& residues) {
  if (n < 1 || n % 2 == 0) throw PreconditionError("rotational tournament needs odd order");
  std::set<int> s;
  for (int r : residues) {
    int x = ((r % n) + n) % n;
    if (x == 0) throw PreconditionError("residue set contains 0");
    s.insert(x);
  }
  if (static_cast<int>(s.size()) != (n - 1) / 2 || static_cast<int>(residues.size()) != (n - 1) / 2)
    throw PreconditionError("residue set must have (n-1)/2 distinct elements");
  for (int x : s)
    if (s.count(n - x)) throw PreconditionError("residue set meets its negation at " + std::to_string(x));
  Tournament t(n);
  for (int u = 0; u < n; ++u)
    for (int x : s) t.set_arc(u, (u + x) % n);
  return t;
}

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Quadratic-residue tournament; n prime with n = 3 (mod 4).
inline Tournament paley(int n) {
  if (!is_prime(n) || n % 4 != 3) throw PreconditionError("paley order must be a prime congruent to 3 mod 4");
  std::set<int> qr;
  for (int x = 1; x < n; ++x) qr.insert(static_cast<int>((static_cast<long long>(x) * x) % n));
  return rotational(n, std::vector<int>(qr.begin(), qr.end()));
}

/// One coin per unordered pair {u<v} in lexicographic order; heads orients u->v.
inline Tournament random_tournament(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tournament t(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) (rng() >> 63) ? t.set_arc(u, v) : t.set_arc(v, u);
  return t;
}

/// Tournament whose pairs in lexicographic order are oriented by the bits of `mask`
/// (bit set means the smaller vertex dominates).
inline Tournament tournament_from_mask(int n, std::uint64_t mask) {
  Tournament t(n);
  int bit = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++bit) ((mask >> bit) & 1U) ? t.set_arc(u, v) : t.set_arc(v, u);
  return t;
}

/// Uniform labelled tree via a random Pruefer sequence, each arc oriented by a coin.
inline OrientedTree random_tree(int n, std::mt19937_64& rng) {
  if (n == 1) return {};
  std::vector<Arc> arcs;
  if (n == 2) {
    arcs.emplace_back(0, 1);
  } else {
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<int> code(n - 2);
    for (auto& c : code) c = pick(rng);
    std::vector<int> deg(n, 1);
    for (int c : code) ++deg[c];
    std::set<int> leaves;
    for (int v = 0; v < n; ++v)
      if (deg[v] == 1) leaves.insert(v);
    for (int c : code) {
      int leaf = *leaves.begin();
      leaves.erase(leaves.begin());
      arcs.emplace_back(leaf, c);
      if (--deg[c] == 1) leaves.insert(c);
    }
    int u = *leaves.begin();
    int v = *std::next(leaves.begin());
    arcs.emplace_back(u, v);
  }
  for (auto& [u, v] : arcs)
    if (rng() >> 63) std::swap(u, v);
  return {n, std::move(arcs)};
}

/// Random tree with exactly k leaves (2 <= k < n, or k = 2 = n): leaves are
/// hung on random inner nodes of a 3-node path, then random arcs are
/// subdivided until n nodes exist. Orientations are coin flips.
inline OrientedTree random_tree_with_leaves(int n, int k, std::mt19937_64& rng) {
  if (n == 2 && k == 2) return {2, {{0, 1}}};
  if (k < 2 || k >= n) throw PreconditionError("need 2 <= k < n");
  std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}};
  std::vector<int> deg{1, 2, 1};
  int leaves = 2;
  while (leaves < k) {
    std::vector<int> inner;
    for (int v = 0; v < static_cast<int>(deg.size()); ++v)
      if (deg[v] > 1) inner.push_back(v);
    int u = inner[rng() % inner.size()];
    int v = static_cast<int>(deg.size());
    edges.emplace_back(u, v);
    ++deg[u];
    deg.push_back(1);
    ++leaves;
  }
  while (static_cast<int>(deg.size()) < n) {
    const std::size_t e = rng() % edges.size();
    const int v = static_cast<int>(deg.size());
    deg.push_back(2);
    edges.emplace_back(v, edges[e].second);
    edges[e].second = v;
  }
  std::vector<int> label(n);
  for (int i = 0; i < n; ++i) label[i] = i;
  std::shuffle(label.begin(), label.end(), rng);
  std::vector<Arc> arcs;
  for (auto [u, v] : edges) arcs.push_back((rng() >> 63) ? Arc{label[u], label[v]} : Arc{label[v], label[u]});
  return {n, std::move(arcs)};
}

/// Directed path 0->1->...->n-1.
inline OrientedTree directed_path(int n) {
  std::vector<Arc> arcs;
  for (int i = 0; i + 1 < n; ++i) arcs.emplace_back(i, i + 1);
  return {n, std::move(arcs)};
}

/// Path 0-1-...-(n-1) starting with 0->1 and alternating.
inline OrientedTree antidirected_path(int n) {
  std::vector<Arc> arcs;
  for (int i = 0; i + 1 < n; ++i) arcs.push_back(i % 2 == 0 ? Arc{i, i + 1} : Arc{i + 1, i});
  return {n, std::move(arcs)};
}

/// Node 0 dominating nodes 1..n-1.
inline OrientedTree out_star(int n) {
  std::vector<Arc> arcs;
  for (int i = 1; i < n; ++i) arcs.emplace_back(0, i);
  return {n, std::move(arcs)};
}

}  // namespace unavoid

#endif  // UNAVOID_GENERATE_HPP
