#ifndef UNAVOID_EMBED_ARBO_HPP
#define UNAVOID_EMBED_ARBO_HPP

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "unavoid/embedding.hpp"
#include "unavoid/error.hpp"
#include "unavoid/io.hpp"
#include "unavoid/median.hpp"
#include "unavoid/tournament.hpp"
#include "unavoid/tree.hpp"

namespace unavoid {

/// Result of the greedy out-arborescence procedure.
struct GreedyTrace {
  Embedding embedding;
  std::vector<int> failed;                          // skipped vertices, in ordering order
  std::vector<std::pair<int, int>> leaf_injection;  // failed vertex -> out-leaf node
  std::vector<int> dummies;                         // forbidden vertices consumed as extra leaves
  std::vector<std::string> log;
};

/// Maps a node's sons onto the vertex positions the greedy found for them.
/// Receives the sons and the ascending positions (possibly fewer than sons) and
/// returns, for each position, the son placed there.
using SonAssigner = std::function<std::vector<int>(int node, const std::vector<int>& sons, const std::vector<int>& positions)>;

/// Sons in decreasing subtree size (then increasing id) go to the earliest positions.
inline SonAssigner largest_subtree_first(const RootedTree& a) {
  auto sizes = std::make_shared<std::vector<int>>(a.subtree_sizes());
  return [sizes](int, const std::vector<int>& sons, const std::vector<int>& positions) {
    std::vector<int> s = sons;
    std::stable_sort(s.begin(), s.end(), [&](int x, int y) {
      return (*sizes)[x] != (*sizes)[y] ? (*sizes)[x] > (*sizes)[y] : x < y;
    });
    s.resize(positions.size());
    return s;
  };
}

/// Sons in the fixed order given by the tree's son lists.
inline SonAssigner fixed_son_order() {
  return [](int, const std::vector<int>& sons, const std::vector<int>& positions) {
    return std::vector<int>(sons.begin(), sons.begin() + static_cast<long>(positions.size()));
  };
}

/// Out-leaves of a rooted out-arborescence; a lone root counts as one.
inline std::vector<int> arborescence_leaves(const RootedTree& a) {
  std::vector<int> leaves;
  for (int v = 0; v < a.size(); ++v)
    if (a.sons(v).empty()) leaves.push_back(v);
  return leaves;
}

/// True iff every terminal interval of positions [lo, hi) holds fewer than
/// |I|/2 + 1 of the marked positions.
inline bool is_forward_window(const std::vector<char>& marked, int lo, int hi) {
  int count = 0;
  for (int j = hi - 1; j >= lo; --j) {
    count += marked[j] ? 1 : 0;
    if (2 * count >= (hi - j) + 2) return false;
  }
  return true;
}

namespace detail {

struct GreedyConfig {
  SonAssigner assign;
  std::function<bool(int vertex)> forbidden;
  std::function<void(int node, int vertex)> on_embed;
  bool check_forward = true;
  bool log = false;
};

inline std::string dump_rooted(const RootedTree& a, const Tournament& t, std::span<const int> order) {
  return "# root " + std::to_string(a.root()) + "\n" + dump_instance(a.tree(), t, order);
}

/// The greedy procedure: scan the ordering; a hit vertex hands the first
/// not-yet-hit out-neighbours after it to the sons of its node. Stops once
/// every node is embedded. Does not throw on incomplete embeddings.
inline GreedyTrace run_greedy(const RootedTree& a, const Tournament& t, std::span<const int> order, const GreedyConfig& cfg) {
  const int m = static_cast<int>(order.size());
  const int n = a.size();
  GreedyTrace trace;
  trace.embedding = Embedding(n);
  std::vector<int> node_at(m, -1);  // -2 marks a dummy leaf
  std::vector<char> hit(m, 0);
  int embedded = 0;
  auto place = [&](int node, int pos) {
    node_at[pos] = node;
    hit[pos] = 1;
    trace.embedding.image[node] = order[pos];
    ++embedded;
    if (cfg.log) trace.log.push_back("node " + std::to_string(node) + " -> position " + std::to_string(pos));
    if (cfg.on_embed) cfg.on_embed(node, order[pos]);
    // Placements follow the out-leaf extension rule, so while the window
    // 2|B|-1 fits the image stays forward inside it.
    if (cfg.check_forward && trace.dummies.empty() && 2 * embedded - 1 <= m &&
        !is_forward_window(hit, 0, 2 * embedded - 1))
      throw HardError("greedy embedding lost forwardness", dump_rooted(a, t, order));
  };
  if (m == 0) return trace;
  place(a.root(), 0);
  for (int i = 0; i < m && embedded < n; ++i) {
    if (!hit[i]) {
      trace.failed.push_back(order[i]);
      continue;
    }
    const int node = node_at[i];
    if (node < 0 || a.sons(node).empty()) continue;
    const auto& sons = a.sons(node);
    std::vector<int> positions;
    for (int j = i + 1; j < m && positions.size() < sons.size(); ++j) {
      if (hit[j] || !t.arc(order[i], order[j])) continue;
      if (cfg.forbidden && cfg.forbidden(order[j])) {
        hit[j] = 1;
        node_at[j] = -2;
        trace.dummies.push_back(order[j]);
        continue;
      }
      positions.push_back(j);
    }
    auto chosen = cfg.assign(node, sons, positions);
    for (std::size_t q = 0; q < positions.size(); ++q) place(chosen[q], positions[q]);
  }
  return trace;
}

/// Failed vertices matched to out-leaves embedded before them, scanning the
/// failed vertices in order and taking the smallest unclaimed leaf id.
inline std::optional<std::vector<std::pair<int, int>>> leaf_injection(const RootedTree& a, std::span<const int> order,
                                                                      const GreedyTrace& tr) {
  auto pos = inverse_permutation(order);
  auto leaves = arborescence_leaves(a);
  std::vector<char> claimed(a.size(), 0);
  std::vector<std::pair<int, int>> out;
  for (int f : tr.failed) {
    int pick = -1;
    for (int leaf : leaves)
      if (!claimed[leaf] && tr.embedding.assigned(leaf) && pos[tr.embedding[leaf]] < pos[f]) {
        pick = leaf;
        break;
      }
    if (pick < 0) return std::nullopt;
    claimed[pick] = 1;
    out.emplace_back(f, pick);
  }
  return out;
}

inline void require_m2(const Tournament& t, std::span<const int> order) {
  if (!is_local_median_order(t, order)) throw PreconditionError("ordering is not a local median order");
}

}  // namespace detail

/// Greedy embedding of an out-arborescence with the root at order[0].
/// Needs |T| >= n + k - 1 where k counts out-leaves.
inline GreedyTrace embed_out_arborescence(const RootedTree& a, const Tournament& t, std::span<const int> order,
                                          SonAssigner assign = {}, bool log = false) {
  if (!a.is_out_arborescence()) throw PreconditionError("tree is not an out-arborescence from its root");
  const int k = static_cast<int>(arborescence_leaves(a).size());
  if (t.size() < a.size() + k - 1)
    throw PreconditionError("tournament has " + std::to_string(t.size()) + " vertices, needs " +
                            std::to_string(a.size() + k - 1));
  detail::require_m2(t, order);
  detail::GreedyConfig cfg;
  cfg.assign = assign ? assign : largest_subtree_first(a);
  cfg.log = log;
  auto tr = detail::run_greedy(a, t, order, cfg);
  if (!tr.embedding.total()) throw HardError("greedy arborescence embedding incomplete", detail::dump_rooted(a, t, order));
  if (static_cast<int>(tr.failed.size()) > k - 1)
    throw HardError("more than k-1 failed vertices", detail::dump_rooted(a, t, order));
  auto inj = detail::leaf_injection(a, order, tr);
  if (!inj) throw HardError("no injection from failed vertices to earlier out-leaves", detail::dump_rooted(a, t, order));
  tr.leaf_injection = std::move(*inj);
  return tr;
}

/// Dual: in-arborescence with the root at the last vertex of the ordering.
inline GreedyTrace embed_in_arborescence(const RootedTree& a, const Tournament& t, std::span<const int> order) {
  RootedTree dual(a.tree().reversed(), a.root());
  std::vector<int> rev(order.rbegin(), order.rend());
  return embed_out_arborescence(dual, t.reversed(), rev);
}

/// Places out-leaf `leaf` at the first free out-neighbour of its father's image
/// after it. `phi` must be a forward embedding of the tree minus `leaf` that
/// avoids the last two vertices of the ordering.
inline Embedding extend_out_leaf(const RootedTree& a, int leaf, const Tournament& t, std::span<const int> order,
                                 Embedding phi) {
  const int p = static_cast<int>(order.size());
  const auto& tree = a.tree();
  if (tree.degree(leaf) != 1 || tree.in_degree(leaf) != 1) throw PreconditionError("node is not an out-leaf");
  if (leaf == a.root() && a.size() > 1) throw PreconditionError("cannot extend at the root");
  if (phi.assigned(leaf)) throw PreconditionError("leaf is already embedded");
  const int father = tree.in(leaf).front();
  if (!phi.assigned(father)) throw PreconditionError("father of the leaf is not embedded");
  auto pos = inverse_permutation(order);
  std::vector<char> hit(p, 0);
  for (int x = 0; x < a.size(); ++x) {
    if (x == leaf) continue;
    if (!phi.assigned(x)) throw PreconditionError("embedding must cover every node but the leaf");
    int q = pos[phi[x]];
    if (q >= p - 2) throw PreconditionError("embedding uses one of the last two vertices");
    hit[q] = 1;
  }
  if (!is_forward_window(hit, 0, p - 2)) throw PreconditionError("embedding is not forward");
  const int i = pos[phi[father]];
  for (int j = i + 1; j < p; ++j)
    if (!hit[j] && t.arc(order[i], order[j])) {
      phi.image[leaf] = order[j];
      hit[j] = 1;
      if (!is_forward_window(hit, 0, p)) throw HardError("extension lost forwardness", detail::dump_rooted(a, t, order));
      return phi;
    }
  throw HardError("no free out-neighbour for the leaf", detail::dump_rooted(a, t, order));
}

/// True iff for every initial and terminal interval I of positions [lo, hi):
/// |image in I| < |I|/2 - |F in I| + 1.
inline bool is_f_nice_window(const std::vector<char>& image, const std::vector<char>& forbidden, int lo, int hi) {
  int img = 0, forb = 0;
  for (int j = hi - 1; j >= lo; --j) {
    img += image[j];
    forb += forbidden[j];
    if (2 * img >= (hi - j) - 2 * forb + 2) return false;
  }
  img = forb = 0;
  for (int j = lo; j < hi; ++j) {
    img += image[j];
    forb += forbidden[j];
    if (2 * img >= (j - lo + 1) - 2 * forb + 2) return false;
  }
  return true;
}

namespace detail {

/// Nice embedding of `a` with the root at position `center` of `order`, inside
/// the window [center-half, center+half]; never uses a position where
/// `forbidden` is set. Needs half >= 2n + 2|F in window| - 3 (n >= 2).
/// Grows the tree along its BFS order, each level confined to the window given
/// by the shrinking fixed point, and checks niceness after every placement.
inline Embedding nice_embedding(const RootedTree& a, const Tournament& t, std::span<const int> order, int center,
                                int half, const std::vector<char>& forbidden) {
  const int n = a.size();
  const auto& bfs = a.bfs_order();
  auto f_in = [&](int h) {
    int c = 0;
    for (int j = center - h; j <= center + h; ++j) c += forbidden[j];
    return c;
  };
  std::vector<int> window(n + 1, 0);
  window[n] = half;
  for (int size = n; size >= 2; --size) {
    int pp = 2 * size - 3;
    int rounds = 0;
    for (;;) {
      int next = 2 * size + 2 * f_in(pp) - 3;
      if (next == pp) break;
      if (next > window[size] || ++rounds > f_in(window[size]) + 1)
        throw HardError("window fixed point did not settle", dump_instance(a.tree(), t, order));
      pp = next;
    }
    window[size - 1] = pp;
  }
  Embedding phi(n);
  std::vector<char> image(order.size(), 0);
  phi.image[a.root()] = order[center];
  image[center] = 1;
  for (int step = 1; step < n; ++step) {
    const int x = bfs[step];
    const int y = a.father(x);
    const int h = window[step + 1];
    const int i = inverse_permutation(order)[phi[y]];
    int pick = -1;
    if (a.is_upward(x)) {
      for (int j = i + 1; j <= center + h && pick < 0; ++j)
        if (!image[j] && !forbidden[j] && t.arc(order[i], order[j])) pick = j;
    } else {
      for (int j = i - 1; j >= center - h && pick < 0; --j)
        if (!image[j] && !forbidden[j] && t.arc(order[j], order[i])) pick = j;
    }
    if (pick < 0) throw HardError("nice embedding found no free neighbour", dump_instance(a.tree(), t, order));
    phi.image[x] = order[pick];
    image[pick] = 1;
    if (!is_f_nice_window(image, forbidden, center - h, center + h + 1))
      throw HardError("nice embedding lost F-niceness", dump_instance(a.tree(), t, order));
  }
  return phi;
}

}  // namespace detail

/// Nice embedding avoiding a forbidden set: |T| = 4n + 4f - 3, root at the
/// centre position 2n + 2f - 2 of the ordering, no image in `forbidden`, and
/// every initial/terminal interval I keeps |image in I| < |I|/2 - |F in I| + 1.
inline Embedding embed_sigma_F_nice(const RootedTree& a, const Tournament& t, std::span<const int> order,
                                    const std::vector<int>& forbidden, int capacity) {
  const int n = a.size();
  if (capacity < 0) throw PreconditionError("negative forbidden capacity");
  if (static_cast<int>(forbidden.size()) > capacity) throw PreconditionError("forbidden set exceeds its capacity");
  if (t.size() != 4 * n + 4 * capacity - 3)
    throw PreconditionError("tournament must have exactly 4n+4f-3 = " + std::to_string(4 * n + 4 * capacity - 3) +
                            " vertices");
  detail::require_m2(t, order);
  auto pos = inverse_permutation(order);
  std::vector<char> mask(order.size(), 0);
  for (int v : forbidden) {
    if (v < 0 || v >= t.size()) throw PreconditionError("forbidden vertex out of range");
    mask[pos[v]] = 1;
  }
  const int center = 2 * n + 2 * capacity - 2;
  if (mask[center]) throw PreconditionError("centre vertex is forbidden");
  return detail::nice_embedding(a, t, order, center, center, mask);
}

/// Embeds disjoint out-arborescences with the root of arbs[q] pinned at
/// position pins[q] (ascending, all < s), avoiding forbidden vertices, through
/// the augmented tournament: a transitive head b, a, a_1..a_{s-p} is prepended
/// so that the plain greedy lands a's sons exactly on the pins.
///
/// `forbidden` is consulted only when the greedy reaches a vertex, so it may
/// grow during the run (from `on_embed`). Needs
/// |order| >= s + sum(n_q + k_q - 1) + 2f - 1.
inline std::vector<Embedding> embed_forest_at_roots(const std::vector<RootedTree>& arbs, const Tournament& t,
                                                    std::span<const int> order, std::function<bool(int)> forbidden,
                                                    int capacity, const std::vector<int>& pins, int s,
                                                    std::function<void(int arb, int node, int vertex)> on_embed = {},
                                                    bool check_median = true) {
  const int p = static_cast<int>(arbs.size());
  const int m = static_cast<int>(order.size());
  if (p != static_cast<int>(pins.size())) throw PreconditionError("one pin per arborescence");
  if (s <= p) throw PreconditionError("need s > p");
  for (int q = 0; q < p; ++q) {
    if (pins[q] < 0 || pins[q] >= s || (q > 0 && pins[q] <= pins[q - 1]))
      throw PreconditionError("pins must increase and lie among the first s positions");
    if (forbidden && forbidden(order[pins[q]])) throw PreconditionError("a pin is forbidden");
    if (!arbs[q].is_out_arborescence()) throw PreconditionError("forest component is not an out-arborescence");
  }
  long need = s + 2L * capacity - 1;
  for (const auto& arb : arbs) need += arb.size() + static_cast<long>(arborescence_leaves(arb).size()) - 1;
  if (m < need) throw PreconditionError("ordering has " + std::to_string(m) + " vertices, needs " + std::to_string(need));
  if (check_median) detail::require_m2(t, order);

  // Augmented tree: forest nodes, then a, b, then a_1..a_{s-p}.
  std::vector<int> offset(p + 1, 0);
  for (int q = 0; q < p; ++q) offset[q + 1] = offset[q] + arbs[q].size();
  const int forest = offset[p];
  const int node_a = forest, node_b = forest + 1;
  std::vector<Arc> arcs;
  for (int q = 0; q < p; ++q) {
    for (auto [u, v] : arbs[q].tree().arcs()) arcs.emplace_back(u + offset[q], v + offset[q]);
    arcs.emplace_back(node_a, arbs[q].root() + offset[q]);
  }
  arcs.emplace_back(node_b, node_a);
  for (int x = 0; x < s - p; ++x) arcs.emplace_back(node_b, forest + 2 + x);
  RootedTree aug(OrientedTree(forest + 2 + s - p, arcs), node_b);

  // Augmented tournament: original vertices keep their ids; head vertices follow.
  const int extra = s - p + 2;
  const int tn = t.size();
  Tournament big(tn + extra);
  for (int u = 0; u < tn; ++u)
    for (int v = u + 1; v < tn; ++v) t.arc(u, v) ? big.set_arc(u, v) : big.set_arc(v, u);
  const int vb = tn, va = tn + 1;
  std::vector<char> pinned(m, 0);
  for (int q : pins) pinned[q] = 1;
  std::vector<int> head{vb, va};
  for (int x = 0; x < s - p; ++x) head.push_back(tn + 2 + x);
  for (std::size_t x = 0; x < head.size(); ++x)
    for (std::size_t y = x + 1; y < head.size(); ++y) big.set_arc(head[x], head[y]);
  std::vector<char> in_order(tn, 0);
  for (int j = 0; j < m; ++j) in_order[order[j]] = 1;
  for (int u = 0; u < tn; ++u)
    for (int h : head)
      if (h != va) big.set_arc(h, u);
  for (int j = 0; j < m; ++j) {
    if (pinned[j] || j >= s) big.set_arc(va, order[j]);
    else big.set_arc(order[j], va);
  }
  for (int u = 0; u < tn; ++u)
    if (!in_order[u]) big.set_arc(va, u);
  std::vector<int> big_order = head;
  big_order.insert(big_order.end(), order.begin(), order.end());

  auto fallback = largest_subtree_first(aug);
  detail::GreedyConfig cfg;
  cfg.assign = [&](int node, const std::vector<int>& sons, const std::vector<int>& positions) {
    if (node == node_a || node == node_b) return fixed_son_order()(node, sons, positions);
    return fallback(node, sons, positions);
  };
  cfg.forbidden = [&](int v) { return v < tn && forbidden && forbidden(v); };
  cfg.check_forward = false;
  cfg.on_embed = [&](int node, int vertex) {
    if (node >= forest || !on_embed) return;
    int q = static_cast<int>(std::upper_bound(offset.begin(), offset.end(), node) - offset.begin()) - 1;
    on_embed(q, node - offset[q], vertex);
  };
  auto tr = detail::run_greedy(aug, big, big_order, cfg);
  if (!tr.embedding.total()) throw HardError("forest embedding incomplete", dump_instance(aug.tree(), big, big_order));
  if (tr.embedding[node_b] != vb || tr.embedding[node_a] != va)
    throw HardError("augmented head not placed at the front", dump_instance(aug.tree(), big, big_order));
  std::vector<Embedding> out;
  for (int q = 0; q < p; ++q) {
    Embedding e(arbs[q].size());
    for (int x = 0; x < arbs[q].size(); ++x) e.image[x] = tr.embedding[x + offset[q]];
    if (e[arbs[q].root()] != order[pins[q]])
      throw HardError("root not landed on its pin", dump_instance(aug.tree(), big, big_order));
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace unavoid

#endif  // UNAVOID_EMBED_ARBO_HPP
