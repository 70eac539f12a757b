#ifndef UNAVOID_EMBED_TREE_HPP
#define UNAVOID_EMBED_TREE_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "unavoid/embed_arbo.hpp"
#include "unavoid/embedding.hpp"
#include "unavoid/error.hpp"
#include "unavoid/median.hpp"
#include "unavoid/tournament.hpp"
#include "unavoid/tree.hpp"

namespace unavoid {

/// Tree induced on a node subset, relabelled 0..|nodes|-1 in the given order.
struct Subtree {
  OrientedTree tree;
  std::vector<int> to_parent;    // sub id -> parent id
  std::vector<int> from_parent;  // parent id -> sub id, or -1
};

inline Subtree induced_subtree(const OrientedTree& a, const std::vector<int>& nodes) {
  std::vector<int> from(a.size(), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) from[nodes[i]] = static_cast<int>(i);
  std::vector<Arc> arcs;
  for (auto [u, v] : a.arcs())
    if (from[u] >= 0 && from[v] >= 0) arcs.emplace_back(from[u], from[v]);
  return {OrientedTree(static_cast<int>(nodes.size()), std::move(arcs)), nodes, std::move(from)};
}

namespace detail {

/// Induced subtournament on a window of an ordering; the identity ordering of
/// the result is the window.
struct Window {
  Tournament t;
  std::vector<int> vertices;  // local id -> original vertex
  std::vector<int> identity;
};

inline Window make_window(const Tournament& t, std::span<const int> order, int lo, int hi) {
  Window w;
  w.vertices.assign(order.begin() + lo, order.begin() + hi);
  w.t = t.induced(w.vertices);
  w.identity.resize(w.vertices.size());
  std::iota(w.identity.begin(), w.identity.end(), 0);
  return w;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Upward/downward forests

struct RootMetrics {
  int root = 0;
  int gamma_up = 0;
  int gamma_down = 0;
  int beta_up = 0;
  int beta_down = 0;
  std::vector<std::vector<int>> components_up;
  std::vector<std::vector<int>> components_down;
};

namespace detail {

/// Components (with at least one arc) of the forest made of the arcs whose
/// head-is-son flag equals `upward`, together with each component's count of
/// out-leaves (upward) or in-leaves (downward) within the component.
inline std::vector<std::pair<std::vector<int>, int>> forest_components(const RootedTree& rt, bool upward) {
  const int n = rt.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> outdeg(n, 0), indeg(n, 0);
  std::vector<char> touched(n, 0);
  for (int v = 0; v < n; ++v) {
    if (v == rt.root() || rt.is_upward(v) != upward) continue;
    int f = rt.father(v);
    parent[find(v)] = find(f);
    touched[v] = touched[f] = 1;
    if (upward) ++outdeg[f], ++indeg[v];
    else ++outdeg[v], ++indeg[f];
  }
  std::vector<int> slot(n, -1);
  std::vector<std::pair<std::vector<int>, int>> comps;
  for (int v = 0; v < n; ++v) {
    if (!touched[v]) continue;
    int r = find(v);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(comps.size());
      comps.push_back({{}, 0});
    }
    auto& c = comps[slot[r]];
    c.first.push_back(v);
    if (upward ? (indeg[v] == 1 && outdeg[v] == 0) : (outdeg[v] == 1 && indeg[v] == 0)) ++c.second;
  }
  return comps;
}

}  // namespace detail

/// gamma and beta metrics of `a` rooted at `r`.
inline RootMetrics gamma(const OrientedTree& a, int r) {
  if (r < 0 || r >= a.size()) throw PreconditionError("root is not a node");
  RootedTree rt(a, r);
  RootMetrics m;
  m.root = r;
  auto leaves = leaf_partition(a);
  for (auto& [nodes, lf] : detail::forest_components(rt, true)) {
    const int sz = static_cast<int>(nodes.size());
    m.gamma_up += sz + lf - 2;
    m.beta_up += 3 * sz - 3;
    m.components_up.push_back(nodes);
  }
  for (auto& [nodes, lf] : detail::forest_components(rt, false)) {
    const int sz = static_cast<int>(nodes.size());
    m.gamma_down += sz + lf - 2;
    m.beta_down += 3 * sz - 3;
    m.components_down.push_back(nodes);
  }
  m.beta_up += 2 * static_cast<int>(leaves.out_leaves.size());
  m.beta_down += 2 * static_cast<int>(leaves.in_leaves.size());
  return m;
}

struct RootChoice {
  int root = 0;
  bool reversed = false;
  int gamma_down = 0;  // of the (possibly reversed) tree at `root`; the global min of min(gamma_up, gamma_down)
};

/// Root minimising min(gamma_up, gamma_down); reversed when only gamma_up attains
/// the minimum. The returned root has in-degree 0 in the chosen orientation.
inline RootChoice choose_root_few_leaves(const OrientedTree& a) {
  const int n = a.size();
  std::vector<RootMetrics> all;
  int best = -1;
  for (int r = 0; r < n; ++r) {
    all.push_back(gamma(a, r));
    int v = std::min(all.back().gamma_up, all.back().gamma_down);
    if (best < 0 || v < best) best = v;
  }
  for (bool rev : {false, true})
    for (int r = 0; r < n; ++r) {
      int g = rev ? all[r].gamma_up : all[r].gamma_down;
      bool source = rev ? a.out_degree(r) == 0 : a.in_degree(r) == 0;
      if (g == best && source) return {r, rev, best};
    }
  throw HardError("no in-degree-0 minimiser of gamma", to_text(a));
}

/// Smallest value of min(gamma_up, gamma_down) over all roots.
inline int min_gamma(const OrientedTree& a) { return choose_root_few_leaves(a).gamma_down; }

// ---------------------------------------------------------------------------
// Equivalent arborescence

struct DownComponent {
  std::vector<int> nodes;  // nodes of the component in the original tree
  int top = -1;            // node closest to the root
  int father = -1;         // father of top
  int in_leaves = 0;
  std::vector<int> extra;  // added node ids in the equivalent arborescence
};

struct EquivalentArborescence {
  RootedTree tree;  // same root; original nodes keep their ids
  int original_nodes = 0;
  std::vector<DownComponent> parts;
  std::vector<int> part_of;  // node -> index of the son-set it belongs to, or -1
};

/// Replaces every downward component C by arcs from the father of its top to
/// each node of C plus |L^-(C)|-1 new leaves. The root must have in-degree 0.
inline EquivalentArborescence equivalent_arborescence(const RootedTree& a) {
  const auto& tree = a.tree();
  if (tree.in_degree(a.root()) != 0) throw PreconditionError("root must have in-degree 0");
  const int n = a.size();
  std::vector<Arc> arcs;
  for (int v = 0; v < n; ++v)
    if (v != a.root() && a.is_upward(v)) arcs.emplace_back(a.father(v), v);
  std::vector<DownComponent> parts;
  int next = n;
  for (auto& [nodes, lf] : detail::forest_components(a, false)) {
    DownComponent c;
    c.nodes = nodes;
    c.in_leaves = lf;
    c.top = *std::min_element(nodes.begin(), nodes.end(), [&](int x, int y) {
      return a.depth(x) != a.depth(y) ? a.depth(x) < a.depth(y) : x < y;
    });
    c.father = a.father(c.top);
    for (int v : nodes)
      if (v != c.top) arcs.emplace_back(c.father, v);
    for (int x = 0; x + 1 < lf; ++x) {
      c.extra.push_back(next);
      arcs.emplace_back(c.father, next++);
    }
    parts.push_back(std::move(c));
  }
  EquivalentArborescence eq{RootedTree(OrientedTree(next, std::move(arcs)), a.root()), n, std::move(parts), {}};
  eq.part_of.assign(next, -1);
  for (std::size_t i = 0; i < eq.parts.size(); ++i) {
    for (int v : eq.parts[i].nodes) eq.part_of[v] = static_cast<int>(i);
    for (int v : eq.parts[i].extra) eq.part_of[v] = static_cast<int>(i);
  }
  return eq;
}

namespace detail {

struct RootSourceRun {
  EquivalentArborescence eq;
  GreedyTrace trace;  // over the nodes of eq.tree
};

/// Greedy on the equivalent arborescence; when the images of a son-set S_i are
/// known, its component is re-embedded inside them as an in-arborescence.
inline GreedyTrace run_root_source(const RootedTree& a, const EquivalentArborescence& eq, const Tournament& t,
                                   std::span<const int> order) {
  const auto& ap = eq.tree;
  const int need = ap.size() + static_cast<int>(arborescence_leaves(ap).size()) - 1;
  if (static_cast<int>(order.size()) < need)
    throw PreconditionError("ordering has " + std::to_string(order.size()) + " vertices, equivalent arborescence needs " +
                            std::to_string(need));
  std::vector<Subtree> comps;
  for (const auto& c : eq.parts) {
    std::vector<int> nodes = c.nodes;
    std::stable_partition(nodes.begin(), nodes.end(), [&](int v) { return v == c.top; });
    comps.push_back(induced_subtree(a.tree(), nodes));  // top is sub id 0
  }
  auto base = largest_subtree_first(ap);
  GreedyConfig cfg;
  cfg.assign = [&](int node, const std::vector<int>& sons, const std::vector<int>& positions) {
    auto chosen = base(node, sons, positions);
    if (positions.size() < sons.size()) return chosen;
    for (std::size_t i = 0; i < eq.parts.size(); ++i) {
      if (eq.parts[i].father != node) continue;
      std::vector<int> slots;
      std::vector<int> verts;
      for (std::size_t q = 0; q < positions.size(); ++q)
        if (eq.part_of[chosen[q]] == static_cast<int>(i)) {
          slots.push_back(static_cast<int>(q));
          verts.push_back(order[positions[q]]);
        }
      auto sub = t.induced(verts);
      auto sub_order = local_median_order(sub);
      RootedTree comp(comps[i].tree, 0);
      auto inner = embed_in_arborescence(comp, sub, sub_order);
      std::vector<char> used(slots.size(), 0);
      for (int x = 0; x < comp.size(); ++x) {
        int local = inner.embedding[x];
        chosen[slots[local]] = comps[i].to_parent[x];
        used[local] = 1;
      }
      std::size_t e = 0;
      for (std::size_t s = 0; s < slots.size(); ++s)
        if (!used[s]) chosen[slots[s]] = eq.parts[i].extra[e++];
    }
    return chosen;
  };
  auto tr = run_greedy(ap, t, order, cfg);
  if (!tr.embedding.total()) throw HardError("equivalent arborescence embedding incomplete", dump_instance(a.tree(), t, order));
  return tr;
}

inline RootSourceRun run_root_source(const RootedTree& a, const Tournament& t, std::span<const int> order) {
  auto eq = equivalent_arborescence(a);
  auto tr = run_root_source(a, eq, t, order);
  return {std::move(eq), std::move(tr)};
}

}  // namespace detail

/// Embedding of a tree rooted at an in-degree-0 node in a tournament with at
/// least n + k - 1 + gamma_down vertices.
inline Embedding embed_root_source(const RootedTree& a, const Tournament& t, std::span<const int> order) {
  if (a.tree().in_degree(a.root()) != 0) throw PreconditionError("root must have in-degree 0");
  const int bound = a.size() + leaf_count(a.tree()) - 1 + gamma(a.tree(), a.root()).gamma_down;
  if (t.size() < bound) throw PreconditionError("tournament needs " + std::to_string(bound) + " vertices");
  detail::require_m2(t, order);
  auto run = detail::run_root_source(a, t, order);
  Embedding phi(a.size());
  for (int x = 0; x < a.size(); ++x) phi.image[x] = run.trace.embedding[x];
  if (!verify_embedding(a.tree(), t, phi).empty()) throw HardError("root-source embedding invalid", dump_instance(a.tree(), t, order));
  return phi;
}

/// Root choice and equivalent arborescence for the few-leaves route; depends
/// on the tree only, so sweeps over many tournaments can reuse it.
struct FewLeavesPlan {
  RootChoice choice;
  RootedTree tree;  // reversed when choice.reversed
  EquivalentArborescence eq;
  int need = 0;     // |A'| + leaves(A') - 1
};

inline FewLeavesPlan plan_few_leaves(const OrientedTree& a) {
  auto c = choose_root_few_leaves(a);
  RootedTree rt(c.reversed ? a.reversed() : a, c.root);
  auto eq = equivalent_arborescence(rt);
  const int need = eq.tree.size() + static_cast<int>(arborescence_leaves(eq.tree).size()) - 1;
  return {c, std::move(rt), std::move(eq), need};
}

/// Vertices the few-leaves route needs. Never exceeds n + k - 1 + min gamma.
inline int few_leaves_requirement(const OrientedTree& a) { return plan_few_leaves(a).need; }

inline int few_leaves_bound(const OrientedTree& a) { return a.size() + leaf_count(a) - 1 + min_gamma(a); }

/// Few-leaves embedding with a precomputed plan and a local median order of
/// `t`. A reversed plan runs on the reversed tournament with the reversed
/// ordering, which is again a local median order.
inline Embedding embed_few_leaves(const FewLeavesPlan& plan, const OrientedTree& a, const Tournament& t,
                                  std::span<const int> order) {
  if (t.size() < plan.need) throw PreconditionError("tournament too small: needs " + std::to_string(plan.need) + " vertices");
  GreedyTrace tr;
  if (plan.choice.reversed) {
    std::vector<int> rev(order.rbegin(), order.rend());
    tr = detail::run_root_source(plan.tree, plan.eq, t.reversed(), rev);
  } else {
    tr = detail::run_root_source(plan.tree, plan.eq, t, order);
  }
  Embedding phi(a.size());
  for (int x = 0; x < a.size(); ++x) phi.image[x] = tr.embedding[x];
  if (!verify_embedding(a, t, phi).empty()) throw HardError("few-leaves embedding invalid", dump_instance(a, t, order));
  return phi;
}

/// Few-leaves embedding: best root (after optional reversal) then the
/// root-source procedure on a local median order.
inline Embedding embed_few_leaves(const OrientedTree& a, const Tournament& t) {
  auto plan = plan_few_leaves(a);
  if (t.size() < plan.need) throw PreconditionError("tournament too small: needs " + std::to_string(plan.need) + " vertices");
  return embed_few_leaves(plan, a, t, local_median_order(t));
}

// ---------------------------------------------------------------------------
// Arborescences and bi-arborescences

struct BiSplit {
  int root = -1;
  std::vector<int> in_nodes;   // root first
  std::vector<int> out_nodes;  // root first
  int in_need = 0;             // n1 + k1 - 1 of the in-part
  int out_need = 0;
  int total() const { return in_need + out_need - 1; }
};

inline std::optional<BiSplit> bi_split(const OrientedTree& a, int r) {
  if (!is_bi_arborescence_at(a, r)) return std::nullopt;
  RootedTree rt(a, r);
  BiSplit s;
  s.root = r;
  s.in_nodes.push_back(r);
  s.out_nodes.push_back(r);
  for (int v : rt.bfs_order())
    if (v != r) (rt.is_upward(v) ? s.out_nodes : s.in_nodes).push_back(v);
  auto in_sub = induced_subtree(a, s.in_nodes);
  auto out_sub = induced_subtree(a, s.out_nodes);
  RootedTree in_rt(in_sub.tree.reversed(), 0), out_rt(out_sub.tree, 0);
  s.in_need = in_rt.size() + static_cast<int>(arborescence_leaves(in_rt).size()) - 1;
  s.out_need = out_rt.size() + static_cast<int>(arborescence_leaves(out_rt).size()) - 1;
  return s;
}

/// Bi-arborescence split with the fewest required vertices (smallest root on ties).
inline std::optional<BiSplit> best_bi_split(const OrientedTree& a) {
  std::optional<BiSplit> best;
  for (int r = 0; r < a.size(); ++r) {
    auto s = bi_split(a, r);
    if (s && (!best || s->total() < best->total())) best = std::move(s);
  }
  return best;
}

/// In-part on the first n1+k1-1 vertices ending at the root; out-part from the
/// root's vertex onwards.
inline Embedding embed_bi_arborescence(const OrientedTree& a, const Tournament& t) {
  auto split = best_bi_split(a);
  if (!split) throw PreconditionError("tree is not a bi-arborescence");
  if (t.size() < split->total()) throw PreconditionError("tournament needs " + std::to_string(split->total()) + " vertices");
  auto order = local_median_order(t);
  auto in_sub = induced_subtree(a, split->in_nodes);
  auto out_sub = induced_subtree(a, split->out_nodes);
  Embedding phi(a.size());
  auto w_in = detail::make_window(t, order, 0, split->in_need);
  auto tr_in = embed_in_arborescence(RootedTree(in_sub.tree, 0), w_in.t, w_in.identity);
  for (int x = 0; x < in_sub.tree.size(); ++x) phi.image[in_sub.to_parent[x]] = w_in.vertices[tr_in.embedding[x]];
  auto w_out = detail::make_window(t, order, split->in_need - 1, t.size());
  auto tr_out = embed_out_arborescence(RootedTree(out_sub.tree, 0), w_out.t, w_out.identity);
  for (int x = 0; x < out_sub.tree.size(); ++x) {
    int v = w_out.vertices[tr_out.embedding[x]];
    if (x == 0 && v != phi[split->root]) throw HardError("bi-arborescence halves disagree on the root", dump_instance(a, t, order));
    phi.image[out_sub.to_parent[x]] = v;
  }
  if (!verify_embedding(a, t, phi).empty()) throw HardError("bi-arborescence embedding invalid", dump_instance(a, t, order));
  return phi;
}

/// Smallest n + (leaves of the arborescence) - 1 over roots from which `a` is
/// an out- or in-arborescence.
inline std::optional<std::pair<int, bool>> best_arborescence_root(const OrientedTree& a, int* need = nullptr) {
  std::optional<std::pair<int, bool>> best;
  int best_need = 0;
  for (bool in : {false, true})
    for (int r = 0; r < a.size(); ++r) {
      RootedTree rt(in ? a.reversed() : a, r);
      if (!rt.is_out_arborescence()) continue;
      int nd = a.size() + static_cast<int>(arborescence_leaves(rt).size()) - 1;
      if (!best || nd < best_need) best = std::pair{r, in}, best_need = nd;
    }
  if (need && best) *need = best_need;
  return best;
}

/// Greedy arborescence embedding with the cheapest root; in-arborescences by duality.
inline Embedding embed_arborescence(const OrientedTree& a, const Tournament& t, GreedyTrace* trace_out = nullptr) {
  int need = 0;
  auto root = best_arborescence_root(a, &need);
  if (!root) throw PreconditionError("tree is not an arborescence");
  if (t.size() < need) throw PreconditionError("tournament needs " + std::to_string(need) + " vertices");
  auto order = local_median_order(t);
  auto tr = root->second ? embed_in_arborescence(RootedTree(a, root->first), t, order)
                         : embed_out_arborescence(RootedTree(a, root->first), t, order);
  if (!verify_embedding(a, t, tr.embedding).empty()) throw HardError("arborescence embedding invalid", dump_instance(a, t, order));
  Embedding phi = tr.embedding;
  if (trace_out) *trace_out = std::move(tr);
  return phi;
}

// ---------------------------------------------------------------------------
// Leaf clusters and the many-leaves procedure

struct ClusterSplit {
  std::vector<int> s_minus;
  std::vector<int> s_plus;
  Subtree heart;
  int n_heart = 0;
  int k_heart = 0;  // leaf_count of the heart (1 for a single node)
};

inline ClusterSplit clusters(const OrientedTree& a) {
  if (bi_arborescence_root(a)) throw PreconditionError("clusters are undefined on a bi-arborescence");
  const int n = a.size();
  auto grow = [&](bool plus) {
    std::vector<char> in(n, 0);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < n; ++v) {
        if (in[v]) continue;
        const auto& back = plus ? a.in(v) : a.out(v);
        const auto& fwd = plus ? a.out(v) : a.in(v);
        if (back.size() != 1) continue;
        bool all = std::all_of(fwd.begin(), fwd.end(), [&](int w) { return in[w] != 0; });
        if (all) in[v] = 1, changed = true;
      }
    }
    return in;
  };
  auto plus = grow(true), minus = grow(false);
  ClusterSplit c;
  std::vector<int> heart;
  for (int v = 0; v < n; ++v) {
    if (plus[v] && minus[v]) throw HardError("leaf clusters intersect", to_text(a));
    if (plus[v]) c.s_plus.push_back(v);
    else if (minus[v]) c.s_minus.push_back(v);
    else heart.push_back(v);
  }
  if (heart.empty()) throw HardError("empty heart", to_text(a));
  c.heart = induced_subtree(a, heart);  // throws if the heart is disconnected
  c.n_heart = c.heart.tree.size();
  c.k_heart = leaf_count(c.heart.tree);
  return c;
}

inline int many_leaves_bound(const OrientedTree& a) {
  const int n = a.size(), k = leaf_count(a);
  const int num = 9 * n - 5 * k - 9;  // ceil(num / 2)
  return num >= 0 ? (num + 1) / 2 : -((-num) / 2);
}

struct PhasePlan {
  int ell = 0;
  int p = 0;
  int root = -1;  // heart root, in tree ids
};

namespace detail {

inline int pick_by_weight(const std::vector<int>& cands, const std::vector<int>& weight) {
  int best = -1;
  for (int c : cands)
    if (best < 0 || weight[c] > weight[best] || (weight[c] == weight[best] && c < best)) best = c;
  return best;
}

/// Number of cluster nodes hanging below each node when walking away from the heart.
inline std::vector<int> cluster_weights(const OrientedTree& a, const std::vector<int>& cluster, bool plus) {
  std::vector<char> in(a.size(), 0);
  for (int v : cluster) in[v] = 1;
  std::vector<int> w(a.size(), 0);
  std::function<int(int)> rec = [&](int v) {
    int s = 1;
    for (int x : plus ? a.out(v) : a.in(v))
      if (in[x]) s += rec(x);
    return w[v] = s;
  };
  for (int v : cluster) rec(v);
  return w;
}

/// Heart nice on the first 4 n_H - 3 vertices, then the out-leaf cluster by
/// repeated out-leaf extension. Used when the in-leaf cluster is empty.
inline Embedding many_leaves_two_phase(const OrientedTree& a, const Tournament& t, const ClusterSplit& c) {
  auto order = local_median_order(t);
  const int m = t.size();
  const int nh = c.n_heart;
  if (4 * nh - 3 + 2 * static_cast<int>(c.s_plus.size()) > m)
    throw HardError("two-phase budget exceeds the tournament", dump_instance(a, t, order));
  std::vector<char> hit(m, 0), none(m, 0);
  auto pos = inverse_permutation(order);
  RootedTree hr(c.heart.tree, 0);
  auto hphi = nice_embedding(hr, t, order, 2 * nh - 2, 2 * nh - 2, none);
  Embedding phi(a.size());
  for (int x = 0; x < nh; ++x) {
    phi.image[c.heart.to_parent[x]] = hphi[x];
    hit[pos[hphi[x]]] = 1;
  }
  std::vector<int> queue = c.heart.to_parent;
  int window = 4 * nh - 3;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (int y : a.out(queue[h])) {
      if (phi.assigned(y)) continue;
      window += 2;
      if (!is_forward_window(hit, 0, window - 2)) throw HardError("extension input not forward", dump_instance(a, t, order));
      const int i = pos[phi[queue[h]]];
      int j = i + 1;
      while (j < m && (hit[j] || !t.arc(order[i], order[j]))) ++j;
      if (j >= window) throw HardError("no free out-neighbour in the extension window", dump_instance(a, t, order));
      hit[j] = 1;
      phi.image[y] = order[j];
      queue.push_back(y);
    }
  }
  return phi;
}

/// Three-phase procedure with the heart rooted at an in-degree-0 node `root`
/// (heart ids). Optional plan receives the interval bounds.
inline Embedding many_leaves_three_phase(const OrientedTree& a, const Tournament& t, const ClusterSplit& c, int root,
                                         PhasePlan* plan_out = nullptr) {
  const auto& h = c.heart.tree;
  RootedTree hr(h, root);
  auto metrics = gamma(h, root);
  int down_sum = 0;
  for (const auto& comp : metrics.components_down) down_sum += static_cast<int>(comp.size()) - 1;
  const int lminus_h = static_cast<int>(leaf_partition(h).in_leaves.size());
  const int ell = c.n_heart - c.k_heart - 1 + down_sum + 2 * lminus_h + 2 * static_cast<int>(c.s_minus.size());
  const int p = ell + c.n_heart + c.k_heart - 1 + metrics.gamma_down;
  if (plan_out) *plan_out = {ell, p, c.heart.to_parent[root]};
  const int m = t.size();
  auto order = local_median_order(t);
  if (ell < 1 || p > m) throw HardError("phase intervals out of range", dump_instance(a, t, order));

  // Phase 1: heart (with the equivalent-arborescence placeholders) on v_{l+1..p}.
  auto run = run_root_source(hr, t, std::span<const int>(order).subspan(ell, p - ell));
  auto pos = inverse_permutation(order);
  std::vector<int> node_at(m, -1);  // -2 placeholder
  Embedding phi(a.size());
  for (int x = 0; x < run.eq.tree.size(); ++x) {
    int v = run.trace.embedding[x];
    if (pos[v] < ell || pos[v] >= p) throw HardError("phase-1 image outside its interval", dump_instance(a, t, order));
    if (x < c.n_heart) {
      phi.image[c.heart.to_parent[x]] = v;
      node_at[pos[v]] = c.heart.to_parent[x];
    } else {
      node_at[pos[v]] = -2;
    }
  }

  // Phase 2: out-leaf cluster, smallest anchor first, first free out-neighbour.
  std::vector<char> in_plus(a.size(), 0), in_minus(a.size(), 0);
  for (int v : c.s_plus) in_plus[v] = 1;
  for (int v : c.s_minus) in_minus[v] = 1;
  auto wplus = cluster_weights(a, c.s_plus, true);
  auto wminus = cluster_weights(a, c.s_minus, false);
  for (std::size_t left = c.s_plus.size(); left > 0; --left) {
    int i = -1;
    std::vector<int> cands;
    for (int q = 0; q < m && i < 0; ++q) {
      if (node_at[q] < 0) continue;
      for (int y : a.out(node_at[q]))
        if (in_plus[y] && !phi.assigned(y)) cands.push_back(y);
      if (!cands.empty()) i = q;
    }
    if (i < 0) throw HardError("phase 2 found no anchor", dump_instance(a, t, order));
    int j = i + 1;
    while (j < m && (node_at[j] != -1 || !t.arc(order[i], order[j]))) ++j;
    if (j >= m) throw HardError("phase 2 ran out of out-neighbours", dump_instance(a, t, order));
    int y = pick_by_weight(cands, wplus);
    phi.image[y] = order[j];
    node_at[j] = y;
  }
  for (auto& x : node_at)
    if (x == -2) x = -1;

  // Phase 3: in-leaf cluster, largest anchor first, last free in-neighbour.
  for (std::size_t left = c.s_minus.size(); left > 0; --left) {
    int i = -1;
    std::vector<int> cands;
    for (int q = m - 1; q >= 0 && i < 0; --q) {
      if (node_at[q] < 0) continue;
      for (int y : a.in(node_at[q]))
        if (in_minus[y] && !phi.assigned(y)) cands.push_back(y);
      if (!cands.empty()) i = q;
    }
    if (i < 0) throw HardError("phase 3 found no anchor", dump_instance(a, t, order));
    int j = i - 1;
    while (j >= 0 && (node_at[j] != -1 || !t.arc(order[j], order[i]))) --j;
    if (j < 0) {
      int hit = 0;
      for (int q = 0; q < i; ++q) hit += node_at[q] >= 0;
      throw HardError("phase 3 exhausted the in-neighbours of position " + std::to_string(i) + " with " +
                          std::to_string(hit) + " hit vertices before it",
                      dump_instance(a, t, order));
    }
    int y = pick_by_weight(cands, wminus);
    phi.image[y] = order[j];
    node_at[j] = y;
  }
  return phi;
}

}  // namespace detail

/// Heart root for the three-phase procedure: minimises min(beta_down, beta_up),
/// reversing when only beta_up attains it, then walks to an in-degree-0 node.
struct HeartRoot {
  int root = -1;  // heart id
  bool reversed = false;
};

inline HeartRoot choose_heart_root(const OrientedTree& heart) {
  int best = -1;
  HeartRoot out;
  for (bool rev : {false, true})
    for (int r = 0; r < heart.size(); ++r) {
      auto g = gamma(heart, r);
      int v = rev ? g.beta_up : g.beta_down;
      if (best < 0 || v < best) best = v, out = {r, rev};
    }
  return out;
}

/// Many-leaves embedding (n >= 3, |T| >= ceil(9n/2 - 5k/2 - 9/2)).
inline Embedding embed_many_leaves(const OrientedTree& a, const Tournament& t, PhasePlan* plan_out = nullptr) {
  if (a.size() < 3) throw PreconditionError("many-leaves procedure needs n >= 3");
  const int m = many_leaves_bound(a);
  if (t.size() < m) throw PreconditionError("tournament needs " + std::to_string(m) + " vertices");
  if (bi_arborescence_root(a)) return embed_bi_arborescence(a, t);
  auto c = clusters(a);
  Embedding phi;
  if (c.s_minus.empty() || c.s_plus.empty()) {
    if (c.s_minus.empty()) {
      phi = detail::many_leaves_two_phase(a, t, c);
    } else {
      auto ra = a.reversed();
      phi = detail::many_leaves_two_phase(ra, t.reversed(), clusters(ra));
    }
  } else {
    auto hr = choose_heart_root(c.heart.tree);
    OrientedTree tree = hr.reversed ? a.reversed() : a;
    Tournament host = hr.reversed ? t.reversed() : t;
    auto cc = hr.reversed ? clusters(tree) : c;
    // The heart keeps its ids under reversal since the node lists are sorted.
    int root = hr.root;
    int beta = gamma(cc.heart.tree, root).beta_down;
    while (cc.heart.tree.in_degree(root) > 0) {
      int s = cc.heart.tree.in(root).front();
      int bs = gamma(cc.heart.tree, s).beta_down;
      if (bs > beta) throw HardError("in-neighbour increased beta_down", to_text(a));
      root = s, beta = bs;
    }
    phi = detail::many_leaves_three_phase(tree, host, cc, root, plan_out);
  }
  if (!verify_embedding(a, t, phi).empty()) throw HardError("many-leaves embedding invalid", to_text(a) + to_text(t));
  return phi;
}

}  // namespace unavoid

#endif  // UNAVOID_EMBED_TREE_HPP
