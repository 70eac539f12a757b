#ifndef UNAVOID_TREE_HPP
#define UNAVOID_TREE_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unavoid/error.hpp"

namespace unavoid {

using Arc = std::pair<int, int>;

/// Orientation of a tree on nodes 0..n-1; arc (u,v) means u->v.
class OrientedTree {
 public:
  OrientedTree() : OrientedTree(1, {}) {}

  OrientedTree(int n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)), out_(n), in_(n) {
    if (n < 1) throw PreconditionError("tree needs at least one node");
    if (static_cast<int>(arcs_.size()) != n - 1)
      throw PreconditionError("tree on " + std::to_string(n) + " nodes needs " + std::to_string(n - 1) + " arcs");
    for (auto [u, v] : arcs_) {
      if (u < 0 || v < 0 || u >= n || v >= n || u == v)
        throw PreconditionError("bad arc " + std::to_string(u) + "->" + std::to_string(v));
      out_[u].push_back(v);
      in_[v].push_back(u);
    }
    // n-1 arcs plus connectivity rules out cycles and duplicate pairs.
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : neighbours(u))
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
    }
    if (reached != n) throw PreconditionError("arcs do not form a tree");
  }

  int size() const { return n_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<int>& out(int v) const { return out_[v]; }
  const std::vector<int>& in(int v) const { return in_[v]; }
  int out_degree(int v) const { return static_cast<int>(out_[v].size()); }
  int in_degree(int v) const { return static_cast<int>(in_[v].size()); }
  int degree(int v) const { return out_degree(v) + in_degree(v); }

  std::vector<int> neighbours(int v) const {
    std::vector<int> nb = out_[v];
    nb.insert(nb.end(), in_[v].begin(), in_[v].end());
    return nb;
  }

  /// True iff u->v is an arc.
  bool has_arc(int u, int v) const { return std::find(out_[u].begin(), out_[u].end(), v) != out_[u].end(); }

  OrientedTree reversed() const {
    std::vector<Arc> r;
    r.reserve(arcs_.size());
    for (auto [u, v] : arcs_) r.emplace_back(v, u);
    return {n_, std::move(r)};
  }

  friend bool operator==(const OrientedTree& a, const OrientedTree& b) { return a.n_ == b.n_ && a.arcs_ == b.arcs_; }

 private:
  int n_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_, in_;
};

/// A tree with a chosen root; sons are listed in increasing node id.
class RootedTree {
 public:
  RootedTree(OrientedTree tree, int root) : tree_(std::move(tree)), root_(root) {
    const int n = tree_.size();
    if (root < 0 || root >= n) throw PreconditionError("root " + std::to_string(root) + " is not a node");
    father_.assign(n, -1);
    sons_.assign(n, {});
    depth_.assign(n, 0);
    order_.reserve(n);
    order_.push_back(root);
    std::vector<char> seen(n, 0);
    seen[root] = 1;
    for (std::size_t h = 0; h < order_.size(); ++h) {
      int u = order_[h];
      auto nb = tree_.neighbours(u);
      std::sort(nb.begin(), nb.end());
      for (int w : nb)
        if (!seen[w]) {
          seen[w] = 1;
          father_[w] = u;
          depth_[w] = depth_[u] + 1;
          sons_[u].push_back(w);
          order_.push_back(w);
        }
    }
  }

  const OrientedTree& tree() const { return tree_; }
  int size() const { return tree_.size(); }
  int root() const { return root_; }
  int father(int v) const { return father_[v]; }
  const std::vector<int>& sons(int v) const { return sons_[v]; }
  int depth(int v) const { return depth_[v]; }
  /// Breadth-first order from the root; every node appears after its father.
  const std::vector<int>& bfs_order() const { return order_; }

  /// True iff the arc between v and its father points away from the root.
  bool is_upward(int v) const { return tree_.has_arc(father_[v], v); }

  bool is_out_arborescence() const {
    for (int v = 0; v < size(); ++v)
      if (v != root_ && !is_upward(v)) return false;
    return true;
  }
  bool is_in_arborescence() const {
    for (int v = 0; v < size(); ++v)
      if (v != root_ && is_upward(v)) return false;
    return true;
  }

  /// Number of nodes in the subtree of every node.
  std::vector<int> subtree_sizes() const {
    std::vector<int> sz(size(), 1);
    for (auto it = order_.rbegin(); it != order_.rend(); ++it)
      if (father_[*it] >= 0) sz[father_[*it]] += sz[*it];
    return sz;
  }

 private:
  OrientedTree tree_;
  int root_;
  std::vector<int> father_;
  std::vector<std::vector<int>> sons_;
  std::vector<int> depth_;
  std::vector<int> order_;
};

struct LeafPartition {
  std::vector<int> in_leaves;   // out-degree 1, in-degree 0
  std::vector<int> out_leaves;  // out-degree 0, in-degree 1
  bool trivial = false;         // single-node tree
  int count() const { return static_cast<int>(in_leaves.size() + out_leaves.size()); }
};

inline LeafPartition leaf_partition(const OrientedTree& a) {
  LeafPartition p;
  if (a.size() == 1) {
    p.trivial = true;
    return p;
  }
  for (int v = 0; v < a.size(); ++v) {
    if (a.degree(v) != 1) continue;
    (a.out_degree(v) == 1 ? p.in_leaves : p.out_leaves).push_back(v);
  }
  return p;
}

/// Number of leaves with the convention that a single node counts as one leaf,
/// which is what the n+k-1 style bounds need for the one-node tree.
inline int leaf_count(const OrientedTree& a) { return a.size() == 1 ? 1 : leaf_partition(a).count(); }

enum class ArbKind { none, out, in };

struct TreeMetrics {
  int n = 0;
  int k = 0;
  bool is_path = false;
  ArbKind arborescence = ArbKind::none;
  bool is_bi_arborescence = false;
  std::optional<int> bi_root;  // smallest valid bi-arborescence root
};

/// Whether every branch at `root` is directed entirely towards or entirely away from it.
inline bool is_bi_arborescence_at(const OrientedTree& a, int root) {
  RootedTree rt(a, root);
  std::vector<int> branch_dir(a.size(), 0);  // +1 upward, -1 downward
  for (int v : rt.bfs_order()) {
    if (v == root) continue;
    int dir = rt.is_upward(v) ? 1 : -1;
    int f = rt.father(v);
    if (f != root && branch_dir[f] != dir) return false;
    branch_dir[v] = dir;
  }
  return true;
}

inline std::optional<int> bi_arborescence_root(const OrientedTree& a) {
  for (int r = 0; r < a.size(); ++r)
    if (is_bi_arborescence_at(a, r)) return r;
  return std::nullopt;
}

inline TreeMetrics tree_metrics(const OrientedTree& a) {
  TreeMetrics m;
  m.n = a.size();
  m.k = leaf_partition(a).count();
  bool path = true;
  int sources = 0, sinks = 0;
  bool in_ok = true, out_ok = true;
  for (int v = 0; v < a.size(); ++v) {
    if (a.degree(v) > 2) path = false;
    if (a.in_degree(v) == 0) ++sources;
    if (a.out_degree(v) == 0) ++sinks;
    if (a.in_degree(v) > 1) out_ok = false;
    if (a.out_degree(v) > 1) in_ok = false;
  }
  m.is_path = path;
  out_ok = out_ok && sources == 1;
  in_ok = in_ok && sinks == 1;
  // A directed path is both; it is reported as an out-arborescence.
  if (out_ok) m.arborescence = ArbKind::out;
  else if (in_ok) m.arborescence = ArbKind::in;
  m.bi_root = bi_arborescence_root(a);
  m.is_bi_arborescence = m.bi_root.has_value();
  return m;
}

namespace detail {

inline std::string encode_rooted(const OrientedTree& a, int v, int parent) {
  std::vector<std::string> parts;
  for (int w : a.out(v))
    if (w != parent) parts.push_back(">" + encode_rooted(a, w, v));
  for (int w : a.in(v))
    if (w != parent) parts.push_back("<" + encode_rooted(a, w, v));
  std::sort(parts.begin(), parts.end());
  std::string s = "(";
  for (auto& p : parts) s += p;
  s += ")";
  return s;
}

inline std::vector<int> centers(const OrientedTree& a) {
  const int n = a.size();
  if (n <= 2) {
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i) c[i] = i;
    return c;
  }
  std::vector<int> deg(n);
  std::vector<int> layer;
  for (int v = 0; v < n; ++v) {
    deg[v] = a.degree(v);
    if (deg[v] == 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<int> next;
    for (int v : layer)
      for (int w : a.neighbours(v))
        if (--deg[w] == 1) next.push_back(w);
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

}  // namespace detail

/// Isomorphism invariant string: equal iff the oriented trees are isomorphic.
inline std::string canonical_form(const OrientedTree& a) {
  std::string best;
  for (int c : detail::centers(a)) {
    auto s = detail::encode_rooted(a, c, -1);
    if (best.empty() || s < best) best = std::move(s);
  }
  return best;
}

inline bool isomorphic(const OrientedTree& a, const OrientedTree& b) {
  return a.size() == b.size() && canonical_form(a) == canonical_form(b);
}

}  // namespace unavoid

#endif  // UNAVOID_TREE_HPP
