#ifndef UNAVOID_STUB_HPP
#define UNAVOID_STUB_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include "unavoid/error.hpp"
#include "unavoid/io.hpp"
#include "unavoid/median.hpp"
#include "unavoid/tournament.hpp"
#include "unavoid/tree.hpp"

namespace unavoid {

// ---------------------------------------------------------------------------
// Path types

struct PathType {
  char sign = '+';
  std::vector<int> blocks;

  int length() const { return std::accumulate(blocks.begin(), blocks.end(), 0); }
  int count() const { return static_cast<int>(blocks.size()); }
  bool directed() const { return blocks.size() == 1; }
  /// Direction of each arc from origin to terminus (true = forward).
  std::vector<bool> arcs() const {
    std::vector<bool> out;
    bool fwd = sign == '+';
    for (int b : blocks) {
      out.insert(out.end(), b, fwd);
      fwd = !fwd;
    }
    return out;
  }
  PathType reversed() const {
    PathType r{sign, {blocks.rbegin(), blocks.rend()}};
    bool last_fwd = (sign == '+') == (blocks.size() % 2 == 1);
    // Walking backwards, a forward last block becomes an in-block.
    r.sign = last_fwd ? '-' : '+';
    return r;
  }
  bool operator==(const PathType&) const = default;
};

inline std::string to_string(const PathType& t) {
  std::string s(1, t.sign);
  s += '(';
  for (std::size_t i = 0; i < t.blocks.size(); ++i) s += (i ? "," : "") + std::to_string(t.blocks[i]);
  return s + ')';
}

inline PathType path_type_from_arcs(const std::vector<bool>& fwd) {
  if (fwd.empty()) throw PreconditionError("path type needs at least one arc");
  PathType t;
  t.sign = fwd[0] ? '+' : '-';
  int run = 0;
  for (std::size_t i = 0; i < fwd.size(); ++i) {
    if (i > 0 && fwd[i] != fwd[i - 1]) t.blocks.push_back(run), run = 0;
    ++run;
  }
  t.blocks.push_back(run);
  return t;
}

/// Type of the path a[0], a[1], ... in the tree.
inline PathType path_type(const OrientedTree& a, const std::vector<int>& nodes) {
  std::vector<bool> fwd;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (a.has_arc(nodes[i], nodes[i + 1])) fwd.push_back(true);
    else if (a.has_arc(nodes[i + 1], nodes[i])) fwd.push_back(false);
    else throw PreconditionError("consecutive nodes are not adjacent");
  }
  return path_type_from_arcs(fwd);
}

/// Directed path shaped by `type`, nodes 0..length in path order.
inline OrientedTree path_of_type(const PathType& type) {
  auto fwd = type.arcs();
  std::vector<Arc> arcs;
  for (int i = 0; i < static_cast<int>(fwd.size()); ++i)
    arcs.push_back(fwd[i] ? Arc{i, i + 1} : Arc{i + 1, i});
  return OrientedTree(static_cast<int>(fwd.size()) + 1, std::move(arcs));
}

// ---------------------------------------------------------------------------
// Segments

struct Segment {
  std::vector<int> nodes;  // origin first
  bool inner = false;
  PathType type;
  int origin() const { return nodes.front(); }
  int terminus() const { return nodes.back(); }
  int length() const { return static_cast<int>(nodes.size()) - 1; }
};

/// All segments; each inner segment is listed from both of its ends, the
/// opposite one immediately after.
inline std::vector<Segment> segments(const OrientedTree& a) {
  const int n = a.size();
  auto deg = [&](int v) { return a.degree(v); };
  bool any = false;
  for (int v = 0; v < n; ++v) any |= deg(v) >= 3;
  if (!any) throw PreconditionError("a path has no segments");
  std::vector<Segment> out;
  for (int x = 0; x < n; ++x) {
    if (deg(x) < 3) continue;
    for (int y : a.neighbours(x)) {
      Segment s;
      s.nodes = {x, y};
      while (deg(s.nodes.back()) == 2) {
        int cur = s.nodes.back(), prev = s.nodes[s.nodes.size() - 2];
        for (int z : a.neighbours(cur))
          if (z != prev) {
            s.nodes.push_back(z);
            break;
          }
      }
      s.inner = deg(s.nodes.back()) >= 3;
      if (s.inner && s.terminus() < x) continue;  // emitted with its opposite
      s.type = path_type(a, s.nodes);
      out.push_back(s);
      if (s.inner) {
        Segment r = s;
        std::reverse(r.nodes.begin(), r.nodes.end());
        r.type = path_type(a, r.nodes);
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

struct StubCheck {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

inline bool stub_inner_shape(const PathType& t) {
  const auto& b = t.blocks;
  if (b.size() == 1) return true;
  if (b.size() == 2) return b[0] == 1 || b[1] == 1;
  if (b.size() == 3) return b[0] == 1 && b[2] == 1;
  return false;
}

inline StubCheck is_stub(const OrientedTree& a) {
  for (const auto& s : segments(a)) {
    if (s.inner && !stub_inner_shape(s.type))
      return {false, "(i) inner segment " + std::to_string(s.origin()) + ".." + std::to_string(s.terminus()) +
                         " has type " + to_string(s.type)};
    if (!s.inner && s.length() != 1)
      return {false, "(ii) outer segment to leaf " + std::to_string(s.terminus()) + " has length " +
                         std::to_string(s.length())};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Stump types and forks

struct StumpType {
  PathType type;
  int case_id = 0;  // 1..5 for (i)..(v)
};

inline StumpType stump_type(const PathType& p) {
  if (p.length() < 2) throw PreconditionError("stump type needs a path of length at least 2");
  const auto& b = p.blocks;
  const char s = p.sign;
  const bool plus_p1q = s == '+' && b.size() == 3 && b[0] >= 2 && b[1] == 1 && b[2] >= 2;
  if (b[0] >= 2) return plus_p1q ? StumpType{{s, {b[0]}}, 2} : StumpType{{s, {b[0] - 1}}, 1};
  if (b[1] == 1) {
    const bool special = (b.size() == 4 && b[2] == 1 && b[3] >= 2) ||
                         (s == '+' && b == std::vector<int>{1, 1, 1, 1, 1});
    return special ? StumpType{{s, {1, 1}}, 4} : StumpType{{s, {1}}, 3};
  }
  return {{s, {1, b[1] - 1}}, 5};
}

struct Fork {
  OrientedTree tree;
  int origin = 0;
  std::vector<int> path;  // x_1..x_L (origin first)
  int point1 = 0;
  int point2 = 0;
};

/// Nodes 0..L-1 are x_1..x_L, then the two points.
inline Fork make_fork(const PathType& type) {
  auto fwd = type.arcs();
  const int len = static_cast<int>(fwd.size());
  if (len < 1) throw PreconditionError("fork type must have length at least 1");
  std::vector<Arc> arcs;
  for (int i = 0; i + 1 < len; ++i) arcs.push_back(fwd[i] ? Arc{i, i + 1} : Arc{i + 1, i});
  for (int pt : {len, len + 1}) arcs.push_back(fwd[len - 1] ? Arc{len - 1, pt} : Arc{pt, len - 1});
  Fork f{OrientedTree(len + 2, std::move(arcs)), 0, {}, len, len + 1};
  f.path.resize(len);
  std::iota(f.path.begin(), f.path.end(), 0);
  return f;
}

// ---------------------------------------------------------------------------
// Reduction to stubs

inline bool breakable(const Segment& s) {
  if (!s.inner) return false;
  const auto& b = s.type.blocks;
  if (b.size() == 1) return false;
  if (b.size() == 2 && (b[0] == 1 || b[1] == 1)) return false;
  if (b.size() == 3 && b[0] == 1 && b[2] == 1) return false;
  return true;
}

struct StubComponent {
  OrientedTree tree;
  std::vector<int> to_a;  // component node -> node of A, or -1 for fork points
};

struct ForkRecord {
  int component = -1;
  int origin = -1;  // ids inside the component
  std::vector<int> path;
  int point1 = -1;
  int point2 = -1;
  PathType type;
  int stump_case = 0;
};

struct Remainder {
  PathType type;
  bool inner = false;
  int fork = -1;      // fork at the origin side
  int fork_bar = -1;  // fork at the terminus side (inner only)
  std::vector<int> nodes;  // nodes of A along the remainder
};

struct Reduction {
  std::vector<StubComponent> components;
  std::vector<ForkRecord> forks;
  std::vector<Remainder> remainders;
  int b = 0;
  int a = 0;  // outer segments of length 1
  int order() const {
    int s = 0;
    for (const auto& c : components) s += c.tree.size();
    return s;
  }
};

/// Checks the shape that stub reconstruction needs.
inline bool valid_inner_remainder(const PathType& t) {
  if (t.directed() || t.blocks.front() != 1 || t.blocks.back() != 1) return false;
  return !(t.blocks == std::vector<int>{1, 1, 1});
}

/// Fork lengths on both sides of a breakable inner segment, with the stump
/// case used on each side (0 when adjusted). The stump types are kept when the
/// remainder they leave fits the two-set path theorem; otherwise the shortest
/// pair of stub-shaped prefix forks that does is used, smallest origin side first.
inline std::array<int, 4> inner_fork_lengths(const PathType& seg) {
  const auto fwd = seg.arcs();
  const int len = static_cast<int>(fwd.size());
  auto fits = [&](int l1, int l2) {
    if (l1 < 1 || l2 < 1 || l1 + l2 > len - 2) return false;
    std::vector<bool> back(fwd.rbegin(), fwd.rbegin() + l2);
    back.flip();
    if (!stub_inner_shape(path_type_from_arcs({fwd.begin(), fwd.begin() + l1})) ||
        !stub_inner_shape(path_type_from_arcs(back)))
      return false;
    return valid_inner_remainder(path_type_from_arcs({fwd.begin() + l1, fwd.end() - l2}));
  };
  auto a = stump_type(seg), b = stump_type(seg.reversed());
  if (fits(a.type.length(), b.type.length())) return {a.type.length(), b.type.length(), a.case_id, b.case_id};
  for (int total = 2; total <= len - 2; ++total)
    for (int l1 = 1; l1 < total; ++l1)
      if (fits(l1, total - l1)) return {l1, total - l1, 0, 0};
  throw HardError("no admissible forks for inner segment of type " + to_string(seg), "");
}

inline Reduction reduce_to_stubs(const OrientedTree& a) {
  const int n = a.size();
  const int k = leaf_count(a);
  if (tree_metrics(a).is_path) throw PreconditionError("reduction needs a tree that is not a path");
  if (k < 3) throw PreconditionError("reduction needs at least 3 leaves");
  Reduction red;
  std::vector<char> removed(n, 0);
  std::vector<Arc> arcs;
  std::vector<std::vector<char>> dropped_arc(n);
  std::vector<std::pair<int, int>> drop;  // undirected arcs to drop
  int next_id = n;
  std::vector<Arc> fork_arcs;
  struct Pending {
    int origin_a;
    std::vector<int> path_a;  // A ids for x_1..x_L
    int p1, p2;
    PathType type;
    int stump_case;
  };
  std::vector<Pending> pending;
  auto add_fork = [&](const std::vector<int>& seg, int len, int stump_case) {
    std::vector<int> prefix(seg.begin(), seg.begin() + len + 1);
    auto type = path_type(a, prefix);
    auto fwd = type.arcs();
    Pending p{seg[0], {seg.begin(), seg.begin() + len}, next_id, next_id + 1, type, stump_case};
    next_id += 2;
    for (int i = 0; i + 1 < len; ++i)
      fork_arcs.push_back(fwd[i] ? Arc{seg[i], seg[i + 1]} : Arc{seg[i + 1], seg[i]});
    for (int pt : {p.p1, p.p2}) fork_arcs.push_back(fwd[len - 1] ? Arc{seg[len - 1], pt} : Arc{pt, seg[len - 1]});
    pending.push_back(std::move(p));
    return static_cast<int>(pending.size()) - 1;
  };
  auto drop_segment = [&](const std::vector<int>& seg, bool keep_end) {
    for (std::size_t i = 0; i + 1 < seg.size(); ++i) drop.emplace_back(std::min(seg[i], seg[i + 1]), std::max(seg[i], seg[i + 1]));
    for (std::size_t i = 1; i + (keep_end ? 1 : 0) < seg.size(); ++i) removed[seg[i]] = 1;
  };
  std::vector<std::pair<Remainder, std::pair<int, int>>> rems;  // pending fork indices
  for (const auto& s : segments(a)) {
    if (!s.inner) {
      if (s.length() == 1) {
        ++red.a;
        continue;
      }
      drop_segment(s.nodes, false);
      auto st = stump_type(s.type);
      int f = add_fork(s.nodes, st.type.length(), st.case_id);
      const int len = pending[f].type.length();
      Remainder r;
      r.nodes.assign(s.nodes.begin() + len, s.nodes.end());
      r.type = path_type(a, r.nodes);
      r.inner = false;
      if (r.type.blocks.front() != 1) throw HardError("outer remainder starts with a long block", to_text(a));
      rems.push_back({r, {f, -1}});
    } else if (s.origin() < s.terminus() && breakable(s)) {
      ++red.b;
      drop_segment(s.nodes, true);
      std::vector<int> rev(s.nodes.rbegin(), s.nodes.rend());
      auto [l1, l2, c1, c2] = inner_fork_lengths(s.type);
      int f = add_fork(s.nodes, l1, c1);
      int g = add_fork(rev, l2, c2);
      Remainder r;
      r.inner = true;
      r.nodes.assign(s.nodes.begin() + l1, s.nodes.end() - l2);
      r.type = path_type(a, r.nodes);
      if (!valid_inner_remainder(r.type))
        throw HardError("inner remainder has type " + to_string(r.type), to_text(a));
      rems.push_back({r, {f, g}});
    }
  }
  // Fork path nodes other than the origin were marked removed; restore them.
  for (const auto& p : pending)
    for (int v : p.path_a) removed[v] = 0;
  std::sort(drop.begin(), drop.end());
  for (auto [u, v] : a.arcs()) {
    auto key = std::pair{std::min(u, v), std::max(u, v)};
    if (!std::binary_search(drop.begin(), drop.end(), key)) arcs.emplace_back(u, v);
  }
  arcs.insert(arcs.end(), fork_arcs.begin(), fork_arcs.end());

  // Components of B.
  const int total = next_id;
  std::vector<std::vector<int>> adj(total);
  for (auto [u, v] : arcs) adj[u].push_back(v), adj[v].push_back(u);
  std::vector<char> present(total, 1);
  for (int v = 0; v < n; ++v) present[v] = !removed[v];
  std::vector<int> comp(total, -1), local(total, -1);
  std::vector<std::vector<int>> members;
  for (int s = 0; s < total; ++s) {
    if (!present[s] || comp[s] >= 0) continue;
    const int c = static_cast<int>(members.size());
    members.push_back({s});
    comp[s] = c;
    for (std::size_t h = 0; h < members[c].size(); ++h)
      for (int w : adj[members[c][h]])
        if (comp[w] < 0) comp[w] = c, members[c].push_back(w);
  }
  for (auto& mem : members) {
    std::sort(mem.begin(), mem.end());
    for (std::size_t i = 0; i < mem.size(); ++i) local[mem[i]] = static_cast<int>(i);
  }
  std::vector<std::vector<Arc>> comp_arcs(members.size());
  for (auto [u, v] : arcs) comp_arcs[comp[u]].emplace_back(local[u], local[v]);
  for (std::size_t c = 0; c < members.size(); ++c) {
    StubComponent sc{OrientedTree(static_cast<int>(members[c].size()), comp_arcs[c]), {}};
    for (int v : members[c]) sc.to_a.push_back(v < n ? v : -1);
    red.components.push_back(std::move(sc));
  }
  for (const auto& p : pending) {
    ForkRecord f;
    f.component = comp[p.origin_a];
    f.origin = local[p.origin_a];
    for (int v : p.path_a) f.path.push_back(local[v]);
    f.point1 = local[p.p1];
    f.point2 = local[p.p2];
    f.type = p.type;
    f.stump_case = p.stump_case;
    red.forks.push_back(std::move(f));
  }
  for (auto& [r, fk] : rems) {
    r.fork = fk.first;
    r.fork_bar = fk.second;
    red.remainders.push_back(std::move(r));
  }
  if (static_cast<int>(red.components.size()) != red.b + 1)
    throw HardError("reduction produced " + std::to_string(red.components.size()) + " components for b = " +
                        std::to_string(red.b),
                    to_text(a));
  if (red.order() > n + red.b) throw HardError("reduction grew beyond |A| + b", to_text(a));
  for (const auto& c : red.components) {
    if (!is_stub(c.tree)) throw HardError("reduction component is not a stub: " + is_stub(c.tree).reason, to_text(a));
    if (leaf_count(c.tree) > 2 * k - 2 * red.b) throw HardError("reduction component has too many leaves", to_text(a));
  }
  return red;
}

/// Reassembles a tree from the reduction record alone: each remainder is glued
/// to one point of its fork(s), the other point is discarded.
inline OrientedTree rebuild(const Reduction& red) {
  std::vector<int> offset{0};
  for (const auto& c : red.components) offset.push_back(offset.back() + c.tree.size());
  std::vector<char> drop(offset.back(), 0);
  std::vector<Arc> arcs;
  for (std::size_t c = 0; c < red.components.size(); ++c)
    for (auto [u, v] : red.components[c].tree.arcs()) arcs.emplace_back(u + offset[c], v + offset[c]);
  int next = offset.back();
  for (const auto& r : red.remainders) {
    const auto& f = red.forks[r.fork];
    const int start = f.point1 + offset[f.component];
    drop[f.point2 + offset[f.component]] = 1;
    int end = -1;
    const int len = r.type.length();
    if (r.inner) {
      const auto& g = red.forks[r.fork_bar];
      end = g.point1 + offset[g.component];
      drop[g.point2 + offset[g.component]] = 1;
    }
    auto fwd = r.type.arcs();
    int prev = start;
    for (int i = 0; i < len; ++i) {
      int cur = (r.inner && i == len - 1) ? end : next++;
      arcs.push_back(fwd[i] ? Arc{prev, cur} : Arc{cur, prev});
      prev = cur;
    }
  }
  drop.resize(next, 0);
  std::vector<int> id(next, -1);
  int n = 0;
  for (int v = 0; v < next; ++v)
    if (!drop[v]) id[v] = n++;
  std::vector<Arc> kept;
  for (auto [u, v] : arcs)
    if (id[u] >= 0 && id[v] >= 0) kept.emplace_back(id[u], id[v]);
  return OrientedTree(n, std::move(kept));
}

inline std::string to_text(const Reduction& red) {
  std::string s = "b " + std::to_string(red.b) + "\na " + std::to_string(red.a) + "\ncomponents " +
                  std::to_string(red.components.size()) + "\n";
  for (std::size_t c = 0; c < red.components.size(); ++c) {
    s += "component " + std::to_string(c) + " nodes " + std::to_string(red.components[c].tree.size()) + " leaves " +
         std::to_string(leaf_count(red.components[c].tree)) + "\n";
  }
  for (std::size_t f = 0; f < red.forks.size(); ++f) {
    const auto& fk = red.forks[f];
    s += "fork " + std::to_string(f) + " component " + std::to_string(fk.component) + " origin " +
         std::to_string(fk.origin) + " points " + std::to_string(fk.point1) + " " + std::to_string(fk.point2) +
         " type " + to_string(fk.type) + " case " + std::to_string(fk.stump_case) + "\n";
  }
  for (const auto& r : red.remainders) {
    s += std::string("remainder ") + (r.inner ? "inner" : "outer") + " type " + to_string(r.type) + " fork " +
         std::to_string(r.fork);
    if (r.inner) s += " " + std::to_string(r.fork_bar);
    s += " nodes";
    for (int v : r.nodes) s += " " + std::to_string(v);
    s += "\n";
  }
  return s;
}

// ---------------------------------------------------------------------------
// Path searches

namespace detail {

/// Backtracking search for a path of the given type among `host`, with the
/// origin in `from` and (if non-empty) the terminus in `to`. Failing states
/// (used set, last vertex) are memoised.
inline std::optional<std::vector<int>> search_path(const Tournament& t, const std::vector<int>& host,
                                                   const std::vector<int>& from, const std::vector<int>& to,
                                                   const PathType& type, int cap) {
  const int len = type.length();
  if (len > cap) throw PreconditionError("path of length " + std::to_string(len) + " exceeds the search cap " + std::to_string(cap));
  const int h = static_cast<int>(host.size());
  if (h > 63) throw PreconditionError("search host too large");
  auto fwd = type.arcs();
  std::vector<int> idx(t.size(), -1);
  for (int i = 0; i < h; ++i) idx[host[i]] = i;
  std::uint64_t to_mask = 0;
  for (int v : to) to_mask |= std::uint64_t{1} << idx[v];
  std::unordered_set<std::uint64_t> dead;
  std::vector<int> path;
  std::function<bool(std::uint64_t, int)> rec = [&](std::uint64_t used, int last) {
    const int depth = static_cast<int>(path.size()) - 1;
    if (depth == len) return to.empty() || ((to_mask >> last) & 1);
    if (!to.empty() && (to_mask & ~used) == 0) return false;
    const std::uint64_t key = (used << 6) | static_cast<std::uint64_t>(last);
    if (h <= 57 && dead.count(key)) return false;
    for (int j = 0; j < h; ++j) {
      if ((used >> j) & 1) continue;
      if (depth + 1 < len && !to.empty() && ((to_mask >> j) & 1) && std::popcount(to_mask & ~used) == 1) continue;
      bool ok = fwd[depth] ? t.arc(host[last], host[j]) : t.arc(host[j], host[last]);
      if (!ok) continue;
      path.push_back(j);
      if (rec(used | (std::uint64_t{1} << j), j)) return true;
      path.pop_back();
    }
    if (h <= 57) dead.insert(key);
    return false;
  };
  for (int x : from) {
    path = {idx[x]};
    if (rec(std::uint64_t{1} << idx[x], idx[x])) {
      std::vector<int> out;
      for (int j : path) out.push_back(host[j]);
      return out;
    }
  }
  return std::nullopt;
}

inline void require_vertices(const Tournament& t, const std::vector<int>& vs, const char* what) {
  for (int v : vs)
    if (v < 0 || v >= t.size()) throw PreconditionError(std::string(what) + " contains a vertex outside the tournament");
}

}  // namespace detail

inline constexpr int default_search_cap = 24;

/// Path of type `type` in T⟨host⟩ with origin in `origins`. The existence is
/// guaranteed when |host| >= |type| + 2 and |origins| >= b_1 + 1.
inline std::vector<int> find_path_origin_set(const Tournament& t, const std::vector<int>& host,
                                             const std::vector<int>& origins, const PathType& type,
                                             int cap = default_search_cap) {
  detail::require_vertices(t, host, "host");
  if (static_cast<int>(host.size()) < type.length() + 2) throw PreconditionError("host needs one vertex more than the path");
  if (static_cast<int>(origins.size()) < type.blocks.front() + 1)
    throw PreconditionError("origin set needs b_1 + 1 vertices");
  for (int x : origins)
    if (std::find(host.begin(), host.end(), x) == host.end()) throw PreconditionError("origin outside the host");
  auto p = detail::search_path(t, host, origins, {}, type, cap);
  if (!p) throw HardError("no path of type " + to_string(type) + " with origin in the given set", to_text(t));
  return *p;
}

inline std::vector<int> find_path_origin_set(const Tournament& t, const std::vector<int>& origins, const PathType& type,
                                             int cap = default_search_cap) {
  std::vector<int> all(t.size());
  std::iota(all.begin(), all.end(), 0);
  return find_path_origin_set(t, all, origins, type, cap);
}

/// Path of type `type` in T⟨host⟩ from a vertex of X to a vertex of Y; needs a
/// non-directed type with first and last block 1, not ±(1,1,1), and
/// |host| >= |type| + 3 (two more vertices than the path).
inline std::vector<int> find_path_between_sets(const Tournament& t, const std::vector<int>& host,
                                               const std::vector<int>& x, const std::vector<int>& y,
                                               const PathType& type, int cap = default_search_cap) {
  detail::require_vertices(t, host, "host");
  if (!valid_inner_remainder(type))
    throw PreconditionError("type " + to_string(type) + " is outside the two-set path theorem");
  if (static_cast<int>(host.size()) < type.length() + 3) throw PreconditionError("host needs two vertices more than the path");
  if (x.size() < 2 || y.size() < 2) throw PreconditionError("end sets need at least 2 vertices");
  for (int v : x)
    if (std::find(y.begin(), y.end(), v) != y.end()) throw PreconditionError("end sets must be disjoint");
  for (const auto* set : {&x, &y})
    for (int v : *set)
      if (std::find(host.begin(), host.end(), v) == host.end()) throw PreconditionError("end set outside the host");
  auto p = detail::search_path(t, host, x, y, type, cap);
  if (!p) throw HardError("no path of type " + to_string(type) + " between the given sets", to_text(t));
  return *p;
}

inline std::vector<int> find_path_between_sets(const Tournament& t, const std::vector<int>& x,
                                               const std::vector<int>& y, const PathType& type,
                                               int cap = default_search_cap) {
  std::vector<int> all(t.size());
  std::iota(all.begin(), all.end(), 0);
  return find_path_between_sets(t, all, x, y, type, cap);
}

// ---------------------------------------------------------------------------
// Directed 2-out-paths

/// (origin, middle, terminus) triples.
using TwoPath = std::array<int, 3>;

namespace detail {

/// Vertex-disjoint 2-out-paths from order[0] to termini among the last 4k-1
/// positions, as a maximum matching of middle/terminus pairs.
inline std::vector<TwoPath> harvest_two_paths(const Tournament& t, std::span<const int> order, int k) {
  const int m = static_cast<int>(order.size());
  if (k < 1) throw PreconditionError("k must be positive");
  if (m < 4 * k) throw PreconditionError("need at least 4k vertices");
  const int v1 = order[0];
  const int lo = m - 4 * k + 1;
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  Graph g(m);
  auto good = [&](int mid, int term) {
    return term >= lo && t.arc(v1, order[mid]) && t.arc(order[mid], order[term]);
  };
  for (int u = 1; u < m; ++u)
    for (int w = u + 1; w < m; ++w)
      if (good(u, w) || good(w, u)) boost::add_edge(u, w, g);
  std::vector<boost::graph_traits<Graph>::vertex_descriptor> mate(m);
  boost::edmonds_maximum_cardinality_matching(g, &mate[0]);
  std::vector<TwoPath> out;
  for (int u = 1; u < m; ++u) {
    int w = static_cast<int>(mate[u]);
    if (mate[u] == boost::graph_traits<Graph>::null_vertex() || w < u) continue;
    // Prefer the middle outside the terminal window.
    if (good(u, w) && (!good(w, u) || u < lo)) out.push_back({v1, order[u], order[w]});
    else out.push_back({v1, order[w], order[u]});
  }
  auto pos = [&](int v) { return static_cast<int>(std::find(order.begin(), order.end(), v) - order.begin()); };
  std::sort(out.begin(), out.end(), [&](const TwoPath& a, const TwoPath& b) { return pos(a[1]) < pos(b[1]); });
  if (static_cast<int>(out.size()) < k)
    throw HardError("only " + std::to_string(out.size()) + " disjoint 2-out-paths, expected " + std::to_string(k),
                    to_text(t) + ordering_to_text(std::vector<int>(order.begin(), order.end())));
  out.resize(k);
  return out;
}

}  // namespace detail

/// k internally disjoint directed 2-out-paths from σ[0] with distinct termini
/// among the last 4k-1 vertices of σ (sorted by the position of the middle).
inline std::vector<TwoPath> two_out_paths(const Tournament& t, std::span<const int> order, int k) {
  if (static_cast<int>(order.size()) != t.size()) throw PreconditionError("ordering must cover the tournament");
  if (t.size() < 4 * k) throw PreconditionError("need at least 4k vertices");
  if (!check_m2(t, order).empty()) throw PreconditionError("ordering is not a local median order");
  return detail::harvest_two_paths(t, order, k);
}

}  // namespace unavoid

#endif  // UNAVOID_STUB_HPP
