#ifndef UNAVOID_STUB_EMBED_HPP
#define UNAVOID_STUB_EMBED_HPP

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "unavoid/embed_arbo.hpp"
#include "unavoid/embed_tree.hpp"
#include "unavoid/stub.hpp"

namespace unavoid {

inline long stub_bound(long n, long k) { return n + 36 * k * k - 140 * k + 124; }
inline long very_few_bound(long n, long k) { return n + 144 * k * k - 280 * k + 124; }

// ---------------------------------------------------------------------------
// Islands

struct IslandArc {
  int tail = -1;
  int head = -1;
  std::vector<int> path;  // directed out-path, origin in the tail island
  int q_size() const { return static_cast<int>(path.size()) - 2; }
};

struct IslandLayout {
  int k = 0;  // leaf parameter
  std::vector<std::vector<int>> islands;
  std::vector<int> island_of;  // -1 for inner nodes of long directed runs
  std::vector<int> father;
  std::vector<IslandArc> arcs;
  std::vector<int> father_arc;
  std::vector<std::vector<int>> e_plus;   // arcs to sons with the island as tail
  std::vector<std::vector<int>> e_minus;  // arcs from sons into the island
  std::vector<int> root;
  std::vector<long> spc, alpha, start;
  std::vector<int> bfs;

  int size() const { return static_cast<int>(islands.size()); }
  long total() const { return start.empty() ? 0 : start.back() + spc.back(); }
  long middle_lo(int p) const { return start[p] + alpha[p]; }
  long middle_hi(int p) const { return middle_lo(p) + 16L * k - 58; }  // exclusive
  long region_hi(int p) const { return start[p] + spc[p]; }           // exclusive
};

inline IslandLayout islands_layout(const OrientedTree& a, int k, long m) {
  const int n = a.size();
  if (tree_metrics(a).is_path) throw PreconditionError("island layout needs a stub, not a path");
  if (auto c = is_stub(a); !c) throw PreconditionError("not a stub: " + c.reason);
  if (k < 6) throw PreconditionError("island layout needs k >= 6");
  if (leaf_count(a) > k) throw PreconditionError("leaf parameter below the number of leaves");
  if (m < stub_bound(n, k)) throw PreconditionError("tournament needs " + std::to_string(stub_bound(n, k)) + " vertices");

  // Long directed runs inside inner segments.
  std::vector<char> inner_node(n, 0);
  std::vector<std::pair<int, int>> cut;
  std::vector<std::vector<int>> runs;
  for (const auto& s : segments(a)) {
    if (!s.inner || s.origin() > s.terminus()) continue;
    auto fwd = s.type.arcs();
    int at = 0;
    for (int b : s.type.blocks) {
      if (b >= 3) {
        std::vector<int> run(s.nodes.begin() + at, s.nodes.begin() + at + b + 1);
        if (!fwd[at]) std::reverse(run.begin(), run.end());
        for (int j = 1; j < b; ++j) inner_node[run[j]] = 1;
        for (int j = 0; j < b; ++j) cut.emplace_back(std::min(run[j], run[j + 1]), std::max(run[j], run[j + 1]));
        runs.push_back(std::move(run));
      }
      at += b;
    }
  }
  std::sort(cut.begin(), cut.end());
  std::vector<int> raw(n, -1);
  std::vector<std::vector<int>> raw_islands;
  for (int s = 0; s < n; ++s) {
    if (inner_node[s] || raw[s] >= 0) continue;
    const int c = static_cast<int>(raw_islands.size());
    raw_islands.push_back({s});
    raw[s] = c;
    for (std::size_t h = 0; h < raw_islands[c].size(); ++h) {
      int v = raw_islands[c][h];
      for (int w : a.neighbours(v)) {
        if (raw[w] >= 0 || inner_node[w]) continue;
        if (std::binary_search(cut.begin(), cut.end(), std::pair{std::min(v, w), std::max(v, w)})) continue;
        raw[w] = c;
        raw_islands[c].push_back(w);
      }
    }
  }
  const int r = static_cast<int>(raw_islands.size());
  std::vector<std::vector<std::pair<int, int>>> adj(r);  // (neighbour island, run index)
  std::vector<int> indeg(r, 0);
  for (std::size_t e = 0; e < runs.size(); ++e) {
    int x = raw[runs[e].front()], y = raw[runs[e].back()];
    adj[x].emplace_back(y, static_cast<int>(e));
    adj[y].emplace_back(x, static_cast<int>(e));
    ++indeg[y];
  }
  int top = -1;
  for (int c = 0; c < r && top < 0; ++c)
    if (indeg[c] == 0) top = c;
  if (top < 0) throw HardError("island tree has no source", to_text(a));

  // Sons below, then the island, then sons above.
  std::vector<int> raw_father(r, -1), raw_farc(r, -1), order;
  std::function<void(int)> visit = [&](int c) {
    std::vector<int> down, up;
    for (auto [d, e] : adj[c]) {
      if (d == raw_father[c]) continue;
      raw_father[d] = c;
      raw_farc[d] = e;
      (raw[runs[e].front()] == c ? up : down).push_back(d);
    }
    std::sort(down.begin(), down.end());
    std::sort(up.begin(), up.end());
    for (int d : down) visit(d);
    order.push_back(c);
    for (int u : up) visit(u);
  };
  visit(top);
  if (static_cast<int>(order.size()) != r) throw HardError("island graph is not a tree", to_text(a));

  IslandLayout L;
  L.k = k;
  std::vector<int> idx(r);
  for (int p = 0; p < r; ++p) idx[order[p]] = p;
  L.island_of.assign(n, -1);
  for (int v = 0; v < n; ++v)
    if (raw[v] >= 0) L.island_of[v] = idx[raw[v]];
  for (int p = 0; p < r; ++p) {
    auto is = raw_islands[order[p]];
    std::sort(is.begin(), is.end());
    L.islands.push_back(std::move(is));
  }
  for (const auto& run : runs) L.arcs.push_back({L.island_of[run.front()], L.island_of[run.back()], run});
  L.father.assign(r, -1);
  L.father_arc.assign(r, -1);
  L.e_plus.assign(r, {});
  L.e_minus.assign(r, {});
  L.root.assign(r, -1);
  for (int p = 0; p < r; ++p) {
    const int c = order[p];
    if (raw_father[c] < 0) continue;
    L.father[p] = idx[raw_father[c]];
    L.father_arc[p] = raw_farc[c];
    const auto& e = L.arcs[raw_farc[c]];
    if (e.tail == L.father[p]) {
      L.e_plus[L.father[p]].push_back(raw_farc[c]);
      L.root[p] = e.path.back();
    } else {
      L.e_minus[L.father[p]].push_back(raw_farc[c]);
      L.root[p] = e.path.front();
    }
  }
  L.root[0] = L.islands[0].front();
  auto by_son = [&](int e, int f) {
    auto son = [&](int x) { return L.arcs[x].tail == L.father[L.arcs[x].head] ? L.arcs[x].head : L.arcs[x].tail; };
    return son(e) < son(f);
  };
  for (int p = 0; p < r; ++p) {
    std::sort(L.e_plus[p].begin(), L.e_plus[p].end(), by_son);
    std::sort(L.e_minus[p].begin(), L.e_minus[p].end(), by_son);
  }

  // Ordering properties.
  for (const auto& e : L.arcs)
    if (e.tail > e.head) throw HardError("island ordering violates the arc property", to_text(a));
  std::vector<int> lo(r), hi(r);
  for (int p = r - 1; p >= 0; --p) lo[p] = hi[p] = p;
  for (int p = 0; p < r; ++p)
    for (int q = L.father[p]; q >= 0; q = L.father[q]) lo[q] = std::min(lo[q], p), hi[q] = std::max(hi[q], p);
  for (int q = 0; q < r; ++q) {
    int count = 0;
    for (int p = 0; p < r; ++p) {
      bool desc = false;
      for (int x = p; x >= 0 && !desc; x = L.father[x]) desc = x == q;
      count += desc;
    }
    if (count != hi[q] - lo[q] + 1) throw HardError("descendants of an island are not consecutive", to_text(a));
  }

  long at = 0;
  for (int p = 0; p < r; ++p) {
    long side_minus = 0, side_plus = 0;
    for (int e : L.e_minus[p]) side_minus += L.arcs[e].q_size() + 1;
    for (int e : L.e_plus[p]) side_plus += L.arcs[e].q_size() + 1;
    const long c = static_cast<long>(L.islands[p].size());
    L.spc.push_back(12 * c + 36L * k - 124 + side_minus + side_plus);
    L.alpha.push_back(side_minus + 6 * c + 10L * k - 29);
    L.start.push_back(at);
    at += L.spc.back();
  }
  if (at > stub_bound(n, k)) throw HardError("total island space exceeds the stub bound", to_text(a));

  std::vector<char> seen(r, 0);
  L.bfs = {0};
  seen[0] = 1;
  for (std::size_t h = 0; h < L.bfs.size(); ++h)
    for (int p = 0; p < r; ++p)
      if (L.father[p] == L.bfs[h] && !seen[p]) seen[p] = 1, L.bfs.push_back(p);
  return L;
}

// ---------------------------------------------------------------------------
// Stub embedding

struct StubRun {
  Embedding embedding;
  IslandLayout layout;
  int max_forbidden = 0;
};

inline StubRun embed_stub_traced(const OrientedTree& a, const Tournament& t, std::span<const int> order, int k = 0) {
  const int n = a.size();
  const int m = static_cast<int>(order.size());
  if (k == 0) k = leaf_count(a);
  if (m != t.size()) throw PreconditionError("ordering must cover the tournament");
  auto L = islands_layout(a, k, m);
  detail::require_m2(t, order);
  const auto pos = inverse_permutation(order);
  const Tournament rt = t.reversed();
  const std::vector<int> forder(order.begin(), order.end());
  const std::vector<int> rorder(order.rbegin(), order.rend());
  std::vector<char> hit(m, 0), in_f(m, 0);
  int f_count = 0;
  StubRun run{Embedding(n), L, 0};
  auto& phi = run.embedding;
  const std::string dump = "# stub k " + std::to_string(k) + "\n" + dump_instance(a, t, order);
  auto place = [&](int node, int v) {
    if (phi.assigned(node)) throw HardError("node " + std::to_string(node) + " embedded twice", dump);
    if (hit[v]) throw HardError("vertex " + std::to_string(v) + " used twice", dump);
    phi.image[node] = v;
    hit[v] = 1;
  };
  place(L.root[0], order[L.middle_lo(0)]);

  for (int p : L.bfs) {
    const int c = static_cast<int>(L.islands[p].size());
    const int i = pos[phi[L.root[p]]];
    if (i < L.middle_lo(p) || i >= L.middle_hi(p)) throw HardError("island root outside its middle", dump);
    const int h = 2 * c + 2 * k - 5;
    if (i - h < L.start[p] || i + h >= L.region_hi(p)) throw HardError("I_p leaves the reserved region", dump);

    // Step 1: the island, nice around its root inside I_p.
    auto sub = induced_subtree(a, L.islands[p]);
    std::vector<char> forb(m, 0);
    for (int j = i - h; j <= i + h; ++j) forb[j] = j != i && (in_f[order[j]] || hit[order[j]]);
    auto local = detail::nice_embedding(RootedTree(sub.tree, sub.from_parent[L.root[p]]), t, order, i, h, forb);
    for (int x = 0; x < sub.tree.size(); ++x) {
      const int node = sub.to_parent[x];
      if (node == L.root[p]) continue;
      const int j = pos[local[x]];
      if (j < i - h || j > i + h) throw HardError("island node outside I_p", dump);
      place(node, local[x]);
    }

    // Steps 2 and 3 on each side; the downward side runs on the reversed
    // tournament and ordering.
    for (bool down : {false, true}) {
      const auto& arcs = down ? L.e_minus[p] : L.e_plus[p];
      if (arcs.empty()) continue;
      const Tournament& tt = down ? rt : t;
      const std::vector<int>& oo = down ? rorder : forder;
      auto side = [&](long x) { return down ? m - 1 - x : x; };
      const int si = static_cast<int>(side(i));
      const int re = static_cast<int>(down ? m - L.start[p] : L.region_hi(p));
      const int e_count = static_cast<int>(arcs.size());
      const int jlo = si + h + 1;
      const int jhi = si + 6 * c + 2 * e_count + 8 * k - 21;
      if (jhi >= re) throw HardError("J_p leaves the reserved region", dump);
      std::vector<std::vector<int>> legs;
      std::vector<int> heads;
      for (int e : arcs) {
        auto nodes = L.arcs[e].path;
        if (down) std::reverse(nodes.begin(), nodes.end());
        legs.push_back(std::move(nodes));
        heads.push_back(down ? L.arcs[e].tail : L.arcs[e].head);
      }
      // Step 2.
      for (const auto& leg : legs) {
        const int from = static_cast<int>(side(pos[phi[leg[0]]]));
        int j = jlo;
        while (j < m && (hit[oo[j]] || in_f[oo[j]] || !tt.arc(oo[from], oo[j]))) ++j;
        if (j > jhi) throw HardError("no free out-neighbour in J_p", dump);
        place(leg[1], oo[j]);
      }
      // Step 3.
      std::vector<int> ids(legs.size());
      std::iota(ids.begin(), ids.end(), 0);
      auto pin_of = [&](int q) { return static_cast<int>(side(pos[phi[legs[q][1]]])) - jlo; };
      std::sort(ids.begin(), ids.end(), [&](int x, int y) { return pin_of(x) < pin_of(y); });
      std::vector<RootedTree> arbs;
      std::vector<int> pins;
      std::vector<char> is_pin(m, 0);
      for (int q : ids) {
        const int len = static_cast<int>(legs[q].size()) - 3;  // x_2 .. x_{l-2}
        std::vector<Arc> path;
        for (int x = 0; x + 1 < len; ++x) path.emplace_back(x, x + 1);
        arbs.emplace_back(OrientedTree(len, path), 0);
        pins.push_back(pin_of(q));
        is_pin[phi[legs[q][1]]] = 1;
      }
      const int harvest_k = 4 * k - 15;
      auto on_embed = [&](int slot, int node, int v) {
        const auto& leg = legs[ids[slot]];
        const int len = static_cast<int>(leg.size()) - 3;
        if (node == 0) {
          if (phi[leg[1]] != v) throw HardError("pinned root moved", dump);
        } else {
          place(leg[1 + node], v);
        }
        if (node != len - 1) return;
        const int q = heads[ids[slot]];
        const int mlo = static_cast<int>(down ? m - L.middle_hi(q) : L.middle_lo(q));
        const int mhi = static_cast<int>(down ? m - L.middle_lo(q) : L.middle_hi(q));
        const int from = static_cast<int>(side(pos[v]));
        if (mhi - from < 4 * harvest_k) throw HardError("2-out-path interval too short", dump);
        auto paths = detail::harvest_two_paths(tt, std::span<const int>(oo).subspan(from, mhi - from), harvest_k);
        for (const auto& tp : paths) {
          const int mid = tp[1], term = tp[2];
          if (in_f[mid] || hit[mid] || in_f[term] || hit[term]) continue;
          const int tj = static_cast<int>(side(pos[term]));
          if (tj < mlo || tj >= mhi) throw HardError("2-out-path terminus outside the middle", dump);
          in_f[mid] = 1;
          run.max_forbidden = std::max(run.max_forbidden, ++f_count);
          if (f_count > k - 3) throw HardError("forbidden set exceeds k-3", dump);
          place(leg[leg.size() - 2], mid);
          place(leg.back(), term);
          return;
        }
        throw HardError("every harvested 2-out-path is blocked", dump);
      };
      auto forbidden = [&](int v) { return in_f[v] || (hit[v] && !is_pin[v]); };
      // The forbidden capacity is what the window after J_p leaves room for,
      // at most k - 4.
      const int s_len = jhi - jlo + 1;
      int room = re - jlo - s_len + 1;
      for (const auto& arb : arbs) room -= arb.size();
      if (room < 0) throw HardError("margin after J_p too short for the path forest", dump);
      embed_forest_at_roots(arbs, tt, std::span<const int>(oo).subspan(jlo, re - jlo), forbidden,
                            std::min(k - 4, room / 2), pins, s_len, on_embed, false);
    }
  }
  if (!phi.total()) throw HardError("stub embedding incomplete", dump);
  if (!verify_embedding(a, t, phi).empty()) throw HardError("stub embedding invalid", dump);
  return run;
}

/// Stub embedding with leaf parameter k (at least the number of leaves, at
/// least 6) in a tournament with n + 36k^2 - 140k + 124 vertices.
inline Embedding embed_stub(const OrientedTree& a, const Tournament& t, std::span<const int> order, int k = 0) {
  return embed_stub_traced(a, t, order, k).embedding;
}

// ---------------------------------------------------------------------------
// Trees with very few leaves

/// Reduces to stubs, embeds each stub on the still unused vertices, then
/// rebuilds the broken inner segments and the long outer segments with the
/// path theorems on the lowest unused vertices.
inline Embedding embed_very_few_leaves(const OrientedTree& a, const Tournament& t, int cap = default_search_cap) {
  const int n = a.size();
  if (tree_metrics(a).is_path) throw PreconditionError("paths go through the few-leaves procedure");
  const int k = leaf_count(a);
  if (t.size() < very_few_bound(n, k))
    throw PreconditionError("tournament needs " + std::to_string(very_few_bound(n, k)) + " vertices");
  const auto red = reduce_to_stubs(a);
  const int kk = 2 * k - 2 * red.b;
  const std::string dump = to_text(a) + to_text(t);
  std::vector<char> used(t.size(), 0);
  std::vector<std::vector<int>> image;
  for (const auto& comp : red.components) {
    std::vector<int> unused;
    for (int v = 0; v < t.size(); ++v)
      if (!used[v]) unused.push_back(v);
    if (static_cast<long>(unused.size()) < stub_bound(comp.tree.size(), kk))
      throw HardError("not enough unused vertices for a stub component", dump);
    auto sub = t.induced(unused);
    auto sub_order = local_median_order(sub);
    auto e = embed_stub(comp.tree, sub, sub_order, kk);
    std::vector<int> img(comp.tree.size());
    for (int x = 0; x < comp.tree.size(); ++x) {
      img[x] = unused[e[x]];
      used[img[x]] = 1;
    }
    image.push_back(std::move(img));
  }
  Embedding phi(n);
  for (std::size_t c = 0; c < red.components.size(); ++c)
    for (int x = 0; x < red.components[c].tree.size(); ++x)
      if (red.components[c].to_a[x] >= 0) phi.image[red.components[c].to_a[x]] = image[c][x];
  auto lowest_unused = [&](int count) {
    std::vector<int> out;
    for (int v = 0; v < t.size() && static_cast<int>(out.size()) < count; ++v)
      if (!used[v]) out.push_back(v);
    if (static_cast<int>(out.size()) < count) throw HardError("ran out of vertices while rebuilding", dump);
    return out;
  };
  auto points = [&](int f) {
    const auto& fk = red.forks[f];
    return std::vector<int>{image[fk.component][fk.point1], image[fk.component][fk.point2]};
  };
  for (bool inner : {true, false}) {
    for (const auto& r : red.remainders) {
      if (r.inner != inner) continue;
      const int order_r = static_cast<int>(r.nodes.size());
      auto x = points(r.fork);
      auto host = lowest_unused(order_r - (inner ? 2 : 1));
      host.insert(host.end(), x.begin(), x.end());
      std::vector<int> path;
      std::vector<int> y;
      if (inner) {
        y = points(r.fork_bar);
        host.insert(host.end(), y.begin(), y.end());
        path = find_path_between_sets(t, host, x, y, r.type, cap);
      } else {
        path = find_path_origin_set(t, host, x, r.type, cap);
      }
      for (int v : x) used[v] = 0;
      for (int v : y) used[v] = 0;
      for (int j = 0; j < order_r; ++j) {
        phi.image[r.nodes[j]] = path[j];
        used[path[j]] = 1;
      }
    }
  }
  if (!phi.total()) throw HardError("very-few-leaves embedding incomplete", dump);
  if (!verify_embedding(a, t, phi).empty()) throw HardError("very-few-leaves embedding invalid", dump);
  return phi;
}

}  // namespace unavoid

#endif  // UNAVOID_STUB_EMBED_HPP
