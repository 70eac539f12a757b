#ifndef UNAVOID_ORACLE_HPP
#define UNAVOID_ORACLE_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "unavoid/embedding.hpp"
#include "unavoid/error.hpp"
#include "unavoid/generate.hpp"
#include "unavoid/tournament.hpp"
#include "unavoid/tree.hpp"

namespace unavoid {

namespace detail {

/// Node order for the backtracking search: BFS from a node of maximum degree
/// (smallest id on ties).
struct SearchPlan {
  std::vector<int> order;
  std::vector<int> father;       // -1 for the first node
  std::vector<char> from_father;  // arc father -> node
  std::vector<int> out_sons, in_sons;

  explicit SearchPlan(const OrientedTree& a) {
    const int n = a.size();
    int start = 0;
    for (int v = 1; v < n; ++v)
      if (a.degree(v) > a.degree(start)) start = v;
    RootedTree rt(a, start);
    order = rt.bfs_order();
    father.assign(n, -1);
    from_father.assign(n, 0);
    out_sons.assign(n, 0);
    in_sons.assign(n, 0);
    for (int v = 0; v < n; ++v) {
      father[v] = rt.father(v);
      if (father[v] < 0) continue;
      from_father[v] = a.has_arc(father[v], v);
      ++(from_father[v] ? out_sons : in_sons)[father[v]];
    }
  }
};

/// Tournament on at most 64 vertices as out-neighbourhood masks.
struct MaskHost {
  int n = 0;
  std::uint64_t all = 0;
  std::vector<std::uint64_t> out, in;

  explicit MaskHost(int order) : n(order), all(order == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << order) - 1),
                                 out(order, 0), in(order, 0) {}

  static MaskHost of(const Tournament& t) {
    if (t.size() > 64) throw PreconditionError("exhaustive search is limited to 64 host vertices");
    MaskHost h(t.size());
    for (int u = 0; u < t.size(); ++u)
      for (int v = 0; v < t.size(); ++v)
        if (t.arc(u, v)) h.out[u] |= std::uint64_t{1} << v;
    h.finish();
    return h;
  }

  /// Same bit convention as tournament_from_mask.
  static MaskHost of_mask(int n, std::uint64_t mask) {
    MaskHost h(n);
    int bit = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v, ++bit) {
        if ((mask >> bit) & 1U) h.out[u] |= std::uint64_t{1} << v;
        else h.out[v] |= std::uint64_t{1} << u;
      }
    h.finish();
    return h;
  }

  void finish() {
    for (int u = 0; u < n; ++u) in[u] = all & ~out[u] & ~(std::uint64_t{1} << u);
  }
};

class Backtracker {
 public:
  Backtracker(const OrientedTree& a, const SearchPlan& plan, const MaskHost& h)
      : a_(a), plan_(plan), h_(h), image_(a.size(), -1) {}

  bool run() { return h_.n >= a_.size() && place(0, h_.all); }
  const std::vector<int>& image() const { return image_; }

 private:
  bool place(std::size_t idx, std::uint64_t free) {
    if (idx == plan_.order.size()) return true;
    const int x = plan_.order[idx];
    const int f = plan_.father[x];
    std::uint64_t cand = free;
    if (f >= 0) cand &= plan_.from_father[x] ? h_.out[image_[f]] : h_.in[image_[f]];
    while (cand) {
      const int v = std::countr_zero(cand);
      cand &= cand - 1;
      // Arc consistency: the unplaced sons of x need distinct free vertices on
      // the right side of v, and v needs the full degree of x.
      if (std::popcount(h_.out[v]) < a_.out_degree(x) || std::popcount(h_.in[v]) < a_.in_degree(x)) continue;
      const std::uint64_t rest = free & ~(std::uint64_t{1} << v);
      if (std::popcount(h_.out[v] & rest) < plan_.out_sons[x] || std::popcount(h_.in[v] & rest) < plan_.in_sons[x])
        continue;
      image_[x] = v;
      if (place(idx + 1, rest)) return true;
    }
    image_[x] = -1;
    return false;
  }

  const OrientedTree& a_;
  const SearchPlan& plan_;
  const MaskHost& h_;
  std::vector<int> image_;
};

inline std::optional<Embedding> search(const OrientedTree& a, const SearchPlan& plan, const MaskHost& h) {
  Backtracker bt(a, plan, h);
  if (!bt.run()) return std::nullopt;
  Embedding phi(a.size());
  phi.image = bt.image();
  return phi;
}

}  // namespace detail

/// Complete backtracking search for a copy of `a` in `t` (|T| <= 64).
/// std::nullopt proves that `t` does not contain `a`.
inline std::optional<Embedding> brute_force_embed(const OrientedTree& a, const Tournament& t) {
  if (a.size() > t.size()) return std::nullopt;
  detail::SearchPlan plan(a);
  return detail::search(a, plan, detail::MaskHost::of(t));
}

/// Worker count for sweeps: UNAVOID_THREADS when set, else the hardware count.
inline int worker_count() {
  if (const char* env = std::getenv("UNAVOID_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

struct SweepReport {
  int n = 0;
  std::uint64_t total = 0;
  std::vector<std::uint64_t> failures;  // tournament_from_mask encodings, ascending
  bool unavoidable() const { return failures.empty(); }
};

inline constexpr int default_enumeration_cap = 28;

/// Tries every labeled tournament of order n. Failures are exactly the
/// tournaments without a copy of `a`.
inline SweepReport contains_all(const OrientedTree& a, int n, int cap_bits = default_enumeration_cap, int threads = 0) {
  if (n < 1) throw PreconditionError("order must be positive");
  const int bits = n * (n - 1) / 2;
  if (bits > cap_bits || bits > 62)
    throw PreconditionError("order " + std::to_string(n) + " needs " + std::to_string(bits) + " bits, above the cap of " +
                            std::to_string(cap_bits));
  SweepReport rep;
  rep.n = n;
  rep.total = std::uint64_t{1} << bits;
  if (a.size() > n) {
    for (std::uint64_t m = 0; m < rep.total; ++m) rep.failures.push_back(m);
    return rep;
  }
  detail::SearchPlan plan(a);
  if (threads <= 0) threads = worker_count();
  threads = static_cast<int>(std::min<std::uint64_t>(threads, rep.total));
  std::vector<std::vector<std::uint64_t>> parts(threads);
  auto work = [&](int w) {
    const std::uint64_t lo = rep.total * w / threads, hi = rep.total * (w + 1) / threads;
    for (std::uint64_t m = lo; m < hi; ++m)
      if (!detail::search(a, plan, detail::MaskHost::of_mask(n, m))) parts[w].push_back(m);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (auto& p : parts) rep.failures.insert(rep.failures.end(), p.begin(), p.end());
  return rep;
}

/// Smallest n >= |A| with every tournament of order n containing `a`, or
/// std::nullopt when that exceeds `cap`. Containment is monotone in n, so the
/// first success is the answer.
inline std::optional<int> unvd_exact(const OrientedTree& a, int cap = 8) {
  if (cap * (cap - 1) / 2 > default_enumeration_cap)
    throw PreconditionError("cap " + std::to_string(cap) + " is above the enumeration limit of 8");
  for (int n = a.size(); n <= cap; ++n)
    if (contains_all(a, n).unavoidable()) return n;
  return std::nullopt;
}

struct GrunbaumReport {
  bool p3_in_c3 = true;       // antidirected P3 found in the 3-cycle
  bool p5_in_regular5 = true;
  bool p7_in_paley7 = true;
  std::optional<int> unvd_p3;
  bool ok() const { return !p3_in_c3 && !p5_in_regular5 && !p7_in_paley7 && unvd_p3 == 4; }
};

/// The three small antidirected exceptions and the unavoidability of the
/// shortest one.
inline GrunbaumReport grunbaum_checks() {
  GrunbaumReport r;
  r.p3_in_c3 = brute_force_embed(antidirected_path(3), rotational(3, {1})).has_value();
  r.p5_in_regular5 = brute_force_embed(antidirected_path(5), rotational(5, {1, 2})).has_value();
  r.p7_in_paley7 = brute_force_embed(antidirected_path(7), paley(7)).has_value();
  r.unvd_p3 = unvd_exact(antidirected_path(3), 5);
  return r;
}

}  // namespace unavoid

#endif  // UNAVOID_ORACLE_HPP
