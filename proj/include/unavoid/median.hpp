#ifndef UNAVOID_MEDIAN_HPP
#define UNAVOID_MEDIAN_HPP

#include <algorithm>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "unavoid/bitset.hpp"
#include "unavoid/error.hpp"
#include "unavoid/tournament.hpp"

namespace unavoid {

/// Vertex ordering v_0..v_{n-1}; perm[i] is the vertex at position i.
using Ordering = std::vector<int>;

struct M2Violation {
  int i;
  int j;
  bool tail_short;  // v_i dominates fewer than half of v_{i+1..j}
  bool head_short;  // v_j is dominated by fewer than half of v_{i..j-1}
  friend bool operator==(const M2Violation&, const M2Violation&) = default;
};

namespace detail {

inline void require_permutation(const Tournament& t, std::span<const int> order) {
  if (static_cast<int>(order.size()) != t.size()) throw PreconditionError("ordering has the wrong length");
  std::vector<char> seen(order.size(), 0);
  for (int v : order) {
    if (v < 0 || v >= t.size() || seen[v]) throw PreconditionError("ordering is not a permutation");
    seen[v] = 1;
  }
}

/// Scans pairs in lexicographic (i, j-i) order; stops at the first violation
/// unless `all` is set.
inline std::vector<M2Violation> scan_m2(const Tournament& t, std::span<const int> order, bool all) {
  const int n = static_cast<int>(order.size());
  std::vector<M2Violation> out;
  // in_total[j]: in-neighbours of v_j among v_0..v_{j-1}; in_before[j]: among v_0..v_{i-1}
  std::vector<int> in_total(n, 0), in_before(n, 0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) in_total[j] += t.arc(order[i], order[j]);
  for (int i = 0; i < n; ++i) {
    if (i > 0)
      for (int j = i; j < n; ++j) in_before[j] += t.arc(order[i - 1], order[j]);
    int dominated = 0;
    for (int j = i + 1; j < n; ++j) {
      dominated += t.arc(order[i], order[j]);
      const int need = (j - i + 1) / 2;
      const bool tail_short = dominated < need;
      const bool head_short = in_total[j] - in_before[j] < need;
      if (tail_short || head_short) {
        out.push_back({i, j, tail_short, head_short});
        if (!all) return out;
      }
    }
  }
  return out;
}

}  // namespace detail

/// All pairs (i,j), i<j, at which the ordering breaks the local median property.
/// An empty result certifies a local median order.
inline std::vector<M2Violation> check_m2(const Tournament& t, std::span<const int> order) {
  detail::require_permutation(t, order);
  return detail::scan_m2(t, order, true);
}

inline bool is_local_median_order(const Tournament& t, std::span<const int> order) {
  detail::require_permutation(t, order);
  return detail::scan_m2(t, order, false).empty();
}

inline long forward_arcs(const Tournament& t, std::span<const int> order) {
  long c = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) c += t.arc(order[i], order[j]);
  return c;
}

namespace detail {

/// First violation in (i, j-i) order among rows >= start, given that rows
/// before `start` are clean. in_total[p] counts in-neighbours of the vertex at
/// position p among earlier positions.
inline std::optional<M2Violation> scan_rows(const Tournament& t, const Ordering& order, const std::vector<int>& in_total,
                                            int start) {
  const int n = static_cast<int>(order.size());
  std::vector<int> in_before(n, 0);
  Bitset prefix(n);
  for (int p = 0; p < start; ++p) prefix.set(order[p]);
  for (int j = start; j < n; ++j) in_before[j] = start - prefix.and_count(t.out_row(order[j]));
  for (int i = start; i < n; ++i) {
    if (i > start)
      for (int j = i; j < n; ++j) in_before[j] += t.arc(order[i - 1], order[j]);
    int dominated = 0;
    for (int j = i + 1; j < n; ++j) {
      dominated += t.arc(order[i], order[j]);
      const int need = (j - i + 1) / 2;
      const bool tail_short = dominated < need;
      const bool head_short = in_total[j] - in_before[j] < need;
      if (tail_short || head_short) return M2Violation{i, j, tail_short, head_short};
    }
  }
  return std::nullopt;
}

/// After a rotation inside positions [a, b], rows before a can only break on
/// pairs (i', j') with a <= j' <= b. Returns the first such violation.
inline std::optional<M2Violation> recheck_rows(const Tournament& t, const Ordering& order, int a, int b) {
  const int n = static_cast<int>(order.size());
  const int w = b - a + 1;
  if (a == 0) return std::nullopt;
  std::vector<int> inner_in(w), outer_in(w, 0);
  Bitset seen(n);
  for (int x = 0; x < w; ++x) {
    inner_in[x] = x - seen.and_count(t.out_row(order[a + x]));
    seen.set(order[a + x]);
  }
  Bitset mid(n);
  std::optional<M2Violation> first;
  for (int i = a - 1; i >= 0; --i) {
    for (int x = 0; x < w; ++x) outer_in[x] += t.arc(order[i], order[a + x]);
    int dominated = mid.and_count(t.out_row(order[i]));
    for (int x = 0; x < w; ++x) {
      const int j = a + x;
      dominated += t.arc(order[i], order[j]);
      const int need = (j - i + 1) / 2;
      const bool tail_short = dominated < need;
      const bool head_short = outer_in[x] + inner_in[x] < need;
      if (tail_short || head_short) {
        first = M2Violation{i, j, tail_short, head_short};
        break;
      }
    }
    mid.set(order[i]);
  }
  return first;
}

}  // namespace detail

/// Local median order by repair from the identity. Each repair moves the
/// offending endpoint of the first violation (in (i, j-i) order) across its
/// interval, which strictly increases the number of forward arcs, so at most
/// n(n-1)/2 repairs happen. When `forward_log` is given it receives the
/// forward-arc count before the first and after every repair.
///
/// Rows before a repaired interval are only rechecked on the pairs the
/// rotation can affect, so the scan does not restart from the first row.
inline Ordering local_median_order(const Tournament& t, std::vector<long>* forward_log = nullptr) {
  const int n = t.size();
  Ordering order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  if (forward_log) forward_log->push_back(forward_arcs(t, order));
  std::vector<int> in_total(n, 0);
  auto refresh = [&](int lo, int hi) {
    Bitset prefix(n);
    for (int p = 0; p < lo; ++p) prefix.set(order[p]);
    for (int p = lo; p <= hi; ++p) {
      in_total[p] = p - prefix.and_count(t.out_row(order[p]));
      prefix.set(order[p]);
    }
  };
  refresh(0, n - 1);
  auto next = detail::scan_rows(t, order, in_total, 0);
  while (next) {
    auto [i, j, tail_short, head_short] = *next;
    if (tail_short) std::rotate(order.begin() + i, order.begin() + i + 1, order.begin() + j + 1);
    else std::rotate(order.begin() + i, order.begin() + j, order.begin() + j + 1);
    refresh(i, j);
    if (forward_log) forward_log->push_back(forward_arcs(t, order));
    next = detail::recheck_rows(t, order, i, j);
    if (!next) next = detail::scan_rows(t, order, in_total, i);
  }
  return order;
}

/// Local median order of the subtournament induced on `vertices`, expressed in
/// the original vertex ids.
inline Ordering local_median_order_of(const Tournament& t, std::span<const int> vertices) {
  auto sub = t.induced(vertices);
  auto local = local_median_order(sub);
  Ordering out;
  out.reserve(local.size());
  for (int x : local) out.push_back(vertices[x]);
  return out;
}

}  // namespace unavoid

#endif  // UNAVOID_MEDIAN_HPP
