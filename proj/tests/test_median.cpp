#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "unavoid/generate.hpp"
#include "unavoid/median.hpp"

using namespace unavoid;

namespace {

// Direct reading of the definition: v_i beats at least half of v_{i+1..j} and
// v_j is beaten by at least half of v_{i..j-1}.
bool m2_by_definition(const Tournament& t, const std::vector<int>& o) {
  const int n = static_cast<int>(o.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int out_i = 0, in_j = 0;
      for (int x = i + 1; x <= j; ++x) out_i += t.arc(o[i], o[x]);
      for (int x = i; x < j; ++x) in_j += t.arc(o[x], o[j]);
      const int len = j - i;
      if (2 * out_i < len || 2 * in_j < len) return false;
    }
  return true;
}

// Repair from the identity, rescanning everything after each move.
std::vector<int> naive_repair(const Tournament& t) {
  const int n = t.size();
  std::vector<int> o(n);
  std::iota(o.begin(), o.end(), 0);
  for (;;) {
    bool moved = false;
    for (int i = 0; i < n && !moved; ++i)
      for (int len = 1; i + len < n && !moved; ++len) {
        const int j = i + len;
        int out_i = 0, in_j = 0;
        for (int x = i + 1; x <= j; ++x) out_i += t.arc(o[i], o[x]);
        for (int x = i; x < j; ++x) in_j += t.arc(o[x], o[j]);
        if (2 * out_i < len) {
          std::rotate(o.begin() + i, o.begin() + i + 1, o.begin() + j + 1);
          moved = true;
        } else if (2 * in_j < len) {
          std::rotate(o.begin() + i, o.begin() + j, o.begin() + j + 1);
          moved = true;
        }
      }
    if (!moved) return o;
  }
}

}  // namespace

TEST_CASE("local median order satisfies the definition") {
  for (int n = 1; n <= 40; ++n) {
    auto t = random_tournament(n, 100 + n);
    auto o = local_median_order(t);
    CHECK(m2_by_definition(t, o));
    CHECK(check_m2(t, o).empty());
  }
  CHECK(local_median_order(transitive(10)) == local_median_order_of(transitive(10), std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}));
}

TEST_CASE("incremental repair returns the same order as the naive repair") {
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + trial % 45;
    auto t = random_tournament(n, 7000 + trial);
    CHECK(local_median_order(t) == naive_repair(t));
  }
  auto p = paley(11);
  CHECK(local_median_order(p) == naive_repair(p));
}

TEST_CASE("every repair increases the number of forward arcs") {
  auto t = random_tournament(60, 42);
  std::vector<long> log;
  auto o = local_median_order(t, &log);
  REQUIRE(!log.empty());
  CHECK(log.back() == forward_arcs(t, o));
  for (std::size_t i = 1; i < log.size(); ++i) CHECK(log[i] > log[i - 1]);
}

TEST_CASE("check_m2 lists exactly the violated pairs") {
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 9;
    auto t = random_tournament(n, 300 + trial);
    std::vector<int> o(n);
    std::iota(o.begin(), o.end(), 0);
    std::shuffle(o.begin(), o.end(), std::mt19937_64(trial));
    std::size_t expected = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        int out_i = 0, in_j = 0;
        for (int x = i + 1; x <= j; ++x) out_i += t.arc(o[i], o[x]);
        for (int x = i; x < j; ++x) in_j += t.arc(o[x], o[j]);
        expected += (2 * out_i < j - i || 2 * in_j < j - i);
      }
    CHECK(check_m2(t, o).size() == expected);
    CHECK(is_local_median_order(t, o) == (expected == 0));
  }
  CHECK_THROWS_AS(check_m2(transitive(3), std::vector<int>{0, 0, 1}), PreconditionError);
}

TEST_CASE("orders with the most forward arcs are local median orders") {
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 4 + trial % 3;
    auto t = random_tournament(n, 900 + trial);
    std::vector<int> o(n);
    std::iota(o.begin(), o.end(), 0);
    long best = -1;
    std::vector<std::vector<int>> argmax;
    do {
      long f = forward_arcs(t, o);
      if (f > best) best = f, argmax.clear();
      if (f == best) argmax.push_back(o);
    } while (std::next_permutation(o.begin(), o.end()));
    for (const auto& m : argmax) CHECK(m2_by_definition(t, m));
  }
}

TEST_CASE("intervals of a local median order are local median orders") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 20 + 8 * trial;
    auto t = random_tournament(n, 50 + trial);
    auto o = local_median_order(t);
    for (int s = 0; s < 10; ++s) {
      int lo = static_cast<int>(rng() % n), hi = static_cast<int>(rng() % n);
      if (lo > hi) std::swap(lo, hi);
      std::vector<int> sub(o.begin() + lo, o.begin() + hi + 1);
      CHECK(m2_by_definition(t, sub));
    }
    // consecutive vertices form a Hamiltonian path
    for (int i = 0; i + 1 < n; ++i) CHECK(t.arc(o[i], o[i + 1]));
  }
}
