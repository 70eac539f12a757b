#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "unavoid/generate.hpp"
#include "unavoid/stub_embed.hpp"

using namespace unavoid;

namespace {

// Block lengths read straight off the arc directions.
std::vector<int> blocks_of(const std::vector<bool>& fwd) {
  std::vector<int> b;
  for (std::size_t i = 0; i < fwd.size(); ++i) {
    if (i == 0 || fwd[i] != fwd[i - 1]) b.push_back(0);
    ++b.back();
  }
  return b;
}

std::vector<bool> arcs_along(const Tournament& t, const std::vector<int>& p) {
  std::vector<bool> fwd;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) fwd.push_back(t.arc(p[i], p[i + 1]));
  return fwd;
}

std::vector<bool> random_arcs(int len, std::mt19937_64& rng) {
  std::vector<bool> fwd(len);
  for (int i = 0; i < len; ++i) fwd[i] = rng() & 1;
  return fwd;
}

bool distinct(const std::vector<int>& p) { return std::set<int>(p.begin(), p.end()).size() == p.size(); }

}  // namespace

TEST_CASE("path types round-trip through arcs") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    auto fwd = random_arcs(1 + static_cast<int>(rng() % 12), rng);
    auto type = path_type_from_arcs(fwd);
    CHECK(type.sign == (fwd[0] ? '+' : '-'));
    CHECK(type.blocks == blocks_of(fwd));
    CHECK(type.arcs() == fwd);
    CHECK(type.length() == static_cast<int>(fwd.size()));
    auto p = path_of_type(type);
    std::vector<int> nodes(p.size());
    std::iota(nodes.begin(), nodes.end(), 0);
    CHECK(path_type(p, nodes) == type);
    auto back = fwd;
    std::reverse(back.begin(), back.end());
    back.flip();
    CHECK(type.reversed() == path_type_from_arcs(back));
  }
  CHECK(to_string(path_type_from_arcs({true, false, false})) == "+(1,2)");
}

TEST_CASE("segments cover every arc once") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_tree(3 + static_cast<int>(rng() % 25), rng);
    if (tree_metrics(a).is_path) {
      CHECK_THROWS_AS(segments(a), PreconditionError);
      continue;
    }
    int covered = 0;
    for (const auto& s : segments(a)) {
      CHECK(a.degree(s.origin()) >= 3);
      for (std::size_t i = 1; i + 1 < s.nodes.size(); ++i) CHECK(a.degree(s.nodes[i]) == 2);
      CHECK((s.inner ? a.degree(s.terminus()) >= 3 : a.degree(s.terminus()) == 1));
      covered += s.inner ? s.length() : 2 * s.length();  // inner segments are listed both ways
    }
    CHECK(covered == 2 * (a.size() - 1));
  }
}

TEST_CASE("stub check names the broken condition") {
  CHECK(is_stub(out_star(5)));
  // spider with a leg of length 2
  OrientedTree leg(5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}});
  auto c = is_stub(leg);
  CHECK_FALSE(c);
  CHECK(c.reason.rfind("(ii)", 0) == 0);
  // two centres joined by +(2,2): inner shape violated
  OrientedTree inner(9, {{0, 1}, {0, 2}, {0, 3}, {3, 4}, {5, 4}, {6, 5}, {6, 7}, {6, 8}});
  auto d = is_stub(inner);
  CHECK_FALSE(d);
  CHECK(d.reason.rfind("(i)", 0) == 0);
}

TEST_CASE("stump types are proper prefixes with a case for every type") {
  std::set<int> cases;
  for (int len = 2; len <= 9; ++len)
    for (int mask = 0; mask < (1 << len); ++mask) {
      std::vector<bool> fwd(len);
      for (int i = 0; i < len; ++i) fwd[i] = (mask >> i) & 1;
      auto st = stump_type(path_type_from_arcs(fwd));
      REQUIRE(st.case_id >= 1);
      REQUIRE(st.case_id <= 5);
      cases.insert(st.case_id);
      const int l = st.type.length();
      CHECK(l >= 1);
      CHECK(l < len);
      CHECK(std::equal(fwd.begin(), fwd.begin() + l, st.type.arcs().begin()));
      auto fork = make_fork(st.type);
      CHECK(fork.tree.size() == l + 2);
      CHECK(fork.tree.degree(fork.point1) == 1);
      CHECK(fork.tree.degree(fork.point2) == 1);
    }
  CHECK(cases.size() == 5);
}

TEST_CASE("reduction splits into stubs and rebuilds the tree") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 3 + static_cast<int>(rng() % 4);
    auto a = random_tree_with_leaves(k + 2 + static_cast<int>(rng() % 25), k, rng);
    REQUIRE(leaf_count(a) == k);
    auto red = reduce_to_stubs(a);
    CHECK(static_cast<int>(red.components.size()) == red.b + 1);
    CHECK(red.order() <= a.size() + red.b);
    for (const auto& c : red.components) {
      CHECK(is_stub(c.tree));
      CHECK(leaf_count(c.tree) <= 2 * k - 2 * red.b);
    }
    CHECK(isomorphic(rebuild(red), a));
  }
  CHECK_THROWS_AS(reduce_to_stubs(directed_path(6)), PreconditionError);
}

TEST_CASE("paths with an origin in a small set") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    auto type = path_type_from_arcs(random_arcs(1 + static_cast<int>(rng() % 9), rng));
    const int m = type.length() + 2;
    auto t = random_tournament(m, rng());
    std::vector<int> origins(m);
    std::iota(origins.begin(), origins.end(), 0);
    std::shuffle(origins.begin(), origins.end(), rng);
    origins.resize(type.blocks.front() + 1);
    auto p = find_path_origin_set(t, origins, type);
    CHECK(distinct(p));
    CHECK(path_type_from_arcs(arcs_along(t, p)) == type);
    CHECK(std::find(origins.begin(), origins.end(), p.front()) != origins.end());
  }
}

TEST_CASE("paths between two sets") {
  std::mt19937_64 rng(5);
  int done = 0;
  while (done < 150) {
    auto type = path_type_from_arcs(random_arcs(3 + static_cast<int>(rng() % 8), rng));
    if (!valid_inner_remainder(type)) continue;
    const int m = type.length() + 3;
    auto t = random_tournament(m, rng());
    std::vector<int> v(m);
    std::iota(v.begin(), v.end(), 0);
    std::shuffle(v.begin(), v.end(), rng);
    std::vector<int> x(v.begin(), v.begin() + 2), y(v.begin() + 2, v.begin() + 4);
    auto p = find_path_between_sets(t, x, y, type);
    CHECK(distinct(p));
    CHECK(path_type_from_arcs(arcs_along(t, p)) == type);
    CHECK(std::find(x.begin(), x.end(), p.front()) != x.end());
    CHECK(std::find(y.begin(), y.end(), p.back()) != y.end());
    ++done;
  }
  CHECK_THROWS_AS(find_path_between_sets(random_tournament(6, 1), {0, 1}, {2, 3}, path_type_from_arcs({true, false, true})),
                  PreconditionError);
}

TEST_CASE("disjoint 2-out-paths from the first vertex") {
  for (int k = 1; k <= 6; ++k) {
    const int m = 8 * k + 3;
    auto t = random_tournament(m, 60 + k);
    auto order = local_median_order(t);
    auto paths = two_out_paths(t, order, k);
    CHECK(static_cast<int>(paths.size()) == k);
    auto pos = inverse_permutation(order);
    std::set<int> used;
    for (auto [o, mid, end] : paths) {
      CHECK(o == order[0]);
      CHECK(t.arc(o, mid));
      CHECK(t.arc(mid, end));
      CHECK(pos[end] >= m - (4 * k - 1));
      CHECK(used.insert(mid).second);
      CHECK(used.insert(end).second);
    }
  }
}

TEST_CASE("stub embedding in random and transitive hosts") {
  std::mt19937_64 rng(6);
  int done = 0;
  while (done < 4) {
    auto a = random_tree_with_leaves(8 + static_cast<int>(rng() % 10), 4, rng);
    auto red = reduce_to_stubs(a);
    for (const auto& c : red.components) {
      if (done >= 4 || leaf_count(c.tree) < 3) continue;
      const int k = std::max(6, leaf_count(c.tree));
      const int m = static_cast<int>(stub_bound(c.tree.size(), k));
      auto t = done % 2 ? transitive(m) : random_tournament(m, rng());
      auto order = local_median_order(t);
      auto run = embed_stub_traced(c.tree, t, order, k);
      CHECK(is_valid_embedding(c.tree, t, run.embedding));
      CHECK(run.max_forbidden <= k - 3);
      ++done;
    }
  }
}

TEST_CASE("very-few-leaves embedding at the bound for three leaves") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 3; ++trial) {
    auto a = random_tree_with_leaves(6 + static_cast<int>(rng() % 15), 3, rng);
    auto t = random_tournament(static_cast<int>(very_few_bound(a.size(), 3)), rng());
    CHECK(is_valid_embedding(a, t, embed_very_few_leaves(a, t)));
  }
  CHECK(very_few_bound(10, 3) == 10 + 580);
  CHECK(very_few_bound(10, 4) == 10 + 1308);
}
