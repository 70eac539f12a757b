#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "unavoid/embed_arbo.hpp"
#include "unavoid/generate.hpp"
#include "unavoid/median.hpp"

using namespace unavoid;

namespace {

RootedTree random_out_arborescence(int n, std::mt19937_64& rng) {
  std::vector<Arc> arcs;
  for (int v = 1; v < n; ++v) arcs.emplace_back(static_cast<int>(rng() % v), v);
  return {OrientedTree(n, arcs), 0};
}

int sinks(const OrientedTree& a) {
  if (a.size() == 1) return 1;
  int c = 0;
  for (int v = 0; v < a.size(); ++v) c += a.out_degree(v) == 0;
  return c;
}

bool arcs_preserved(const OrientedTree& a, const Tournament& t, const Embedding& phi) {
  std::set<int> used(phi.image.begin(), phi.image.end());
  if (static_cast<int>(used.size()) != a.size() || *used.begin() < 0) return false;
  for (auto [u, v] : a.arcs())
    if (!t.arc(phi[u], phi[v])) return false;
  return true;
}

// |image in I| < |I|/2 - |F in I| + 1 on every initial and terminal interval.
bool nice(const std::vector<int>& order, const Embedding& phi, const std::vector<int>& forbidden) {
  const int m = static_cast<int>(order.size());
  std::vector<int> img(m, 0), forb(m, 0);
  std::vector<int> pos(m);
  for (int i = 0; i < m; ++i) pos[order[i]] = i;
  for (int v : phi.image) img[pos[v]] = 1;
  for (int v : forbidden) forb[pos[v]] = 1;
  for (int len = 1; len <= m; ++len) {
    int a = 0, b = 0, fa = 0, fb = 0;
    for (int i = 0; i < len; ++i) a += img[i], fa += forb[i], b += img[m - 1 - i], fb += forb[m - 1 - i];
    if (2 * a >= len - 2 * fa + 2 || 2 * b >= len - 2 * fb + 2) return false;
  }
  return true;
}

// Every terminal interval I of the ordering without its last two vertices
// holds fewer than |I|/2 + 1 images.
bool forward_before_last_two(const std::vector<int>& order, const Embedding& phi) {
  const int m = static_cast<int>(order.size()) - 2;
  int img = 0;
  for (int j = m - 1; j >= 0; --j) {
    img += std::find(phi.image.begin(), phi.image.end(), order[j]) != phi.image.end();
    if (2 * img >= (m - j) + 2) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("greedy embeds out-arborescences in n+k-1 vertices") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 25);
    auto a = random_out_arborescence(n, rng);
    const int k = sinks(a.tree());
    CHECK(static_cast<int>(arborescence_leaves(a).size()) == k);
    auto t = random_tournament(n + k - 1, rng());
    auto order = local_median_order(t);
    auto tr = embed_out_arborescence(a, t, order);
    CHECK(arcs_preserved(a.tree(), t, tr.embedding));
    CHECK(tr.embedding[0] == order[0]);
    CHECK(static_cast<int>(tr.failed.size()) <= k - 1);
    CHECK(tr.leaf_injection.size() == tr.failed.size());
    std::set<int> leaves;
    for (auto [f, leaf] : tr.leaf_injection) leaves.insert(leaf);
    CHECK(leaves.size() == tr.failed.size());
  }
}

TEST_CASE("in-arborescences land their root on the last vertex") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 20);
    auto out = random_out_arborescence(n, rng);
    RootedTree in(out.tree().reversed(), 0);
    const int k = sinks(out.tree());
    auto t = random_tournament(n + k - 1, rng());
    auto order = local_median_order(t);
    auto tr = embed_in_arborescence(in, t, order);
    CHECK(arcs_preserved(in.tree(), t, tr.embedding));
    CHECK(tr.embedding[0] == order.back());
  }
}

TEST_CASE("directed paths embed in every small tournament") {
  for (int n = 1; n <= 5; ++n) {
    RootedTree p(directed_path(n), 0);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n * (n - 1) / 2)); ++m) {
      auto t = tournament_from_mask(n, m);
      auto tr = embed_out_arborescence(p, t, local_median_order(t));
      CHECK(tr.failed.empty());
      CHECK(arcs_preserved(p.tree(), t, tr.embedding));
    }
  }
}

TEST_CASE("greedy rejects bad inputs") {
  RootedTree star(out_star(4), 0);
  auto t = random_tournament(5, 1);
  CHECK_THROWS_AS(embed_out_arborescence(star, t, local_median_order(t)), PreconditionError);
  auto t6 = random_tournament(6, 1);
  std::vector<int> bad(6);
  std::iota(bad.begin(), bad.end(), 0);
  if (is_local_median_order(t6, bad)) std::reverse(bad.begin(), bad.end());
  if (!is_local_median_order(t6, bad)) CHECK_THROWS_AS(embed_out_arborescence(star, t6, bad), PreconditionError);
  CHECK_THROWS_AS(embed_out_arborescence(RootedTree(antidirected_path(3), 0), t6, local_median_order(t6)),
                  PreconditionError);
}

TEST_CASE("an extra out-leaf goes after its father") {
  std::mt19937_64 rng(3);
  int extended = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 15);
    auto a = random_out_arborescence(n, rng);
    const int leaf = n - 1;  // the last node is always a leaf
    std::vector<Arc> arcs;
    for (auto arc : a.tree().arcs())
      if (arc.second != leaf) arcs.push_back(arc);
    RootedTree rest(OrientedTree(n - 1, arcs), 0);
    const int p = 2 * ((n - 1) + sinks(rest.tree())) + 2;
    auto t = random_tournament(p, rng());
    auto order = local_median_order(t);
    auto tr = embed_out_arborescence(rest, t, order);
    Embedding partial(n);
    for (int x = 0; x < n - 1; ++x) partial.image[x] = tr.embedding[x];
    if (!forward_before_last_two(order, partial)) {
      CHECK_THROWS_AS(extend_out_leaf(a, leaf, t, order, partial), PreconditionError);
      continue;
    }
    ++extended;
    auto phi = extend_out_leaf(a, leaf, t, order, partial);
    CHECK(arcs_preserved(a.tree(), t, phi));
    auto pos = inverse_permutation(order);
    CHECK(pos[phi[leaf]] > pos[phi[a.tree().in(leaf).front()]]);
  }
  CHECK(extended > 40);
}

TEST_CASE("nice embeddings avoid forbidden vertices and stay sparse at both ends") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 12);
    const int cap = static_cast<int>(rng() % 4);
    auto tree = random_tree(n, rng);
    RootedTree a(tree, static_cast<int>(rng() % n));
    auto t = random_tournament(4 * n + 4 * cap - 3, rng());
    auto order = local_median_order(t);
    const int center = 2 * n + 2 * cap - 2;
    std::vector<int> forbidden;
    const int f = cap ? static_cast<int>(rng() % (cap + 1)) : 0;
    while (static_cast<int>(forbidden.size()) < f) {
      int v = static_cast<int>(rng() % t.size());
      if (v != order[center] && std::find(forbidden.begin(), forbidden.end(), v) == forbidden.end())
        forbidden.push_back(v);
    }
    auto phi = embed_sigma_F_nice(a, t, order, forbidden, cap);
    CHECK(arcs_preserved(tree, t, phi));
    CHECK(phi[a.root()] == order[center]);
    for (int v : forbidden) CHECK(std::find(phi.image.begin(), phi.image.end(), v) == phi.image.end());
    CHECK(nice(order, phi, forbidden));
  }
}

TEST_CASE("forests of arborescences hit their pinned roots") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = 1 + static_cast<int>(rng() % 3);
    std::vector<RootedTree> arbs;
    long need = 0;
    for (int q = 0; q < p; ++q) {
      arbs.push_back(random_out_arborescence(1 + static_cast<int>(rng() % 8), rng));
      need += arbs.back().size() + sinks(arbs.back().tree()) - 1;
    }
    const int s = p + 1 + static_cast<int>(rng() % 4);
    const int cap = static_cast<int>(rng() % 3);
    const int m = static_cast<int>(s + need + 2 * cap - 1);
    auto t = random_tournament(m, rng());
    auto order = local_median_order(t);
    std::vector<int> slots(s);
    std::iota(slots.begin(), slots.end(), 0);
    std::shuffle(slots.begin(), slots.end(), rng);
    std::vector<int> pins(slots.begin(), slots.begin() + p);
    std::sort(pins.begin(), pins.end());
    std::set<int> forbidden;
    for (int x = p; x < s && static_cast<int>(forbidden.size()) < cap; ++x) forbidden.insert(order[slots[x]]);
    auto out = embed_forest_at_roots(arbs, t, order, [&](int v) { return forbidden.count(v) > 0; }, cap, pins, s);
    REQUIRE(static_cast<int>(out.size()) == p);
    std::set<int> used;
    for (int q = 0; q < p; ++q) {
      CHECK(arcs_preserved(arbs[q].tree(), t, out[q]));
      CHECK(out[q][arbs[q].root()] == order[pins[q]]);
      for (int v : out[q].image) {
        CHECK(used.insert(v).second);
        CHECK(forbidden.count(v) == 0);
      }
    }
  }
}
