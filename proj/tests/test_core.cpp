#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "unavoid/embedding.hpp"
#include "unavoid/generate.hpp"
#include "unavoid/io.hpp"

using namespace unavoid;

namespace {

// Isomorphism by trying every relabelling; only for tiny trees.
bool isomorphic_by_permutation(const OrientedTree& a, const OrientedTree& b) {
  if (a.size() != b.size()) return false;
  std::vector<int> p(a.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (auto [u, v] : a.arcs())
      if (!b.has_arc(p[u], p[v])) {
        ok = false;
        break;
      }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

}  // namespace

TEST_CASE("bitset counts agree with a plain vector") {
  std::mt19937_64 rng(3);
  for (int size : {1, 63, 64, 65, 200}) {
    Bitset a(size), b(size);
    std::vector<char> va(size), vb(size);
    for (int i = 0; i < size; ++i) {
      va[i] = rng() & 1, vb[i] = rng() & 1;
      a.assign(i, va[i]), b.assign(i, vb[i]);
    }
    int ca = 0, cab = 0;
    for (int i = 0; i < size; ++i) ca += va[i], cab += va[i] && vb[i];
    CHECK(a.count() == ca);
    CHECK(a.and_count(b) == cab);
    int lo = size / 3, hi = size - size / 5;
    int cr = 0;
    for (int i = lo; i < hi; ++i) cr += va[i];
    CHECK(a.count_range(lo, hi) == cr);
  }
}

TEST_CASE("generators produce tournaments with the expected score sequences") {
  auto p = paley(7);
  REQUIRE_FALSE(p.validate());
  for (int u = 0; u < 7; ++u) {
    CHECK(p.out_degree(u) == 3);
    // residues mod 7 are 1, 2, 4
    for (int v = 0; v < 7; ++v)
      if (u != v) CHECK(p.arc(u, v) == ((v - u + 7) % 7 == 1 || (v - u + 7) % 7 == 2 || (v - u + 7) % 7 == 4));
  }
  auto tr = transitive(6);
  for (int u = 0; u < 6; ++u) CHECK(tr.out_degree(u) == 5 - u);
  auto r = random_tournament(40, 9);
  CHECK_FALSE(r.validate());
  CHECK(r == random_tournament(40, 9));
  CHECK_THROWS_AS(rotational(5, {1, 4}), PreconditionError);
  CHECK_THROWS_AS(paley(5), PreconditionError);
}

TEST_CASE("every mask of order 4 is a distinct tournament and score totals match") {
  // 64 labeled tournaments: 4! transitive ones, 4 * 2 with a sink under a
  // 3-cycle, as many with a source, and the remaining 24 strong ones.
  std::map<std::vector<int>, int> by_scores;
  std::vector<Tournament> seen;
  for (std::uint64_t m = 0; m < 64; ++m) {
    auto t = tournament_from_mask(4, m);
    REQUIRE_FALSE(t.validate());
    std::vector<int> s;
    for (int u = 0; u < 4; ++u) s.push_back(t.out_degree(u));
    std::sort(s.begin(), s.end());
    ++by_scores[s];
    seen.push_back(t);
  }
  CHECK(by_scores[{0, 1, 2, 3}] == 24);
  CHECK(by_scores[{0, 2, 2, 2}] == 8);
  CHECK(by_scores[{1, 1, 1, 3}] == 8);
  CHECK(by_scores[{1, 1, 2, 2}] == 24);
  for (std::size_t i = 0; i < seen.size(); ++i)
    for (std::size_t j = i + 1; j < seen.size(); ++j) CHECK_FALSE(seen[i] == seen[j]);
}

TEST_CASE("tree construction rejects non-trees") {
  CHECK_THROWS_AS(OrientedTree(3, {{0, 1}}), PreconditionError);
  CHECK_THROWS_AS(OrientedTree(3, {{0, 1}, {1, 0}}), PreconditionError);
  CHECK_THROWS_AS(OrientedTree(4, {{0, 1}, {1, 2}, {2, 0}}), PreconditionError);
  CHECK_THROWS_AS(OrientedTree(2, {{0, 2}}), PreconditionError);
}

TEST_CASE("leaf partition and metrics on small shapes") {
  auto star = out_star(5);
  CHECK(leaf_partition(star).out_leaves.size() == 4);
  CHECK(leaf_count(star) == 4);
  CHECK(tree_metrics(star).arborescence == ArbKind::out);
  CHECK(tree_metrics(star.reversed()).arborescence == ArbKind::in);
  auto p = directed_path(5);
  CHECK(leaf_count(p) == 2);
  CHECK(tree_metrics(p).is_path);
  CHECK(tree_metrics(p).arborescence == ArbKind::out);
  auto ap = antidirected_path(5);
  CHECK(tree_metrics(ap).arborescence == ArbKind::none);
  CHECK_FALSE(tree_metrics(ap).is_bi_arborescence);
  CHECK(tree_metrics(antidirected_path(3)).is_bi_arborescence);
  CHECK(leaf_count(OrientedTree()) == 1);
  // 0 -> 1 -> 2 and 3 -> 1: bi-arborescence rooted at 1 only
  OrientedTree bi(4, {{0, 1}, {1, 2}, {3, 1}});
  CHECK(bi_arborescence_root(bi) == 1);
}

TEST_CASE("rooted tree keeps fathers before sons") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_tree(1 + trial % 20, rng);
    RootedTree rt(a, trial % a.size());
    std::vector<int> pos(a.size());
    for (int i = 0; i < a.size(); ++i) pos[rt.bfs_order()[i]] = i;
    auto sz = rt.subtree_sizes();
    CHECK(sz[rt.root()] == a.size());
    for (int v = 0; v < a.size(); ++v) {
      if (v == rt.root()) continue;
      CHECK(pos[rt.father(v)] < pos[v]);
      CHECK(rt.depth(v) == rt.depth(rt.father(v)) + 1);
      CHECK(rt.is_upward(v) == a.has_arc(rt.father(v), v));
    }
  }
}

TEST_CASE("canonical form agrees with brute-force isomorphism") {
  std::mt19937_64 rng(11);
  std::vector<OrientedTree> pool;
  for (int trial = 0; trial < 60; ++trial) pool.push_back(random_tree(2 + trial % 6, rng));
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i; j < pool.size(); ++j)
      CHECK(isomorphic(pool[i], pool[j]) == isomorphic_by_permutation(pool[i], pool[j]));
}

TEST_CASE("verify_embedding flags arcs and collisions") {
  auto t = transitive(4);
  auto p = directed_path(3);
  Embedding phi(3);
  phi.image = {0, 2, 3};
  CHECK(verify_embedding(p, t, phi).empty());
  phi.image = {0, 3, 2};
  auto v = verify_embedding(p, t, phi);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == Violation::Kind::arc);
  phi.image = {1, 1, 2};
  CHECK_FALSE(is_valid_embedding(p, t, phi));
  phi.image = {0, -1, 2};
  CHECK_THROWS_AS(verify_embedding(p, t, phi), PreconditionError);
}

TEST_CASE("text formats round-trip and report line numbers") {
  auto t = random_tournament(9, 2);
  CHECK(tournament_from_matrix(to_text(t)) == t);
  std::mt19937_64 rng(1);
  auto a = random_tree(8, rng);
  CHECK(tree_from_text(to_text(a)) == a);
  Embedding phi(3);
  phi.image = {4, 0, 2};
  CHECK(embedding_from_text(to_text(phi), 3) == phi);
  std::vector<int> order{3, 1, 0, 2};
  CHECK(ordering_from_text(ordering_to_text(order)) == order);
  try {
    tournament_from_matrix("3\n010\n001\n110\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(tree_from_text("3\n0 1\n1 x\n"), ParseError);
  CHECK_THROWS_AS(tree_from_text("3\n0 1\n1 0\n"), ParseError);
}
