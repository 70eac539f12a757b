#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "unavoid/dispatch.hpp"
#include "unavoid/enumerate.hpp"
#include "unavoid/generate.hpp"
#include "unavoid/oracle.hpp"

using namespace unavoid;

TEST_CASE("bounds for named trees") {
  auto s = best_bound(out_star(3));
  CHECK(s[Algorithm::arborescence] == 4);
  CHECK(s.minimum == 4);
  CHECK(s.chosen == Algorithm::arborescence);
  auto p = best_bound(directed_path(5));
  CHECK(p.minimum == 5);
  CHECK(p[Algorithm::few_leaves] == 6);
  CHECK_FALSE(p[Algorithm::very_few_leaves].has_value());
  auto ap = best_bound(antidirected_path(5));
  CHECK_FALSE(ap[Algorithm::arborescence].has_value());
  CHECK(ap.minimum == *ap[Algorithm::few_leaves]);
}

TEST_CASE("combined bound is the ceiling of 21n/8 - 47/16") {
  for (int n = 2; n <= 60; ++n) CHECK(combined_bound(n) == static_cast<long>(std::ceil(21.0 * n / 8 - 47.0 / 16)));
}

TEST_CASE("best bound never exceeds the combined bound") {
  auto levels = all_oriented_trees(9);
  for (int n = 2; n <= 9; ++n)
    for (const auto& a : levels[n]) {
      auto r = best_bound(a);
      CHECK(r.minimum <= combined_bound(n));
      CHECK(*r[r.chosen] == r.minimum);
      for (auto alg : all_algorithms)
        if (r[alg]) CHECK(*r[alg] >= n);
    }
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_tree(2 + static_cast<int>(rng() % 19), rng);
    CHECK(best_bound(a).minimum <= combined_bound(a.size()));
  }
}

TEST_CASE("dispatcher refuses tournaments below every bound") {
  CHECK_THROWS_AS(embed_auto(out_star(3), rotational(3, {1})), NoGuaranteeError);
  auto p3 = directed_path(3);
  CHECK(is_valid_embedding(p3, rotational(3, {1}), embed_auto(p3, rotational(3, {1}))));
}

TEST_CASE("dispatcher succeeds at the minimum bound") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = random_tree(1 + static_cast<int>(rng() % 22), rng);
    auto r = best_bound(a);
    auto t = random_tournament(static_cast<int>(r.minimum), rng());
    Algorithm used;
    auto phi = embed_auto(a, t, &used);
    CHECK(is_valid_embedding(a, t, phi));
    CHECK(*r[used] == r.minimum);
  }
}

TEST_CASE("constructive embeddings are confirmed by the oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_tree(2 + static_cast<int>(rng() % 6), rng);
    auto t = random_tournament(static_cast<int>(best_bound(a).minimum), rng());
    CHECK(is_valid_embedding(a, t, embed_auto(a, t)));
    CHECK(brute_force_embed(a, t).has_value());
  }
}
