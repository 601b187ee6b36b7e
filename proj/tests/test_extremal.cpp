#include <doctest.h>

#include <algorithm>

#include "permint/extremal.hpp"
#include "permint/rng.hpp"

using namespace permint;

namespace {

PermFamily random_family(int n, double p, std::uint64_t stream) {
  SplitMix64 rng(211, stream);
  std::vector<Permutation> members;
  for_each_permutation(n, [&](const Permutation& sigma) {
    if (rng.next_bernoulli(p)) members.push_back(sigma);
  });
  return PermFamily(n, std::move(members));
}

bool subset_of(const PermFamily& a, const PermFamily& b) {
  return std::all_of(a.members().begin(), a.members().end(),
                     [&](const Permutation& m) { return b.contains(m); });
}

}  // namespace

TEST_SUITE("extremal") {

TEST_CASE("best_response anchors") {
  CHECK(best_response(PermFamily(4), 2) == PermFamily::full(4));

  // full family, t=1: a relative derangement exists for every tau
  for (int n : {3, 4}) {
    CHECK(best_response(PermFamily::full(n), 1).empty());
  }

  const auto u = umvirate(4, {1, 2}, {1, 2});
  const auto br = best_response(u, 2);
  CHECK(subset_of(u, br));
  CHECK(is_cross_free(u, br, 2).cross_free);
}

TEST_CASE("best_response is antitone") {
  for (std::uint64_t stream = 0; stream < 4; ++stream) {
    auto small = random_family(4, 0.2, stream);
    const auto extra = random_family(4, 0.3, stream + 100);
    auto members = small.members();
    for (const auto& m : extra.members()) members.push_back(m);
    const PermFamily large(4, std::move(members));
    for (int t = 1; t <= 4; ++t) {
      CHECK(subset_of(best_response(large, t), best_response(small, t)));
    }
  }
}

TEST_CASE("closure anchors") {
  // t = n: two permutations cannot agree on exactly n-1 positions
  const auto [f3, g3] = closure(PermFamily(3, {Permutation::identity(3)}), 3);
  CHECK(f3 == PermFamily::full(3));
  CHECK(g3 == PermFamily::full(3));

  const auto [f4, g4] = closure(PermFamily(4, {Permutation::identity(4)}), 2);
  CHECK(best_response(f4, 2) == g4);
  CHECK(best_response(g4, 2) == f4);
  CHECK(f4.contains(Permutation::identity(4)));
  CHECK(is_cross_free(f4, g4, 2).cross_free);

  const auto u = umvirate(4, {1, 2}, {3, 4});
  const auto [fu, gu] = closure(u, 2);
  CHECK(subset_of(u, fu));
  CHECK(is_cross_free(fu, gu, 2).cross_free);
}

TEST_CASE("exact_max_product anchors") {
  CHECK(exact_max_product(3, 3).product == 36);
  CHECK(exact_max_product(3, 3).status == SearchStatus::exact_optimal);
  CHECK(exact_max_product(2, 1).product == 1);

  const auto r42 = exact_max_product(4, 2);
  CHECK(r42.product >= 4);  // umvirate pair floor
  CHECK(r42.witness_bound == 4);
  CHECK(is_cross_free(r42.F, r42.G, 2).cross_free);
  CHECK(r42.F.size() * r42.G.size() == r42.product);

  CHECK_THROWS_AS(exact_max_product(5, 2), CapacityError);
  CHECK_THROWS_AS(exact_max_product(3, 4), DomainError);
}

TEST_CASE("branch and bound reproduces the oracle") {
  for (int n = 1; n <= 4; ++n) {
    for (int t = 1; t <= n; ++t) {
      const auto ex = exact_max_product(n, t);
      const auto bb = bb_max_product(n, t, 400000000ULL);
      CHECK(bb.product == ex.product);
      CHECK(bb.status == SearchStatus::exact_optimal);
      CHECK(is_cross_free(bb.F, bb.G, t).cross_free);
    }
  }
}

TEST_CASE("branch and bound at n=5 stays above the umvirate floor") {
  const auto r = bb_max_product(5, 2, 10000000ULL);
  CHECK(r.product >= 36);
  CHECK(is_cross_free(r.F, r.G, 2).cross_free);
  if (r.status == SearchStatus::lower_bound) CHECK(r.explored >= 10000000ULL);
  CHECK_THROWS_AS(bb_max_product(7, 2, 100), CapacityError);
}

TEST_CASE("density_bump_search anchors") {
  const auto dict = umvirate(4, {1}, {1});
  const auto hit = density_bump_search(dict, dict, 2.0);
  REQUIRE(hit.has_value());
  CHECK(*hit == std::make_pair(1, 1));

  const auto full = PermFamily::full(4);
  CHECK_FALSE(density_bump_search(full, full, 1.5).has_value());

  // block structure: scan oracle over all 16 restrictions
  const auto [f, g] = antipodal_pair(4);
  const auto res = density_bump_search(f, g, 1.5);
  std::optional<std::pair<int, int>> oracle;
  for (int i = 1; i <= 4 && !oracle; ++i) {
    for (int j = 1; j <= 4 && !oracle; ++j) {
      std::size_t ca = 0;
      std::size_t cb = 0;
      for (const auto& m : f.members()) {
        if (m(i) == j) ++ca;
      }
      for (const auto& m : g.members()) {
        if (m(i) == j) ++cb;
      }
      if (static_cast<double>(ca) * 4.0 > 1.5 * static_cast<double>(f.size()) &&
          static_cast<double>(cb) * 4.0 > 1.5 * static_cast<double>(g.size())) {
        oracle = std::make_pair(i, j);
      }
    }
  }
  CHECK(res == oracle);

  CHECK_THROWS_AS(density_bump_search(PermFamily(4), full, 1.0), DomainError);
}

TEST_CASE("reduction round on a common-restricted umvirate pair") {
  const RestrictionPattern common(std::vector<std::pair<int, int>>{{1, 1}, {2, 2}});
  const auto base = umvirate(5, {1, 2}, {1, 2});
  const auto a = base.restricted(common);
  const auto b = base.restricted(common);
  // outside {1,2} the pair never agrees on exactly 2 positions
  CHECK(is_cross_free_excluding(a, b, 3, common.inputs()).cross_free);

  auto state = make_reduction_state(a, b, 3, common);
  const auto next = reduction_round(state, 2.0, 2);
  CHECK_FALSE(next.terminated_empty);
  CHECK(next.t_remaining == 2);
  CHECK_FALSE(next.A.empty());
  CHECK_FALSE(next.B.empty());
  CHECK(next.common.size() == 3);
  CHECK(is_cross_free_excluding(next.A, next.B, 2, next.common.inputs()).cross_free);
}

TEST_CASE("reduction round signals empty families") {
  const PermFamily a(4, {Permutation::identity(4)});
  auto state = make_reduction_state(a, PermFamily(4), 2);
  const auto next = reduction_round(state, 2.0, 2);
  CHECK(next.terminated_empty);
}

TEST_CASE("reduction round with gamma barely above 1 skips the global step on full families") {
  const auto full = PermFamily::full(5);
  auto state = make_reduction_state(full, full, 2);
  const auto next = reduction_round(state, 1.0001, 2);
  REQUIRE(next.history.size() == 1);
  CHECK(next.history[0].a_global.empty());
  CHECK(next.history[0].common_step.has_value());
}

TEST_CASE("reduction state validation") {
  CHECK_THROWS_AS(make_reduction_state(PermFamily(4), PermFamily(5), 2), DimensionError);
  const RestrictionPattern common(std::vector<std::pair<int, int>>{{1, 1}});
  // common pattern must actually be fixed in both subspaces
  CHECK_THROWS_AS(make_reduction_state(PermFamily::full(4), PermFamily::full(4), 2, common),
                  PatternError);
  auto state = make_reduction_state(PermFamily::full(4), PermFamily::full(4), 1);
  CHECK_THROWS_AS(reduction_round(state, 2.0, 2), DomainError);
}

}  // TEST_SUITE
