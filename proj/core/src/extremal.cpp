#include "permint/extremal.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "permint/spectral.hpp"

namespace permint {

namespace {

std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> all;
  all.reserve(factorial_u64(n));
  for_each_permutation(n, [&](const Permutation& p) { all.push_back(p); });
  return all;
}

// q agrees with p on exactly t-1 positions: q is forbidden once p is in F.
std::vector<std::vector<std::uint64_t>> forbidden_masks(const std::vector<Permutation>& all,
                                                        int t, int words) {
  const std::size_t count = all.size();
  std::vector<std::vector<std::uint64_t>> masks(
      count, std::vector<std::uint64_t>(static_cast<std::size_t>(words), 0));
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a; b < count; ++b) {
      if (intersection_size(all[a], all[b]) == t - 1) {
        masks[a][b / 64] |= 1ULL << (b % 64);
        masks[b][a / 64] |= 1ULL << (a % 64);
      }
    }
  }
  return masks;
}

std::uint64_t popcount_words(const std::vector<std::uint64_t>& w) {
  std::uint64_t c = 0;
  for (std::uint64_t x : w) c += static_cast<std::uint64_t>(std::popcount(x));
  return c;
}

std::uint64_t square_factorial(int k) {
  const std::uint64_t f = factorial_u64(k);
  return f * f;
}

PermFamily family_from_mask(int n, const std::vector<Permutation>& all,
                            const std::vector<std::uint64_t>& mask) {
  std::vector<Permutation> members;
  for (std::size_t k = 0; k < all.size(); ++k) {
    if ((mask[k / 64] >> (k % 64)) & 1ULL) members.push_back(all[k]);
  }
  return PermFamily(n, std::move(members));
}

}  // namespace

PermFamily best_response(const PermFamily& F, int t) {
  const int n = F.n();
  if (t < 1 || t > n) throw DomainError("best_response: t outside 1..n");
  std::vector<Permutation> members;
  for_each_permutation(n, [&](const Permutation& tau) {
    for (const auto& sigma : F.members()) {
      if (intersection_size(sigma, tau) == t - 1) return;
    }
    members.push_back(tau);
  });
  return PermFamily(n, std::move(members));
}

std::pair<PermFamily, PermFamily> closure(const PermFamily& F, int t) {
  if (F.empty()) throw DomainError("closure: empty family");
  PermFamily cur_f = F;
  PermFamily cur_g = best_response(cur_f, t);
  while (true) {
    PermFamily next_f = best_response(cur_g, t);
    PermFamily next_g = best_response(next_f, t);
    if (next_f == cur_f && next_g == cur_g) break;
    cur_f = std::move(next_f);
    cur_g = std::move(next_g);
  }
  return {std::move(cur_f), std::move(cur_g)};
}

SearchResult exact_max_product(int n, int t) {
  if (n < 1 || n > kExactSearchCapN) {
    throw CapacityError("exact_max_product: n outside 1.." + std::to_string(kExactSearchCapN));
  }
  if (t < 1 || t > n) throw DomainError("exact_max_product: t outside 1..n");

  const auto all = all_permutations(n);
  const int count = static_cast<int>(all.size());  // <= 24: masks fit one word
  std::vector<std::uint64_t> forbid(static_cast<std::size_t>(count), 0);
  for (int a = 0; a < count; ++a) {
    for (int b = 0; b < count; ++b) {
      if (intersection_size(all[static_cast<std::size_t>(a)], all[static_cast<std::size_t>(b)]) ==
          t - 1) {
        forbid[static_cast<std::size_t>(a)] |= 1ULL << b;
      }
    }
  }
  const std::uint64_t full = count == 64 ? ~0ULL : (1ULL << count) - 1;

  std::uint64_t best = 0;
  std::uint64_t best_f = 0;
  std::uint64_t best_g = full;
  std::uint64_t nodes = 0;
  // Depth-first over include/exclude of each permutation; g is the best
  // response to the chosen prefix, narrowed incrementally.
  auto rec = [&](auto&& self, int idx, std::uint64_t f_mask, int f_size, std::uint64_t g_mask)
      -> void {
    ++nodes;
    if (idx == count) {
      const std::uint64_t product = static_cast<std::uint64_t>(f_size) *
                                    static_cast<std::uint64_t>(std::popcount(g_mask));
      if (product > best) {
        best = product;
        best_f = f_mask;
        best_g = g_mask;
      }
      return;
    }
    self(self, idx + 1, f_mask | (1ULL << idx), f_size + 1,
         g_mask & ~forbid[static_cast<std::size_t>(idx)]);
    self(self, idx + 1, f_mask, f_size, g_mask);
  };
  rec(rec, 0, 0, 0, full);

  SearchResult result;
  result.n = n;
  result.t = t;
  result.product = best;
  result.status = SearchStatus::exact_optimal;
  result.explored = nodes;
  result.witness_bound = square_factorial(n - t);
  std::vector<std::uint64_t> fm{best_f};
  std::vector<std::uint64_t> gm{best_g};
  result.F = family_from_mask(n, all, fm);
  result.G = family_from_mask(n, all, gm);
  return result;
}

namespace {

struct BranchBound {
  int words;
  const std::vector<std::vector<std::uint64_t>>* forbid;
  std::vector<int> order;  // permutation indices, descending forbidden-degree
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool exhausted = true;

  std::uint64_t best = 0;
  std::vector<std::uint64_t> best_f;
  std::vector<std::uint64_t> best_g;

  void run(std::vector<std::uint64_t>& f_mask, int f_size, std::vector<std::uint64_t>& g_mask,
           int depth) {
    if (nodes >= budget) {
      exhausted = false;
      return;
    }
    ++nodes;
    const std::uint64_t g_size = popcount_words(g_mask);
    const std::uint64_t incumbent =
        static_cast<std::uint64_t>(f_size) * g_size;
    if (incumbent > best) {
      best = incumbent;
      best_f = f_mask;
      best_g = g_mask;
    }
    if (depth == static_cast<int>(order.size())) return;
    const std::uint64_t remaining = static_cast<std::uint64_t>(order.size() - depth);
    if ((static_cast<std::uint64_t>(f_size) + remaining) * g_size <= best) return;

    const int p = order[static_cast<std::size_t>(depth)];
    // include p
    std::vector<std::uint64_t> g_next(g_mask);
    for (int w = 0; w < words; ++w) {
      g_next[static_cast<std::size_t>(w)] &=
          ~(*forbid)[static_cast<std::size_t>(p)][static_cast<std::size_t>(w)];
    }
    f_mask[static_cast<std::size_t>(p) / 64] |= 1ULL << (p % 64);
    run(f_mask, f_size + 1, g_next, depth + 1);
    f_mask[static_cast<std::size_t>(p) / 64] &= ~(1ULL << (p % 64));
    // exclude p
    run(f_mask, f_size, g_mask, depth + 1);
  }
};

}  // namespace

SearchResult bb_max_product(int n, int t, std::uint64_t node_budget) {
  if (n < 1 || n > kBranchBoundCapN) {
    throw CapacityError("bb_max_product: n outside 1.." + std::to_string(kBranchBoundCapN));
  }
  if (t < 1 || t > n) throw DomainError("bb_max_product: t outside 1..n");
  if (node_budget == 0) throw ParameterError("bb_max_product: zero node budget");

  const auto all = all_permutations(n);
  const int count = static_cast<int>(all.size());
  const int words = (count + 63) / 64;
  const auto forbid = forbidden_masks(all, t, words);

  BranchBound search;
  search.words = words;
  search.forbid = &forbid;
  search.budget = node_budget;

  // Identity pinned into F: every nonempty F is equivalent under left
  // translation to one containing the identity, and the empty F scores 0.
  const int id_index = 0;  // identity is lexicographically first
  search.order.reserve(static_cast<std::size_t>(count) - 1);
  for (int p = 0; p < count; ++p) {
    if (p != id_index) search.order.push_back(p);
  }
  std::vector<std::uint64_t> degree(static_cast<std::size_t>(count));
  for (int p = 0; p < count; ++p) degree[static_cast<std::size_t>(p)] = popcount_words(forbid[static_cast<std::size_t>(p)]);
  std::stable_sort(search.order.begin(), search.order.end(), [&](int a, int b) {
    return degree[static_cast<std::size_t>(a)] > degree[static_cast<std::size_t>(b)];
  });

  // Incumbent: the t-umvirate pair, always feasible.
  {
    std::vector<int> fixed(static_cast<std::size_t>(t));
    std::iota(fixed.begin(), fixed.end(), 1);
    const PermFamily u = umvirate(n, fixed, fixed);
    std::vector<std::uint64_t> mask(static_cast<std::size_t>(words), 0);
    for (const auto& m : u.members()) {
      const std::uint64_t r = m.rank();
      mask[r / 64] |= 1ULL << (r % 64);
    }
    search.best = static_cast<std::uint64_t>(u.size()) * static_cast<std::uint64_t>(u.size());
    search.best_f = mask;
    search.best_g = mask;
  }

  std::vector<std::uint64_t> f_mask(static_cast<std::size_t>(words), 0);
  f_mask[static_cast<std::size_t>(id_index) / 64] |= 1ULL << (id_index % 64);
  std::vector<std::uint64_t> g_mask(static_cast<std::size_t>(words), 0);
  for (int p = 0; p < count; ++p) {
    if (!((forbid[static_cast<std::size_t>(id_index)][static_cast<std::size_t>(p) / 64] >>
           (p % 64)) &
          1ULL)) {
      g_mask[static_cast<std::size_t>(p) / 64] |= 1ULL << (p % 64);
    }
  }
  search.run(f_mask, 1, g_mask, 0);

  SearchResult result;
  result.n = n;
  result.t = t;
  result.product = search.best;
  result.status = search.exhausted ? SearchStatus::exact_optimal : SearchStatus::lower_bound;
  result.explored = search.nodes;
  result.witness_bound = square_factorial(n - t);
  result.F = family_from_mask(n, all, search.best_f);
  result.G = family_from_mask(n, all, search.best_g);
  return result;
}

std::optional<std::pair<int, int>> density_bump_search(const PermFamily& A, const PermFamily& B,
                                                       double m_thresh) {
  if (A.empty() || B.empty()) throw DomainError("density_bump_search: empty family");
  if (A.n() != B.n()) throw DimensionError("density_bump_search: n mismatch");
  const int n = A.n();
  auto fixed_in = [&](int i) {
    return (A.space() && A.space()->fixed.fixes_input(i)) ||
           (B.space() && B.space()->fixed.fixes_input(i));
  };
  auto fixed_out = [&](int j) {
    return (A.space() && A.space()->fixed.fixes_output(j)) ||
           (B.space() && B.space()->fixed.fixes_output(j));
  };
  for (int i = 1; i <= n; ++i) {
    if (fixed_in(i)) continue;
    for (int j = 1; j <= n; ++j) {
      if (fixed_out(j)) continue;
      std::size_t cnt_a = 0;
      for (const auto& s : A.members()) {
        if (s(i) == j) ++cnt_a;
      }
      if (static_cast<double>(cnt_a) * static_cast<double>(n) <=
          m_thresh * static_cast<double>(A.size())) {
        continue;
      }
      std::size_t cnt_b = 0;
      for (const auto& s : B.members()) {
        if (s(i) == j) ++cnt_b;
      }
      if (static_cast<double>(cnt_b) * static_cast<double>(n) >
          m_thresh * static_cast<double>(B.size())) {
        return std::make_pair(i, j);
      }
    }
  }
  return std::nullopt;
}

namespace {

// Members of F whose value on every pattern input differs from the pattern
// output. The family stays in its own space; only membership shrinks.
PermFamily prune_avoiding(const PermFamily& F, const RestrictionPattern& p) {
  std::vector<Permutation> kept;
  for (const auto& m : F.members()) {
    bool ok = true;
    for (const auto& [i, j] : p.pairs()) {
      if (m(i) == j) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(m);
  }
  return PermFamily(F.n(), std::move(kept), F.space());
}

bool cross_free_outside_common(const PermFamily& A, const PermFamily& B, int forbidden,
                               const RestrictionPattern& common) {
  if (forbidden < 0) return true;
  const auto excluded = common.inputs();
  for (const auto& sigma : A.members()) {
    for (const auto& tau : B.members()) {
      if (intersection_size_excluding(sigma, tau, excluded) == forbidden) return false;
    }
  }
  return true;
}

}  // namespace

ReductionState make_reduction_state(PermFamily A, PermFamily B, int t_remaining,
                                    RestrictionPattern common) {
  if (A.n() != B.n()) throw DimensionError("make_reduction_state: n mismatch");
  if (t_remaining < 1) throw DomainError("make_reduction_state: t_remaining must be >= 1");
  for (const auto& [i, j] : common.pairs()) {
    auto check = [&](const PermFamily& fam, const char* side) {
      if (!fam.space() || fam.space()->fixed.image_of(i) != std::optional<int>(j)) {
        throw PatternError(std::string("make_reduction_state: common pair not fixed in ") + side);
      }
    };
    check(A, "A");
    check(B, "B");
  }
  ReductionState state;
  state.A = std::move(A);
  state.B = std::move(B);
  state.t_remaining = t_remaining;
  state.common = std::move(common);
  return state;
}

ReductionState reduction_round(const ReductionState& state, double gamma, int depth_cap) {
  if (state.t_remaining < 2) throw DomainError("reduction_round: t_remaining must be >= 2");
  if (state.terminated_empty) throw DomainError("reduction_round: state already terminated");
  if (state.A.empty() || state.B.empty()) {
    ReductionState out = state;
    out.terminated_empty = true;
    return out;
  }

  const bool input_ok = cross_free_outside_common(state.A, state.B, state.t_remaining - 1,
                                                  state.common);

  ReductionState out = state;
  ReductionRound round;

  // (a) global restriction of A
  auto [pattern_a, a1] = global_restriction(state.A, gamma, depth_cap);
  round.a_global = pattern_a;
  // (b) B keeps only members avoiding x on S; stays in its space
  PermFamily b1 = prune_avoiding(state.B, pattern_a);
  if (a1.empty() || b1.empty()) {
    out.terminated_empty = true;
    out.history.push_back(round);
    return out;
  }
  // (c) global restriction of the pruned B
  auto [pattern_b, b2] = global_restriction(b1, gamma, depth_cap);
  round.b_global = pattern_b;
  // (d) prune A symmetrically
  PermFamily a2 = prune_avoiding(a1, pattern_b);
  if (a2.empty() || b2.empty()) {
    out.terminated_empty = true;
    out.history.push_back(round);
    return out;
  }

  // (e) common restriction maximizing the smaller density ratio
  const int n = a2.n();
  auto fixed_in = [&](int i) {
    return a2.space()->fixed.fixes_input(i) || b2.space()->fixed.fixes_input(i) ||
           pattern_a.fixes_input(i) || pattern_b.fixes_input(i);
  };
  auto fixed_out = [&](int j) {
    return a2.space()->fixed.fixes_output(j) || b2.space()->fixed.fixes_output(j);
  };
  double best_min_ratio = 0.0;
  std::optional<std::pair<int, int>> best_ij;
  const double free_a = static_cast<double>(a2.space()->free_count());
  const double free_b = static_cast<double>(b2.space()->free_count());
  for (int i = 1; i <= n; ++i) {
    if (fixed_in(i)) continue;
    for (int j = 1; j <= n; ++j) {
      if (fixed_out(j)) continue;
      std::size_t cnt_a = 0;
      for (const auto& s : a2.members()) {
        if (s(i) == j) ++cnt_a;
      }
      std::size_t cnt_b = 0;
      for (const auto& s : b2.members()) {
        if (s(i) == j) ++cnt_b;
      }
      const double ratio_a =
          static_cast<double>(cnt_a) * free_a / static_cast<double>(a2.size());
      const double ratio_b =
          static_cast<double>(cnt_b) * free_b / static_cast<double>(b2.size());
      const double min_ratio = std::min(ratio_a, ratio_b);
      if (min_ratio > best_min_ratio) {
        best_min_ratio = min_ratio;
        best_ij = std::make_pair(i, j);
      }
    }
  }
  if (!best_ij) {
    out.terminated_empty = true;
    out.history.push_back(round);
    return out;
  }
  round.common_step = best_ij;
  const RestrictionPattern step(std::vector<std::pair<int, int>>{*best_ij});
  out.A = a2.restricted(step);
  out.B = b2.restricted(step);
  out.common = out.common.concat(step);
  out.t_remaining = state.t_remaining - 1;
  round.density_a_after = out.A.density();
  round.density_b_after = out.B.density();
  out.history.push_back(round);

  if (out.A.empty() || out.B.empty()) {
    out.terminated_empty = true;
    return out;
  }
  if (input_ok &&
      !cross_free_outside_common(out.A, out.B, out.t_remaining - 1, out.common)) {
    throw Error("reduction_round: cross-free degree not preserved");
  }
  return out;
}

}  // namespace permint
