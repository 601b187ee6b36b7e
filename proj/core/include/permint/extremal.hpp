#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permint/family.hpp"

namespace permint {

// Largest n the exhaustive all-subsets oracle accepts (2^(n!) subsets).
inline constexpr int kExactSearchCapN = 4;
// Largest n branch-and-bound accepts.
inline constexpr int kBranchBoundCapN = 6;

enum class SearchStatus { exact_optimal, lower_bound };

struct SearchResult {
  int n = 0;
  int t = 0;
  PermFamily F;
  PermFamily G;
  std::uint64_t product = 0;        // |F| * |G|, exact
  SearchStatus status = SearchStatus::lower_bound;
  std::uint64_t explored = 0;       // nodes visited
  std::uint64_t witness_bound = 0;  // ((n-t)!)^2, always feasible via an umvirate pair
};

// {tau : for all sigma in F, |sigma cap tau| != t-1}. Antitone in F.
PermFamily best_response(const PermFamily& F, int t);

// Iterates mutual best responses from F to a fixed point (F*, G*) with
// G* = best_response(F*, t), F* = best_response(G*, t), F subset of F*.
std::pair<PermFamily, PermFamily> closure(const PermFamily& F, int t);

// Exhaustive scan of every F subset of S_n with G = best_response(F, t)
// maintained incrementally through per-permutation forbidden masks.
// n <= kExactSearchCapN.
SearchResult exact_max_product(int n, int t);

// Branch and bound over include/exclude decisions on permutations of F,
// ordered by descending forbidden-degree, bounded by
// (|F| + |undecided|) * |best_response(F)|. The identity is pinned into F
// (left-translation symmetry), and the umvirate pair seeds the incumbent.
// Status is exact_optimal iff the tree was exhausted within node_budget.
SearchResult bb_max_product(int n, int t, std::uint64_t node_budget);

// Lexicographically smallest (i,j), outside the coordinates fixed by either
// family's subspace, with |A_{i->j}| > |A| * m_thresh / n and likewise for B;
// nullopt when none exists.
std::optional<std::pair<int, int>> density_bump_search(const PermFamily& A, const PermFamily& B,
                                                       double m_thresh);

struct ReductionRound {
  RestrictionPattern a_global;       // pattern applied to A in the global step
  RestrictionPattern b_global;       // pattern applied to the pruned B
  std::optional<std::pair<int, int>> common_step;
  double density_a_after = 0.0;
  double density_b_after = 0.0;
};

struct ReductionState {
  PermFamily A;
  PermFamily B;
  int t_remaining = 0;
  RestrictionPattern common;  // restrictions applied to both sides
  std::vector<ReductionRound> history;
  bool terminated_empty = false;

  double density_a() const { return A.density(); }
  double density_b() const { return B.density(); }
};

// The starting state. `common` must be part of both families' subspaces; the
// pair must avoid exactly t_remaining-1 agreements outside the common
// coordinates.
ReductionState make_reduction_state(PermFamily A, PermFamily B, int t_remaining,
                                    RestrictionPattern common = {});

// One iteration of the degree-lowering process:
//   (a) global restriction of A (parameter gamma) giving S->x;
//   (b) prune B to the members avoiding x on S;
//   (c) global restriction of the pruned B giving S'->x';
//   (d) prune A symmetrically;
//   (e) apply the common restriction (i,j) maximizing the smaller of the two
//       density ratios, ties lexicographic.
// Decrements t_remaining. If any step empties a family the state returns with
// terminated_empty set instead of failing. Postcondition (checked): if the
// input pair avoided exactly t_remaining-1 agreements outside `common`, the
// output avoids exactly t_remaining-2 outside the extended common pattern.
ReductionState reduction_round(const ReductionState& state, double gamma, int depth_cap = 3);

}  // namespace permint
