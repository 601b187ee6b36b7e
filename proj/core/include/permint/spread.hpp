#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "permint/family.hpp"

namespace permint {

// A uniformly weighted collection of subsets of {1..N}. For families embedded
// from permutations, N = n^2 and every set holds one element per block
// {(i-1)n+1 .. in}.
class CubeFamily {
 public:
  CubeFamily(int ground_size, std::vector<std::vector<int>> sets);

  int ground_size() const { return ground_size_; }
  std::size_t size() const { return sets_.size(); }
  bool empty() const { return sets_.empty(); }
  const std::vector<std::vector<int>>& sets() const { return sets_; }

  // Bit mask of set k over the ground set, little-endian 64-bit words.
  const std::vector<std::uint64_t>& mask(std::size_t k) const { return masks_[k]; }
  int words() const { return words_; }

  // Mean |S| over members; the measure-size term of the coverage bound.
  double mean_set_size() const;

 private:
  int ground_size_;
  int words_;
  std::vector<std::vector<int>> sets_;
  std::vector<std::vector<std::uint64_t>> masks_;
};

// sigma |-> {(i-1)*n + sigma(i) : i in [n]}. Injective; two images share
// exactly intersection_size(sigma,tau) elements.
CubeFamily embed(const PermFamily& F);

struct SpreadReport {
  double r = 1.0;
  std::vector<int> witness;  // the X attaining the minimum, sorted
  int depth_cap = 0;
};

// r = min over nonempty X contained in at least one member, |X| <= depth_cap,
// of (containment fraction)^(-1/|X|). Witnesses beyond the cap may exist, so
// r is certified only at the probed depth. Ties resolve to the
// lexicographically smallest (|X|, elements) witness.
SpreadReport spreadness(const CubeFamily& C, int depth_cap);

struct CoverageEstimate {
  int m = 0;
  double delta = 0.0;
  long samples = 0;
  long hits = 0;
  double estimate = 0.0;
  double spread_r = 1.0;   // r used for the bound (depth-3 probe)
  double mu0_size = 0.0;   // mean member size
  double theorem_bound = 0.0;
  bool bound_vacuous = false;  // r*delta <= 1: bound undefined, reported as vacuous
  std::uint64_t seed = 0;
};

// Draws `samples` independent (m*delta)-random subsets W of the ground set
// and counts those containing at least one member. Bit-reproducible for a
// given seed: sample s uses RNG stream s.
CoverageEstimate coverage_mc(const CubeFamily& C, int m, double delta, long samples,
                             std::uint64_t seed);

struct CrossOneResult {
  bool cross_one_intersecting = true;
  // Indices into A.sets() / B.sets() of a disjoint pair, present iff false.
  std::optional<std::pair<std::size_t, std::size_t>> disjoint_witness;
};

// True iff every pair (a in A, b in B) shares at least one element.
CrossOneResult cross_one_check(const CubeFamily& A, const CubeFamily& B);

struct SplitExperimentReport {
  long trials = 0;
  std::uint64_t seed = 0;
  long a_hits = 0;     // trials with some a subset of S
  long b_hits = 0;     // trials with some b subset of the complement of S
  long both_hits = 0;  // conjunction; witnesses a disjoint cross pair
  double a_freq = 0.0;
  double b_freq = 0.0;
  double both_freq = 0.0;
  // (trial, index into A, index into B) for the first conjunction seen.
  std::optional<std::tuple<long, std::size_t, std::size_t>> witness;
};

// Samples half-random subsets S and records how often some member of A fits
// inside S while some member of B fits inside the complement. Any conjunction
// certifies a disjoint pair across the families.
SplitExperimentReport disjoint_split_experiment(const CubeFamily& A, const CubeFamily& B,
                                                long trials, std::uint64_t seed);

}  // namespace permint
