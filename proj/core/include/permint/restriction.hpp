#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permint/permutation.hpp"

namespace permint {

// A partial injection i -> j on {1..n}: all inputs distinct, all outputs
// distinct. Pairs are kept sorted by input, which makes the pattern a
// canonical value type (comparisons order by size, then inputs, then outputs).
class RestrictionPattern {
 public:
  RestrictionPattern() = default;
  explicit RestrictionPattern(std::vector<std::pair<int, int>> pairs);
  static RestrictionPattern from_tuples(const std::vector<int>& inputs,
                                        const std::vector<int>& outputs);

  int size() const { return static_cast<int>(pairs_.size()); }
  bool empty() const { return pairs_.empty(); }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

  bool fixes_input(int i) const;
  bool fixes_output(int j) const;
  std::optional<int> image_of(int i) const;

  std::vector<int> inputs() const;
  std::vector<int> outputs() const;

  // True iff sigma extends this pattern.
  bool matches(const Permutation& sigma) const;

  // Union of the two patterns. Duplicated pairs collapse; a conflicting
  // assignment (same input or same output, different partner) is a
  // PatternError.
  RestrictionPattern concat(const RestrictionPattern& other) const;

  // Tie-break order used by maximizer scans: (size, inputs, outputs).
  std::strong_ordering operator<=>(const RestrictionPattern& other) const;
  bool operator==(const RestrictionPattern& other) const { return pairs_ == other.pairs_; }

  std::string to_string() const;  // "1->2,4->3"; "-" when empty

 private:
  std::vector<std::pair<int, int>> pairs_;
};

// The set of permutations of S_n extending `fixed`; it has (n-k)! elements
// where k = |fixed|.
struct SubSpace {
  int n = 0;
  RestrictionPattern fixed;

  int free_count() const { return n - fixed.size(); }
  std::uint64_t size() const { return factorial_u64(free_count()); }

  bool operator==(const SubSpace&) const = default;
};

// Order-preserving identification of the subspace with S_{n-k}: unfixed input
// positions (ascending) become 1..n-k, unfixed output values (ascending)
// become 1..n-k. Lexicographic order of extensions is preserved.
Permutation compress_to_subspace(const SubSpace& space, const Permutation& sigma);
Permutation expand_from_subspace(const SubSpace& space, const Permutation& reduced);

}  // namespace permint
