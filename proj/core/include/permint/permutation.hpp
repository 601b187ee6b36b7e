#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

#include "permint/errors.hpp"

namespace permint {

// Full S_n materialization is allowed up to this n (8! = 40320 elements).
inline constexpr int kEnumerationCapN = 8;
// Largest n for which lexicographic ranks fit into 64 bits.
inline constexpr int kRankCapN = 20;

std::uint64_t factorial_u64(int n);  // n <= 20

// A bijection on {1..n}. Position i (one-based) stores sigma(i).
// Immutable after construction; construction validates bijectivity.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  // Inverse of rank(): unrank via the factorial number system.
  static Permutation from_rank(int n, std::uint64_t rank);

  int n() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i) - 1]; }
  const std::vector<int>& images() const { return images_; }

  // Lexicographic rank in S_n, in [0, n!). Requires n <= kRankCapN.
  std::uint64_t rank() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

// |{i : a(i) = b(i)}|. Throws DimensionError on mismatched n.
int intersection_size(const Permutation& a, const Permutation& b);

// Same count restricted to positions outside `excluded_inputs` (one-based).
int intersection_size_excluding(const Permutation& a, const Permutation& b,
                                const std::vector<int>& excluded_inputs);

// Visits all of S_n in lexicographic order. Throws CapacityError for
// n > kEnumerationCapN.
void for_each_permutation(int n, const std::function<void(const Permutation&)>& visit);

}  // namespace permint
