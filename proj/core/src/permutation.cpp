#include "permint/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace permint {

std::uint64_t factorial_u64(int n) {
  if (n < 0 || n > kRankCapN) {
    throw CapacityError("factorial_u64: n=" + std::to_string(n) + " outside [0," +
                        std::to_string(kRankCapN) + "]");
  }
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int m = static_cast<int>(images_.size());
  if (m == 0) throw DomainError("Permutation: n must be positive");
  std::vector<bool> seen(static_cast<std::size_t>(m) + 1, false);
  for (int v : images_) {
    if (v < 1 || v > m) {
      throw DomainError("Permutation: image " + std::to_string(v) + " outside 1.." +
                        std::to_string(m));
    }
    if (seen[static_cast<std::size_t>(v)]) {
      throw DomainError("Permutation: image " + std::to_string(v) + " repeated");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  if (n < 1) throw DomainError("identity: n must be positive");
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  return Permutation(std::move(img));
}

Permutation Permutation::from_rank(int n, std::uint64_t rank) {
  if (n < 1 || n > kRankCapN) throw CapacityError("from_rank: n outside 1..20");
  if (rank >= factorial_u64(n)) throw DomainError("from_rank: rank out of range");
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> img;
  img.reserve(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    const std::uint64_t f = factorial_u64(i);
    const auto idx = static_cast<std::size_t>(rank / f);
    rank %= f;
    img.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return Permutation(std::move(img));
}

std::uint64_t Permutation::rank() const {
  const int m = n();
  if (m > kRankCapN) throw CapacityError("rank: n exceeds 64-bit factorial range");
  std::uint64_t r = 0;
  for (int i = 0; i < m; ++i) {
    int smaller_later = 0;
    for (int j = i + 1; j < m; ++j) {
      if (images_[static_cast<std::size_t>(j)] < images_[static_cast<std::size_t>(i)]) {
        ++smaller_later;
      }
    }
    r += static_cast<std::uint64_t>(smaller_later) * factorial_u64(m - 1 - i);
  }
  return r;
}

int intersection_size(const Permutation& a, const Permutation& b) {
  if (a.n() != b.n()) {
    throw DimensionError("intersection_size: n mismatch (" + std::to_string(a.n()) + " vs " +
                         std::to_string(b.n()) + ")");
  }
  int count = 0;
  for (int i = 1; i <= a.n(); ++i) {
    if (a(i) == b(i)) ++count;
  }
  return count;
}

int intersection_size_excluding(const Permutation& a, const Permutation& b,
                                const std::vector<int>& excluded_inputs) {
  if (a.n() != b.n()) throw DimensionError("intersection_size_excluding: n mismatch");
  int count = 0;
  for (int i = 1; i <= a.n(); ++i) {
    if (a(i) == b(i) &&
        std::find(excluded_inputs.begin(), excluded_inputs.end(), i) == excluded_inputs.end()) {
      ++count;
    }
  }
  return count;
}

void for_each_permutation(int n, const std::function<void(const Permutation&)>& visit) {
  if (n < 1) throw DomainError("for_each_permutation: n must be positive");
  if (n > kEnumerationCapN) {
    throw CapacityError("for_each_permutation: n=" + std::to_string(n) + " above cap " +
                        std::to_string(kEnumerationCapN));
  }
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  do {
    visit(Permutation(img));
  } while (std::next_permutation(img.begin(), img.end()));
}

}  // namespace permint
