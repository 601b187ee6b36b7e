#include "permint/family.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace permint {

namespace {

void check_family_capacity(std::uint64_t count) {
  const std::uint64_t cap = factorial_u64(kEnumerationCapN);
  if (count > cap) {
    throw CapacityError("family enumeration of " + std::to_string(count) +
                        " permutations exceeds cap " + std::to_string(cap));
  }
}

}  // namespace

PermFamily::PermFamily(int n) : n_(n) {
  if (n < 1) throw DomainError("PermFamily: n must be positive");
  if (n > kRankCapN) throw CapacityError("PermFamily: n exceeds rank range");
}

PermFamily::PermFamily(int n, std::vector<Permutation> members, std::optional<SubSpace> space)
    : n_(n), space_(std::move(space)) {
  if (n < 1) throw DomainError("PermFamily: n must be positive");
  if (n > kRankCapN) throw CapacityError("PermFamily: n exceeds rank range");
  if (space_ && space_->n != n) throw DimensionError("PermFamily: subspace n mismatch");
  for (auto& m : members) {
    if (m.n() != n) throw DimensionError("PermFamily: member n mismatch");
    if (space_ && !space_->fixed.matches(m)) {
      throw PatternError("PermFamily: member outside the tagged subspace");
    }
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  members_ = std::move(members);
  ranks_.reserve(members_.size());
  for (const auto& m : members_) ranks_.insert(m.rank());
}

PermFamily PermFamily::full(int n) {
  std::vector<Permutation> all;
  for_each_permutation(n, [&](const Permutation& p) { all.push_back(p); });
  return PermFamily(n, std::move(all));
}

bool PermFamily::contains(const Permutation& sigma) const {
  if (sigma.n() != n_) return false;
  return contains_rank(sigma.rank());
}

std::uint64_t PermFamily::ambient_size() const {
  return space_ ? space_->size() : factorial_u64(n_);
}

double PermFamily::density() const {
  return static_cast<double>(size()) / static_cast<double>(ambient_size());
}

PermFamily PermFamily::restricted(const RestrictionPattern& p) const {
  for (int i : p.inputs()) {
    if (i > n_) throw PatternError("restricted: pattern input exceeds n");
  }
  for (int j : p.outputs()) {
    if (j > n_) throw PatternError("restricted: pattern output exceeds n");
  }
  SubSpace target{n_, space_ ? space_->fixed.concat(p) : p};
  std::vector<Permutation> kept;
  for (const auto& m : members_) {
    if (p.matches(m)) kept.push_back(m);
  }
  return PermFamily(n_, std::move(kept), target);
}

PermFamily restrict_family(const PermFamily& F, const RestrictionPattern& p) {
  return F.restricted(p);
}

CrossFreeResult is_cross_free(const PermFamily& F, const PermFamily& G, int t) {
  return is_cross_free_excluding(F, G, t, {});
}

CrossFreeResult is_cross_free_excluding(const PermFamily& F, const PermFamily& G, int t,
                                        const std::vector<int>& excluded_inputs) {
  if (F.n() != G.n()) throw DimensionError("is_cross_free: n mismatch");
  if (t < 1 || t > F.n()) throw DomainError("is_cross_free: t outside 1..n");
  for (const auto& sigma : F.members()) {
    for (const auto& tau : G.members()) {
      const int agree = excluded_inputs.empty()
                            ? intersection_size(sigma, tau)
                            : intersection_size_excluding(sigma, tau, excluded_inputs);
      if (agree == t - 1) {
        return CrossFreeResult{false, std::make_pair(sigma, tau)};
      }
    }
  }
  return CrossFreeResult{};
}

PermFamily umvirate(int n, const std::vector<int>& I, const std::vector<int>& J) {
  if (I.size() != J.size()) throw PatternError("umvirate: tuple lengths differ");
  if (static_cast<int>(I.size()) > n) throw PatternError("umvirate: more constraints than n");
  const RestrictionPattern p = RestrictionPattern::from_tuples(I, J);
  const int t = p.size();
  check_family_capacity(factorial_u64(n - t));

  std::vector<int> free_in;
  std::vector<int> free_out;
  for (int i = 1; i <= n; ++i) {
    if (!p.fixes_input(i)) free_in.push_back(i);
  }
  for (int j = 1; j <= n; ++j) {
    if (!p.fixes_output(j)) free_out.push_back(j);
  }
  std::vector<Permutation> members;
  std::vector<int> assign(free_out.begin(), free_out.end());
  std::sort(assign.begin(), assign.end());
  do {
    std::vector<int> img(static_cast<std::size_t>(n), 0);
    for (const auto& [i, j] : p.pairs()) img[static_cast<std::size_t>(i) - 1] = j;
    for (std::size_t k = 0; k < free_in.size(); ++k) {
      img[static_cast<std::size_t>(free_in[k]) - 1] = assign[k];
    }
    members.emplace_back(std::move(img));
  } while (std::next_permutation(assign.begin(), assign.end()));
  return PermFamily(n, std::move(members));
}

std::pair<PermFamily, PermFamily> antipodal_pair(int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("antipodal_pair: n must be even and >= 2");
  const int h = n / 2;
  const std::uint64_t half_fact = factorial_u64(h);
  check_family_capacity(half_fact * half_fact);

  std::vector<std::vector<int>> half_perms;  // permutations of {1..h}
  {
    std::vector<int> base(static_cast<std::size_t>(h));
    std::iota(base.begin(), base.end(), 1);
    do {
      half_perms.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
  }

  // swap=false: both halves land on themselves; swap=true: halves exchange.
  auto build = [&](bool swap) {
    std::vector<Permutation> members;
    for (const auto& lo : half_perms) {
      for (const auto& hi : half_perms) {
        std::vector<int> img(static_cast<std::size_t>(n));
        for (int i = 0; i < h; ++i) {
          img[static_cast<std::size_t>(i)] = swap ? lo[static_cast<std::size_t>(i)] + h
                                                  : lo[static_cast<std::size_t>(i)];
          img[static_cast<std::size_t>(h + i)] = swap ? hi[static_cast<std::size_t>(i)]
                                                      : hi[static_cast<std::size_t>(i)] + h;
        }
        members.emplace_back(std::move(img));
      }
    }
    return PermFamily(n, std::move(members));
  };
  return {build(false), build(true)};
}

PermFamily unseparated_pairs_family(int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("unseparated_pairs_family: n must be even");
  const int h = n / 2;
  check_family_capacity(factorial_u64(h) << h);

  std::vector<Permutation> members;
  std::vector<int> block_perm(static_cast<std::size_t>(h));
  std::iota(block_perm.begin(), block_perm.end(), 1);
  do {
    // Each block {2k-1,2k} maps onto block block_perm[k], straight or flipped.
    for (std::uint32_t flips = 0; flips < (1u << h); ++flips) {
      std::vector<int> img(static_cast<std::size_t>(n));
      for (int k = 0; k < h; ++k) {
        const int target = block_perm[static_cast<std::size_t>(k)];
        const bool flip = (flips >> k) & 1u;
        img[static_cast<std::size_t>(2 * k)] = 2 * target - (flip ? 0 : 1);
        img[static_cast<std::size_t>(2 * k + 1)] = 2 * target - (flip ? 1 : 0);
      }
      members.emplace_back(std::move(img));
    }
  } while (std::next_permutation(block_perm.begin(), block_perm.end()));
  return PermFamily(n, std::move(members));
}

PermFamily involution_family(int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("involution_family: n must be even");
  check_family_capacity(factorial_u64(n));
  std::vector<Permutation> members;
  std::vector<int> img(static_cast<std::size_t>(n), 0);
  // Backtracking over perfect matchings of {1..n}.
  auto rec = [&](auto&& self, int depth) -> void {
    int i = 0;
    while (i < n && img[static_cast<std::size_t>(i)] != 0) ++i;
    if (i == n) {
      members.emplace_back(img);
      return;
    }
    for (int j = i + 1; j < n; ++j) {
      if (img[static_cast<std::size_t>(j)] != 0) continue;
      img[static_cast<std::size_t>(i)] = j + 1;
      img[static_cast<std::size_t>(j)] = i + 1;
      self(self, depth + 1);
      img[static_cast<std::size_t>(i)] = 0;
      img[static_cast<std::size_t>(j)] = 0;
    }
  };
  rec(rec, 0);
  return PermFamily(n, std::move(members));
}

mpz_class derangement_number(int k) {
  if (k < 0) throw DomainError("derangement_number: negative k");
  mpz_class prev2 = 1;  // D_0
  if (k == 0) return prev2;
  mpz_class prev1 = 0;  // D_1
  for (int i = 2; i <= k; ++i) {
    mpz_class cur = mpz_class(i - 1) * (prev1 + prev2);
    prev2 = prev1;
    prev1 = cur;
  }
  return prev1;
}

mpz_class count_with_fixed_points(int n, int j) {
  if (n < 1) throw DomainError("count_with_fixed_points: n must be positive");
  if (j < 0 || j > n) throw DomainError("count_with_fixed_points: j outside 0..n");
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(j));
  return binom * derangement_number(n - j);
}

}  // namespace permint
