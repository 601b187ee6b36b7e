#pragma once

#include <gmpxx.h>

#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "permint/restriction.hpp"

namespace permint {

// A finite set of permutations with a shared n, optionally tagged with the
// SubSpace it was restricted into. Members are stored as full-length
// permutations sorted by lexicographic rank; a rank hash gives O(1)
// membership. Immutable after construction.
class PermFamily {
 public:
  PermFamily() : PermFamily(1) {}  // empty family on S_1
  explicit PermFamily(int n);
  PermFamily(int n, std::vector<Permutation> members,
             std::optional<SubSpace> space = std::nullopt);

  // All of S_n. Throws CapacityError for n > kEnumerationCapN.
  static PermFamily full(int n);

  int n() const { return n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Permutation>& members() const { return members_; }
  const std::optional<SubSpace>& space() const { return space_; }

  bool contains(const Permutation& sigma) const;
  bool contains_rank(std::uint64_t rank) const { return ranks_.count(rank) > 0; }

  // |F| relative to its ambient space: (n-k)! with k fixed coordinates,
  // n! for an untagged family.
  double density() const;
  std::uint64_t ambient_size() const;

  // Members extending `p`, tagged with the concatenated SubSpace.
  PermFamily restricted(const RestrictionPattern& p) const;

  bool operator==(const PermFamily& other) const {
    return n_ == other.n_ && members_ == other.members_;
  }

 private:
  int n_;
  std::vector<Permutation> members_;
  std::optional<SubSpace> space_;
  std::unordered_set<std::uint64_t> ranks_;
};

struct CrossFreeResult {
  bool cross_free = true;
  // A pair agreeing on exactly t-1 positions, present iff !cross_free.
  std::optional<std::pair<Permutation, Permutation>> violation;
};

// True iff no sigma in F, tau in G agree on exactly t-1 positions.
CrossFreeResult is_cross_free(const PermFamily& F, const PermFamily& G, int t);

// Same predicate counting agreements only outside `excluded_inputs`
// (the commonly fixed coordinates of a reduction process); forbidden
// agreement count is t-1.
CrossFreeResult is_cross_free_excluding(const PermFamily& F, const PermFamily& G, int t,
                                        const std::vector<int>& excluded_inputs);

// {sigma : sigma(I[l]) = J[l] for all l}; size (n-|I|)!. Entries within I and
// within J must be distinct.
PermFamily umvirate(int n, const std::vector<int>& I, const std::vector<int>& J);

// Members of F extending p (free-function spelling of PermFamily::restricted).
PermFamily restrict_family(const PermFamily& F, const RestrictionPattern& p);

// The block-preserving / block-swapping pair: F fixes {1..n/2} and its
// complement setwise, G exchanges them. All cross pairs have intersection 0;
// |F| = |G| = ((n/2)!)^2.
std::pair<PermFamily, PermFamily> antipodal_pair(int n);

// All permutations keeping every pair {2k-1,2k} unseparated; size
// (n/2)! * 2^(n/2). Enumerated, so (n/2)! * 2^(n/2) must be within the cap.
PermFamily unseparated_pairs_family(int n);

// All fixed-point-free involutions of S_n; size (n-1)!!.
PermFamily involution_family(int n);

// D_k by the recurrence D_k = (k-1)(D_{k-1} + D_{k-2}), D_0 = 1, D_1 = 0.
mpz_class derangement_number(int k);

// C(n,j) * D_{n-j}: permutations of S_n with exactly j fixed points.
mpz_class count_with_fixed_points(int n, int j);

}  // namespace permint
