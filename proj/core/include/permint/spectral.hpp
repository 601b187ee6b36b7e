#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "permint/family.hpp"

namespace permint {

// Largest effective domain (n minus fixed coordinates) the projection-based
// decomposition accepts: 7! = 5040 points.
inline constexpr int kDecomposeCapN = 7;

// A real-valued function on S_n, or on a sub-permutation space P_{n,k}.
// Values are indexed by the lexicographic rank of the (compressed) domain
// element; the domain size is (n-k)!.
struct SnFunction {
  int n = 0;
  std::optional<SubSpace> space;
  std::vector<double> values;

  SnFunction(int n_, std::vector<double> values_, std::optional<SubSpace> space_ = std::nullopt);

  // Indicator of F on F's own (sub)space.
  static SnFunction indicator(const PermFamily& F);

  // n minus the number of fixed coordinates: the m of the S_m the domain is
  // identified with.
  int effective_n() const { return space ? space->free_count() : n; }
  std::size_t domain_size() const { return values.size(); }

  double mean() const;
  double norm2_sq() const;  // (1/m!) sum of squares, uniform measure
};

struct LevelDecomposition {
  // components[d] is the projection onto exact level d; components sum to
  // the input and are pairwise orthogonal.
  std::vector<SnFunction> components;
  std::vector<double> weights;  // squared 2-norms per level
};

// Orthogonal split along V_{<=0} subset V_{<=1} subset ... where V_{<=d} is
// spanned by the d-coordinate umvirate indicators.
LevelDecomposition decompose(const SnFunction& f);

// Squared 2-norm of the exact-level-d component only (cheaper than a full
// decomposition when d is small).
double level_weight(const SnFunction& f, int d);

struct LevelOneCoefficients {
  int m = 0;
  std::vector<double> a;  // m x m, row-major; a[(i-1)*m + (j-1)]

  double at(int i, int j) const {
    return a[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(m) +
             static_cast<std::size_t>(j - 1)];
  }
  // (1/(m-1)) * sum a_ij^2, which equals the level-1 weight.
  double level_one_weight() const;
};

// a_ij = (1 - 1/m)(E[f_{i->j}] - E[f]); sum_ij a_ij x_{i->j} reproduces the
// exact level-1 component of f.
LevelOneCoefficients level_one_coeffs(const SnFunction& f);

// Variance over uniform (i,j) of E[f_{i->j}] - E[f]; equals weights[1]/(m-1).
double restriction_variance(const SnFunction& f);

struct GlobalnessReport {
  int depth_cap = 0;
  double gamma_density = 1.0;  // max (density ratio)^(1/|p|)
  double gamma_l2 = 1.0;       // max (density ratio)^(1/(2|p|)) = sqrt of the above
  RestrictionPattern witness;  // lexicographically smallest maximizer
};

// Scans every restriction pattern of size 1..depth_cap on the family's free
// coordinates. depth_cap <= min(n, 4).
GlobalnessReport globalness(const PermFamily& A, int depth_cap);

// The pattern p (|p| <= depth_cap, ties lexicographic) maximizing
// density(A_p) / gamma^|p|, together with the restricted family. Guarantees
// density(A_p) >= gamma^|p| * density(A); checked before returning.
std::pair<RestrictionPattern, PermFamily> global_restriction(const PermFamily& A, double gamma,
                                                             int depth_cap);

// Implied constant of the level-d bound:
//   weights[d] / (mu^2 * (gamma^4 * log(1/mu) / d)^d),
// with mu = density(A) and natural log. Reported, never asserted.
double level_d_audit(const PermFamily& A, int d, double gamma);

}  // namespace permint
