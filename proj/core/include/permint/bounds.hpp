#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace permint {
namespace bounds {

mpz_class factorial(int n);
mpz_class binomial(int n, int k);  // 0 when k < 0 or k > n

// 4^m * ((n-m-t)!)^2, the induction-shaped product bound. 0 <= m <= n-t.
mpz_class main_bound(int n, int t, int m);

// ((n/2)!)^4 for even n: the product achieved by the block/antiblock pair.
mpz_class antipodal_product(int n);

// Smallest t in [1,n] with antipodal_product(n) > ((n-t)!)^2; n when no such
// t exists (degenerate small n).
int crossover_t(int n);

// (1 - (100t)^-t) * ((n-t)!)^2, exact.
mpq_class stability_threshold(int n, int t);
// Single-family variant: (1 - 1/(2*(100t)^t)) * (n-t)!.
mpq_class stability_threshold_single(int n, int t);

// (n/2)! * 2^(n/2): permutations keeping all pairs {2k-1,2k} unseparated.
mpz_class unseparated_size(int n);
// (n-1)!!: fixed-point-free involutions.
mpz_class involution_size(int n);

// Probability that a uniform permutation of S_n has exactly j fixed points,
// as an exact rational: C(n,j) * D_{n-j} / n!.
mpq_class fixed_point_probability(int n, int j);

// Number of tau in the canonical r-umvirate of S_n (tau(i) = r+i for i <= r,
// so tau disagrees with the identity on the r fixed coordinates) that have no
// fixed point at all; inclusion-exclusion over the n-2r positions that can be
// fixed. Requires 2r <= n.
mpz_class agreement_base_count(int n, int r);

// Exhaustive version of the same count, with exactly j agreements against the
// identity. n <= 8 (the (n-r)!-element umvirate is enumerated).
mpz_class agreement_count_exact(int n, int r, int j);

// f(n,r,j) = C(n-2r,j) * f(n-j,r,0) * (n-r-j)! / (n-r)!, exact; the base
// f(.,r,0) comes from agreement_base_count. Zero when j > n-2r.
mpq_class agreement_prob_formula(int n, int r, int j);

// Preconditions under which the closed-form lower bound
// f(n,r,j) >= 1/(4*2^j*j!) is claimed: n >= 20, r <= n/6, (n-j)-r >= 10.
bool agreement_bound_applicable(int n, int r, int j);

// log2 of an exact value, for display columns only.
double log2_mpz(const mpz_class& z);
double log2_mpq(const mpq_class& q);

struct BoundRow {
  std::string label;
  std::string params;
  std::string value;    // exact decimal integer or "p/q"
  bool has_log2 = false;
  double log2_value = 0.0;
  bool applicable = true;  // range flag for inequality rows; formulas stay exact regardless
  std::string note;
};

struct BoundTable {
  std::vector<BoundRow> rows;
};

// Rows m = 0..n-t of the induction bound plus the stability thresholds and
// the exactly-(t-1)-fixed-points probability.
BoundTable main_bound_table(int n, int t);

// Antipodal product vs ((n-t)!)^2 around the crossover, plus the unseparated
// and involution family sizes (even n).
BoundTable tightness_table(int n);

}  // namespace bounds
}  // namespace permint
