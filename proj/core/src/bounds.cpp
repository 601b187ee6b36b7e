#include "permint/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "permint/errors.hpp"
#include "permint/family.hpp"
#include "permint/permutation.hpp"

namespace permint {
namespace bounds {

mpz_class factorial(int n) {
  if (n < 0) throw DomainError("factorial: negative n");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

mpz_class binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

mpz_class main_bound(int n, int t, int m) {
  if (t < 1) throw DomainError("main_bound: t must be >= 1");
  if (m < 0 || m > n - t) throw DomainError("main_bound: m outside 0..n-t");
  mpz_class four_m;
  mpz_ui_pow_ui(four_m.get_mpz_t(), 4, static_cast<unsigned long>(m));
  const mpz_class f = factorial(n - m - t);
  return four_m * f * f;
}

mpz_class antipodal_product(int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("antipodal_product: n must be even");
  const mpz_class h = factorial(n / 2);
  return h * h * h * h;
}

int crossover_t(int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("crossover_t: n must be even");
  const mpz_class product = antipodal_product(n);
  for (int t = 1; t <= n; ++t) {
    const mpz_class f = factorial(n - t);
    if (product > f * f) return t;
  }
  return n;
}

namespace {

mpz_class pow_100t_t(int t) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(100) * static_cast<unsigned long>(t),
                static_cast<unsigned long>(t));
  return p;
}

}  // namespace

mpq_class stability_threshold(int n, int t) {
  if (t < 1 || t > n) throw DomainError("stability_threshold: t outside 1..n");
  const mpz_class denom = pow_100t_t(t);
  mpq_class factor(denom - 1, denom);
  factor.canonicalize();
  const mpz_class f = factorial(n - t);
  return factor * mpq_class(f * f);
}

mpq_class stability_threshold_single(int n, int t) {
  if (t < 1 || t > n) throw DomainError("stability_threshold_single: t outside 1..n");
  const mpz_class denom = 2 * pow_100t_t(t);
  mpq_class factor(denom - 1, denom);
  factor.canonicalize();
  return factor * mpq_class(factorial(n - t));
}

mpz_class unseparated_size(int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("unseparated_size: n must be even");
  mpz_class two_h;
  mpz_ui_pow_ui(two_h.get_mpz_t(), 2, static_cast<unsigned long>(n / 2));
  return factorial(n / 2) * two_h;
}

mpz_class involution_size(int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("involution_size: n must be even");
  mpz_class v = 1;
  for (int k = n - 1; k >= 1; k -= 2) v *= k;
  return v;
}

mpq_class fixed_point_probability(int n, int j) {
  mpq_class p(count_with_fixed_points(n, j), factorial(n));
  p.canonicalize();
  return p;
}

mpz_class agreement_base_count(int n, int r) {
  if (r < 0) throw DomainError("agreement_base_count: negative r");
  if (2 * r > n) throw DomainError("agreement_base_count: need 2r <= n");
  // tau sends [r] to {r+1..2r}; the rest is a bijection from {r+1..n} to
  // [r] u {2r+1..n}. Fixed points can appear only on the n-2r positions
  // {2r+1..n}; subtract them by inclusion-exclusion.
  const int movable = n - 2 * r;
  mpz_class total = 0;
  for (int k = 0; k <= movable; ++k) {
    const mpz_class term = binomial(movable, k) * factorial(n - r - k);
    if (k % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

mpz_class agreement_count_exact(int n, int r, int j) {
  if (n > kEnumerationCapN) throw CapacityError("agreement_count_exact: n above cap 8");
  if (r < 0 || 2 * r > n) throw DomainError("agreement_count_exact: need 0 <= 2r <= n");
  if (j < 0) throw DomainError("agreement_count_exact: negative j");

  // Canonical umvirate: tau(i) = r+i for i in [r]; remaining inputs {r+1..n}
  // biject onto [r] u {2r+1..n}. Agreements with the identity are fixed points.
  std::vector<int> codomain;
  for (int v = 1; v <= r; ++v) codomain.push_back(v);
  for (int v = 2 * r + 1; v <= n; ++v) codomain.push_back(v);
  std::sort(codomain.begin(), codomain.end());

  long count = 0;
  do {
    int agreements = 0;
    for (std::size_t k = 0; k < codomain.size(); ++k) {
      const int input = r + 1 + static_cast<int>(k);
      if (codomain[k] == input) ++agreements;
    }
    if (agreements == j) ++count;
  } while (std::next_permutation(codomain.begin(), codomain.end()));
  return mpz_class(count);
}

mpq_class agreement_prob_formula(int n, int r, int j) {
  if (r < 0 || 2 * r > n) throw DomainError("agreement_prob_formula: need 0 <= 2r <= n");
  if (j < 0) throw DomainError("agreement_prob_formula: negative j");
  if (j > n - 2 * r) return mpq_class(0);  // no room for j fixed points
  // The fixed-point-free base term enters as a probability times
  // (n-r-j)!, which is exactly the count agreement_base_count returns.
  const mpz_class numer = binomial(n - 2 * r, j) * agreement_base_count(n - j, r);
  mpq_class q(numer, factorial(n - r));
  q.canonicalize();
  return q;
}

bool agreement_bound_applicable(int n, int r, int j) {
  return n >= 20 && 6 * r <= n && (n - j) - r >= 10;
}

double log2_mpz(const mpz_class& z) {
  if (z <= 0) throw DomainError("log2_mpz: nonpositive value");
  signed long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

double log2_mpq(const mpq_class& q) {
  if (q <= 0) throw DomainError("log2_mpq: nonpositive value");
  return log2_mpz(q.get_num()) - log2_mpz(q.get_den());
}

namespace {

BoundRow int_row(std::string label, std::string params, const mpz_class& v, std::string note = "") {
  BoundRow row;
  row.label = std::move(label);
  row.params = std::move(params);
  row.value = v.get_str();
  if (v > 0) {
    row.has_log2 = true;
    row.log2_value = log2_mpz(v);
  }
  row.note = std::move(note);
  return row;
}

BoundRow rat_row(std::string label, std::string params, const mpq_class& v, std::string note = "") {
  BoundRow row;
  row.label = std::move(label);
  row.params = std::move(params);
  row.value = v.get_str();
  if (v > 0) {
    row.has_log2 = true;
    row.log2_value = log2_mpq(v);
  }
  row.note = std::move(note);
  return row;
}

}  // namespace

BoundTable main_bound_table(int n, int t) {
  if (t < 1 || t > n) throw DomainError("main_bound_table: t outside 1..n");
  BoundTable table;
  for (int m = 0; m <= n - t; ++m) {
    table.rows.push_back(int_row("main_bound", "n=" + std::to_string(n) + ",t=" + std::to_string(t) +
                                                   ",m=" + std::to_string(m),
                                 main_bound(n, t, m)));
  }
  table.rows.push_back(rat_row("stability_threshold",
                               "n=" + std::to_string(n) + ",t=" + std::to_string(t),
                               stability_threshold(n, t)));
  table.rows.push_back(rat_row("stability_threshold_single",
                               "n=" + std::to_string(n) + ",t=" + std::to_string(t),
                               stability_threshold_single(n, t)));
  table.rows.push_back(rat_row("fixed_point_probability",
                               "n=" + std::to_string(n) + ",j=" + std::to_string(t - 1),
                               fixed_point_probability(n, t - 1),
                               "probability of exactly t-1 fixed points"));
  return table;
}

BoundTable tightness_table(int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("tightness_table: n must be even");
  BoundTable table;
  const mpz_class prod = antipodal_product(n);
  table.rows.push_back(int_row("antipodal_product", "n=" + std::to_string(n), prod));
  const int tc = crossover_t(n);
  BoundRow cross;
  cross.label = "crossover_t";
  cross.params = "n=" + std::to_string(n);
  cross.value = std::to_string(tc);
  table.rows.push_back(cross);
  for (int t : {std::max(1, tc - 1), tc}) {
    const mpz_class f = factorial(n - t);
    table.rows.push_back(int_row("umvirate_product_bound",
                                 "n=" + std::to_string(n) + ",t=" + std::to_string(t), f * f,
                                 prod > f * f ? "below antipodal product" : "at or above antipodal product"));
  }
  table.rows.push_back(int_row("unseparated_size", "n=" + std::to_string(n), unseparated_size(n)));
  table.rows.push_back(int_row("involution_size", "n=" + std::to_string(n), involution_size(n)));
  return table;
}

}  // namespace bounds
}  // namespace permint
