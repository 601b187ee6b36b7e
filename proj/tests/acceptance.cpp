// Acceptance suite: runs every quantitative contract of the toolkit at its
// pinned tolerance and prints one PASS/FAIL line per criterion. Exits
// nonzero when any criterion fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "permint/bounds.hpp"
#include "permint/extremal.hpp"
#include "permint/rng.hpp"
#include "permint/spectral.hpp"
#include "permint/spread.hpp"

using namespace permint;
namespace pb = permint::bounds;

namespace {

constexpr double kTol = 1e-8;

struct Criterion {
  int id;
  std::string name;
  std::function<std::string(std::string&)> body;  // returns failure text, fills info
};

PermFamily random_indicator_family(int n, double p, std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 rng(seed, stream);
  std::vector<Permutation> members;
  for_each_permutation(n, [&](const Permutation& sigma) {
    if (rng.next_bernoulli(p)) members.push_back(sigma);
  });
  return PermFamily(n, std::move(members));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// 1. Level-1 formula identity on 50 pseudo-random indicators over S_5.
std::string criterion_level_one(std::string& info) {
  double max_pointwise = 0.0;
  double max_weight_rel = 0.0;
  int used = 0;
  for (std::uint64_t stream = 0; used < 50; ++stream) {
    const auto fam = random_indicator_family(5, 0.5, 1001, stream);
    if (fam.empty() || fam.size() == 120) continue;
    ++used;
    const auto f = SnFunction::indicator(fam);
    const auto dec = decompose(f);
    const auto coeffs = level_one_coeffs(f);
    std::size_t idx = 0;
    for_each_permutation(5, [&](const Permutation& sigma) {
      double acc = 0.0;
      for (int i = 1; i <= 5; ++i) acc += coeffs.at(i, sigma(i));
      max_pointwise = std::max(max_pointwise, std::abs(acc - dec.components[1].values[idx]));
      ++idx;
    });
    const double w_proj = dec.weights[1];
    const double w_formula = coeffs.level_one_weight();
    const double rel = std::abs(w_proj - w_formula) / std::max({w_proj, w_formula, 1e-300});
    max_weight_rel = std::max(max_weight_rel, rel);
  }
  info = "max pointwise dev " + fmt(max_pointwise) + ", max weight rel dev " +
         fmt(max_weight_rel) + " over 50 indicators";
  if (max_pointwise > kTol) return "pointwise deviation above 1e-8";
  if (max_weight_rel > kTol) return "weight identity above 1e-8 relative";
  return "";
}

// 2. Parseval and cross-level orthogonality on S_4 and S_5.
std::string criterion_parseval(std::string& info) {
  double max_parseval_rel = 0.0;
  double max_cross = 0.0;
  for (int n : {4, 5}) {
    for (int rep = 0; rep < 20; ++rep) {
      SplitMix64 rng(2002, static_cast<std::uint64_t>(n * 1000 + rep));
      std::vector<double> vals(factorial_u64(n));
      for (double& v : vals) v = 2.0 * rng.next_unit() - 1.0;
      const SnFunction f(n, std::move(vals));
      const auto dec = decompose(f);
      double total = 0.0;
      for (double w : dec.weights) total += w;
      max_parseval_rel =
          std::max(max_parseval_rel, std::abs(total - f.norm2_sq()) / f.norm2_sq());
      for (std::size_t a = 0; a < dec.components.size(); ++a) {
        for (std::size_t b = a + 1; b < dec.components.size(); ++b) {
          double ip = 0.0;
          for (std::size_t k = 0; k < f.values.size(); ++k) {
            ip += dec.components[a].values[k] * dec.components[b].values[k];
          }
          max_cross = std::max(max_cross, std::abs(ip / static_cast<double>(f.values.size())));
        }
      }
    }
  }
  info = "max Parseval rel dev " + fmt(max_parseval_rel) + ", max cross inner product " +
         fmt(max_cross) + " over 40 functions";
  if (max_parseval_rel > kTol) return "Parseval above 1e-8 relative";
  if (max_cross > kTol) return "cross-level inner product above 1e-8";
  return "";
}

// 3. Variance identity on the same kind of test set.
std::string criterion_variance(std::string& info) {
  double max_rel = 0.0;
  for (int n : {4, 5}) {
    for (int rep = 0; rep < 20; ++rep) {
      SplitMix64 rng(3003, static_cast<std::uint64_t>(n * 1000 + rep));
      std::vector<double> vals(factorial_u64(n));
      for (double& v : vals) v = 2.0 * rng.next_unit() - 1.0;
      const SnFunction f(n, std::move(vals));
      const double lhs = restriction_variance(f) * static_cast<double>(n - 1);
      const double rhs = level_weight(f, 1);
      max_rel = std::max(max_rel, std::abs(lhs - rhs) / std::max({lhs, rhs, 1e-300}));
    }
  }
  info = "max relative deviation " + fmt(max_rel) + " over 40 functions";
  return max_rel > kTol ? "variance identity above 1e-8 relative" : "";
}

// 4. Agreement-count formula vs exhaustive enumeration, exact integers.
std::string criterion_agreement(std::string& info) {
  long checked = 0;
  for (int r = 0; r <= 3; ++r) {
    for (int n = std::max(1, 2 * r); n <= 8; ++n) {
      mpz_class row_sum = 0;
      for (int j = 0; j <= n; ++j) {
        const mpz_class exact = pb::agreement_count_exact(n, r, j);
        row_sum += exact;
        const mpq_class predicted =
            pb::agreement_prob_formula(n, r, j) * mpq_class(pb::factorial(n - r));
        if (predicted.get_den() != 1 || predicted.get_num() != exact) {
          return "formula != count at n=" + std::to_string(n) + " r=" + std::to_string(r) +
                 " j=" + std::to_string(j);
        }
        if (j <= r) ++checked;
      }
      if (row_sum != pb::factorial(n - r)) {
        return "row sum != (n-r)! at n=" + std::to_string(n) + " r=" + std::to_string(r);
      }
    }
  }
  info = std::to_string(checked) + " (n,r,j<=r) triples exact, all row sums exact";
  return "";
}

// 5. Tightness instantiation at n = 1024 with exact integers.
std::string criterion_tightness(std::string& info) {
  const int n = 1024;
  const mpz_class product = pb::antipodal_product(n);
  const double log2n = std::log2(static_cast<double>(n));
  const int t_hi = static_cast<int>(std::ceil(1.1 * n / log2n));
  const int t_lo = static_cast<int>(std::floor(0.5 * n / log2n));
  const mpz_class hi_f = pb::factorial(n - t_hi);
  const mpz_class lo_f = pb::factorial(n - t_lo);
  info = "t_hi=" + std::to_string(t_hi) + " t_lo=" + std::to_string(t_lo);
  if (!(product > hi_f * hi_f)) return "antipodal product not above ((n-t)!)^2 at t_hi";
  if (!(product <= lo_f * lo_f)) return "antipodal product not below ((n-t)!)^2 at t_lo";
  return "";
}

// 6. Extremal oracle equivalence over the full n <= 4 grid.
std::string criterion_oracle(std::string& info) {
  std::string products;
  for (int n = 1; n <= 4; ++n) {
    for (int t = 1; t <= n; ++t) {
      const auto ex = exact_max_product(n, t);
      const auto bb = bb_max_product(n, t, 400000000ULL);
      if (ex.product != bb.product) {
        return "value mismatch at n=" + std::to_string(n) + " t=" + std::to_string(t);
      }
      if (ex.status != SearchStatus::exact_optimal || bb.status != SearchStatus::exact_optimal) {
        return "status mismatch at n=" + std::to_string(n) + " t=" + std::to_string(t);
      }
      if (!is_cross_free(ex.F, ex.G, t).cross_free || !is_cross_free(bb.F, bb.G, t).cross_free) {
        return "witness fails the independent predicate";
      }
      if (ex.product < ex.witness_bound) return "optimum below the umvirate floor";
      if (n == 3 && t == 3 && ex.product != 36) return "degenerate case (3,3) != 36";
      products += (products.empty() ? "" : ",") + std::to_string(ex.product);
    }
  }
  info = "products " + products;
  return "";
}

// 7. Umvirate and construction invariants.
std::string criterion_constructions(std::string& info) {
  for (int n = 2; n <= 6; ++n) {
    for (int t = 1; t <= std::min(3, n); ++t) {
      // all umvirates: input combinations x output arrangements
      std::vector<int> comb(static_cast<std::size_t>(t));
      std::function<bool(int, int)> choose = [&](int pos, int start) -> bool {
        if (pos == t) {
          std::vector<int> outs(static_cast<std::size_t>(t));
          std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
          std::function<bool(int)> assign = [&](int k) -> bool {
            if (k == t) {
              const auto u = umvirate(n, comb, outs);
              if (u.size() != factorial_u64(n - t)) return false;
              for (const auto& a : u.members()) {
                for (const auto& b : u.members()) {
                  if (intersection_size(a, b) < t) return false;
                }
              }
              return true;
            }
            for (int j = 1; j <= n; ++j) {
              if (used[static_cast<std::size_t>(j)]) continue;
              used[static_cast<std::size_t>(j)] = true;
              outs[static_cast<std::size_t>(k)] = j;
              if (!assign(k + 1)) return false;
              used[static_cast<std::size_t>(j)] = false;
            }
            return true;
          };
          return assign(0);
        }
        for (int i = start; i <= n; ++i) {
          comb[static_cast<std::size_t>(pos)] = i;
          if (!choose(pos + 1, i + 1)) return false;
        }
        return true;
      };
      if (!choose(0, 1)) {
        return "umvirate invariant fails at n=" + std::to_string(n) + " t=" + std::to_string(t);
      }
    }
  }
  for (int n = 2; n <= 6; n += 2) {
    const auto [f, g] = antipodal_pair(n);
    for (const auto& a : f.members()) {
      for (const auto& b : g.members()) {
        if (intersection_size(a, b) != 0) return "antipodal cross intersection nonzero";
      }
    }
  }
  const auto unsep = unseparated_pairs_family(4);
  if (unsep.size() != 8) return "unseparated family at n=4 has size != 8";
  if (pb::unseparated_size(4) != 8) return "(n/2)!*2^(n/2) != 8 at n=4";
  const auto inv = involution_family(4);
  if (inv.size() != 3) return "fixed-point-free involutions at n=4 != 3";
  if (pb::involution_size(4) != 3) return "(n-1)!! != 3 at n=4";
  info = "all umvirates n<=6 t<=3, antipodal n in {2,4,6}, sizes 8 and 3 at n=4";
  return "";
}

// 8. Spreadness floor and embedding fidelity.
std::string criterion_spreadness(std::string& info) {
  std::string rs;
  for (int n : {4, 5, 6}) {
    const auto rep = spreadness(embed(PermFamily::full(n)), 3);
    if (rep.r < static_cast<double>(n) / std::exp(1.0)) {
      return "spreadness below n/e at n=" + std::to_string(n);
    }
    rs += (rs.empty() ? "r=" : ",") + fmt(rep.r);
  }
  for (int n = 2; n <= 5; ++n) {
    const auto fam = PermFamily::full(n);
    const auto cube = embed(fam);
    for (std::size_t a = 0; a < fam.size(); ++a) {
      for (std::size_t b = 0; b < fam.size(); ++b) {
        int shared = 0;
        std::size_t ia = 0;
        std::size_t ib = 0;
        const auto& sa = cube.sets()[a];
        const auto& sb = cube.sets()[b];
        while (ia < sa.size() && ib < sb.size()) {
          if (sa[ia] == sb[ib]) {
            ++shared;
            ++ia;
            ++ib;
          } else if (sa[ia] < sb[ib]) {
            ++ia;
          } else {
            ++ib;
          }
        }
        if (shared != intersection_size(fam.members()[a], fam.members()[b])) {
          return "embedding broke an intersection count at n=" + std::to_string(n);
        }
        if (a != b && shared == n) return "embedding not injective";
      }
    }
  }
  info = rs + "; intersections preserved exhaustively for n<=5";
  return "";
}

// 9. Coverage sweep against the iterated-refinement bound.
std::string criterion_coverage(std::string& info) {
  const auto cube = embed(PermFamily::full(4));
  int points = 0;
  int non_vacuous = 0;
  for (int m : {1, 2, 4, 8}) {
    for (double delta : {1.0 / 32, 1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2}) {
      if (static_cast<double>(m) * delta > 1.0) continue;
      const auto est = coverage_mc(cube, m, delta, 100000, 1);
      ++points;
      const double se =
          std::sqrt(std::max(est.estimate * (1.0 - est.estimate), 1e-5) / 100000.0);
      if (!est.bound_vacuous) {
        ++non_vacuous;
        if (est.estimate < est.theorem_bound - 3.0 * se) {
          return "estimate below bound - 3se at m=" + std::to_string(m) +
                 " delta=" + fmt(delta);
        }
      }
      // the clamped form must hold everywhere
      if (est.estimate < std::max(0.0, est.theorem_bound) - 3.0 * se) {
        return "estimate below the clamped bound";
      }
    }
  }
  info = std::to_string(points) + " swept points, " + std::to_string(non_vacuous) +
         " non-vacuous (bound is vacuous at this scale), inequality held at every point";
  return "";
}

// 10. Reduction-round contract on seeded cross-free inputs.
std::string criterion_reduction(std::string& info) {
  int ran = 0;
  int empty_signals = 0;
  for (int n : {5, 6}) {
    for (int t : {2, 3}) {
      for (std::uint64_t rep = 0; rep < 5; ++rep) {
        PermFamily a(n);
        PermFamily b(n);
        for (std::uint64_t salt = 0;; ++salt) {
          a = random_indicator_family(n, n == 5 ? 0.3 : 0.05, 4004 + salt,
                                      static_cast<std::uint64_t>(n * 100 + t * 10) + rep);
          if (a.empty()) continue;
          b = best_response(a, t);
          if (!b.empty()) break;
        }
        if (!is_cross_free(a, b, t).cross_free) return "generator produced a violating pair";
        auto state = make_reduction_state(a, b, t);
        const auto next = reduction_round(state, 2.0, 3);
        ++ran;
        if (next.terminated_empty) {
          ++empty_signals;
          continue;
        }
        if (next.t_remaining != t - 1) return "t_remaining not decremented";
        const auto check =
            is_cross_free_excluding(next.A, next.B, t - 1, next.common.inputs());
        if (!check.cross_free) return "output pair not cross-(t-2)-free";
        // every global restriction satisfies the density guarantee; re-check A's step
        const auto& round = next.history.back();
        const double before = a.density();
        const double after = a.restricted(round.a_global).density();
        if (after + 1e-12 < std::pow(2.0, round.a_global.size()) * before) {
          return "global restriction density guarantee violated";
        }
      }
    }
  }
  info = std::to_string(ran) + " rounds, " + std::to_string(empty_signals) +
         " empty-family signals, all degree contracts held";
  return "";
}

// 11. Fixed-point counts, exhaustive and exact.
std::string criterion_fixed_points(std::string& info) {
  for (int n = 1; n <= 8; ++n) {
    mpz_class total = 0;
    std::vector<long> hist(static_cast<std::size_t>(n) + 1, 0);
    const auto id = Permutation::identity(n);
    for_each_permutation(n, [&](const Permutation& sigma) {
      ++hist[static_cast<std::size_t>(intersection_size(sigma, id))];
    });
    for (int j = 0; j <= n; ++j) {
      const mpz_class counted = count_with_fixed_points(n, j);
      total += counted;
      if (counted != mpz_class(hist[static_cast<std::size_t>(j)])) {
        return "count mismatch at n=" + std::to_string(n) + " j=" + std::to_string(j);
      }
    }
    if (total != pb::factorial(n)) return "counts do not sum to n!";
  }
  // the exactly-(t-1)-fixed-points machinery emits exact rationals
  const mpq_class p = pb::fixed_point_probability(8, 1);
  if (p.get_den() == 1 && p.get_num() == 0) return "probability degenerated";
  info = "n<=8 exhaustive match; example exact rational p(8,1)=" + p.get_str();
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  std::vector<Criterion> criteria = {
      {1, "level-1 formula identity on S_5", criterion_level_one},
      {2, "Parseval and orthogonality on S_4/S_5", criterion_parseval},
      {3, "restriction variance identity", criterion_variance},
      {4, "agreement-count formula vs exhaustive counts", criterion_agreement},
      {5, "tightness instantiation at n=1024", criterion_tightness},
      {6, "extremal oracle equivalence on n<=4", criterion_oracle},
      {7, "umvirate and construction invariants", criterion_constructions},
      {8, "spreadness floor and embedding fidelity", criterion_spreadness},
      {9, "coverage sweep vs iterated-refinement bound", criterion_coverage},
      {10, "reduction-round degree contract", criterion_reduction},
      {11, "fixed-point counts", criterion_fixed_points},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    std::string detail;
    std::string failure;
    try {
      failure = c.body(detail);
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    if (failure.empty()) {
      std::printf("[PASS] criterion %d: %s (%s)\n", c.id, c.name.c_str(), detail.c_str());
    } else {
      std::printf("[FAIL] criterion %d: %s (%s)\n", c.id, c.name.c_str(), failure.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
