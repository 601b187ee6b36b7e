#include "permint/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "permint/bounds.hpp"
#include "permint/extremal.hpp"
#include "permint/rng.hpp"
#include "permint/spectral.hpp"
#include "permint/spread.hpp"

namespace permint {

namespace {

constexpr double kTol = 1e-8;

struct Suite {
  std::vector<CheckResult> results;

  void check(const std::string& name, const std::function<std::string()>& body) {
    CheckResult r;
    r.name = name;
    try {
      r.detail = body();  // empty string means pass
      r.passed = r.detail.empty();
      if (r.passed) r.detail = "ok";
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    results.push_back(std::move(r));
  }
};

std::string check_close(double a, double b, double tol, const std::string& what) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (std::abs(a - b) <= tol * scale) return "";
  std::ostringstream os;
  os << what << ": " << a << " vs " << b;
  return os.str();
}

PermFamily random_family(int n, double p, std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 rng(seed, stream);
  std::vector<Permutation> members;
  for_each_permutation(n, [&](const Permutation& sigma) {
    if (rng.next_bernoulli(p)) members.push_back(sigma);
  });
  return PermFamily(n, std::move(members));
}

SnFunction random_function(int n, std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 rng(seed, stream);
  std::vector<double> vals(factorial_u64(n));
  for (double& v : vals) v = 2.0 * rng.next_unit() - 1.0;
  return SnFunction(n, std::move(vals));
}

void perm_core_checks(Suite& suite, bool full) {
  const int n_max = full ? 6 : 5;
  suite.check("perm_core.pair_intersection_cap", [&]() -> std::string {
    for (int n = 2; n <= n_max; ++n) {
      const auto fam = PermFamily::full(n);
      for (std::size_t a = 0; a < fam.size(); ++a) {
        for (std::size_t b = a + 1; b < fam.size(); ++b) {
          if (intersection_size(fam.members()[a], fam.members()[b]) > n - 2) {
            return "distinct pair above n-2 at n=" + std::to_string(n);
          }
        }
      }
    }
    return "";
  });
  suite.check("perm_core.umvirate_size_and_floor", [&]() -> std::string {
    for (int n = 2; n <= n_max; ++n) {
      for (int t = 1; t <= std::min(3, n); ++t) {
        std::vector<int> I;
        std::vector<int> J;
        for (int k = 0; k < t; ++k) {
          I.push_back(k + 1);
          J.push_back(((k + 1) % n) + 1);
        }
        const auto u = umvirate(n, I, J);
        if (u.size() != factorial_u64(n - t)) return "umvirate size off";
        for (std::size_t a = 0; a < u.size(); ++a) {
          for (std::size_t b = 0; b < u.size(); ++b) {
            if (intersection_size(u.members()[a], u.members()[b]) < t) {
              return "umvirate pair below t agreements";
            }
          }
        }
        if (!is_cross_free(u, u, t).cross_free) return "umvirate pair not cross-free";
      }
    }
    return "";
  });
  suite.check("perm_core.fixed_point_counts_sum", [&]() -> std::string {
    for (int n = 1; n <= 12; ++n) {
      mpz_class total = 0;
      for (int j = 0; j <= n; ++j) total += count_with_fixed_points(n, j);
      if (total != bounds::factorial(n)) return "sum != n! at n=" + std::to_string(n);
    }
    return "";
  });
  suite.check("perm_core.antipodal_cross_intersections_zero", [&]() -> std::string {
    for (int n = 2; n <= n_max; n += 2) {
      const auto [f, g] = antipodal_pair(n);
      const std::uint64_t half = factorial_u64(n / 2);
      if (f.size() != half * half || g.size() != half * half) return "antipodal size off";
      for (const auto& s : f.members()) {
        for (const auto& tau : g.members()) {
          if (intersection_size(s, tau) != 0) return "nonzero cross intersection";
        }
      }
    }
    return "";
  });
  suite.check("perm_core.restrict_idempotent_and_concat", [&]() -> std::string {
    const auto fam = random_family(5, 0.4, 11, 0);
    const RestrictionPattern p1(std::vector<std::pair<int, int>>{{1, 2}});
    const RestrictionPattern p2(std::vector<std::pair<int, int>>{{3, 1}});
    const auto once = fam.restricted(p1);
    if (!(once.restricted(p1) == once)) return "restrict not idempotent";
    const auto chained = fam.restricted(p1).restricted(p2);
    const auto merged = fam.restricted(p1.concat(p2));
    if (!(chained == merged)) return "restrict does not commute with concat";
    if (!(fam.restricted(RestrictionPattern()) == fam)) return "empty pattern not identity";
    return "";
  });
}

void spectral_checks(Suite& suite, bool full) {
  suite.check("spectral.parseval_orthogonality", [&]() -> std::string {
    const std::vector<int> ns = full ? std::vector<int>{4, 5, 6} : std::vector<int>{4, 5};
    for (int n : ns) {
      const int reps = n == 6 ? 2 : 5;
      for (int rep = 0; rep < reps; ++rep) {
        const auto f = random_function(n, 23, static_cast<std::uint64_t>(n * 100 + rep));
        const auto dec = decompose(f);
        double total = 0.0;
        for (double w : dec.weights) total += w;
        if (auto err = check_close(total, f.norm2_sq(), kTol, "parseval"); !err.empty()) {
          return err;
        }
        for (std::size_t a = 0; a < dec.components.size(); ++a) {
          for (std::size_t b = a + 1; b < dec.components.size(); ++b) {
            double ip = 0.0;
            for (std::size_t k = 0; k < f.values.size(); ++k) {
              ip += dec.components[a].values[k] * dec.components[b].values[k];
            }
            ip /= static_cast<double>(f.values.size());
            if (std::abs(ip) > kTol * std::max(1.0, f.norm2_sq())) return "levels not orthogonal";
          }
        }
      }
    }
    return "";
  });
  suite.check("spectral.level_one_formula", [&]() -> std::string {
    const int reps = full ? 50 : 10;
    for (int rep = 0; rep < reps; ++rep) {
      const auto fam = random_family(5, 0.5, 37, static_cast<std::uint64_t>(rep));
      if (fam.empty()) continue;
      const auto f = SnFunction::indicator(fam);
      const auto dec = decompose(f);
      const auto coeffs = level_one_coeffs(f);
      // reconstruct level 1 from the coefficient matrix
      std::size_t idx = 0;
      double max_dev = 0.0;
      for_each_permutation(5, [&](const Permutation& sigma) {
        double acc = 0.0;
        for (int i = 1; i <= 5; ++i) acc += coeffs.at(i, sigma(i));
        max_dev = std::max(max_dev, std::abs(acc - dec.components[1].values[idx]));
        ++idx;
      });
      if (max_dev > kTol) return "level-1 reconstruction deviates";
      if (auto err = check_close(coeffs.level_one_weight(), dec.weights[1], kTol, "weight");
          !err.empty()) {
        return err;
      }
      // row sums of E[f_{i->j}] - E[f] vanish
      for (int i = 1; i <= 5; ++i) {
        double row = 0.0;
        for (int j = 1; j <= 5; ++j) row += coeffs.at(i, j);
        if (std::abs(row) > kTol) return "coefficient row sum nonzero";
      }
    }
    return "";
  });
  suite.check("spectral.dictator_purity", [&]() -> std::string {
    const int n_max = full ? 6 : 5;
    for (int n = 3; n <= n_max; ++n) {
      const auto dict = umvirate(n, {1}, {1});
      const auto dec = decompose(SnFunction::indicator(dict));
      for (std::size_t d = 2; d < dec.weights.size(); ++d) {
        if (std::abs(dec.weights[d]) > kTol) {
          return "dictator has weight at level " + std::to_string(d);
        }
      }
    }
    return "";
  });
  suite.check("spectral.restriction_variance_identity", [&]() -> std::string {
    for (int rep = 0; rep < 5; ++rep) {
      const auto fam = random_family(5, 0.3, 41, static_cast<std::uint64_t>(rep));
      if (fam.empty()) continue;
      const auto f = SnFunction::indicator(fam);
      const double var = restriction_variance(f);
      const double w1 = level_weight(f, 1);
      if (auto err = check_close(var * 4.0, w1, kTol, "variance identity"); !err.empty()) {
        return err;
      }
    }
    return "";
  });
  suite.check("spectral.global_restriction_guarantee", [&]() -> std::string {
    for (int rep = 0; rep < 5; ++rep) {
      const auto fam = random_family(5, 0.2, 43, static_cast<std::uint64_t>(rep));
      if (fam.empty()) continue;
      const auto [pattern, restricted] = global_restriction(fam, 2.0, 3);
      const double lhs = restricted.density();
      const double rhs = std::pow(2.0, pattern.size()) * fam.density();
      if (lhs + 1e-12 < rhs) return "density guarantee violated";
    }
    return "";
  });
}

void spread_checks(Suite& suite, bool full) {
  suite.check("spread.embedding_preserves_intersections", [&]() -> std::string {
    const int n = full ? 5 : 4;
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
          return "embedded intersection mismatch";
        }
      }
    }
    return "";
  });
  suite.check("spread.spreadness_floor_full_sn", [&]() -> std::string {
    const std::vector<int> ns = full ? std::vector<int>{4, 5, 6} : std::vector<int>{4, 5};
    for (int n : ns) {
      const auto report = spreadness(embed(PermFamily::full(n)), 3);
      if (report.r < static_cast<double>(n) / std::exp(1.0) - 1e-12) {
        return "spreadness below n/e at n=" + std::to_string(n);
      }
    }
    return "";
  });
  suite.check("spread.universal_element_forces_r1", [&]() -> std::string {
    const auto u = umvirate(4, {1}, {1});
    const auto report = spreadness(embed(u), 3);
    if (std::abs(report.r - 1.0) > 1e-12) return "r != 1 with universal element";
    return "";
  });
  suite.check("spread.coverage_estimate_vs_bound", [&]() -> std::string {
    const auto cube = embed(PermFamily::full(4));
    const long samples = full ? 20000 : 5000;
    double prev = -1.0;
    for (double p : {0.25, 0.5, 0.75, 1.0}) {
      const auto est = coverage_mc(cube, 1, p, samples, 7);
      const double se = std::sqrt(std::max(est.estimate * (1.0 - est.estimate),
                                           1.0 / static_cast<double>(samples)) /
                                  static_cast<double>(samples));
      if (est.estimate < std::max(0.0, est.theorem_bound) - 3.0 * se) {
        return "estimate below clamped bound";
      }
      if (est.estimate < prev - 3.0 * se) return "estimate not monotone in m*delta";
      prev = est.estimate;
    }
    const auto sure = coverage_mc(cube, 2, 0.5, 1000, 7);
    if (sure.estimate != 1.0) return "m*delta=1 did not cover";
    return "";
  });
}

void extremal_checks(Suite& suite, bool full) {
  suite.check("extremal.best_response_antitone", [&]() -> std::string {
    const int n = 4;
    for (int rep = 0; rep < 3; ++rep) {
      auto small = random_family(n, 0.2, 53, static_cast<std::uint64_t>(rep));
      auto large_members = small.members();
      auto extra = random_family(n, 0.2, 54, static_cast<std::uint64_t>(rep));
      for (const auto& m : extra.members()) large_members.push_back(m);
      const PermFamily large(n, std::move(large_members));
      for (int t = 1; t <= n; ++t) {
        const auto br_small = best_response(small, t);
        const auto br_large = best_response(large, t);
        for (const auto& m : br_large.members()) {
          if (!br_small.contains(m)) return "best_response not antitone";
        }
      }
    }
    return "";
  });
  suite.check("extremal.closure_fixed_point", [&]() -> std::string {
    const PermFamily seed(4, {Permutation::identity(4)});
    for (int t = 1; t <= 4; ++t) {
      const auto [f_star, g_star] = closure(seed, t);
      if (!(best_response(f_star, t) == g_star)) return "closure G not best response";
      if (!(best_response(g_star, t) == f_star)) return "closure F not best response";
      if (!f_star.contains(Permutation::identity(4))) return "closure dropped the seed";
    }
    return "";
  });
  suite.check("extremal.oracle_equivalence", [&]() -> std::string {
    const int n_max = full ? 4 : 3;
    for (int n = 1; n <= n_max; ++n) {
      for (int t = 1; t <= n; ++t) {
        const auto ex = exact_max_product(n, t);
        const auto bb = bb_max_product(n, t, 400000000ULL);
        if (ex.product != bb.product) {
          return "product mismatch at n=" + std::to_string(n) + ",t=" + std::to_string(t);
        }
        if (bb.status != SearchStatus::exact_optimal) return "bb not exact within budget";
        if (ex.product < ex.witness_bound) return "oracle below umvirate bound";
        if (!is_cross_free(ex.F, ex.G, t).cross_free) return "oracle pair not cross-free";
        if (!is_cross_free(bb.F, bb.G, t).cross_free) return "bb pair not cross-free";
      }
    }
    return "";
  });
  suite.check("extremal.reduction_round_degree", [&]() -> std::string {
    for (int rep = 0; rep < 3; ++rep) {
      const int t = 2 + (rep % 2);
      auto a = random_family(5, 0.25, 59, static_cast<std::uint64_t>(rep));
      if (a.empty()) continue;
      auto b = best_response(a, t);
      if (b.empty()) continue;
      auto state = make_reduction_state(a, b, t);
      const auto next = reduction_round(state, 2.0, 2);
      if (next.terminated_empty) continue;  // valid signal
      const auto excl = next.common.inputs();
      for (const auto& s : next.A.members()) {
        for (const auto& tau : next.B.members()) {
          if (intersection_size_excluding(s, tau, excl) == next.t_remaining - 1) {
            return "degree not lowered";
          }
        }
      }
    }
    return "";
  });
}

void bounds_checks(Suite& suite, bool full) {
  suite.check("bounds.agreement_formula_vs_exhaustive", [&]() -> std::string {
    const int n_max = full ? 8 : 6;
    for (int r = 0; r <= 3; ++r) {
      for (int n = std::max(1, 2 * r); n <= n_max; ++n) {
        if (n < 1) continue;
        mpz_class row_sum = 0;
        for (int j = 0; j <= n; ++j) {
          const mpz_class exact = bounds::agreement_count_exact(n, r, j);
          row_sum += exact;
          const mpq_class formula = bounds::agreement_prob_formula(n, r, j);
          const mpq_class predicted = formula * mpq_class(bounds::factorial(n - r));
          if (predicted.get_den() != 1 || predicted.get_num() != exact) {
            return "formula mismatch at n=" + std::to_string(n) + ",r=" + std::to_string(r) +
                   ",j=" + std::to_string(j);
          }
        }
        if (row_sum != bounds::factorial(n - r)) return "row sum not (n-r)!";
      }
    }
    return "";
  });
  suite.check("bounds.main_bound_recurrence", [&]() -> std::string {
    for (int n = 2; n <= 12; ++n) {
      for (int t = 1; t < n; ++t) {
        for (int m = 0; m < n - t; ++m) {
          const mpz_class lhs = bounds::main_bound(n, t, m) * 4;
          const mpz_class rhs = bounds::main_bound(n, t, m + 1) * mpz_class(n - m - t) *
                                mpz_class(n - m - t);
          if (lhs != rhs) return "recurrence fails";
        }
      }
    }
    return "";
  });
  suite.check("bounds.crossover_window", [&]() -> std::string {
    for (int n : {256, 512, 1024}) {
      const double ratio = static_cast<double>(bounds::crossover_t(n)) * std::log2(n) /
                           static_cast<double>(n);
      if (!(ratio > 0.5 && ratio <= 1.1)) {
        return "crossover ratio " + std::to_string(ratio) + " outside (0.5,1.1] at n=" +
               std::to_string(n);
      }
    }
    return "";
  });
  suite.check("bounds.derangements_match_enumeration", [&]() -> std::string {
    const int n_max = full ? 8 : 6;
    for (int n = 1; n <= n_max; ++n) {
      std::vector<long> hist(static_cast<std::size_t>(n) + 1, 0);
      const auto id = Permutation::identity(n);
      for_each_permutation(n, [&](const Permutation& sigma) {
        ++hist[static_cast<std::size_t>(intersection_size(sigma, id))];
      });
      for (int j = 0; j <= n; ++j) {
        if (count_with_fixed_points(n, j) != mpz_class(hist[static_cast<std::size_t>(j)])) {
          return "fixed point count mismatch at n=" + std::to_string(n);
        }
      }
    }
    return "";
  });
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const std::string& level) {
  if (level != "quick" && level != "full") {
    throw ParameterError("run_invariant_suite: level must be quick or full");
  }
  const bool full = level == "full";
  Suite suite;
  perm_core_checks(suite, full);
  spectral_checks(suite, full);
  spread_checks(suite, full);
  extremal_checks(suite, full);
  bounds_checks(suite, full);
  return suite.results;
}

}  // namespace permint
