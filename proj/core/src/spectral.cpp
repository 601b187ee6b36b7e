#include "permint/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace permint {

namespace {

constexpr double kSingularCutoff = 1e-10;  // relative; smaller singular values count as zero
constexpr std::size_t kGramColumnCap = 700;

std::vector<std::vector<int>> build_domain(int m) {
  // All of S_m in lexicographic order, images 0-based.
  std::vector<std::vector<int>> perms;
  perms.reserve(factorial_u64(m));
  std::vector<int> img(static_cast<std::size_t>(m));
  std::iota(img.begin(), img.end(), 0);
  do {
    perms.push_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return perms;
}

std::uint64_t falling_factorial(int m, int d) {
  std::uint64_t v = 1;
  for (int k = 0; k < d; ++k) v *= static_cast<std::uint64_t>(m - k);
  return v;
}

// Projector onto V_{<=d}: the span of the indicators x_{I->J} with |I| = d
// (which contains every x with smaller |I|). Small instances go through a
// dense Gram pseudo-inverse with a rank cutoff; larger ones use CGLS with the
// indicator matrix applied implicitly, which reaches the same projection
// because the normal-equations operator has only a handful of distinct
// eigenvalues here.
class JuntaProjector {
 public:
  JuntaProjector(const std::vector<std::vector<int>>& domain, int m, int d)
      : domain_(domain), m_(m), d_(d) {
    // input combinations, increasing, 0-based
    std::vector<int> idx(static_cast<std::size_t>(d));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      combs_.push_back(idx);
      int pos = d - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - d + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int q = pos + 1; q < d; ++q) {
        idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
      }
    }
    arrangements_ = falling_factorial(m, d);
    cols_ = combs_.size() * arrangements_;

    // column of the umvirate containing sigma, per (sigma, comb)
    col_of_.resize(domain_.size() * combs_.size());
    for (std::size_t s = 0; s < domain_.size(); ++s) {
      const auto& sigma = domain_[s];
      for (std::size_t c = 0; c < combs_.size(); ++c) {
        std::uint64_t arr = 0;
        std::uint64_t used = 0;  // m <= 20, bitmask of outputs consumed so far
        for (int t = 0; t < d_; ++t) {
          const int out = sigma[static_cast<std::size_t>(combs_[c][static_cast<std::size_t>(t)])];
          const auto below =
              static_cast<std::uint64_t>(std::popcount(used & ((1ULL << out) - 1)));
          arr = arr * static_cast<std::uint64_t>(m_ - t) + (static_cast<std::uint64_t>(out) - below);
          used |= 1ULL << out;
        }
        col_of_[s * combs_.size() + c] = static_cast<std::uint32_t>(
            c * arrangements_ + arr);
      }
    }
  }

  std::size_t cols() const { return cols_; }

  std::vector<double> project(const std::vector<double>& f) const {
    return cols_ <= kGramColumnCap ? project_gram(f) : project_cgls(f);
  }

  std::vector<double> project_gram(const std::vector<double>& f) const {
    const auto rows = domain_.size();
    // Gram entries are exact: <x_c1, x_c2> = (m-u)!/m! with u the size of the
    // merged assignment, or 0 when the umvirates conflict.
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cols_),
                                                 static_cast<Eigen::Index>(cols_));
    const double inv_rows = 1.0 / static_cast<double>(rows);
    std::vector<std::pair<int, int>> assign1(static_cast<std::size_t>(d_));
    std::vector<std::pair<int, int>> assign2(static_cast<std::size_t>(d_));
    for (std::size_t c1 = 0; c1 < cols_; ++c1) {
      decode(c1, assign1);
      for (std::size_t c2 = c1; c2 < cols_; ++c2) {
        decode(c2, assign2);
        int merged = d_;
        bool ok = true;
        for (const auto& [i2, j2] : assign2) {
          bool shared = false;
          for (const auto& [i1, j1] : assign1) {
            if (i1 == i2 || j1 == j2) {
              if (i1 == i2 && j1 == j2) {
                shared = true;
              } else {
                ok = false;
              }
              break;
            }
          }
          if (!ok) break;
          if (!shared) ++merged;
        }
        if (!ok || merged > m_) continue;
        const double v =
            static_cast<double>(factorial_u64(m_ - merged)) * inv_rows;
        gram(static_cast<Eigen::Index>(c1), static_cast<Eigen::Index>(c2)) = v;
        gram(static_cast<Eigen::Index>(c2), static_cast<Eigen::Index>(c1)) = v;
      }
    }

    Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cols_));
    for (std::size_t s = 0; s < rows; ++s) {
      for (std::size_t c = 0; c < combs_.size(); ++c) {
        b(static_cast<Eigen::Index>(col_of_[s * combs_.size() + c])) += f[s];
      }
    }
    b *= inv_rows;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    const double cutoff = kSingularCutoff * eig.eigenvalues().maxCoeff();
    Eigen::VectorXd inv_ev = eig.eigenvalues();
    for (Eigen::Index k = 0; k < inv_ev.size(); ++k) {
      inv_ev(k) = inv_ev(k) > cutoff ? 1.0 / inv_ev(k) : 0.0;
    }
    const Eigen::VectorXd coeff =
        eig.eigenvectors() * (inv_ev.asDiagonal() * (eig.eigenvectors().transpose() * b));

    std::vector<double> out(rows, 0.0);
    for (std::size_t s = 0; s < rows; ++s) {
      double acc = 0.0;
      for (std::size_t c = 0; c < combs_.size(); ++c) {
        acc += coeff(static_cast<Eigen::Index>(col_of_[s * combs_.size() + c]));
      }
      out[s] = acc;
    }
    return out;
  }

  std::vector<double> project_cgls(const std::vector<double>& f) const {
    const auto rows = domain_.size();
    const auto ncombs = combs_.size();
    std::vector<double> y(rows, 0.0);        // running X x
    std::vector<double> r = f;               // residual f - X x
    std::vector<double> s(cols_, 0.0);       // X^T r
    std::vector<double> p(cols_, 0.0);
    std::vector<double> q(rows, 0.0);        // X p

    auto apply_xt = [&](const std::vector<double>& v, std::vector<double>& out) {
      std::fill(out.begin(), out.end(), 0.0);
      for (std::size_t row = 0; row < rows; ++row) {
        const double val = v[row];
        if (val == 0.0) continue;
        const std::uint32_t* cols_row = &col_of_[row * ncombs];
        for (std::size_t c = 0; c < ncombs; ++c) out[cols_row[c]] += val;
      }
    };
    auto apply_x = [&](const std::vector<double>& v, std::vector<double>& out) {
      for (std::size_t row = 0; row < rows; ++row) {
        const std::uint32_t* cols_row = &col_of_[row * ncombs];
        double acc = 0.0;
        for (std::size_t c = 0; c < ncombs; ++c) acc += v[cols_row[c]];
        out[row] = acc;
      }
    };
    auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
      return acc;
    };

    apply_xt(r, s);
    p = s;
    double gamma = dot(s, s);
    const double stop = 1e-13 * std::sqrt(gamma);
    constexpr int kMaxIter = 400;
    for (int iter = 0; iter < kMaxIter && gamma > 0.0; ++iter) {
      apply_x(p, q);
      const double qq = dot(q, q);
      if (qq == 0.0) break;
      const double alpha = gamma / qq;
      for (std::size_t k = 0; k < rows; ++k) {
        y[k] += alpha * q[k];
        r[k] -= alpha * q[k];
      }
      apply_xt(r, s);
      const double gamma_new = dot(s, s);
      if (std::sqrt(gamma_new) <= stop) break;
      const double beta = gamma_new / gamma;
      gamma = gamma_new;
      for (std::size_t k = 0; k < cols_; ++k) p[k] = s[k] + beta * p[k];
    }
    return y;
  }

 private:
  void decode(std::size_t col, std::vector<std::pair<int, int>>& assign) const {
    const std::size_t comb = col / arrangements_;
    std::uint64_t arr = col % arrangements_;
    // invert the mixed-radix arrangement rank
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(d_));
    for (int t = d_ - 1; t >= 0; --t) {
      digits[static_cast<std::size_t>(t)] = arr % static_cast<std::uint64_t>(m_ - t);
      arr /= static_cast<std::uint64_t>(m_ - t);
    }
    std::uint64_t used = 0;
    for (int t = 0; t < d_; ++t) {
      std::uint64_t want = digits[static_cast<std::size_t>(t)];
      int out = 0;
      for (;; ++out) {
        if ((used >> out) & 1ULL) continue;
        if (want == 0) break;
        --want;
      }
      used |= 1ULL << out;
      assign[static_cast<std::size_t>(t)] = {combs_[comb][static_cast<std::size_t>(t)], out};
    }
  }

  const std::vector<std::vector<int>>& domain_;
  int m_;
  int d_;
  std::vector<std::vector<int>> combs_;
  std::uint64_t arrangements_ = 1;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> col_of_;
};

void check_finite(const SnFunction& f) {
  for (double v : f.values) {
    if (!std::isfinite(v)) throw NumericError("spectral: non-finite function value");
  }
}

void check_decompose_cap(int m) {
  if (m > kDecomposeCapN) {
    throw CapacityError("spectral: effective n=" + std::to_string(m) + " above cap " +
                        std::to_string(kDecomposeCapN));
  }
}

}  // namespace

SnFunction::SnFunction(int n_, std::vector<double> values_, std::optional<SubSpace> space_)
    : n(n_), space(std::move(space_)), values(std::move(values_)) {
  if (n < 1) throw DomainError("SnFunction: n must be positive");
  if (space && space->n != n) throw DimensionError("SnFunction: subspace n mismatch");
  const int m = effective_n();
  if (m < 1) throw DomainError("SnFunction: fully restricted domain");
  if (m > kRankCapN || values.size() != factorial_u64(m)) {
    throw DimensionError("SnFunction: expected " + std::to_string(m) +
                         "! values, got " + std::to_string(values.size()));
  }
}

SnFunction SnFunction::indicator(const PermFamily& F) {
  const int m = F.space() ? F.space()->free_count() : F.n();
  if (m < 1) throw DomainError("indicator: fully restricted domain");
  if (m > kEnumerationCapN) throw CapacityError("indicator: domain above enumeration cap");
  std::vector<double> vals(factorial_u64(m), 0.0);
  for (const auto& member : F.members()) {
    const std::uint64_t rank =
        F.space() ? compress_to_subspace(*F.space(), member).rank() : member.rank();
    vals[rank] = 1.0;
  }
  return SnFunction(F.n(), std::move(vals), F.space());
}

double SnFunction::mean() const {
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc / static_cast<double>(values.size());
}

double SnFunction::norm2_sq() const {
  double acc = 0.0;
  for (double v : values) acc += v * v;
  return acc / static_cast<double>(values.size());
}

LevelDecomposition decompose(const SnFunction& f) {
  check_finite(f);
  const int m = f.effective_n();
  check_decompose_cap(m);
  const std::size_t size = f.domain_size();

  LevelDecomposition dec;
  auto push = [&](std::vector<double> vals) {
    SnFunction comp(f.n, std::move(vals), f.space);
    dec.weights.push_back(comp.norm2_sq());
    dec.components.push_back(std::move(comp));
  };

  const double mean = f.mean();
  std::vector<double> prev(size, mean);  // P_{<=0} f
  push(prev);
  if (m == 1) return dec;

  const auto domain = build_domain(m);
  for (int d = 1; d <= m - 2; ++d) {
    JuntaProjector proj(domain, m, d);
    std::vector<double> cur = proj.project(f.values);
    std::vector<double> level(size);
    for (std::size_t k = 0; k < size; ++k) level[k] = cur[k] - prev[k];
    push(std::move(level));
    prev = std::move(cur);
  }
  // top level: everything the (m-2)-junta span misses
  std::vector<double> top(size);
  for (std::size_t k = 0; k < size; ++k) top[k] = f.values[k] - prev[k];
  push(std::move(top));
  return dec;
}

double level_weight(const SnFunction& f, int d) {
  check_finite(f);
  const int m = f.effective_n();
  check_decompose_cap(m);
  if (d < 0 || d > m - 1) throw DomainError("level_weight: level outside 0..m-1");
  const std::size_t size = f.domain_size();
  const double mean = f.mean();
  if (d == 0) return mean * mean;
  if (m == 1) return 0.0;

  const auto domain = build_domain(m);
  auto project_leq = [&](int dd) -> std::vector<double> {
    if (dd == 0) return std::vector<double>(size, mean);
    JuntaProjector proj(domain, m, dd);
    return proj.project(f.values);
  };
  std::vector<double> hi = d <= m - 2 ? project_leq(d) : f.values;
  std::vector<double> lo = project_leq(d - 1);
  double acc = 0.0;
  for (std::size_t k = 0; k < size; ++k) {
    const double diff = hi[k] - lo[k];
    acc += diff * diff;
  }
  return acc / static_cast<double>(size);
}

namespace {

// E[f_{i->j}] for all (i,j), m x m row-major; each restriction has (m-1)!
// domain points.
std::vector<double> restriction_means(const SnFunction& f) {
  const int m = f.effective_n();
  const auto domain = build_domain(m);
  std::vector<double> sums(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
  for (std::size_t s = 0; s < domain.size(); ++s) {
    const double v = f.values[s];
    for (int i = 0; i < m; ++i) {
      sums[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) +
           static_cast<std::size_t>(domain[s][static_cast<std::size_t>(i)])] += v;
    }
  }
  const double denom = static_cast<double>(factorial_u64(m - 1));
  for (double& v : sums) v /= denom;
  return sums;
}

}  // namespace

double LevelOneCoefficients::level_one_weight() const {
  double acc = 0.0;
  for (double v : a) acc += v * v;
  return acc / static_cast<double>(m - 1);
}

LevelOneCoefficients level_one_coeffs(const SnFunction& f) {
  check_finite(f);
  const int m = f.effective_n();
  if (m < 2) throw DomainError("level_one_coeffs: need effective n >= 2");
  if (m > kEnumerationCapN) throw CapacityError("level_one_coeffs: domain above cap");
  LevelOneCoefficients out;
  out.m = m;
  out.a = restriction_means(f);
  const double mean = f.mean();
  const double scale = 1.0 - 1.0 / static_cast<double>(m);
  for (double& v : out.a) v = scale * (v - mean);
  return out;
}

double restriction_variance(const SnFunction& f) {
  check_finite(f);
  const int m = f.effective_n();
  if (m < 2) throw DomainError("restriction_variance: need effective n >= 2");
  if (m > kEnumerationCapN) throw CapacityError("restriction_variance: domain above cap");
  const auto means = restriction_means(f);
  const double mean = f.mean();
  double acc = 0.0;
  for (double v : means) {
    const double x = v - mean;
    acc += x * x;
  }
  return acc / static_cast<double>(means.size());
}

namespace {

struct PatternScan {
  std::vector<int> free_inputs;
  std::vector<int> free_outputs;
  const PermFamily* family = nullptr;

  // Visit every pattern of size 1..depth on the free coordinates together
  // with the member count of the restriction. Inputs are chosen in
  // increasing order, so patterns arrive grouped by their input set.
  template <typename Fn>
  void visit(int depth, Fn&& fn) const {
    std::vector<std::size_t> current(family->size());
    std::iota(current.begin(), current.end(), 0);
    std::vector<std::pair<int, int>> stack;
    std::vector<bool> out_used(static_cast<std::size_t>(family->n()) + 1, false);
    rec(depth, 0, current, stack, out_used, fn);
  }

 private:
  template <typename Fn>
  void rec(int depth, std::size_t in_start, const std::vector<std::size_t>& current,
           std::vector<std::pair<int, int>>& stack, std::vector<bool>& out_used, Fn&& fn) const {
    if (static_cast<int>(stack.size()) == depth) return;
    const auto& members = family->members();
    for (std::size_t ii = in_start; ii < free_inputs.size(); ++ii) {
      const int i = free_inputs[ii];
      for (int j : free_outputs) {
        if (out_used[static_cast<std::size_t>(j)]) continue;
        std::vector<std::size_t> next;
        for (std::size_t idx : current) {
          if (members[idx](i) == j) next.push_back(idx);
        }
        stack.emplace_back(i, j);
        fn(stack, next.size());
        if (!next.empty()) {
          out_used[static_cast<std::size_t>(j)] = true;
          rec(depth, ii + 1, next, stack, out_used, fn);
          out_used[static_cast<std::size_t>(j)] = false;
        }
        stack.pop_back();
      }
    }
  }
};

PatternScan make_scan(const PermFamily& A) {
  PatternScan scan;
  scan.family = &A;
  for (int i = 1; i <= A.n(); ++i) {
    if (!A.space() || !A.space()->fixed.fixes_input(i)) scan.free_inputs.push_back(i);
  }
  for (int j = 1; j <= A.n(); ++j) {
    if (!A.space() || !A.space()->fixed.fixes_output(j)) scan.free_outputs.push_back(j);
  }
  return scan;
}

// Exact comparison of (cnt1*ff1/|A|)^(1/k1) vs (cnt2*ff2/|A|)^(1/k2):
// cross-raise to the k1*k2 power. Returns <0, 0, >0.
int compare_ratio_roots(std::uint64_t cnt1, int k1, std::uint64_t ff1, std::uint64_t cnt2, int k2,
                        std::uint64_t ff2, std::uint64_t fam) {
  mpz_class lhs, rhs, t;
  mpz_ui_pow_ui(lhs.get_mpz_t(), cnt1 * ff1, static_cast<unsigned long>(k2));
  mpz_ui_pow_ui(t.get_mpz_t(), fam, static_cast<unsigned long>(k1));
  lhs *= t;
  mpz_ui_pow_ui(rhs.get_mpz_t(), cnt2 * ff2, static_cast<unsigned long>(k1));
  mpz_ui_pow_ui(t.get_mpz_t(), fam, static_cast<unsigned long>(k2));
  rhs *= t;
  return mpz_cmp(lhs.get_mpz_t(), rhs.get_mpz_t());
}

}  // namespace

GlobalnessReport globalness(const PermFamily& A, int depth_cap) {
  if (A.empty()) throw DomainError("globalness: undefined for an empty family");
  if (depth_cap < 1 || depth_cap > std::min(A.n(), 4)) {
    throw ParameterError("globalness: depth_cap outside 1..min(n,4)");
  }
  const PatternScan scan = make_scan(A);
  const int m_free = static_cast<int>(scan.free_inputs.size());
  const int depth = std::min(depth_cap, m_free);

  GlobalnessReport report;
  report.depth_cap = depth_cap;
  bool have = false;
  std::uint64_t best_cnt = 0;
  std::uint64_t best_ff = 1;
  int best_k = 0;
  RestrictionPattern best_pattern;
  scan.visit(depth, [&](const std::vector<std::pair<int, int>>& stack, std::size_t cnt) {
    const int k = static_cast<int>(stack.size());
    const std::uint64_t ff = falling_factorial(m_free, k);
    int cmp = 1;
    if (have) {
      cmp = compare_ratio_roots(cnt, k, ff, best_cnt, best_k, best_ff,
                                static_cast<std::uint64_t>(A.size()));
    }
    if (cmp > 0) {
      have = true;
      best_cnt = cnt;
      best_ff = ff;
      best_k = k;
      best_pattern = RestrictionPattern(stack);
    } else if (cmp == 0) {
      RestrictionPattern candidate(stack);
      if (candidate < best_pattern) best_pattern = std::move(candidate);
    }
  });

  if (!have) return report;  // no free coordinates to restrict
  const double ratio = static_cast<double>(best_cnt) * static_cast<double>(best_ff) /
                       static_cast<double>(A.size());
  report.gamma_density = std::pow(ratio, 1.0 / static_cast<double>(best_k));
  report.gamma_l2 = std::pow(ratio, 0.5 / static_cast<double>(best_k));
  report.witness = best_pattern;
  return report;
}

std::pair<RestrictionPattern, PermFamily> global_restriction(const PermFamily& A, double gamma,
                                                             int depth_cap) {
  if (A.empty()) throw DomainError("global_restriction: undefined for an empty family");
  if (gamma <= 1.0) throw ParameterError("global_restriction: gamma must exceed 1");
  if (depth_cap < 0) throw ParameterError("global_restriction: negative depth_cap");
  const PatternScan scan = make_scan(A);
  const int m_free = static_cast<int>(scan.free_inputs.size());
  const int depth = std::min(depth_cap, m_free);

  // score(p) = density(A_p) / gamma^|p|; the empty pattern scores density(A).
  const double base_density = A.density();
  double best_score = base_density;
  RestrictionPattern best_pattern;
  scan.visit(depth, [&](const std::vector<std::pair<int, int>>& stack, std::size_t cnt) {
    const int k = static_cast<int>(stack.size());
    const double density = static_cast<double>(cnt) /
                           static_cast<double>(factorial_u64(m_free - k));
    const double score = density / std::pow(gamma, static_cast<double>(k));
    if (score > best_score) {
      best_score = score;
      best_pattern = RestrictionPattern(stack);
    } else if (score == best_score) {
      RestrictionPattern candidate(stack);
      if (candidate < best_pattern) best_pattern = std::move(candidate);
    }
  });

  PermFamily restricted = A.restricted(best_pattern);
  // The maximizer beats the empty pattern, which is exactly the density
  // guarantee; re-checked here so every caller inherits it.
  const double guarantee =
      std::pow(gamma, static_cast<double>(best_pattern.size())) * base_density;
  if (restricted.density() + 1e-12 < guarantee) {
    throw Error("global_restriction: density guarantee violated");
  }
  return {best_pattern, std::move(restricted)};
}

double level_d_audit(const PermFamily& A, int d, double gamma) {
  if (A.empty()) throw DomainError("level_d_audit: empty family");
  if (d < 1) throw DomainError("level_d_audit: d must be >= 1");
  const double mu = A.density();
  if (mu <= 0.0 || mu >= 1.0) {
    throw DomainError("level_d_audit: log(1/mu) undefined for mu in {0,1}");
  }
  const SnFunction f = SnFunction::indicator(A);
  const double wd = level_weight(f, d);
  const double denom =
      mu * mu * std::pow(std::pow(gamma, 4.0) * std::log(1.0 / mu) / static_cast<double>(d),
                         static_cast<double>(d));
  return wd / denom;
}

}  // namespace permint
