#include "permint/spread.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "permint/rng.hpp"

namespace permint {

namespace {

bool mask_subset(const std::vector<std::uint64_t>& sub, const std::vector<std::uint64_t>& sup) {
  for (std::size_t w = 0; w < sub.size(); ++w) {
    if ((sub[w] & ~sup[w]) != 0) return false;
  }
  return true;
}

bool masks_disjoint(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    if ((a[w] & b[w]) != 0) return false;
  }
  return true;
}

}  // namespace

CubeFamily::CubeFamily(int ground_size, std::vector<std::vector<int>> sets)
    : ground_size_(ground_size), sets_(std::move(sets)) {
  if (ground_size < 1) throw DomainError("CubeFamily: ground size must be positive");
  words_ = (ground_size + 63) / 64;
  masks_.reserve(sets_.size());
  for (auto& s : sets_) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    std::vector<std::uint64_t> mask(static_cast<std::size_t>(words_), 0);
    for (int e : s) {
      if (e < 1 || e > ground_size) {
        throw DomainError("CubeFamily: element " + std::to_string(e) + " outside 1.." +
                          std::to_string(ground_size));
      }
      mask[static_cast<std::size_t>((e - 1) / 64)] |= 1ULL << ((e - 1) % 64);
    }
    masks_.push_back(std::move(mask));
  }
}

double CubeFamily::mean_set_size() const {
  if (sets_.empty()) return 0.0;
  double total = 0.0;
  for (const auto& s : sets_) total += static_cast<double>(s.size());
  return total / static_cast<double>(sets_.size());
}

CubeFamily embed(const PermFamily& F) {
  if (F.empty()) throw DomainError("embed: empty family");
  const int n = F.n();
  std::vector<std::vector<int>> sets;
  sets.reserve(F.size());
  for (const auto& sigma : F.members()) {
    std::vector<int> s;
    s.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) s.push_back((i - 1) * n + sigma(i));
    sets.push_back(std::move(s));
  }
  return CubeFamily(n * n, std::move(sets));
}

SpreadReport spreadness(const CubeFamily& C, int depth_cap) {
  if (C.empty()) throw DomainError("spreadness: empty family");
  if (depth_cap < 1 || depth_cap > 4) throw ParameterError("spreadness: depth_cap outside 1..4");

  // Candidate X sets are subsets of members, so each has containment
  // fraction > 0. Count containment per distinct candidate.
  std::map<std::vector<int>, long> counts;
  std::vector<int> scratch;
  for (std::size_t k = 0; k < C.size(); ++k) {
    const auto& member = C.sets()[k];
    const int len = static_cast<int>(member.size());
    const int depth = std::min(depth_cap, len);
    // enumerate subsets of `member` of size 1..depth
    std::vector<int> idx;
    auto rec = [&](auto&& self, int start) -> void {
      if (!idx.empty()) {
        scratch.clear();
        for (int t : idx) scratch.push_back(member[static_cast<std::size_t>(t)]);
        counts[scratch] = 0;  // fill counts later
      }
      if (static_cast<int>(idx.size()) == depth) return;
      for (int t = start; t < len; ++t) {
        idx.push_back(t);
        self(self, t + 1);
        idx.pop_back();
      }
    };
    rec(rec, 0);
  }
  for (auto& [x, cnt] : counts) {
    std::vector<std::uint64_t> xmask(static_cast<std::size_t>(C.words()), 0);
    for (int e : x) xmask[static_cast<std::size_t>((e - 1) / 64)] |= 1ULL << ((e - 1) % 64);
    for (std::size_t k = 0; k < C.size(); ++k) {
      if (mask_subset(xmask, C.mask(k))) ++cnt;
    }
  }

  // Minimize (M/cnt)^(1/|X|). Compare candidates exactly:
  //   (M/c1)^(1/k1) < (M/c2)^(1/k2)  <=>  M^k2 * c2^k1 < M^k1 * c1^k2.
  const long M = static_cast<long>(C.size());
  const std::vector<int>* best_x = nullptr;
  long best_cnt = 0;
  int best_k = 0;
  auto better = [&](long cnt, int k) {
    if (best_x == nullptr) return true;
    mpz_class lhs, rhs;
    mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(M), static_cast<unsigned long>(best_k));
    mpz_class c2p;
    mpz_ui_pow_ui(c2p.get_mpz_t(), static_cast<unsigned long>(best_cnt),
                  static_cast<unsigned long>(k));
    lhs *= c2p;
    mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(M), static_cast<unsigned long>(k));
    mpz_class c1p;
    mpz_ui_pow_ui(c1p.get_mpz_t(), static_cast<unsigned long>(cnt),
                  static_cast<unsigned long>(best_k));
    rhs *= c1p;
    return lhs < rhs;  // strict: ties keep the earlier (lexicographically smaller) X
  };

  // counts is ordered by (contents); iterate in (size, contents) order so the
  // first strict minimizer is the lexicographically smallest witness.
  std::vector<const std::vector<int>*> order;
  order.reserve(counts.size());
  for (const auto& [x, cnt] : counts) order.push_back(&x);
  std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    if (a->size() != b->size()) return a->size() < b->size();
    return *a < *b;
  });
  for (const auto* x : order) {
    const long cnt = counts.at(*x);
    const int k = static_cast<int>(x->size());
    if (better(cnt, k)) {
      best_x = x;
      best_cnt = cnt;
      best_k = k;
    }
  }

  SpreadReport report;
  report.depth_cap = depth_cap;
  report.witness = *best_x;
  report.r = std::pow(static_cast<double>(M) / static_cast<double>(best_cnt),
                      1.0 / static_cast<double>(best_k));
  return report;
}

CoverageEstimate coverage_mc(const CubeFamily& C, int m, double delta, long samples,
                             std::uint64_t seed) {
  if (C.empty()) throw DomainError("coverage_mc: empty family");
  if (samples < 1) throw ParameterError("coverage_mc: samples must be >= 1");
  if (m < 1 || delta <= 0.0) throw ParameterError("coverage_mc: need m >= 1 and delta > 0");
  const double p = static_cast<double>(m) * delta;
  if (p > 1.0) throw ParameterError("coverage_mc: m*delta exceeds 1");

  const int N = C.ground_size();
  const int words = C.words();
  long hits = 0;
  std::vector<std::uint64_t> w(static_cast<std::size_t>(words), 0);
  for (long s = 0; s < samples; ++s) {
    SplitMix64 rng(seed, static_cast<std::uint64_t>(s));
    std::fill(w.begin(), w.end(), 0);
    for (int e = 0; e < N; ++e) {
      if (rng.next_bernoulli(p)) w[static_cast<std::size_t>(e / 64)] |= 1ULL << (e % 64);
    }
    for (std::size_t k = 0; k < C.size(); ++k) {
      if (mask_subset(C.mask(k), w)) {
        ++hits;
        break;
      }
    }
  }

  CoverageEstimate est;
  est.m = m;
  est.delta = delta;
  est.samples = samples;
  est.hits = hits;
  est.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  est.seed = seed;
  est.spread_r = spreadness(C, 3).r;
  est.mu0_size = C.mean_set_size();
  const double rdelta = est.spread_r * delta;
  if (rdelta <= 1.0) {
    est.bound_vacuous = true;
    est.theorem_bound = -std::numeric_limits<double>::infinity();
  } else {
    est.theorem_bound =
        1.0 - std::pow(5.0 / std::log2(rdelta), static_cast<double>(m)) * est.mu0_size;
    est.bound_vacuous = !(est.theorem_bound > 0.0);
  }
  return est;
}

CrossOneResult cross_one_check(const CubeFamily& A, const CubeFamily& B) {
  if (A.ground_size() != B.ground_size()) {
    throw DimensionError("cross_one_check: ground size mismatch");
  }
  for (std::size_t a = 0; a < A.size(); ++a) {
    for (std::size_t b = 0; b < B.size(); ++b) {
      if (masks_disjoint(A.mask(a), B.mask(b))) {
        return CrossOneResult{false, std::make_pair(a, b)};
      }
    }
  }
  return CrossOneResult{};
}

SplitExperimentReport disjoint_split_experiment(const CubeFamily& A, const CubeFamily& B,
                                                long trials, std::uint64_t seed) {
  if (A.ground_size() != B.ground_size()) {
    throw DimensionError("disjoint_split_experiment: ground size mismatch");
  }
  if (trials < 1) throw ParameterError("disjoint_split_experiment: trials must be >= 1");

  const int N = A.ground_size();
  const int words = A.words();
  SplitExperimentReport report;
  report.trials = trials;
  report.seed = seed;

  std::vector<std::uint64_t> s_mask(static_cast<std::size_t>(words), 0);
  std::vector<std::uint64_t> c_mask(static_cast<std::size_t>(words), 0);
  for (long t = 0; t < trials; ++t) {
    SplitMix64 rng(seed, static_cast<std::uint64_t>(t));
    std::fill(s_mask.begin(), s_mask.end(), 0);
    for (int e = 0; e < N; ++e) {
      if (rng.next_bernoulli(0.5)) s_mask[static_cast<std::size_t>(e / 64)] |= 1ULL << (e % 64);
    }
    for (int w = 0; w < words; ++w) c_mask[static_cast<std::size_t>(w)] = ~s_mask[static_cast<std::size_t>(w)];
    // bits past N in the last word stay set in the complement; members never
    // use them, so containment checks are unaffected

    std::optional<std::size_t> a_in;
    for (std::size_t a = 0; a < A.size(); ++a) {
      if (mask_subset(A.mask(a), s_mask)) {
        a_in = a;
        break;
      }
    }
    std::optional<std::size_t> b_in;
    for (std::size_t b = 0; b < B.size(); ++b) {
      if (mask_subset(B.mask(b), c_mask)) {
        b_in = b;
        break;
      }
    }
    if (a_in) ++report.a_hits;
    if (b_in) ++report.b_hits;
    if (a_in && b_in) {
      ++report.both_hits;
      if (!report.witness) report.witness = std::make_tuple(t, *a_in, *b_in);
    }
  }
  report.a_freq = static_cast<double>(report.a_hits) / static_cast<double>(trials);
  report.b_freq = static_cast<double>(report.b_hits) / static_cast<double>(trials);
  report.both_freq = static_cast<double>(report.both_hits) / static_cast<double>(trials);
  return report;
}

}  // namespace permint
