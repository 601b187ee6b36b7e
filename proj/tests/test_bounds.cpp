#include <doctest.h>

#include <cmath>

#include "permint/bounds.hpp"
#include "permint/family.hpp"

using namespace permint;
namespace pb = permint::bounds;

TEST_SUITE("bounds") {

TEST_CASE("main_bound anchors") {
  CHECK(pb::main_bound(5, 1, 0) == 576);
  CHECK(pb::main_bound(6, 2, 1) == 144);
  // m = n-t boundary: 4^(n-t) since 0! = 1
  CHECK(pb::main_bound(6, 2, 4) == 256);
  CHECK(pb::main_bound(5, 5, 0) == 1);
  CHECK_THROWS_AS(pb::main_bound(5, 2, 4), DomainError);
  CHECK_THROWS_AS(pb::main_bound(5, 0, 0), DomainError);
}

TEST_CASE("main_bound recurrence is exact") {
  for (int n = 2; n <= 20; ++n) {
    for (int t = 1; t < n; ++t) {
      for (int m = 0; m < n - t; ++m) {
        CHECK(pb::main_bound(n, t, m) * 4 ==
              pb::main_bound(n, t, m + 1) * mpz_class(n - m - t) * mpz_class(n - m - t));
      }
    }
  }
}

TEST_CASE("antipodal product and crossover anchors") {
  CHECK(pb::antipodal_product(4) == 16);
  CHECK(pb::crossover_t(4) == 2);  // ((4-1)!)^2 = 36 >= 16 > ((4-2)!)^2 = 4
  CHECK(pb::antipodal_product(2) == 1);
  CHECK(pb::crossover_t(2) == 2);  // degenerate boundary
  CHECK_THROWS_AS(pb::antipodal_product(5), DomainError);
}

TEST_CASE("crossover window at large n") {
  for (int n : {256, 512, 1024}) {
    const int t = pb::crossover_t(n);
    const double ratio = static_cast<double>(t) * std::log2(static_cast<double>(n)) /
                         static_cast<double>(n);
    CHECK(ratio > 0.5);
    CHECK(ratio <= 1.1);
  }
}

TEST_CASE("stability thresholds are exact rationals") {
  // (1 - 1/100) * (2!)^2 = 99/25
  CHECK(pb::stability_threshold(3, 1) == mpq_class(99, 25));
  // (1 - 1/40000) * (2!)^2 = 39999/10000
  CHECK(pb::stability_threshold(4, 2) == mpq_class(39999, 10000));
  CHECK(pb::stability_threshold_single(3, 1) == mpq_class(199, 100));
}

TEST_CASE("unseparated and involution sizes match enumeration") {
  CHECK(pb::unseparated_size(4) == 8);
  CHECK(pb::involution_size(4) == 3);
  // at n=2 both of S_2's elements keep the single pair unseparated
  CHECK(pb::unseparated_size(2) == 2);
  CHECK(pb::involution_size(2) == 1);

  for (int n : {2, 4, 6}) {
    CHECK(mpz_class(static_cast<long>(unseparated_pairs_family(n).size())) ==
          pb::unseparated_size(n));
    CHECK(mpz_class(static_cast<long>(involution_family(n).size())) == pb::involution_size(n));
  }
  // members really keep blocks together / are fixed-point-free involutions
  const auto unsep4 = unseparated_pairs_family(4);
  for (const auto& m : unsep4.members()) {
    for (int k = 1; k <= 2; ++k) {
      const int a = m(2 * k - 1);
      const int b = m(2 * k);
      CHECK((a + 1) / 2 == (b + 1) / 2);
    }
  }
  const auto inv4 = involution_family(4);
  for (const auto& m : inv4.members()) {
    for (int i = 1; i <= 4; ++i) {
      CHECK(m(i) != i);
      CHECK(m(m(i)) == i);
    }
  }
}

TEST_CASE("fixed point probability is an exact rational") {
  CHECK(pb::fixed_point_probability(4, 0) == mpq_class(3, 8));  // 9/24
  CHECK(pb::fixed_point_probability(4, 4) == mpq_class(1, 24));
  mpq_class total = 0;
  for (int j = 0; j <= 6; ++j) total += pb::fixed_point_probability(6, j);
  CHECK(total == 1);
}

TEST_CASE("agreement formula anchors") {
  // r = 0, j = 0: derangement probability
  for (int n = 1; n <= 8; ++n) {
    mpq_class expect(derangement_number(n), pb::factorial(n));
    expect.canonicalize();
    CHECK(pb::agreement_prob_formula(n, 0, 0) == expect);
  }
  // (6,1,0) against the exhaustive umvirate scan
  mpq_class scanned(pb::agreement_count_exact(6, 1, 0), pb::factorial(5));
  scanned.canonicalize();
  CHECK(pb::agreement_prob_formula(6, 1, 0) == scanned);
  // base count lower bound used downstream: f(12,2,0) >= 1/4
  mpq_class base(pb::agreement_base_count(12, 2), pb::factorial(10));
  base.canonicalize();
  CHECK(base >= mpq_class(1, 4));
}

TEST_CASE("agreement formula equals the exhaustive count on the full grid") {
  for (int r = 0; r <= 3; ++r) {
    for (int n = std::max(2 * r, 1); n <= 8; ++n) {
      mpz_class row_sum = 0;
      for (int j = 0; j <= n; ++j) {
        const mpz_class exact = pb::agreement_count_exact(n, r, j);
        row_sum += exact;
        const mpq_class predicted =
            pb::agreement_prob_formula(n, r, j) * mpq_class(pb::factorial(n - r));
        CHECK(predicted.get_den() == 1);
        CHECK(predicted.get_num() == exact);
      }
      CHECK(row_sum == pb::factorial(n - r));
    }
  }
}

TEST_CASE("agreement count corner cases") {
  for (int n = 1; n <= 6; ++n) {
    CHECK(pb::agreement_count_exact(n, 0, n) == 1);  // identity only
  }
  // (4,1,0): scan of the 6 members of the umvirate sending 1 to 2; the three
  // survivors avoid fixed points at positions 3 and 4
  CHECK(pb::agreement_count_exact(4, 1, 0) == 3);
  CHECK_THROWS_AS(pb::agreement_count_exact(9, 1, 0), CapacityError);
  CHECK_THROWS_AS(pb::agreement_count_exact(4, 3, 0), DomainError);  // needs 2r <= n
}

TEST_CASE("agreement bound applicability flag") {
  CHECK_FALSE(pb::agreement_bound_applicable(8, 2, 1));  // n < 20
  CHECK(pb::agreement_bound_applicable(24, 2, 1));
  CHECK_FALSE(pb::agreement_bound_applicable(24, 5, 1));  // r > n/6
  // the counting identity still holds where the inequality's range check fails
  const mpq_class predicted =
      pb::agreement_prob_formula(8, 2, 1) * mpq_class(pb::factorial(6));
  CHECK(predicted.get_num() == pb::agreement_count_exact(8, 2, 1));
}

TEST_CASE("log2 display values") {
  CHECK(pb::log2_mpz(mpz_class(1024)) == doctest::Approx(10.0));
  CHECK(pb::log2_mpq(mpq_class(1, 8)) == doctest::Approx(-3.0));
  const mpz_class big = pb::factorial(512);
  const double l = pb::log2_mpz(big * big);
  CHECK(l == doctest::Approx(2.0 * pb::log2_mpz(big)).epsilon(1e-12));
  CHECK_THROWS_AS(pb::log2_mpz(mpz_class(0)), DomainError);
}

TEST_CASE("tables are populated") {
  const auto main_table = pb::main_bound_table(6, 2);
  CHECK(main_table.rows.size() == 8);  // m = 0..4 plus three companion rows
  CHECK(main_table.rows[1].value == "144");
  const auto tight = pb::tightness_table(4);
  CHECK(tight.rows.size() >= 5);
  CHECK(tight.rows[0].value == "16");
}

}  // TEST_SUITE
