#include <doctest.h>

#include <cmath>

#include "qfrag/algebra.hpp"
#include "qfrag/errors.hpp"
#include "support/young.hpp"

using namespace qfrag;
using namespace qfrag::algebra;

TEST_CASE("q from N") {
  CHECK(q_from_N(2) == 1.0);
  const double q3 = q_from_N(3);
  CHECK(q3 == doctest::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-15));
  CHECK(std::abs(q3 + 1 / q3 - 3) <= 1e-12);
  const double q4 = q_from_N(4);
  CHECK(q4 == doctest::Approx(2 + std::sqrt(3.0)).epsilon(1e-15));
  CHECK(std::abs(q4 + 1 / q4 - 4) <= 1e-12);
  CHECK_THROWS_AS(q_from_N(1), DomainError);
  CHECK_THROWS_AS(CommutantSpec(0), DomainError);
}

TEST_CASE("q-dimensions") {
  for (int n = 2; n <= 6; ++n) CHECK(qdim(0, n) == 1);
  CHECK(qdim(3, 2) == 7);
  CHECK(qdim(1, 3) == 8);
  CHECK(qdim(2, 3) == 55);
  CHECK(qdims(3, 3) == std::vector<BigInt>{1, 8, 55, 377});
  for (int l = 0; l <= 30; ++l) CHECK(qdim(l, 2) == 2 * l + 1);
  CHECK_THROWS_AS(qdim(-1, 3), DomainError);
}

TEST_CASE("q-dimensions agree with the float closed form") {
  for (int n : {3, 4, 5, 7}) {
    const long double q = CommutantSpec(n).q_extended();
    for (int l = 0; l <= 50; ++l) {
      const long double m = 2.0L * l + 1;
      const long double closed = (std::pow(q, m) - std::pow(q, -m)) / (q - 1 / q);
      const double exact = log_of(qdim(l, n));
      CHECK(std::abs(std::expm1(static_cast<double>(std::log(closed)) - exact)) <= 1e-10);
    }
  }
}

TEST_CASE("q-dimensions strictly increase") {
  for (int n = 2; n <= 5; ++n) {
    const auto d = qdims(40, n);
    for (std::size_t l = 1; l < d.size(); ++l) CHECK(d[l] > d[l - 1]);
  }
}

TEST_CASE("Krylov dimensions count two-row standard tableaux") {
  CHECK(krylov_dim(0, 8) == 14);
  CHECK(krylov_dim(1, 4) == 3);
  for (int sites = 0; sites <= 22; sites += 2)
    for (int l = 0; l <= sites / 2; ++l) {
      const auto tableaux = testing::count_two_row_tableaux(sites / 2 + l, sites / 2 - l);
      CHECK(krylov_dim(l, sites) == tableaux);
    }
  CHECK(krylov_dims(22) == [] {
    std::vector<BigInt> v;
    for (int l = 0; l <= 11; ++l) v.push_back(krylov_dim(l, 22));
    return v;
  }());
}

TEST_CASE("Krylov dimension edge cases") {
  for (int sites = 0; sites <= 60; sites += 2) CHECK(krylov_dim(sites / 2, sites) == 1);
  CHECK_THROWS_AS(krylov_dim(0, 5), DomainError);
  CHECK_THROWS_AS(krylov_dim(3, 4), DomainError);
  CHECK_THROWS_AS(krylov_dim(-1, 4), DomainError);
}

TEST_CASE("Krylov dimensions are unimodal with an interior peak") {
  for (int sites = 8; sites <= 200; sites += 2) {
    const auto d = krylov_dims(sites);
    std::size_t peak = 0;
    for (std::size_t l = 1; l < d.size(); ++l)
      if (d[l] > d[peak]) peak = l;
    CHECK(peak > 0);
    CHECK(peak + 1 < d.size());
    for (std::size_t l = 1; l <= peak; ++l) CHECK(d[l] >= d[l - 1]);
    for (std::size_t l = peak + 1; l < d.size(); ++l) CHECK(d[l] <= d[l - 1]);
  }
}

TEST_CASE("Catalan convolution") {
  // halves must be even, so the chain length steps by 4
  for (int sites = 0; sites <= 400; sites += 4) {
    const auto half = krylov_dims(sites / 2);
    BigInt sum = 0;
    for (const auto& d : half) sum += d * d;
    CHECK(sum == krylov_dim(0, sites));
  }
}

TEST_CASE("sector dimensions fill the Hilbert space") {
  for (int n = 2; n <= 5; ++n)
    for (int sites = 0; sites <= 40; sites += 2) {
      const auto d = krylov_dims(sites);
      const auto q = qdims(sites / 2, n);
      BigInt total = 0;
      for (std::size_t l = 0; l < d.size(); ++l) total += d[l] * q[l];
      CHECK(total == boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(sites)));
    }
}

TEST_CASE("bipartition validation") {
  CHECK(Bipartition(4, 6).max_label() == 2);
  CHECK(Bipartition(4, 6).total() == 10);
  CHECK_THROWS_AS(Bipartition(3, 3), ValidationError);
  CHECK_THROWS_AS(Bipartition(0, 4), ValidationError);
  CHECK_THROWS_AS(Bipartition(4, -2), ValidationError);
}

TEST_CASE("sector table") {
  const auto table = sector_table(CommutantSpec(3), Bipartition(4, 4));
  REQUIRE(table.rows().size() == 3);
  CHECK(table.singlet_dim() == 14);
  const std::vector<Rational> expected{Rational(4, 14), Rational(9, 14), Rational(1, 14)};
  const std::vector<BigInt> dims{2, 3, 1}, qd{1, 8, 55};
  Rational sum = 0;
  for (std::size_t l = 0; l < 3; ++l) {
    CHECK(table.rows()[l].lambda == static_cast<int>(l));
    CHECK(table.rows()[l].weight == expected[l]);
    CHECK(table.rows()[l].dim_left == dims[l]);
    CHECK(table.rows()[l].dim_right == dims[l]);
    CHECK(table.rows()[l].qdim == qd[l]);
    sum += table.rows()[l].weight;
  }
  CHECK(sum == 1);

  for (int n : {2, 3, 4, 9}) {
    const auto small = sector_table(CommutantSpec(n), Bipartition(2, 2));
    REQUIRE(small.rows().size() == 2);
    CHECK(small.rows()[0].weight == Rational(1, 2));
    CHECK(small.rows()[1].weight == Rational(1, 2));
  }

  const auto skew = sector_table(CommutantSpec(2), Bipartition(2, 6));
  REQUIRE(skew.rows().size() == 2);
  CHECK(skew.rows()[0].dim_right == 5);
  CHECK(skew.rows()[1].dim_right == 9);
  CHECK(skew.singlet_dim() == 14);
  CHECK(skew.rows()[0].weight + skew.rows()[1].weight == 1);
}
