#include <gtest/gtest.h>

#include <stdexcept>

#include "arithbh/arith.hpp"
#include "support/oracles.hpp"

using namespace arithbh;

TEST(Factorize, One) {
  const auto f = factorize(1);
  EXPECT_TRUE(f.factors.empty());
  EXPECT_EQ(f.recompose(), 1u);
}

TEST(Factorize, Twelve) {
  const auto f = factorize(12);
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0], (PrimePower{2, 2}));
  EXPECT_EQ(f.factors[1], (PrimePower{3, 1}));
}

TEST(Factorize, TwoHundredTen) {
  const auto f = factorize(210);
  ASSERT_EQ(f.factors.size(), 4u);
  const Natural ps[] = {2, 3, 5, 7};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(f.factors[i].prime, ps[i]);
    EXPECT_EQ(f.factors[i].exponent, 1u);
  }
}

TEST(Factorize, RejectsZero) { EXPECT_THROW(factorize(0), std::invalid_argument); }

TEST(Factorize, RecomposesAndMatchesTrialDivision) {
  const ArithmeticTable table(5000);
  for (Natural n = 1; n <= 5000; ++n) {
    const auto f = factorize(n);
    ASSERT_EQ(f.recompose(), n);
    const auto g = table.factorize(n);
    ASSERT_EQ(g.factors, f.factors) << n;
    const auto ref = oracle::factor(n);
    ASSERT_EQ(ref.size(), f.factors.size()) << n;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      ASSERT_EQ(ref[i].first, f.factors[i].prime);
      ASSERT_EQ(ref[i].second, f.factors[i].exponent);
    }
    for (std::size_t i = 1; i < f.factors.size(); ++i) ASSERT_LT(f.factors[i - 1].prime, f.factors[i].prime);
  }
}

TEST(ArithmeticFunctions, Examples) {
  EXPECT_EQ(omega_total(1), 0u);
  EXPECT_EQ(omega_total(12), 3u);
  EXPECT_EQ(omega_total(8), 3u);
  EXPECT_EQ(q_sum(1), 0u);
  EXPECT_EQ(q_sum(12), 5u);
  EXPECT_EQ(q_sum(8), 9u);
  EXPECT_EQ(omega_distinct(1), 0u);
  EXPECT_EQ(omega_distinct(12), 2u);
  EXPECT_EQ(omega_distinct(30), 3u);
}

TEST(ArithmeticFunctions, TableAgreesWithTrialDivision) {
  const ArithmeticTable table(20000);
  for (Natural n = 1; n <= 20000; ++n) {
    ASSERT_EQ(table.omega_total(n), oracle::big_omega(n));
    ASSERT_EQ(table.q_sum(n), oracle::q(n));
    ASSERT_EQ(table.omega_distinct(n), oracle::factor(n).size());
  }
  EXPECT_THROW(table.omega_total(0), std::out_of_range);
  EXPECT_THROW(table.omega_total(20001), std::out_of_range);
}

TEST(ArithmeticFunctions, AdditivityAndSquarefree) {
  const Natural limit = 3000;
  const ArithmeticTable table(limit);
  for (Natural m = 1; m <= 60; ++m) {
    for (Natural n = 1; m * n <= limit; ++n) {
      ASSERT_EQ(table.omega_total(m * n), table.omega_total(m) + table.omega_total(n));
      ASSERT_LE(table.omega_distinct(m * n), table.omega_distinct(m) + table.omega_distinct(n));
    }
  }
  for (Natural n = 1; n <= limit; ++n) {
    const bool squarefree = table.q_sum(n) == table.omega_total(n);
    bool ref = true;
    for (auto [p, a] : oracle::factor(n)) ref = ref && a == 1;
    ASSERT_GE(table.q_sum(n), table.omega_total(n));
    ASSERT_EQ(squarefree, ref) << n;
  }
}

TEST(PrimeTable, Examples) {
  const auto t10 = primes_up_to(10);
  EXPECT_EQ(std::vector<Natural>(t10.primes().begin(), t10.primes().end()), (std::vector<Natural>{2, 3, 5, 7}));
  EXPECT_EQ(primes_up_to(2).count(), 1u);
  EXPECT_EQ(primes_up_to(100).count(), 25u);
  EXPECT_EQ(primes_up_to(1).count(), 0u);
}

TEST(PrimeTable, SitesAndNeighbours) {
  const PrimeTable t(100);
  EXPECT_EQ(t.site_of(2), 1u);
  EXPECT_EQ(t.site_of(97), 25u);
  EXPECT_EQ(t.prime_at(3), 5u);
  EXPECT_EQ(t.next_prime(7), Natural{11});
  EXPECT_FALSE(t.previous_prime(2).has_value());
  EXPECT_FALSE(t.next_prime(97).has_value());
  EXPECT_THROW(t.site_of(9), std::invalid_argument);
  for (Natural n = 1; n <= 100; ++n) EXPECT_EQ(t.contains(n), oracle::prime(n)) << n;
}

TEST(CheckedMul, Overflow) {
  EXPECT_EQ(checked_mul(1u << 20, 1u << 20), Natural{1} << 40);
  EXPECT_THROW(checked_mul(Natural{1} << 40, Natural{1} << 40), std::overflow_error);
}
