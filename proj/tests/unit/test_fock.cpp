#include <gtest/gtest.h>

#include <cmath>

#include "arithbh/fock.hpp"
#include "arithbh/arith.hpp"

using namespace arithbh;

namespace {

double dist(const StateVector& a, const StateVector& b) { return (a - b).norm(); }

}  // namespace

TEST(Annihilate, Examples) {
  const std::size_t N = 20;
  EXPECT_LT(dist(annihilate(SiteIndex::of(2), StateVector::basis(N, 12)),
                 std::sqrt(2.0) * StateVector::basis(N, 6)), 1e-15);
  EXPECT_EQ(annihilate(SiteIndex::of(5), StateVector::basis(N, 12)).norm(), 0.0);
  EXPECT_EQ(dist(annihilate(SiteIndex::of(3), StateVector::basis(N, 3)), StateVector::basis(N, 1)), 0.0);
}

TEST(Create, Examples) {
  EXPECT_EQ(dist(create(SiteIndex::of(2), StateVector::basis(10, 1)), StateVector::basis(10, 2)), 0.0);
  EXPECT_LT(dist(create(SiteIndex::of(2), StateVector::basis(10, 2)), std::sqrt(2.0) * StateVector::basis(10, 4)), 1e-15);
  EXPECT_EQ(create(SiteIndex::of(2), StateVector::basis(10, 6)).norm(), 0.0);
}

TEST(SiteIndex, RejectsComposite) {
  EXPECT_THROW(SiteIndex::of(4), std::invalid_argument);
  EXPECT_THROW(SiteIndex::of(1), std::invalid_argument);
  EXPECT_EQ(SiteIndex::of(7).ordinal(), 4u);
}

TEST(NumberOperators, Examples) {
  const auto d12 = StateVector::basis(20, 12);
  EXPECT_EQ(dist(number_op(SiteIndex::of(2), d12), 2.0 * d12), 0.0);
  EXPECT_EQ(dist(total_number(d12), 3.0 * d12), 0.0);
  EXPECT_EQ(total_number(StateVector::basis(20, 1)).norm(), 0.0);
  EXPECT_EQ(dist(squared_number_sum(d12), 5.0 * d12), 0.0);
}

TEST(NumberOperators, NpEqualsCreateAnnihilateOnInterior) {
  const std::size_t N = 120;
  for (Natural p : {2, 3, 5, 7}) {
    const auto s = SiteIndex::of(p);
    for (Natural n = 1; n * p <= N; ++n) {
      const auto d = StateVector::basis(N, n);
      EXPECT_LT(dist(create(s, annihilate(s, d)), number_op(s, d)), 1e-14) << p << " " << n;
    }
  }
}

TEST(KParticle, Examples) {
  EXPECT_EQ(k_particle_indices(0, 10), (std::vector<Natural>{1}));
  EXPECT_EQ(k_particle_indices(1, 10), (std::vector<Natural>{2, 3, 5, 7}));
  EXPECT_EQ(k_particle_indices(2, 10), (std::vector<Natural>{4, 6, 9, 10}));
}

TEST(ExpectedParticleNumber, Examples) {
  EXPECT_EQ(expected_particle_number(StateVector::basis(40, 1)), 0.0);
  EXPECT_EQ(expected_particle_number(StateVector::basis(40, 30)), 3.0);
  StateVector v(40);
  v[2] = 1.0 / std::sqrt(2.0);
  v[4] = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(expected_particle_number(v), 1.5, 1e-15);
  EXPECT_THROW(expected_particle_number(2.0 * v), std::invalid_argument);
}

TEST(Bccr, InteriorExact) {
  const std::size_t N = 300;
  for (Natural p : {2, 3, 5, 7, 11, 13}) {
    for (Natural q : {2, 3, 5, 7, 11, 13}) {
      const auto sp = SiteIndex::of(p), sq = SiteIndex::of(q);
      for (Natural n = 1; n * p * q <= N; ++n) {
        const auto d = StateVector::basis(N, n);
        const auto c = annihilate(sp, create(sq, d)) - create(sq, annihilate(sp, d));
        const auto expect = p == q ? d : StateVector(N);
        ASSERT_LT((c - expect).amplitudes().cwiseAbs().maxCoeff(), 1e-14);
      }
    }
  }
}

TEST(Bccr, AnnihilatorsCommuteEverywhere) {
  const std::size_t N = 200;
  for (Natural n = 1; n <= N; ++n) {
    const auto d = StateVector::basis(N, n);
    for (Natural p : {2, 3, 5}) {
      for (Natural q : {3, 5, 7}) {
        const auto sp = SiteIndex::of(p), sq = SiteIndex::of(q);
        ASSERT_LT(dist(annihilate(sp, annihilate(sq, d)), annihilate(sq, annihilate(sp, d))), 1e-14);
      }
    }
  }
}

TEST(Adjoint, CreateAnnihilateOnInterior) {
  const std::size_t N = 60;
  for (Natural p : {2, 3, 5}) {
    const auto s = SiteIndex::of(p);
    for (Natural m = 1; m <= N; ++m) {
      for (Natural n = 1; n * p <= N; ++n) {
        const auto u = StateVector::basis(N, m);
        const auto v = StateVector::basis(N, n);
        ASSERT_LT(std::abs(u.inner(create(s, v)) - annihilate(s, u).inner(v)), 1e-15);
      }
    }
  }
}

TEST(StateVector, BoundsAndArithmetic) {
  StateVector v(5);
  EXPECT_THROW(v[0], std::out_of_range);
  EXPECT_THROW(v[6], std::out_of_range);
  EXPECT_THROW(StateVector(0), std::invalid_argument);
  v[3] = {0.0, 1.0};
  EXPECT_TRUE(v.is_normalized());
  EXPECT_EQ(v.inner(v), Amplitude(1.0));
  EXPECT_EQ(StateVector::basis(5, 3).inner(v), Amplitude(0.0, 1.0));
  EXPECT_THROW(v + StateVector(4), std::invalid_argument);
}
