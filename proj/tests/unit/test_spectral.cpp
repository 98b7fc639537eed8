#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "arithbh/lanczos.hpp"
#include "arithbh/spectral.hpp"
#include "support/oracles.hpp"

using namespace arithbh;

TEST(Eigensolve, Trivial) {
  const auto a = eigensolve(SparseSymmetricMatrix(1, {{0, 0, 3.5}}));
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a.eigenvalues[0], 3.5);
  const auto b = eigensolve(SparseSymmetricMatrix(2, {{0, 1, -1.0}}));
  EXPECT_NEAR(b.eigenvalues[0], -1.0, 1e-15);
  EXPECT_NEAR(b.eigenvalues[1], 1.0, 1e-15);
}

TEST(Eigensolve, DiagonalGroundIsVacuum) {
  const auto s = eigensolve(build_hamiltonian({10.0, 0.0, 0.0, 150}), 1);
  EXPECT_EQ(s.eigenvalues[0], 0.0);
  EXPECT_EQ(s.eigenvectors(0, 0), 1.0);
  EXPECT_EQ(s.eigenvectors.col(0).cwiseAbs().sum(), 1.0);
}

TEST(Eigensolve, ResidualsAndOrthonormality) {
  const auto H = build_hamiltonian({4.0, 1.0, 0.7, 300});
  const auto s = eigensolve(H);
  const double norm = H.max_row_sum();
  for (std::size_t i = 0; i < s.size(); ++i) ASSERT_LE(s.residuals[i], 1e-10 * norm);
  const Eigen::MatrixXd G = s.eigenvectors.transpose() * s.eigenvectors;
  EXPECT_LT((G - Eigen::MatrixXd::Identity(300, 300)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
  for (Eigen::Index c = 0; c < s.eigenvectors.cols(); ++c) {
    Eigen::Index at;
    s.eigenvectors.col(c).cwiseAbs().maxCoeff(&at);
    ASSERT_GT(s.eigenvectors(at, c), 0.0);
  }
}

TEST(Lanczos, MatchesDenseIncludingDegeneracy) {
  // t = 0 has large degenerate eigenspaces; the solver must keep multiplicities.
  for (double t : {0.0, 0.3, -1.2}) {
    const auto H = build_hamiltonian({2.0, 1.0, t, 700});
    const auto dense = eigensolve(H.to_dense(), 12);
    EigenOptions o;
    o.solver = SolverKind::lanczos;
    const auto lz = eigensolve(H, 12, o);
    EXPECT_LT((dense.eigenvalues - lz.eigenvalues).cwiseAbs().maxCoeff(), 1e-9) << t;
    for (std::size_t i = 0; i < 12; ++i) EXPECT_LE(lz.residuals[i], 1e-10 * H.max_row_sum());
    const Eigen::MatrixXd G = lz.eigenvectors.transpose() * lz.eigenvectors;
    EXPECT_LT((G - Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Lanczos, ReportsNonConvergence) {
  const auto H = build_hamiltonian({1.0, 0.5, 1.0, 2000});
  LanczosOptions o;
  o.max_krylov = 3;
  o.max_restarts = 0;
  try {
    lanczos_lowest(H, 1, o);
    FAIL() << "expected NonConvergenceError";
  } catch (const NonConvergenceError& e) {
    EXPECT_GT(e.iterations(), 0u);
    EXPECT_GT(e.residual(), 0.0);
  }
}

TEST(Lanczos, ZeroMatrixAndCountChecks) {
  const SparseSymmetricMatrix Z(5, {});
  const auto r = lanczos_lowest(Z, 2);
  EXPECT_EQ(r.eigenvalues, Eigen::VectorXd::Zero(2));
  EXPECT_THROW(lanczos_lowest(Z, 6), std::invalid_argument);
}

TEST(Gap, Examples) {
  EXPECT_NEAR(gap({10.0, -1.0, 0.0, 150}), 1.0, 1e-14);
  EXPECT_EQ(gap({10.0, 0.0, 0.0, 150}), 0.0);
}

TEST(Gap, BlockedMatchesFullSpectrum) {
  const HamiltonianParams p{3.0, 0.2, -0.1, 400};
  const auto full = eigensolve(build_hamiltonian(p).to_dense(), 2);
  EXPECT_NEAR(gap(p), full.eigenvalues[1] - full.eigenvalues[0], 1e-11);
}

TEST(SingleParticle, ClosedForm) {
  const auto one = single_particle_spectrum({0.0, 0.7, 1.0, 2});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_NEAR(one[0], -0.7, 1e-15);
  const auto s = single_particle_spectrum({0.0, 0.0, 1.0, 5});
  ASSERT_EQ(s.size(), 3u);
  EXPECT_NEAR(s[0], -std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s[1], 0.0, 1e-15);
  EXPECT_NEAR(s[2], std::sqrt(2.0), 1e-15);
}

TEST(SingleParticle, MatchesBlockAndStaysInBand) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  for (std::size_t N : {3, 10, 100, 1000, 10000}) {
    const HamiltonianParams p{0.0, u(rng), u(rng), N};
    auto closed = single_particle_spectrum(p);
    for (double e : closed) {
      EXPECT_GE(e, -p.mu - 2 * std::abs(p.t) - 1e-12);
      EXPECT_LE(e, -p.mu + 2 * std::abs(p.t) + 1e-12);
    }
    std::sort(closed.begin(), closed.end());
    const auto numeric = eigensolve(single_particle_block(p)).eigenvalues;
    for (std::size_t k = 0; k < closed.size(); ++k) ASSERT_NEAR(numeric[k], closed[k], 1e-10) << N;
    HamiltonianParams flipped = p;
    flipped.t = -p.t;
    auto other = single_particle_spectrum(flipped);
    std::sort(other.begin(), other.end());
    for (std::size_t k = 0; k < closed.size(); ++k) ASSERT_NEAR(other[k], closed[k], 1e-12);
  }
}

TEST(Blocks, SpectrumIsUnionOfBlocks) {
  const HamiltonianParams p{-2.0, 1.5, 0.9, 500};
  const HamiltonianModel model(500);
  const auto full = eigensolve(model.assemble(p).to_dense()).eigenvalues;
  const auto blocked = eigensolve_blocked(model, p);
  EXPECT_LT((full - blocked.eigenvalues).cwiseAbs().maxCoeff(), 1e-10);
  for (std::size_t i = 0; i < blocked.size(); ++i) {
    ASSERT_NEAR(expected_particle_number(blocked.state(i), model.arithmetic()), blocked.expected_N[i], 1e-12);
  }
}

TEST(GroundState, Examples) {
  const auto a = ground_state_observable({10.0, -2.0, 0.1, 150});
  EXPECT_FALSE(a.degenerate);
  EXPECT_EQ(a.mean, 0.0);

  const auto b = ground_state_observable({10.0, 5.0, 0.0, 150});
  EXPECT_EQ(b.energy, -15.0);
  EXPECT_EQ(b.values, (std::vector<double>{3.0}));
  // Every squarefree n <= 150 with three prime factors sits at -3 mu.
  EXPECT_TRUE(b.degenerate);

  const auto c = ground_state_observable({10.0, 11.0, 0.0, 150});
  EXPECT_EQ(c.energy, -34.0);
  EXPECT_EQ(c.values, (std::vector<double>{4.0}));
  const Eigen::VectorXd diag = build_hamiltonian({10.0, 11.0, 0.0, 150}).to_dense().diagonal();
  Eigen::Index at;
  diag.minCoeff(&at);
  EXPECT_EQ(at + 1, 60);
}

TEST(GroundState, AgreesWithFullEigenvector) {
  const HamiltonianParams p{10.0, 2.5, 0.6, 150};
  const auto s = eigensolve(build_hamiltonian(p), 2);
  ASSERT_FALSE(degenerate(s.eigenvalues[0], s.eigenvalues[1]));
  const auto obs = ground_state_observable(p);
  EXPECT_NEAR(obs.energy, s.eigenvalues[0], 1e-12);
  EXPECT_NEAR(obs.mean, expected_particle_number(s.state(0)), 1e-10);
}

TEST(GroundState, DegenerateAcrossBlocks) {
  const auto g = ground_state_observable({10.0, 0.0, 0.0, 150});
  EXPECT_TRUE(g.degenerate);
  // Q = Omega on squarefree n, so every squarefree n <= 150 has E = 0.
  std::size_t squarefree = 0;
  for (Natural n = 1; n <= 150; ++n) squarefree += oracle::q(n) == oracle::big_omega(n);
  EXPECT_EQ(g.values, (std::vector<double>{0.0, 1.0, 2.0, 3.0}));
  EXPECT_EQ(g.multiplicity, squarefree);
}

TEST(MonotoneSegments, Counts) {
  EXPECT_EQ(monotone_segments({}), 0u);
  EXPECT_EQ(monotone_segments({1, 2, 3}), 1u);
  EXPECT_EQ(monotone_segments({1, 2, 2, 3}), 1u);
  EXPECT_EQ(monotone_segments({3, 1, 2}), 2u);
  EXPECT_EQ(monotone_segments({1, 3, 1, 3}), 3u);
}

TEST(GapSweep, DenseAndLanczosAgree) {
  const auto ratios = std::vector<double>{0.0, 10.0, 50.0};
  EigenOptions d;
  d.solver = SolverKind::dense;
  EigenOptions l;
  l.solver = SolverKind::lanczos;
  const auto a = gap_sweep(300, 0.0, -0.1, ratios, d, 1);
  const auto b = gap_sweep(300, 0.0, -0.1, ratios, l, 1);
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    EXPECT_NEAR(a[i].gap, b[i].gap, 1e-9);
    EXPECT_DOUBLE_EQ(a[i].U, ratios[i] * 0.1);
  }
}
