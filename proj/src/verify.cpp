#include "arithbh/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "arithbh/dual.hpp"
#include "arithbh/fock.hpp"
#include "arithbh/hamiltonian.hpp"
#include "arithbh/spectral.hpp"
#include "arithbh/thermo.hpp"

namespace arithbh {

bool VerifyReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

CheckResult finish(std::string name, double deviation, double tolerance, std::string detail = {}) {
  return {std::move(name), deviation <= tolerance, deviation, tolerance, std::move(detail)};
}

HamiltonianParams random_params(std::mt19937_64& rng, std::size_t N) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::uniform_real_distribution<double> m(-5.0, 5.0);
  std::uniform_real_distribution<double> t(-3.0, 3.0);
  return {u(rng), m(rng), t(rng), N};
}

Eigen::VectorXd sorted(Eigen::VectorXd v) {
  std::sort(v.data(), v.data() + v.size());
  return v;
}

double max_abs_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

CheckResult check_bccr(std::size_t N, std::size_t max_prime) {
  double dev = 0.0;
  std::size_t cases = 0;
  const auto primes = primes_up_to(std::min<Natural>(max_prime, N));
  for (Natural p : primes.primes()) {
    const auto sp = SiteIndex::of(p);
    for (Natural q : primes.primes()) {
      const auto sq = SiteIndex::of(q);
      for (Natural n = 1; n * p * q <= N; ++n) {
        const auto d = StateVector::basis(N, n);
        const auto mixed = annihilate(sp, create(sq, d)) - create(sq, annihilate(sp, d));
        const auto expected = p == q ? d : StateVector(N);
        dev = std::max(dev, (mixed - expected).amplitudes().cwiseAbs().maxCoeff());
        const auto pure = annihilate(sp, annihilate(sq, d)) - annihilate(sq, annihilate(sp, d));
        dev = std::max(dev, pure.amplitudes().cwiseAbs().maxCoeff());
        ++cases;
      }
    }
  }
  return finish("bccr", dev, 1e-14, std::to_string(cases) + " (p, q, n) cases");
}

CheckResult check_block_structure(std::size_t N, std::uint64_t seed, std::size_t samples, double perturbation) {
  std::mt19937_64 rng(seed);
  const HamiltonianModel model(N);
  const auto& arith = model.arithmetic();
  double dev = 0.0;
  std::size_t crossings = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto params = random_params(rng, N);
    auto H = model.assemble(params);
    if (perturbation != 0.0 && N >= 2) {
      std::vector<MatrixEntry> entries(H.entries().begin(), H.entries().end());
      entries.push_back({0, 1, perturbation});
      H = SparseSymmetricMatrix(N, std::move(entries));
    }
    for (const auto& e : H.entries()) {
      if (arith.omega_total(e.row + 1) != arith.omega_total(e.col + 1)) ++crossings;
    }
    const Eigen::VectorXd full = eigensolve(H.to_dense()).eigenvalues;
    Eigen::VectorXd merged(static_cast<Eigen::Index>(N));
    Eigen::Index at = 0;
    for (std::size_t b = 0; b < model.blocks().size(); ++b) {
      const auto values = eigensolve(model.block_matrix(b, params)).eigenvalues;
      merged.segment(at, values.size()) = values;
      at += values.size();
    }
    dev = std::max(dev, max_abs_diff(full, sorted(merged)));
  }
  auto r = finish("block_structure", dev, 1e-10, std::to_string(crossings) + " entries crossing Omega blocks");
  if (crossings > 0) r.passed = false;
  return r;
}

CheckResult check_kastrup_algebra(std::size_t depth, double perturbation) {
  if (depth < 3) throw std::invalid_argument("check_kastrup_algebra: depth must be >= 3");
  const std::complex<double> I{0.0, 1.0};
  const Eigen::MatrixXcd K0 = k0_matrix(depth);
  Eigen::MatrixXcd K1 = k1_matrix(depth);
  const Eigen::MatrixXcd K2 = k2_matrix(depth);
  const Eigen::MatrixXcd Kp = k_plus_matrix(depth);
  const Eigen::MatrixXcd Km = k_minus_matrix(depth);
  if (perturbation != 0.0) K1(1, 0) += perturbation;
  const auto M = static_cast<Eigen::Index>(depth) - 1;  // indices <= depth - 2
  const auto interior = [&](const Eigen::MatrixXcd& A) { return A.topLeftCorner(M, M).cwiseAbs().maxCoeff(); };

  double dev = 0.0;
  dev = std::max(dev, interior(K0 * K1 - K1 * K0 - I * K2));
  dev = std::max(dev, interior(K0 * K2 - K2 * K0 + I * K1));
  dev = std::max(dev, interior(K1 * K2 - K2 * K1 + I * K0));
  dev = std::max(dev, interior(Kp * Km - Km * Kp + 2.0 * K0));
  dev = std::max(dev, interior(Kp.adjoint() - Km));
  dev = std::max(dev, interior(K1.adjoint() - K1));
  dev = std::max(dev, interior(K2.adjoint() - K2));

  for (std::size_t j = 0; j < depth; ++j) {
    const auto e = SiteSequence::unit(depth, j);
    const auto lad = reconstruct_ladder(e);
    const auto hp = holstein_primakoff_inverse(e);
    for (std::size_t n = 0; n + 1 < depth; ++n) {
      const double a = n + 1 == j ? std::sqrt(static_cast<double>(j)) : 0.0;
      const double adag = j + 1 == n ? std::sqrt(static_cast<double>(n)) : 0.0;
      dev = std::max(dev, std::abs(lad.lower[n] - a));
      dev = std::max(dev, std::abs(lad.raise[n] - adag));
      dev = std::max(dev, std::abs(hp.lower[n] - k_minus(e)[n]));
      dev = std::max(dev, std::abs(hp.raise[n] - k_plus(e)[n]));
    }
    // [a, a^dagger] = 1 away from the cutoff.
    if (j + 2 < depth) {
      const auto aad = reconstruct_ladder(reconstruct_ladder(e).raise).lower;
      const auto ada = reconstruct_ladder(reconstruct_ladder(e).lower).raise;
      for (std::size_t n = 0; n + 1 < depth; ++n) {
        const double expected = n == j ? 1.0 : 0.0;
        dev = std::max(dev, std::abs(aad[n] - ada[n] - expected));
      }
    }
  }
  return finish("kastrup_algebra", dev, 1e-12, "depth " + std::to_string(depth));
}

CheckResult check_flow_invariance(std::size_t N, std::uint64_t seed, std::size_t samples) {
  std::mt19937_64 rng(seed ^ 0xf10f);
  double spectral = 0.0;
  double magnitude = 0.0;
  std::size_t pattern_mismatch = 0;
  std::size_t observable_mismatch = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto params = random_params(rng, N);
    const auto H = build_hamiltonian(params);
    const auto reference = eigensolve(H.to_dense());
    for (double tau : {0.1, 1.0, 10.0}) {
      const auto spec = random_flow_spec(N, tau, rng());
      const auto Ht = conjugated_hamiltonian(spec, H);
      if (Ht.entries().size() != H.stored_entries()) ++pattern_mismatch;
      for (std::size_t k = 0; k < std::min(Ht.entries().size(), H.stored_entries()); ++k) {
        const auto& a = Ht.entries()[k];
        const auto& b = H.entries()[k];
        if (a.row != b.row || a.col != b.col) ++pattern_mismatch;
        magnitude = std::max(magnitude, std::abs(std::abs(a.value) - std::abs(b.value)));
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Ht.to_dense());
      spectral = std::max(spectral, max_abs_diff(es.eigenvalues(), reference.eigenvalues));
      if (N >= 2 && !degenerate(reference.eigenvalues[0], reference.eigenvalues[1])) {
        const StateVector g(Eigen::VectorXcd(es.eigenvectors().col(0)));
        const double n_tau = expected_particle_number(g);
        const double n_ref = expected_particle_number(reference.state(0));
        if (std::abs(n_tau - n_ref) > 1e-8) ++observable_mismatch;
      }
    }
  }
  std::ostringstream d;
  d << "magnitude drift " << magnitude << ", pattern mismatches " << pattern_mismatch << ", <N> mismatches "
    << observable_mismatch;
  auto r = finish("flow_invariance", spectral, 1e-10, d.str());
  if (magnitude > 1e-12 || pattern_mismatch > 0 || observable_mismatch > 0) r.passed = false;
  return r;
}

CheckResult check_trace_identities(std::size_t N, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x7ace);
  const HamiltonianModel model(N);
  double dev = 0.0;
  for (int s = 0; s < 4; ++s) {
    auto params = random_params(rng, N);
    const auto closed = trace_identities(params);
    for (double t : {0.0, params.t}) {
      params.t = t;
      const double direct = model.assemble(params).trace();
      dev = std::max(dev, std::abs(direct - closed.trace_H) / std::max(1.0, std::abs(closed.trace_H)));
    }
    double n_trace = 0.0;
    for (const auto& b : model.blocks()) n_trace += static_cast<double>(b.k) * static_cast<double>(b.basis.size());
    dev = std::max(dev, std::abs(n_trace - closed.trace_N));
  }
  return finish("trace_identities", dev, 1e-8, "relative");
}

CheckResult check_toeplitz(std::size_t N) {
  double dev = 0.0;
  for (auto [mu, t] : {std::pair{0.0, 1.0}, std::pair{2.0, -0.1}}) {
    const HamiltonianParams params{0.0, mu, t, N};
    const auto block = single_particle_block(params);
    const Eigen::VectorXd numeric = eigensolve(block).eigenvalues;
    auto closed = single_particle_spectrum(params);
    std::sort(closed.begin(), closed.end());
    dev = std::max(dev, max_abs_diff(numeric, Eigen::Map<Eigen::VectorXd>(closed.data(), static_cast<Eigen::Index>(closed.size()))));
  }
  return finish("toeplitz_closed_form", dev, 1e-10);
}

CheckResult check_row_bound(std::size_t N) {
  const ArithmeticTable table(N);
  std::size_t bad = 0;
  for (Natural m = 1; m <= N; ++m) {
    const std::size_t count = hopping_row_untruncated(m).size() + 1;
    const std::size_t w = table.omega_distinct(m);
    if (count < w + 1 || count > 2 * w + 1) ++bad;
  }
  return finish("row_bound", static_cast<double>(bad), 0.0, "rows outside [omega+1, 2 omega+1]");
}

VerifyReport run_verify(const VerifyOptions& options) {
  if (options.N == 0) throw std::invalid_argument("verify: N must be >= 1");
  VerifyReport report;
  if (options.N < 4) {
    report.warnings.push_back("N=" + std::to_string(options.N) +
                              ": no index admits a hop or a pair of ladder moves, operator checks are vacuous");
  }
  report.checks.push_back(check_bccr(options.N));
  report.checks.push_back(check_block_structure(options.N, options.seed, options.random_params, options.perturbation));
  report.checks.push_back(check_kastrup_algebra(options.depth, options.perturbation));
  report.checks.push_back(check_flow_invariance(options.N, options.seed, options.random_params));
  report.checks.push_back(check_trace_identities(options.N, options.seed));
  report.checks.push_back(check_toeplitz(options.N));
  report.checks.push_back(check_row_bound(options.N));
  return report;
}

}  // namespace arithbh
