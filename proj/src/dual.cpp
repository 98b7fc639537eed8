#include "arithbh/dual.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>

namespace arithbh {

namespace {

constexpr Amplitude I{0.0, 1.0};

double ladder(std::size_t n) { return static_cast<double>(n); }

}  // namespace

SiteSequence::SiteSequence(std::size_t depth) : f_(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(depth))) {
  if (depth == 0) throw std::invalid_argument("SiteSequence: depth must be >= 1");
}

SiteSequence::SiteSequence(Eigen::VectorXcd coefficients) : f_(std::move(coefficients)) {
  if (f_.size() == 0) throw std::invalid_argument("SiteSequence: depth must be >= 1");
  if (!f_.allFinite()) throw std::invalid_argument("SiteSequence: non-finite coefficient");
}

SiteSequence::SiteSequence(std::initializer_list<Amplitude> coefficients)
    : SiteSequence(Eigen::VectorXcd(Eigen::Map<const Eigen::VectorXcd>(
          coefficients.begin(), static_cast<Eigen::Index>(coefficients.size())))) {}

SiteSequence SiteSequence::unit(std::size_t depth, std::size_t j) {
  SiteSequence s(depth);
  if (j >= depth) throw std::out_of_range("SiteSequence::unit: index beyond depth");
  s[j] = 1.0;
  return s;
}

SiteSequence k0(const SiteSequence& f) {
  SiteSequence out(f.depth());
  for (std::size_t n = 0; n < f.depth(); ++n) out[n] = (ladder(n) + 0.5) * f[n];
  return out;
}

SiteSequence k_plus(const SiteSequence& f) {
  SiteSequence out(f.depth());
  for (std::size_t n = 1; n < f.depth(); ++n) out[n] = ladder(n) * f[n - 1];
  return out;
}

SiteSequence k_minus(const SiteSequence& f) {
  SiteSequence out(f.depth());
  for (std::size_t n = 0; n + 1 < f.depth(); ++n) out[n] = ladder(n + 1) * f[n + 1];
  return out;
}

SiteSequence k1(const SiteSequence& f) {
  return SiteSequence(Eigen::VectorXcd(0.5 * (k_plus(f).coefficients() + k_minus(f).coefficients())));
}

SiteSequence k2(const SiteSequence& f) {
  return SiteSequence(Eigen::VectorXcd((k_plus(f).coefficients() - k_minus(f).coefficients()) / (2.0 * I)));
}

namespace {

template <class Op>
Eigen::MatrixXcd matrix_of(std::size_t depth, Op op) {
  const auto M = static_cast<Eigen::Index>(depth);
  Eigen::MatrixXcd m(M, M);
  for (Eigen::Index j = 0; j < M; ++j) m.col(j) = op(SiteSequence::unit(depth, static_cast<std::size_t>(j))).coefficients();
  return m;
}

}  // namespace

Eigen::MatrixXcd k0_matrix(std::size_t depth) { return matrix_of(depth, k0); }
Eigen::MatrixXcd k_plus_matrix(std::size_t depth) { return matrix_of(depth, k_plus); }
Eigen::MatrixXcd k_minus_matrix(std::size_t depth) { return matrix_of(depth, k_minus); }
Eigen::MatrixXcd k1_matrix(std::size_t depth) { return matrix_of(depth, k1); }
Eigen::MatrixXcd k2_matrix(std::size_t depth) { return matrix_of(depth, k2); }

namespace {

// Root factors are composed on squared coefficients, which stay integers,
// and a single sqrt is taken at the end.
struct SquaredLadder {
  std::vector<double> lower;  // a:        out[n] = sqrt(lower[n]) f[n+1]
  std::vector<double> raise;  // a^dagger: out[n] = sqrt(raise[n]) f[n-1]
  std::vector<double> level;  // K0 + 1/2 = N + 1 on e_n
};

SquaredLadder squared_ladder(std::size_t depth) {
  const auto K0 = k0_matrix(depth);
  const auto Kp = k_plus_matrix(depth);
  const auto Km = k_minus_matrix(depth);
  const auto M = static_cast<Eigen::Index>(depth);
  SquaredLadder s{std::vector<double>(depth, 0.0), std::vector<double>(depth, 0.0), std::vector<double>(depth)};
  for (Eigen::Index n = 0; n < M; ++n) s.level[static_cast<std::size_t>(n)] = K0(n, n).real() + 0.5;
  for (Eigen::Index n = 0; n + 1 < M; ++n) {
    s.lower[static_cast<std::size_t>(n)] = std::norm(Km(n, n + 1)) / s.level[static_cast<std::size_t>(n)];
  }
  for (Eigen::Index n = 1; n < M; ++n) {
    s.raise[static_cast<std::size_t>(n)] = std::norm(Kp(n, n - 1)) / s.level[static_cast<std::size_t>(n - 1)];
  }
  return s;
}

}  // namespace

LadderPair reconstruct_ladder(const SiteSequence& f) {
  const std::size_t M = f.depth();
  const auto s = squared_ladder(M);
  LadderPair out{SiteSequence(M), SiteSequence(M)};
  for (std::size_t n = 0; n + 1 < M; ++n) out.lower[n] = std::sqrt(s.lower[n]) * f[n + 1];
  for (std::size_t n = 1; n < M; ++n) out.raise[n] = std::sqrt(s.raise[n]) * f[n - 1];
  return out;
}

LadderPair holstein_primakoff_inverse(const SiteSequence& f) {
  const std::size_t M = f.depth();
  const auto s = squared_ladder(M);
  LadderPair out{SiteSequence(M), SiteSequence(M)};
  for (std::size_t n = 0; n + 1 < M; ++n) out.lower[n] = std::sqrt(s.level[n] * s.lower[n]) * f[n + 1];
  for (std::size_t n = 1; n < M; ++n) out.raise[n] = std::sqrt(s.raise[n] * s.level[n - 1]) * f[n - 1];
  return out;
}

// ---------------------------------------------------------------------------

void FlowSpec::validate(Natural N) const {
  if (!std::isfinite(tau)) throw std::invalid_argument("FlowSpec: tau must be finite");
  const PrimeTable primes(N);
  for (Natural p : primes.primes()) {
    const auto it = theta.find(p);
    if (it == theta.end()) throw std::invalid_argument("FlowSpec: no angle for prime " + std::to_string(p));
    if (!std::isfinite(it->second)) throw std::invalid_argument("FlowSpec: non-finite angle for prime " + std::to_string(p));
  }
}

FlowSpec random_flow_spec(Natural N, double tau, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  FlowSpec spec;
  spec.tau = tau;
  const PrimeTable primes(N);
  for (Natural p : primes.primes()) spec.theta[p] = angle(rng);
  return spec;
}

double flow_phase(const FlowSpec& spec, Natural n) {
  double phase = 0.0;
  for (const auto& [p, a] : factorize(n).factors) {
    const auto it = spec.theta.find(p);
    if (it == spec.theta.end()) throw std::invalid_argument("flow_phase: no angle for prime " + std::to_string(p));
    phase += static_cast<double>(a) * it->second * std::log(static_cast<double>(p));
  }
  return std::remainder(spec.tau * phase, 2.0 * std::numbers::pi);
}

StateVector flow_apply(const FlowSpec& spec, const StateVector& v) {
  spec.validate(v.dim());
  StateVector out(v.dim());
  for (Natural n = 1; n <= v.dim(); ++n) out[n] = std::polar(1.0, flow_phase(spec, n)) * v[n];
  return out;
}

SparseHermitianMatrix::SparseHermitianMatrix(std::size_t dim, std::vector<ComplexEntry> entries)
    : dim_(dim), entries_(std::move(entries)) {
  for (auto& e : entries_) {
    if (e.row >= dim_ || e.col >= dim_) throw std::out_of_range("SparseHermitianMatrix: entry outside the matrix");
    if (e.row > e.col) {
      std::swap(e.row, e.col);
      e.value = std::conj(e.value);
    }
    if (e.row == e.col && e.value.imag() != 0.0) throw std::invalid_argument("SparseHermitianMatrix: complex diagonal");
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const ComplexEntry& a, const ComplexEntry& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
}

Eigen::MatrixXcd SparseHermitianMatrix::to_dense() const {
  const auto n = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& e : entries_) {
    const auto r = static_cast<Eigen::Index>(e.row);
    const auto c = static_cast<Eigen::Index>(e.col);
    m(r, c) += e.value;
    if (r != c) m(c, r) += std::conj(e.value);
  }
  return m;
}

SparseHermitianMatrix conjugated_hamiltonian(const FlowSpec& spec, const SparseSymmetricMatrix& H) {
  spec.validate(H.dim());
  std::vector<double> phase(H.dim());
  for (std::size_t i = 0; i < H.dim(); ++i) phase[i] = flow_phase(spec, i + 1);
  std::vector<ComplexEntry> entries;
  entries.reserve(H.stored_entries());
  for (const auto& e : H.entries()) {
    const Amplitude value = e.row == e.col ? Amplitude(e.value)
                                           : e.value * std::polar(1.0, phase[e.col] - phase[e.row]);
    entries.push_back({e.row, e.col, value});
  }
  return SparseHermitianMatrix(H.dim(), std::move(entries));
}

SparseHermitianMatrix conjugated_hamiltonian(const FlowSpec& spec, const HamiltonianParams& params) {
  return conjugated_hamiltonian(spec, build_hamiltonian(params));
}

void SpinParams::validate() const {
  if (!std::isfinite(J) || !std::isfinite(D) || !std::isfinite(S)) throw std::invalid_argument("SpinParams: values must be finite");
  if (S <= 0.0) throw std::invalid_argument("SpinParams: S must be > 0");
}

Couplings map_spin_chain(const SpinParams& spin) {
  spin.validate();
  const double JD = spin.J + spin.D;
  return {-2.0 * JD, -(2.0 * spin.S - 1.0) * JD, spin.S * spin.J};
}

}  // namespace arithbh
