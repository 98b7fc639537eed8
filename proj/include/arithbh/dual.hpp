#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "arithbh/fock.hpp"
#include "arithbh/hamiltonian.hpp"

namespace arithbh {

/// Fourier coefficients (f_0, ..., f_{M-1}) of one site; M is the occupation
/// cutoff. Operators compress: anything landing on index >= M is dropped.
class SiteSequence {
 public:
  explicit SiteSequence(std::size_t depth);
  explicit SiteSequence(Eigen::VectorXcd coefficients);
  SiteSequence(std::initializer_list<Amplitude> coefficients);

  /// e_j, the sequence with a single 1 at index j.
  static SiteSequence unit(std::size_t depth, std::size_t j);

  std::size_t depth() const noexcept { return static_cast<std::size_t>(f_.size()); }
  Amplitude operator[](std::size_t j) const { return f_[static_cast<Eigen::Index>(j)]; }
  Amplitude& operator[](std::size_t j) { return f_[static_cast<Eigen::Index>(j)]; }
  const Eigen::VectorXcd& coefficients() const noexcept { return f_; }

 private:
  Eigen::VectorXcd f_;
};

/// f_n -> (n + 1/2) f_n.
SiteSequence k0(const SiteSequence& f);
/// (0, f_0, 2 f_1, 3 f_2, ...).
SiteSequence k_plus(const SiteSequence& f);
/// (f_1, 2 f_2, 3 f_3, ...).
SiteSequence k_minus(const SiteSequence& f);
/// (K+ + K-) / 2.
SiteSequence k1(const SiteSequence& f);
/// (K+ - K-) / 2i.
SiteSequence k2(const SiteSequence& f);

/// Matrix forms on depth M, acting on coefficient columns.
Eigen::MatrixXcd k0_matrix(std::size_t depth);
Eigen::MatrixXcd k_plus_matrix(std::size_t depth);
Eigen::MatrixXcd k_minus_matrix(std::size_t depth);
Eigen::MatrixXcd k1_matrix(std::size_t depth);
Eigen::MatrixXcd k2_matrix(std::size_t depth);

struct LadderPair {
  SiteSequence lower;  // a f
  SiteSequence raise;  // a^dagger f
};

/// a = (K0 + 1/2)^{-1/2} K-, a^dagger = K+ (K0 + 1/2)^{-1/2}.
LadderPair reconstruct_ladder(const SiteSequence& f);
/// (N+1)^{1/2} a f and a^dagger (N+1)^{1/2} f, which reproduce K- f and K+ f.
LadderPair holstein_primakoff_inverse(const SiteSequence& f);

/// Angles theta_p (radians) and time tau for
/// sigma_tau delta_n = prod_p p^{i tau theta_p a_p(n)} delta_n.
/// The equivalent frequency is nu_p = theta_p log p / (2 pi).
struct FlowSpec {
  std::map<Natural, double> theta;
  double tau = 0.0;

  /// Throws std::invalid_argument when an angle for a prime <= N is missing
  /// or not finite.
  void validate(Natural N) const;
};

/// Angles drawn uniformly from [-pi, pi) for every prime <= N.
FlowSpec random_flow_spec(Natural N, double tau, std::uint64_t seed);

/// tau sum_p a_p(n) theta_p log p, reduced to (-pi, pi].
double flow_phase(const FlowSpec& spec, Natural n);
StateVector flow_apply(const FlowSpec& spec, const StateVector& v);

struct ComplexEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  Amplitude value;
};

/// Hermitian matrix kept as its upper triangle, sorted by (row, col).
class SparseHermitianMatrix {
 public:
  SparseHermitianMatrix(std::size_t dim, std::vector<ComplexEntry> entries);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<ComplexEntry>& entries() const noexcept { return entries_; }
  Eigen::MatrixXcd to_dense() const;

 private:
  std::size_t dim_;
  std::vector<ComplexEntry> entries_;
};

/// sigma_tau^dagger H sigma_tau with the pattern of H.
SparseHermitianMatrix conjugated_hamiltonian(const FlowSpec& spec, const SparseSymmetricMatrix& H);
SparseHermitianMatrix conjugated_hamiltonian(const FlowSpec& spec, const HamiltonianParams& params);

struct SpinParams {
  double J = 0.0;
  double D = 0.0;
  double S = 0.5;

  void validate() const;
};

struct Couplings {
  double U = 0.0;
  double mu = 0.0;
  double t = 0.0;

  HamiltonianParams at(std::size_t N) const { return {U, mu, t, N}; }
};

/// (U, mu, t) = (-2(J+D), -(2S-1)(J+D), S J).
Couplings map_spin_chain(const SpinParams& spin);

}  // namespace arithbh
