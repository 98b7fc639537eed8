#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "arithbh/arith.hpp"

namespace arithbh {

/// (U, mu, t) and the truncation size N of F_N.
struct HamiltonianParams {
  double U = 0.0;
  double mu = 0.0;
  double t = 0.0;
  std::size_t N = 1;

  /// Throws std::invalid_argument unless N >= 1 and all values are finite.
  void validate() const;
};

/// One stored entry; indices are 0-based (row = n - 1) with row <= col.
struct MatrixEntry {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

/// Real symmetric matrix kept as its upper triangle. Entries are structural:
/// an entry may hold the value 0 and still count towards the pattern.
class SparseSymmetricMatrix {
 public:
  SparseSymmetricMatrix() = default;
  /// Entries with row > col are mirrored; duplicate positions accumulate.
  SparseSymmetricMatrix(std::size_t dim, std::vector<MatrixEntry> entries);

  std::size_t dim() const noexcept { return dim_; }
  /// Upper-triangle entries sorted by (row, col).
  std::span<const MatrixEntry> entries() const noexcept { return entries_; }
  /// Stored upper-triangle entries, diagonal included.
  std::size_t stored_entries() const noexcept { return entries_.size(); }
  /// Structural nonzeros of the full matrix (off-diagonals counted twice).
  std::size_t structural_nonzeros() const noexcept;

  /// Value at (row, col), 0-based; zero outside the pattern.
  double coeff(std::size_t row, std::size_t col) const;
  bool has_entry(std::size_t row, std::size_t col) const;
  double trace() const noexcept;
  /// max_i sum_j |h_ij|, an upper bound on the spectral norm.
  double max_row_sum() const;

  /// y = H x.
  void multiply(std::span<const double> x, std::span<double> y) const;
  Eigen::MatrixXd to_dense() const;
  Eigen::SparseMatrix<double, Eigen::RowMajor> to_sparse() const;

 private:
  std::size_t dim_ = 0;
  std::vector<MatrixEntry> entries_;
};

/// A hopping target: column n' and the coefficient sqrt(weight_sq), where
/// weight_sq = (a_{p'}(m)+1) * a_p(m) is kept as an exact integer.
struct HoppingTerm {
  Natural column = 0;
  std::uint64_t weight_sq = 0;

  double coefficient() const noexcept { return std::sqrt(static_cast<double>(weight_sq)); }
  friend bool operator==(const HoppingTerm&, const HoppingTerm&) = default;
};

/// (U/2) Q(n) - (U/2 + mu) Omega(n).
double diagonal_entry(Natural n, const HamiltonianParams& params);

/// Hopping targets of row m inside F_N, sorted by column; no -t factor.
std::vector<HoppingTerm> hopping_row(Natural m, Natural N);
/// The same moves before truncation to F_N.
std::vector<HoppingTerm> hopping_row_untruncated(Natural m);

/// diag(diagonal_entry) - t * Hop on F_N.
SparseSymmetricMatrix build_hamiltonian(const HamiltonianParams& params);

/// Compression of H to span{delta_p : p <= N}: -mu on the diagonal and -t
/// on the first off-diagonals, size pi(N).
Eigen::MatrixXd single_particle_block(const HamiltonianParams& params);

/// Indices of F_N with Omega(n) = k, increasing.
struct OmegaBlock {
  unsigned k = 0;
  std::vector<Natural> basis;
};

/// Parameter-free structure of H|_{F_N}: arithmetic data, the hopping
/// pattern and the Omega-block decomposition. Assembly for any (U, mu, t)
/// only recomputes values.
class HamiltonianModel {
 public:
  explicit HamiltonianModel(std::size_t N);

  std::size_t size() const noexcept { return N_; }
  const ArithmeticTable& arithmetic() const noexcept { return arith_; }
  const PrimeTable& primes() const noexcept { return primes_; }

  std::vector<HoppingTerm> hopping_row(Natural m) const;
  std::vector<HoppingTerm> hopping_row_untruncated(Natural m) const;

  /// Hopping pattern as upper-triangle entries holding the bare coefficients.
  std::span<const MatrixEntry> hopping_pattern() const noexcept { return hop_; }
  std::size_t structural_nonzeros() const noexcept { return N_ + 2 * hop_.size(); }

  SparseSymmetricMatrix assemble(const HamiltonianParams& params) const;
  Eigen::VectorXd diagonal(const HamiltonianParams& params) const;

  const std::vector<OmegaBlock>& blocks() const noexcept { return blocks_; }
  /// Dense H restricted to the block with index b in blocks().
  Eigen::MatrixXd block_matrix(std::size_t b, const HamiltonianParams& params) const;
  SparseSymmetricMatrix block_sparse(std::size_t b, const HamiltonianParams& params) const;

 private:
  struct LocalEntry {
    std::size_t row, col;
    double coefficient;
  };

  void check(const HamiltonianParams& params) const;

  std::size_t N_;
  ArithmeticTable arith_;
  PrimeTable primes_;
  std::vector<MatrixEntry> hop_;
  std::vector<OmegaBlock> blocks_;
  std::vector<std::vector<LocalEntry>> block_hop_;
};

}  // namespace arithbh
