#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "arithbh/hamiltonian.hpp"

namespace arithbh {

/// Raised when an iterative eigensolver exhausts its budget.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, std::size_t iterations, double residual)
      : std::runtime_error(what + " (iterations=" + std::to_string(iterations) +
                           ", residual=" + std::to_string(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}

  std::size_t iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  std::size_t iterations_;
  double residual_;
};

struct LanczosOptions {
  /// Converged when ||H x - theta x|| <= tolerance * ||H||.
  double tolerance = 1e-11;
  std::size_t max_krylov = 200;
  std::size_t max_restarts = 40;
  std::uint64_t seed = 0x5eed;
};

struct LanczosResult {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // columns
  Eigen::VectorXd residuals;
  std::size_t matvecs = 0;
};

/// Lowest `count` eigenpairs of a symmetric matrix by Lanczos with full
/// reorthogonalization. Pairs are found one at a time and locked; each new
/// run is kept orthogonal to the locked vectors, so degenerate eigenvalues
/// are returned with their multiplicity.
LanczosResult lanczos_lowest(const SparseSymmetricMatrix& H, std::size_t count,
                             const LanczosOptions& options = {});

}  // namespace arithbh
