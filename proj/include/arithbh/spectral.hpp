#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "arithbh/fock.hpp"
#include "arithbh/hamiltonian.hpp"
#include "arithbh/lanczos.hpp"

namespace arithbh {

enum class SolverKind { automatic, dense, lanczos };

struct EigenOptions {
  SolverKind solver = SolverKind::automatic;
  /// automatic picks the dense solver up to this dimension.
  std::size_t dense_limit = 2000;
  LanczosOptions lanczos{};
};

inline constexpr std::size_t all_eigenpairs = std::numeric_limits<std::size_t>::max();

/// Relative tolerance for treating two levels as degenerate.
inline constexpr double degeneracy_tolerance = 1e-9;

bool degenerate(double a, double b) noexcept;

struct SpectrumResult {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // columns; largest-magnitude amplitude positive
  Eigen::VectorXd residuals;     // ||H v - E v||
  /// <N> per eigenvector; empty unless the solve knows the particle number.
  Eigen::VectorXd expected_N;

  std::size_t size() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
  StateVector state(std::size_t i) const;
};

/// Lowest `count` eigenpairs (or all) of a symmetric matrix.
SpectrumResult eigensolve(const SparseSymmetricMatrix& H, std::size_t count = all_eigenpairs,
                          const EigenOptions& options = {});
SpectrumResult eigensolve(const Eigen::MatrixXd& H, std::size_t count = all_eigenpairs);

/// Eigenpairs of H|_{F_N} computed block by block in Omega and merged. Each
/// eigenvector lies in one block, so expected_N holds exact integers.
SpectrumResult eigensolve_blocked(const HamiltonianModel& model, const HamiltonianParams& params,
                                  std::size_t count = all_eigenpairs, const EigenOptions& options = {});

/// One eigenvalue together with the Omega block it comes from.
struct Level {
  double energy = 0.0;
  unsigned particles = 0;
};

/// Per-block spectra merged into one ascending list. With `per_block`
/// finite only that many of the lowest levels of each block are kept.
/// `shift` adds -shift * k to every level of block k.
std::vector<Level> block_levels(const HamiltonianModel& model, const HamiltonianParams& params,
                                std::size_t per_block = all_eigenpairs, double shift = 0.0,
                                const EigenOptions& options = {});

/// E_1 - E_0 of H|_{F_N}.
double gap(const HamiltonianParams& params);
double gap(const HamiltonianModel& model, const HamiltonianParams& params, const EigenOptions& options = {});

/// E_{N,k} = -mu - 2t cos(k pi / (pi(N)+1)) for k = 1..pi(N), in k order.
std::vector<double> single_particle_spectrum(const HamiltonianParams& params);

/// <N> on the eigenspace of one level.
struct LevelObservable {
  double energy = 0.0;
  /// Distinct <N> values over the eigenspace.
  std::vector<double> values;
  /// Mean over an orthonormal basis of the eigenspace.
  double mean = 0.0;
  std::size_t multiplicity = 1;
  bool degenerate = false;
};

/// The eigenspace containing the `level`-th eigenvalue (counted with
/// multiplicity) of H - shift * N.
LevelObservable level_observable(const std::vector<Level>& levels, std::size_t level = 0);
LevelObservable level_observable(const HamiltonianModel& model, const HamiltonianParams& params,
                                 std::size_t level = 0, double shift = 0.0);

/// E_0 and ground-state <N> of H|_{F_N}.
LevelObservable ground_state_observable(const HamiltonianParams& params);

struct GapPoint {
  double ratio = 0.0;  // U / |t|
  double U = 0.0;
  double E0 = 0.0;
  double E1 = 0.0;
  double gap = 0.0;
};

/// Gap at U = ratio * |t| for each ratio, fixed (mu, t, N).
std::vector<GapPoint> gap_sweep(std::size_t N, double mu, double t, const std::vector<double>& ratios,
                                const EigenOptions& options = {}, std::size_t threads = 0);

/// Maximal monotone runs in a sequence; flat steps extend the current run.
std::size_t monotone_segments(const std::vector<double>& values);

}  // namespace arithbh
