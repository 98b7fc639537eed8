#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "arithbh/hamiltonian.hpp"
#include "arithbh/spectral.hpp"

namespace arithbh {

/// How the chemical potential enters the grand-canonical exponent.
/// literal: exp(-beta (H - mu N)) with H already carrying -mu N.
/// single:  exp(-beta H), so mu is counted once.
enum class GrandShift { literal, single };

const char* to_string(GrandShift s) noexcept;
GrandShift grand_shift_from_string(const std::string& s);
/// Coefficient c in H - c N.
double shift_coefficient(GrandShift s, double mu) noexcept;

struct ThermoParams : HamiltonianParams {
  double beta = 1.0;
  GrandShift shift = GrandShift::literal;

  void validate() const;
};

/// log Z from merged block levels (log-sum-exp).
double log_partition_function(const std::vector<Level>& levels, double beta);
double log_partition_function(const HamiltonianModel& model, const ThermoParams& params);
double log_partition_function(const ThermoParams& params);
/// Z itself; throws std::overflow_error when it does not fit a double.
double partition_function(const ThermoParams& params);

struct GridMeta {
  double U = 0.0;
  double beta = std::numeric_limits<double>::quiet_NaN();
  std::size_t N = 0;
  std::string observable;
  double threshold = std::numeric_limits<double>::quiet_NaN();
  std::string shift;
};

/// One scalar per (mu_i, t_j); values are stored mu-major.
struct PhaseGrid {
  std::vector<double> mu_axis;
  std::vector<double> t_axis;
  std::vector<double> values;
  /// Nonzero where the cell sits on a degeneracy.
  std::vector<std::uint8_t> flags;
  GridMeta meta;

  PhaseGrid() = default;
  PhaseGrid(std::vector<double> mu, std::vector<double> t);

  std::size_t rows() const noexcept { return mu_axis.size(); }
  std::size_t cols() const noexcept { return t_axis.size(); }
  std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * cols() + j; }
  double& at(std::size_t i, std::size_t j) { return values.at(index(i, j)); }
  double at(std::size_t i, std::size_t j) const { return values.at(index(i, j)); }
  bool flagged(std::size_t i, std::size_t j) const { return flags.at(index(i, j)) != 0; }

  /// Throws std::invalid_argument on mismatched sizes, unsorted axes or
  /// non-finite values.
  void validate() const;
};

/// n evenly spaced points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t n);

struct GridOptions {
  GrandShift shift = GrandShift::literal;
  std::size_t threads = 0;
};

PhaseGrid log_z_grid(double U, double beta, std::size_t N, const std::vector<double>& mu_axis,
                     const std::vector<double>& t_axis, const GridOptions& options = {});

/// Valid 5-point Laplacian; the output loses one row and column on each edge.
PhaseGrid laplacian_filter(const PhaseGrid& grid);

/// Operator whose levels define the phase diagram.
enum class PhaseOperator { hamiltonian, grand };

struct PhaseOptions {
  std::size_t level = 0;
  PhaseOperator op = PhaseOperator::hamiltonian;
  GrandShift shift = GrandShift::literal;
  std::size_t threads = 0;
};

/// <N> of the chosen level per cell, snapped to an integer within 1e-6.
/// Degenerate cells hold the eigenspace mean and are flagged.
PhaseGrid phase_diagram_ground(double U, std::size_t N, const std::vector<double>& mu_axis,
                               const std::vector<double>& t_axis, const PhaseOptions& options = {});

using Cell = std::pair<std::size_t, std::size_t>;
using Component = std::vector<Cell>;

/// Cells with |value| > threshold in 8-connected components, largest first.
std::vector<Component> detect_singular_lines(const PhaseGrid& filtered, double threshold);

/// factor * max |value|.
double max_fraction_threshold(const PhaseGrid& filtered, double factor = 0.25);
/// factor * median |value|.
double median_threshold(const PhaseGrid& filtered, double factor = 5.0);

struct RegionCount {
  /// 4-connected regions of non-ridge cells with at least min_cells cells.
  std::size_t regions = 0;
  /// Regions below min_cells.
  std::size_t fragments = 0;
  std::vector<std::size_t> sizes;  // descending, all regions
};

RegionCount complement_regions(std::size_t rows, std::size_t cols, const std::vector<Component>& ridges,
                               std::size_t min_cells = 9);

/// Cells whose value differs from a 4-neighbour, plus flagged cells.
std::vector<std::uint8_t> phase_boundary_mask(const PhaseGrid& grid);

/// Ridge cells (in filtered coordinates, offset by `offset` into `phase`)
/// farther than `radius` cells (Chebyshev) from every boundary cell.
std::vector<Cell> ridge_cells_off_boundary(const std::vector<Component>& ridges, const PhaseGrid& phase,
                                           std::size_t offset = 1, std::size_t radius = 1);

struct TraceIdentities {
  double trace_H = 0.0;
  double trace_N = 0.0;
};

/// Closed forms (U/2) sum Q - (U/2 + mu) sum Omega and sum Omega.
TraceIdentities trace_identities(const HamiltonianParams& params);

}  // namespace arithbh
