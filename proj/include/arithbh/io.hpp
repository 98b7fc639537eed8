#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "arithbh/dual.hpp"
#include "arithbh/hamiltonian.hpp"
#include "arithbh/spectral.hpp"
#include "arithbh/thermo.hpp"

namespace arithbh {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Round-trip decimal form (17 significant digits).
std::string format_double(double v);
/// Inverse of format_double; accepts nan and inf.
double parse_double(const std::string& s);

/// Opens `path` for writing and hands the stream to `body`.
void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body);
std::string read_file(const std::filesystem::path& path);

// MatrixMarket coordinate files, lower triangle, 1-based.
void write_matrix_market(std::ostream& out, const SparseSymmetricMatrix& H);
SparseSymmetricMatrix read_matrix_market(std::istream& in);
void write_matrix_market(std::ostream& out, const SparseHermitianMatrix& H);
SparseHermitianMatrix read_matrix_market_hermitian(std::istream& in);

struct SpectrumRow {
  std::size_t index = 0;
  double eigenvalue = 0.0;
  double expected_N = 0.0;  // nan when unknown
  double residual = 0.0;
};

/// index,eigenvalue,expected_N,residual
void write_spectrum_csv(std::ostream& out, const SpectrumResult& s);
void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRow>& rows);
std::vector<SpectrumRow> read_spectrum_csv(std::istream& in);

/// First row holds the t axis, first column the mu axis.
void write_grid_csv(std::ostream& out, const PhaseGrid& grid);
PhaseGrid read_grid_csv(std::istream& in);

nlohmann::json grid_sidecar(const PhaseGrid& grid);
/// Restores meta and flags from a sidecar onto a grid read from CSV.
void apply_sidecar(PhaseGrid& grid, const nlohmann::json& sidecar);

/// mu t value triples, one block per mu row.
void write_gnuplot(std::ostream& out, const PhaseGrid& grid);

}  // namespace arithbh
