#include "arithbh/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace arithbh {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  if (s == "nan" || s.empty()) return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto res = std::from_chars(first, s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw IoError("not a number: '" + s + "'");
  return v;
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  body(out);
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

struct MarketHeader {
  std::size_t rows = 0, cols = 0, nnz = 0;
};

MarketHeader read_market_header(std::istream& in, const std::string& field, const std::string& symmetry) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("MatrixMarket: empty input");
  std::istringstream banner(line);
  std::string tag, object, format, f, sym;
  banner >> tag >> object >> format >> f >> sym;
  if (tag != "%%MatrixMarket" || object != "matrix" || format != "coordinate" || f != field || sym != symmetry) {
    throw IoError("MatrixMarket: expected 'coordinate " + field + " " + symmetry + "', got '" + line + "'");
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  MarketHeader h;
  std::istringstream size(line);
  if (!(size >> h.rows >> h.cols >> h.nnz) || h.rows != h.cols) throw IoError("MatrixMarket: bad size line");
  return h;
}

std::size_t market_index(const std::string& s, std::size_t dim) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || v == 0 || v > dim) throw IoError("MatrixMarket: bad index '" + s + "'");
  return v - 1;
}

}  // namespace

void write_matrix_market(std::ostream& out, const SparseSymmetricMatrix& H) {
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << H.dim() << ' ' << H.dim() << ' ' << H.stored_entries() << '\n';
  for (const auto& e : H.entries()) {
    out << e.col + 1 << ' ' << e.row + 1 << ' ' << format_double(e.value) << '\n';
  }
}

SparseSymmetricMatrix read_matrix_market(std::istream& in) {
  const auto h = read_market_header(in, "real", "symmetric");
  std::vector<MatrixEntry> entries;
  entries.reserve(h.nnz);
  std::string r, c, v;
  for (std::size_t k = 0; k < h.nnz; ++k) {
    if (!(in >> r >> c >> v)) throw IoError("MatrixMarket: truncated entry list");
    entries.push_back({market_index(r, h.rows), market_index(c, h.rows), parse_double(v)});
  }
  return SparseSymmetricMatrix(h.rows, std::move(entries));
}

void write_matrix_market(std::ostream& out, const SparseHermitianMatrix& H) {
  out << "%%MatrixMarket matrix coordinate complex hermitian\n";
  out << H.dim() << ' ' << H.dim() << ' ' << H.entries().size() << '\n';
  for (const auto& e : H.entries()) {
    const auto lower = std::conj(e.value);
    out << e.col + 1 << ' ' << e.row + 1 << ' ' << format_double(lower.real()) << ' '
        << format_double(lower.imag()) << '\n';
  }
}

SparseHermitianMatrix read_matrix_market_hermitian(std::istream& in) {
  const auto h = read_market_header(in, "complex", "hermitian");
  std::vector<ComplexEntry> entries;
  entries.reserve(h.nnz);
  std::string r, c, re, im;
  for (std::size_t k = 0; k < h.nnz; ++k) {
    if (!(in >> r >> c >> re >> im)) throw IoError("MatrixMarket: truncated entry list");
    entries.push_back({market_index(r, h.rows), market_index(c, h.rows), {parse_double(re), parse_double(im)}});
  }
  return SparseHermitianMatrix(h.rows, std::move(entries));
}

// ---------------------------------------------------------------------------

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRow>& rows) {
  out << "index,eigenvalue,expected_N,residual\n";
  for (const auto& r : rows) {
    out << r.index << ',' << format_double(r.eigenvalue) << ',' << format_double(r.expected_N) << ','
        << format_double(r.residual) << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const SpectrumResult& s) {
  std::vector<SpectrumRow> rows;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto c = static_cast<Eigen::Index>(i);
    const double n = s.expected_N.size() > c ? s.expected_N[c] : std::numeric_limits<double>::quiet_NaN();
    rows.push_back({i, s.eigenvalues[c], n, s.residuals[c]});
  }
  write_spectrum_csv(out, rows);
}

std::vector<SpectrumRow> read_spectrum_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || split(line, ',') != std::vector<std::string>{"index", "eigenvalue", "expected_N", "residual"}) {
    throw IoError("spectrum CSV: bad header");
  }
  std::vector<SpectrumRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 4) throw IoError("spectrum CSV: expected 4 fields in '" + line + "'");
    rows.push_back({static_cast<std::size_t>(std::stoull(f[0])), parse_double(f[1]), parse_double(f[2]),
                    parse_double(f[3])});
  }
  return rows;
}

void write_grid_csv(std::ostream& out, const PhaseGrid& grid) {
  out << "mu\\t";
  for (double t : grid.t_axis) out << ',' << format_double(t);
  out << '\n';
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    out << format_double(grid.mu_axis[i]);
    for (std::size_t j = 0; j < grid.cols(); ++j) out << ',' << format_double(grid.at(i, j));
    out << '\n';
  }
}

PhaseGrid read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("grid CSV: empty input");
  auto head = split(line, ',');
  if (head.size() < 2 || head[0] != "mu\\t") throw IoError("grid CSV: bad header");
  std::vector<double> t;
  for (std::size_t j = 1; j < head.size(); ++j) t.push_back(parse_double(head[j]));
  std::vector<double> mu;
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != t.size() + 1) throw IoError("grid CSV: ragged row");
    mu.push_back(parse_double(f[0]));
    for (std::size_t j = 1; j < f.size(); ++j) values.push_back(parse_double(f[j]));
  }
  PhaseGrid grid(std::move(mu), std::move(t));
  grid.values = std::move(values);
  try {
    grid.validate();
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("grid CSV: ") + e.what());
  }
  return grid;
}

nlohmann::json grid_sidecar(const PhaseGrid& grid) {
  nlohmann::json j;
  j["U"] = grid.meta.U;
  j["beta"] = std::isnan(grid.meta.beta) ? nlohmann::json(nullptr) : nlohmann::json(grid.meta.beta);
  j["N"] = grid.meta.N;
  j["observable"] = grid.meta.observable;
  j["threshold"] = std::isnan(grid.meta.threshold) ? nlohmann::json(nullptr) : nlohmann::json(grid.meta.threshold);
  if (!grid.meta.shift.empty()) j["grand_shift"] = grid.meta.shift;
  j["rows"] = grid.rows();
  j["cols"] = grid.cols();
  auto cells = nlohmann::json::array();
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    for (std::size_t jj = 0; jj < grid.cols(); ++jj) {
      if (grid.flagged(i, jj)) cells.push_back({i, jj});
    }
  }
  j["degenerate_cells"] = cells;
  return j;
}

void apply_sidecar(PhaseGrid& grid, const nlohmann::json& j) {
  try {
    if (j.at("rows").get<std::size_t>() != grid.rows() || j.at("cols").get<std::size_t>() != grid.cols()) {
      throw IoError("sidecar does not match grid dimensions");
    }
    grid.meta.U = j.at("U").get<double>();
    grid.meta.beta = j.at("beta").is_null() ? std::numeric_limits<double>::quiet_NaN() : j.at("beta").get<double>();
    grid.meta.N = j.at("N").get<std::size_t>();
    grid.meta.observable = j.at("observable").get<std::string>();
    grid.meta.threshold =
        j.at("threshold").is_null() ? std::numeric_limits<double>::quiet_NaN() : j.at("threshold").get<double>();
    grid.meta.shift = j.value("grand_shift", std::string());
    std::fill(grid.flags.begin(), grid.flags.end(), 0);
    for (const auto& c : j.at("degenerate_cells")) {
      grid.flags.at(grid.index(c.at(0).get<std::size_t>(), c.at(1).get<std::size_t>())) = 1;
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("sidecar: ") + e.what());
  }
}

void write_gnuplot(std::ostream& out, const PhaseGrid& grid) {
  out << "# mu t " << (grid.meta.observable.empty() ? "value" : grid.meta.observable) << '\n';
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    if (i > 0) out << '\n';
    for (std::size_t j = 0; j < grid.cols(); ++j) {
      out << format_double(grid.mu_axis[i]) << ' ' << format_double(grid.t_axis[j]) << ' '
          << format_double(grid.at(i, j)) << '\n';
    }
  }
}

}  // namespace arithbh
