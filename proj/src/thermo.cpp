#include "arithbh/thermo.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>

#include "arithbh/sweep.hpp"

namespace arithbh {

const char* to_string(GrandShift s) noexcept {
  return s == GrandShift::literal ? "literal" : "single";
}

GrandShift grand_shift_from_string(const std::string& s) {
  if (s == "literal") return GrandShift::literal;
  if (s == "single") return GrandShift::single;
  throw std::invalid_argument("unknown grand shift '" + s + "' (expected literal or single)");
}

double shift_coefficient(GrandShift s, double mu) noexcept {
  return s == GrandShift::literal ? mu : 0.0;
}

void ThermoParams::validate() const {
  HamiltonianParams::validate();
  if (!std::isfinite(beta) || beta <= 0.0) throw std::invalid_argument("beta must be finite and > 0");
}

double log_partition_function(const std::vector<Level>& levels, double beta) {
  if (levels.empty()) throw std::invalid_argument("log_partition_function: empty spectrum");
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& l : levels) top = std::max(top, -beta * l.energy);
  double sum = 0.0;
  for (const auto& l : levels) sum += std::exp(-beta * l.energy - top);
  return top + std::log(sum);
}

double log_partition_function(const HamiltonianModel& model, const ThermoParams& params) {
  params.validate();
  const auto levels = block_levels(model, params, all_eigenpairs, shift_coefficient(params.shift, params.mu));
  return log_partition_function(levels, params.beta);
}

double log_partition_function(const ThermoParams& params) {
  params.validate();
  return log_partition_function(HamiltonianModel(params.N), params);
}

double partition_function(const ThermoParams& params) {
  const double lz = log_partition_function(params);
  if (lz > std::log(DBL_MAX)) throw std::overflow_error("partition_function: Z overflows, use log_partition_function");
  return std::exp(lz);
}

// ---------------------------------------------------------------------------

PhaseGrid::PhaseGrid(std::vector<double> mu, std::vector<double> t)
    : mu_axis(std::move(mu)), t_axis(std::move(t)), values(mu_axis.size() * t_axis.size(), 0.0),
      flags(values.size(), 0) {}

void PhaseGrid::validate() const {
  if (mu_axis.empty() || t_axis.empty()) throw std::invalid_argument("PhaseGrid: empty axis");
  if (!std::is_sorted(mu_axis.begin(), mu_axis.end()) || !std::is_sorted(t_axis.begin(), t_axis.end()) ||
      std::adjacent_find(mu_axis.begin(), mu_axis.end()) != mu_axis.end() ||
      std::adjacent_find(t_axis.begin(), t_axis.end()) != t_axis.end()) {
    throw std::invalid_argument("PhaseGrid: axes must be strictly ascending");
  }
  if (values.size() != rows() * cols() || flags.size() != values.size()) {
    throw std::invalid_argument("PhaseGrid: value array does not match axes");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("PhaseGrid: non-finite value");
  }
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) throw std::invalid_argument("linspace: n must be >= 1");
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = hi;
  return out;
}

namespace {

void check_axes(const std::vector<double>& mu_axis, const std::vector<double>& t_axis) {
  PhaseGrid probe;
  probe.mu_axis = mu_axis;
  probe.t_axis = t_axis;
  probe.values.assign(mu_axis.size() * t_axis.size(), 0.0);
  probe.flags.assign(probe.values.size(), 0);
  probe.validate();
}

}  // namespace

PhaseGrid log_z_grid(double U, double beta, std::size_t N, const std::vector<double>& mu_axis,
                     const std::vector<double>& t_axis, const GridOptions& options) {
  check_axes(mu_axis, t_axis);
  ThermoParams base;
  base.U = U;
  base.N = N;
  base.beta = beta;
  base.shift = options.shift;
  base.validate();
  const HamiltonianModel model(N);
  PhaseGrid grid(mu_axis, t_axis);
  grid.meta = {U, beta, N, "logZ", std::numeric_limits<double>::quiet_NaN(), to_string(options.shift)};
  parallel_cells(grid.values.size(), [&](std::size_t cell) {
    ThermoParams p = base;
    p.mu = mu_axis[cell / t_axis.size()];
    p.t = t_axis[cell % t_axis.size()];
    grid.values[cell] = log_partition_function(model, p);
  }, options.threads);
  return grid;
}

PhaseGrid laplacian_filter(const PhaseGrid& grid) {
  if (grid.rows() < 3 || grid.cols() < 3) throw std::invalid_argument("laplacian_filter: grid must be at least 3x3");
  PhaseGrid out(std::vector<double>(grid.mu_axis.begin() + 1, grid.mu_axis.end() - 1),
                std::vector<double>(grid.t_axis.begin() + 1, grid.t_axis.end() - 1));
  out.meta = grid.meta;
  out.meta.observable = "laplacian(" + grid.meta.observable + ")";
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) {
      const std::size_t r = i + 1;
      const std::size_t c = j + 1;
      out.at(i, j) = grid.at(r - 1, c) + grid.at(r + 1, c) + grid.at(r, c - 1) + grid.at(r, c + 1) -
                     4.0 * grid.at(r, c);
    }
  }
  return out;
}

PhaseGrid phase_diagram_ground(double U, std::size_t N, const std::vector<double>& mu_axis,
                               const std::vector<double>& t_axis, const PhaseOptions& options) {
  check_axes(mu_axis, t_axis);
  HamiltonianParams base{U, 0.0, 0.0, N};
  base.validate();
  const HamiltonianModel model(N);
  if (options.level >= N) throw std::invalid_argument("phase_diagram_ground: level must be < N");
  PhaseGrid grid(mu_axis, t_axis);
  grid.meta.U = U;
  grid.meta.N = N;
  grid.meta.observable = options.level == 0 ? "N_ground" : "N_level" + std::to_string(options.level);
  if (options.op == PhaseOperator::grand) {
    grid.meta.observable += "_grand";
    grid.meta.shift = to_string(options.shift);
  }
  parallel_cells(grid.values.size(), [&](std::size_t cell) {
    HamiltonianParams p = base;
    p.mu = mu_axis[cell / t_axis.size()];
    p.t = t_axis[cell % t_axis.size()];
    const double shift = options.op == PhaseOperator::grand ? shift_coefficient(options.shift, p.mu) : 0.0;
    const auto obs = level_observable(model, p, options.level, shift);
    double v = obs.mean;
    if (std::abs(v - std::round(v)) <= 1e-6) v = std::round(v);
    grid.values[cell] = v;
    grid.flags[cell] = obs.degenerate ? 1 : 0;
  }, options.threads);
  return grid;
}

// ---------------------------------------------------------------------------

std::vector<Component> detect_singular_lines(const PhaseGrid& filtered, double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("detect_singular_lines: threshold must be > 0");
  const std::size_t R = filtered.rows();
  const std::size_t C = filtered.cols();
  std::vector<std::uint8_t> seen(R * C, 0);
  std::vector<Component> out;
  for (std::size_t i = 0; i < R; ++i) {
    for (std::size_t j = 0; j < C; ++j) {
      if (seen[i * C + j] || !(std::abs(filtered.at(i, j)) > threshold)) continue;
      Component comp;
      std::vector<Cell> stack{{i, j}};
      seen[i * C + j] = 1;
      while (!stack.empty()) {
        const auto [r, c] = stack.back();
        stack.pop_back();
        comp.push_back({r, c});
        for (int dr = -1; dr <= 1; ++dr) {
          for (int dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) continue;
            const auto nr = static_cast<std::ptrdiff_t>(r) + dr;
            const auto nc = static_cast<std::ptrdiff_t>(c) + dc;
            if (nr < 0 || nc < 0 || nr >= static_cast<std::ptrdiff_t>(R) || nc >= static_cast<std::ptrdiff_t>(C)) continue;
            const auto k = static_cast<std::size_t>(nr) * C + static_cast<std::size_t>(nc);
            if (seen[k] || !(std::abs(filtered.values[k]) > threshold)) continue;
            seen[k] = 1;
            stack.push_back({static_cast<std::size_t>(nr), static_cast<std::size_t>(nc)});
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Component& a, const Component& b) { return a.size() > b.size(); });
  return out;
}

double max_fraction_threshold(const PhaseGrid& filtered, double factor) {
  double m = 0.0;
  for (double v : filtered.values) m = std::max(m, std::abs(v));
  return factor * m;
}

double median_threshold(const PhaseGrid& filtered, double factor) {
  if (filtered.values.empty()) throw std::invalid_argument("median_threshold: empty grid");
  std::vector<double> a;
  a.reserve(filtered.values.size());
  for (double v : filtered.values) a.push_back(std::abs(v));
  const auto mid = a.begin() + static_cast<std::ptrdiff_t>(a.size() / 2);
  std::nth_element(a.begin(), mid, a.end());
  double med = *mid;
  if (a.size() % 2 == 0) med = 0.5 * (med + *std::max_element(a.begin(), mid));
  return factor * med;
}

RegionCount complement_regions(std::size_t rows, std::size_t cols, const std::vector<Component>& ridges,
                               std::size_t min_cells) {
  std::vector<std::uint8_t> blocked(rows * cols, 0);
  for (const auto& comp : ridges) {
    for (const auto& [r, c] : comp) blocked.at(r * cols + c) = 1;
  }
  RegionCount out;
  for (std::size_t start = 0; start < blocked.size(); ++start) {
    if (blocked[start]) continue;
    std::size_t size = 0;
    std::vector<std::size_t> stack{start};
    blocked[start] = 1;
    while (!stack.empty()) {
      const std::size_t k = stack.back();
      stack.pop_back();
      ++size;
      const std::size_t r = k / cols;
      const std::size_t c = k % cols;
      const auto visit = [&](std::size_t n) {
        if (!blocked[n]) {
          blocked[n] = 1;
          stack.push_back(n);
        }
      };
      if (r > 0) visit(k - cols);
      if (r + 1 < rows) visit(k + cols);
      if (c > 0) visit(k - 1);
      if (c + 1 < cols) visit(k + 1);
    }
    out.sizes.push_back(size);
    if (size >= min_cells) {
      ++out.regions;
    } else {
      ++out.fragments;
    }
  }
  std::sort(out.sizes.rbegin(), out.sizes.rend());
  return out;
}

std::vector<std::uint8_t> phase_boundary_mask(const PhaseGrid& grid) {
  const std::size_t R = grid.rows();
  const std::size_t C = grid.cols();
  std::vector<std::uint8_t> mask(R * C, 0);
  for (std::size_t i = 0; i < R; ++i) {
    for (std::size_t j = 0; j < C; ++j) {
      const std::size_t k = grid.index(i, j);
      if (grid.flags[k]) mask[k] = 1;
      if (i + 1 < R && grid.at(i, j) != grid.at(i + 1, j)) mask[k] = mask[grid.index(i + 1, j)] = 1;
      if (j + 1 < C && grid.at(i, j) != grid.at(i, j + 1)) mask[k] = mask[grid.index(i, j + 1)] = 1;
    }
  }
  return mask;
}

std::vector<Cell> ridge_cells_off_boundary(const std::vector<Component>& ridges, const PhaseGrid& phase,
                                           std::size_t offset, std::size_t radius) {
  const auto mask = phase_boundary_mask(phase);
  const auto R = static_cast<std::ptrdiff_t>(phase.rows());
  const auto C = static_cast<std::ptrdiff_t>(phase.cols());
  const auto rad = static_cast<std::ptrdiff_t>(radius);
  std::vector<Cell> out;
  for (const auto& comp : ridges) {
    for (const auto& [fr, fc] : comp) {
      const auto r = static_cast<std::ptrdiff_t>(fr + offset);
      const auto c = static_cast<std::ptrdiff_t>(fc + offset);
      bool near = false;
      for (auto i = std::max<std::ptrdiff_t>(0, r - rad); i <= std::min(R - 1, r + rad) && !near; ++i) {
        for (auto j = std::max<std::ptrdiff_t>(0, c - rad); j <= std::min(C - 1, c + rad); ++j) {
          if (mask[static_cast<std::size_t>(i * C + j)]) {
            near = true;
            break;
          }
        }
      }
      if (!near) out.push_back({fr, fc});
    }
  }
  return out;
}

TraceIdentities trace_identities(const HamiltonianParams& params) {
  params.validate();
  const ArithmeticTable table(params.N);
  std::uint64_t sum_q = 0;
  std::uint64_t sum_omega = 0;
  for (Natural n = 1; n <= params.N; ++n) {
    sum_q += table.q_sum(n);
    sum_omega += table.omega_total(n);
  }
  const double q = static_cast<double>(sum_q);
  const double o = static_cast<double>(sum_omega);
  return {0.5 * params.U * q - (0.5 * params.U + params.mu) * o, o};
}

}  // namespace arithbh
