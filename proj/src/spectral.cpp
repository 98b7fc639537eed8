#include "arithbh/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "arithbh/sweep.hpp"

namespace arithbh {

namespace {

void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index at = 0;
    vectors.col(c).cwiseAbs().maxCoeff(&at);
    if (vectors(at, c) < 0.0) vectors.col(c) *= -1.0;
  }
}

Eigen::VectorXd residuals_of(const SparseSymmetricMatrix& H, const Eigen::VectorXd& values,
                             const Eigen::MatrixXd& vectors) {
  Eigen::VectorXd r(values.size());
  Eigen::VectorXd y(vectors.rows());
  for (Eigen::Index c = 0; c < values.size(); ++c) {
    const Eigen::VectorXd x = vectors.col(c);
    H.multiply({x.data(), static_cast<std::size_t>(x.size())},
               {y.data(), static_cast<std::size_t>(y.size())});
    r[c] = (y - values[c] * x).norm();
  }
  return r;
}

bool use_dense(std::size_t dim, std::size_t count, const EigenOptions& options) {
  switch (options.solver) {
    case SolverKind::dense:
      return true;
    case SolverKind::lanczos:
      return false;
    case SolverKind::automatic:
      break;
  }
  return dim <= options.dense_limit || count >= dim;
}

}  // namespace

bool degenerate(double a, double b) noexcept {
  return std::abs(b - a) < degeneracy_tolerance * std::max(1.0, std::abs(a));
}

StateVector SpectrumResult::state(std::size_t i) const {
  return StateVector(Eigen::VectorXcd(eigenvectors.col(static_cast<Eigen::Index>(i)).cast<Amplitude>()));
}

SpectrumResult eigensolve(const Eigen::MatrixXd& H, std::size_t count) {
  if (H.rows() != H.cols()) throw std::invalid_argument("eigensolve: matrix is not square");
  const auto dim = static_cast<std::size_t>(H.rows());
  const auto k = static_cast<Eigen::Index>(std::min(count, dim));
  SpectrumResult out;
  if (dim == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolve: dense solver failed");
  out.eigenvalues = es.eigenvalues().head(k);
  out.eigenvectors = es.eigenvectors().leftCols(k);
  fix_signs(out.eigenvectors);
  out.residuals.resize(k);
  for (Eigen::Index c = 0; c < k; ++c) {
    out.residuals[c] = (H * out.eigenvectors.col(c) - out.eigenvalues[c] * out.eigenvectors.col(c)).norm();
  }
  return out;
}

SpectrumResult eigensolve(const SparseSymmetricMatrix& H, std::size_t count, const EigenOptions& options) {
  const std::size_t dim = H.dim();
  const std::size_t k = std::min(count, dim);
  if (use_dense(dim, k, options)) {
    auto out = eigensolve(H.to_dense(), k);
    out.residuals = residuals_of(H, out.eigenvalues, out.eigenvectors);
    return out;
  }
  auto lz = lanczos_lowest(H, k, options.lanczos);
  SpectrumResult out;
  out.eigenvalues = std::move(lz.eigenvalues);
  out.eigenvectors = std::move(lz.eigenvectors);
  fix_signs(out.eigenvectors);
  out.residuals = std::move(lz.residuals);
  return out;
}

SpectrumResult eigensolve_blocked(const HamiltonianModel& model, const HamiltonianParams& params,
                                  std::size_t count, const EigenOptions& options) {
  struct Pair {
    double energy;
    unsigned k;
    std::size_t block;
    Eigen::Index column;
  };
  const auto& blocks = model.blocks();
  std::vector<SpectrumResult> parts;
  std::vector<Pair> pairs;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto H = model.block_sparse(b, params);
    parts.push_back(eigensolve(H, count, options));
    for (Eigen::Index c = 0; c < parts.back().eigenvalues.size(); ++c) {
      pairs.push_back({parts.back().eigenvalues[c], blocks[b].k, b, c});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.k < b.k;
  });
  const auto k = static_cast<Eigen::Index>(std::min(count, pairs.size()));
  const auto dim = static_cast<Eigen::Index>(model.size());
  SpectrumResult out;
  out.eigenvalues.resize(k);
  out.eigenvectors = Eigen::MatrixXd::Zero(dim, k);
  out.residuals.resize(k);
  out.expected_N.resize(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto& p = pairs[static_cast<std::size_t>(i)];
    const auto& part = parts[p.block];
    const auto& basis = blocks[p.block].basis;
    out.eigenvalues[i] = p.energy;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      out.eigenvectors(static_cast<Eigen::Index>(basis[j] - 1), i) =
          part.eigenvectors(static_cast<Eigen::Index>(j), p.column);
    }
    out.residuals[i] = part.residuals[p.column];
    out.expected_N[i] = p.k;
  }
  return out;
}

std::vector<Level> block_levels(const HamiltonianModel& model, const HamiltonianParams& params,
                                std::size_t per_block, double shift, const EigenOptions& options) {
  std::vector<Level> levels;
  const auto& blocks = model.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const unsigned k = blocks[b].k;
    const std::size_t dim = blocks[b].basis.size();
    const std::size_t want = std::min(per_block, dim);
    Eigen::VectorXd values;
    if (use_dense(dim, want, options)) {
      const Eigen::MatrixXd m = model.block_matrix(b, params);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
      if (es.info() != Eigen::Success) throw std::runtime_error("block_levels: dense solver failed");
      values = es.eigenvalues().head(static_cast<Eigen::Index>(want));
    } else {
      values = lanczos_lowest(model.block_sparse(b, params), want, options.lanczos).eigenvalues;
    }
    for (double e : values) levels.push_back({e - shift * k, k});
  }
  std::stable_sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.particles < b.particles;
  });
  return levels;
}

double gap(const HamiltonianModel& model, const HamiltonianParams& params, const EigenOptions& options) {
  if (model.size() < 2) throw std::invalid_argument("gap: needs N >= 2");
  const auto levels = block_levels(model, params, 2, 0.0, options);
  return levels[1].energy - levels[0].energy;
}

double gap(const HamiltonianParams& params) {
  params.validate();
  return gap(HamiltonianModel(params.N), params);
}

std::vector<double> single_particle_spectrum(const HamiltonianParams& params) {
  params.validate();
  const std::size_t sites = PrimeTable(params.N).count();
  std::vector<double> out;
  out.reserve(sites);
  for (std::size_t k = 1; k <= sites; ++k) {
    const double angle = static_cast<double>(k) * std::numbers::pi / static_cast<double>(sites + 1);
    out.push_back(-params.mu - 2.0 * params.t * std::cos(angle));
  }
  return out;
}

LevelObservable level_observable(const std::vector<Level>& levels, std::size_t level) {
  if (level >= levels.size()) throw std::out_of_range("level_observable: level beyond the spectrum");
  const double e = levels[level].energy;
  LevelObservable out;
  out.energy = e;
  out.multiplicity = 0;
  double sum = 0.0;
  for (const auto& l : levels) {
    if (!degenerate(e, l.energy)) continue;
    ++out.multiplicity;
    sum += l.particles;
    const double v = l.particles;
    if (std::find(out.values.begin(), out.values.end(), v) == out.values.end()) out.values.push_back(v);
  }
  std::sort(out.values.begin(), out.values.end());
  out.mean = sum / static_cast<double>(out.multiplicity);
  out.degenerate = out.multiplicity > 1;
  return out;
}

LevelObservable level_observable(const HamiltonianModel& model, const HamiltonianParams& params,
                                 std::size_t level, double shift) {
  return level_observable(block_levels(model, params, all_eigenpairs, shift), level);
}

LevelObservable ground_state_observable(const HamiltonianParams& params) {
  params.validate();
  return level_observable(HamiltonianModel(params.N), params, 0, 0.0);
}

std::vector<GapPoint> gap_sweep(std::size_t N, double mu, double t, const std::vector<double>& ratios,
                                const EigenOptions& options, std::size_t threads) {
  HamiltonianParams base{0.0, mu, t, N};
  base.validate();
  if (N < 2) throw std::invalid_argument("gap_sweep: needs N >= 2");
  const HamiltonianModel model(N);
  std::vector<GapPoint> out(ratios.size());
  parallel_cells(ratios.size(), [&](std::size_t i) {
    HamiltonianParams p = base;
    p.U = ratios[i] * std::abs(t);
    const auto levels = block_levels(model, p, 2, 0.0, options);
    out[i] = {ratios[i], p.U, levels[0].energy, levels[1].energy, levels[1].energy - levels[0].energy};
  }, threads);
  return out;
}

std::size_t monotone_segments(const std::vector<double>& values) {
  if (values.size() < 2) return values.size();
  std::size_t segments = 1;
  int direction = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double d = values[i] - values[i - 1];
    const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (s == 0) continue;
    if (direction != 0 && s != direction) ++segments;
    direction = s;
  }
  return segments;
}

}  // namespace arithbh
