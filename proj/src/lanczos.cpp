#include "arithbh/lanczos.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

namespace arithbh {

namespace {

void apply(const SparseSymmetricMatrix& H, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  y.resize(x.size());
  H.multiply({x.data(), static_cast<std::size_t>(x.size())},
             {y.data(), static_cast<std::size_t>(y.size())});
}

// Two passes of classical Gram-Schmidt.
void orthogonalize(Eigen::VectorXd& w, const std::vector<Eigen::VectorXd>& locked,
                   const Eigen::MatrixXd& basis, Eigen::Index used) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& u : locked) w -= u.dot(w) * u;
    if (used > 0) {
      const auto V = basis.leftCols(used);
      w -= V * (V.transpose() * w);
    }
  }
}

struct RitzPair {
  double value;
  Eigen::VectorXd coords;
};

RitzPair lowest_ritz(const std::vector<double>& alpha, const std::vector<double>& beta) {
  const auto m = static_cast<Eigen::Index>(alpha.size());
  Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
  Eigen::VectorXd sub(std::max<Eigen::Index>(m - 1, 0));
  for (Eigen::Index i = 0; i + 1 < m; ++i) sub[i] = beta[static_cast<std::size_t>(i)];
  if (m == 1) return {diag[0], Eigen::VectorXd::Ones(1)};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  return {es.eigenvalues()[0], es.eigenvectors().col(0)};
}

}  // namespace

LanczosResult lanczos_lowest(const SparseSymmetricMatrix& H, std::size_t count,
                             const LanczosOptions& options) {
  const auto n = static_cast<Eigen::Index>(H.dim());
  if (count > H.dim()) throw std::invalid_argument("lanczos_lowest: count exceeds dimension");
  LanczosResult result;
  result.eigenvalues.resize(static_cast<Eigen::Index>(count));
  result.eigenvectors.resize(n, static_cast<Eigen::Index>(count));
  result.residuals.resize(static_cast<Eigen::Index>(count));
  if (count == 0) return result;

  const double norm = H.max_row_sum();
  if (norm == 0.0) {
    result.eigenvalues.setZero();
    result.eigenvectors = Eigen::MatrixXd::Identity(n, static_cast<Eigen::Index>(count));
    result.residuals.setZero();
    return result;
  }

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;
  std::vector<Eigen::VectorXd> locked;
  std::vector<double> locked_values;
  std::vector<double> locked_residuals;
  Eigen::VectorXd w(n);

  for (std::size_t target = 0; target < count; ++target) {
    Eigen::VectorXd start(n);
    for (Eigen::Index i = 0; i < n; ++i) start[i] = gauss(rng);
    orthogonalize(start, locked, Eigen::MatrixXd(), 0);
    start.normalize();

    const auto free_dim = static_cast<std::size_t>(n) - locked.size();
    const auto krylov = static_cast<Eigen::Index>(std::min(options.max_krylov, free_dim));
    Eigen::MatrixXd V(n, krylov);
    bool converged = false;
    double residual = 0.0;
    std::size_t iterations = 0;
    Eigen::VectorXd x;
    double theta = 0.0;

    for (std::size_t restart = 0; restart <= options.max_restarts && !converged; ++restart) {
      std::vector<double> alpha;
      std::vector<double> beta;
      V.col(0) = start;
      Eigen::Index used = 0;
      for (Eigen::Index j = 0; j < krylov; ++j) {
        used = j + 1;
        apply(H, V.col(j), w);
        ++result.matvecs;
        ++iterations;
        alpha.push_back(V.col(j).dot(w));
        orthogonalize(w, locked, V, used);
        const double b = w.norm();
        const bool exhausted = b <= 1e-14 * norm || used == krylov;
        // Cheap residual estimate beta_j |s_j| before paying for a full check.
        if (exhausted || used % 8 == 0) {
          const auto ritz = lowest_ritz(alpha, beta);
          if (exhausted || b * std::abs(ritz.coords[used - 1]) <= 0.1 * options.tolerance * norm) break;
        }
        beta.push_back(b);
        V.col(j + 1) = w / b;
      }
      const auto ritz = lowest_ritz(alpha, beta);
      theta = ritz.value;
      x = V.leftCols(used) * ritz.coords;
      orthogonalize(x, locked, Eigen::MatrixXd(), 0);
      x.normalize();
      apply(H, x, w);
      ++result.matvecs;
      residual = (w - theta * x).norm();
      converged = residual <= options.tolerance * norm;
      start = x;
    }
    if (!converged) {
      throw NonConvergenceError("lanczos_lowest: eigenpair " + std::to_string(target) +
                                    " did not converge",
                                iterations, residual / norm);
    }
    locked.push_back(x);
    locked_values.push_back(theta);
    locked_residuals.push_back(residual);
  }

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return locked_values[a] < locked_values[b]; });
  for (std::size_t i = 0; i < count; ++i) {
    const auto c = static_cast<Eigen::Index>(i);
    result.eigenvalues[c] = locked_values[order[i]];
    result.eigenvectors.col(c) = locked[order[i]];
    result.residuals[c] = locked_residuals[order[i]];
  }
  return result;
}

}  // namespace arithbh
