#include "arithbh/hamiltonian.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>

namespace arithbh {

namespace {

double order_value(unsigned q, unsigned omega, const HamiltonianParams& p) {
  return 0.5 * p.U * q - (0.5 * p.U + p.mu) * omega;
}

// Moves of row m along consecutive-prime pairs (p_k, p_{k+1}). For each prime
// p | m there is an upward move p -> p_{k+1} and, unless p = 2, a downward
// move p -> p_{k-1}.
std::vector<HoppingTerm> hopping_moves(const Factorization& f, const PrimeTable& primes,
                                       Natural limit) {
  std::vector<HoppingTerm> out;
  const Natural m = f.n;
  for (const auto& [p, a] : f.factors) {
    const auto up = primes.next_prime(p);
    if (!up) throw std::logic_error("hopping_row: prime table does not reach successor of " +
                                    std::to_string(p));
    {
      const Natural col = checked_mul(m / p, *up);
      const std::uint64_t w = static_cast<std::uint64_t>(f.exponent_of(*up) + 1) * a;
      if (limit == 0 || col <= limit) out.push_back({col, w});
    }
    if (const auto down = primes.previous_prime(p)) {
      const Natural col = checked_mul(m / p, *down);
      const std::uint64_t w = static_cast<std::uint64_t>(f.exponent_of(*down) + 1) * a;
      if (limit == 0 || col <= limit) out.push_back({col, w});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const HoppingTerm& x, const HoppingTerm& y) { return x.column < y.column; });
  return out;
}

Natural successor_bound(Natural m) { return std::max<Natural>(2 * m, 3); }

}  // namespace

void HamiltonianParams::validate() const {
  if (N < 1) throw std::invalid_argument("HamiltonianParams: N must be >= 1");
  if (!std::isfinite(U) || !std::isfinite(mu) || !std::isfinite(t)) {
    throw std::invalid_argument("HamiltonianParams: U, mu and t must be finite");
  }
}

// ---------------------------------------------------------------------------

SparseSymmetricMatrix::SparseSymmetricMatrix(std::size_t dim, std::vector<MatrixEntry> entries)
    : dim_(dim) {
  for (auto& e : entries) {
    if (e.row >= dim || e.col >= dim) {
      throw std::out_of_range("SparseSymmetricMatrix: entry outside dimension");
    }
    if (!std::isfinite(e.value)) throw std::invalid_argument("SparseSymmetricMatrix: non-finite value");
    if (e.row > e.col) std::swap(e.row, e.col);
  }
  std::sort(entries.begin(), entries.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
    return std::tie(a.row, a.col) < std::tie(b.row, b.col);
  });
  for (const auto& e : entries) {
    if (!entries_.empty() && entries_.back().row == e.row && entries_.back().col == e.col) {
      entries_.back().value += e.value;
    } else {
      entries_.push_back(e);
    }
  }
}

std::size_t SparseSymmetricMatrix::structural_nonzeros() const noexcept {
  std::size_t n = 0;
  for (const auto& e : entries_) n += (e.row == e.col) ? 1 : 2;
  return n;
}

double SparseSymmetricMatrix::coeff(std::size_t row, std::size_t col) const {
  if (row > col) std::swap(row, col);
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{row, col},
                             [](const MatrixEntry& e, const std::pair<std::size_t, std::size_t>& k) {
                               return std::tie(e.row, e.col) < std::tie(k.first, k.second);
                             });
  return (it != entries_.end() && it->row == row && it->col == col) ? it->value : 0.0;
}

bool SparseSymmetricMatrix::has_entry(std::size_t row, std::size_t col) const {
  if (row > col) std::swap(row, col);
  return std::binary_search(entries_.begin(), entries_.end(), MatrixEntry{row, col, 0.0},
                            [](const MatrixEntry& a, const MatrixEntry& b) {
                              return std::tie(a.row, a.col) < std::tie(b.row, b.col);
                            });
}

double SparseSymmetricMatrix::trace() const noexcept {
  double s = 0.0;
  for (const auto& e : entries_) {
    if (e.row == e.col) s += e.value;
  }
  return s;
}

double SparseSymmetricMatrix::max_row_sum() const {
  std::vector<double> sums(dim_, 0.0);
  for (const auto& e : entries_) {
    sums[e.row] += std::abs(e.value);
    if (e.row != e.col) sums[e.col] += std::abs(e.value);
  }
  return sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());
}

void SparseSymmetricMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != dim_ || y.size() != dim_) {
    throw std::invalid_argument("SparseSymmetricMatrix::multiply: dimension mismatch");
  }
  std::fill(y.begin(), y.end(), 0.0);
  for (const auto& e : entries_) {
    y[e.row] += e.value * x[e.col];
    if (e.row != e.col) y[e.col] += e.value * x[e.row];
  }
}

Eigen::MatrixXd SparseSymmetricMatrix::to_dense() const {
  const auto d = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (const auto& e : entries_) {
    const auto r = static_cast<Eigen::Index>(e.row);
    const auto c = static_cast<Eigen::Index>(e.col);
    m(r, c) = e.value;
    m(c, r) = e.value;
  }
  return m;
}

Eigen::SparseMatrix<double, Eigen::RowMajor> SparseSymmetricMatrix::to_sparse() const {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * entries_.size());
  for (const auto& e : entries_) {
    const auto r = static_cast<Eigen::Index>(e.row);
    const auto c = static_cast<Eigen::Index>(e.col);
    triplets.emplace_back(r, c, e.value);
    if (r != c) triplets.emplace_back(c, r, e.value);
  }
  const auto d = static_cast<Eigen::Index>(dim_);
  Eigen::SparseMatrix<double, Eigen::RowMajor> m(d, d);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

// ---------------------------------------------------------------------------

double diagonal_entry(Natural n, const HamiltonianParams& params) {
  params.validate();
  if (n < 1 || n > params.N) {
    throw std::out_of_range("diagonal_entry: n must lie in [1, N]");
  }
  const auto f = factorize(n);
  unsigned omega = 0;
  unsigned q = 0;
  for (const auto& pp : f.factors) {
    omega += pp.exponent;
    q += pp.exponent * pp.exponent;
  }
  return order_value(q, omega, params);
}

std::vector<HoppingTerm> hopping_row(Natural m, Natural N) {
  if (m < 1 || m > N) throw std::out_of_range("hopping_row: m must lie in [1, N]");
  return hopping_moves(factorize(m), PrimeTable(successor_bound(m)), N);
}

std::vector<HoppingTerm> hopping_row_untruncated(Natural m) {
  if (m < 1) throw std::out_of_range("hopping_row_untruncated: m must be >= 1");
  return hopping_moves(factorize(m), PrimeTable(successor_bound(m)), 0);
}

SparseSymmetricMatrix build_hamiltonian(const HamiltonianParams& params) {
  params.validate();
  return HamiltonianModel(params.N).assemble(params);
}

Eigen::MatrixXd single_particle_block(const HamiltonianParams& params) {
  params.validate();
  const HamiltonianModel model(params.N);
  const auto H = model.assemble(params);
  std::vector<std::size_t> rows;
  for (Natural p : model.primes().primes()) {
    if (p > params.N) break;
    rows.push_back(static_cast<std::size_t>(p - 1));
  }
  const auto k = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd block(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      block(i, j) = H.coeff(rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(j)]);
    }
  }
  return block;
}

// ---------------------------------------------------------------------------

HamiltonianModel::HamiltonianModel(std::size_t N)
    : N_(N), arith_(N), primes_(successor_bound(N)) {
  std::vector<std::size_t> block_of(N + 1, 0);
  std::vector<std::size_t> local(N + 1, 0);
  for (Natural n = 1; n <= N; ++n) {
    const unsigned k = arith_.omega_total(n);
    if (k >= blocks_.size()) {
      for (unsigned j = static_cast<unsigned>(blocks_.size()); j <= k; ++j) {
        blocks_.push_back({j, {}});
      }
    }
    block_of[n] = k;
    local[n] = blocks_[k].basis.size();
    blocks_[k].basis.push_back(n);
  }

  for (Natural m = 1; m <= N; ++m) {
    for (const auto& term : hopping_row(m)) {
      if (term.column > m) {
        hop_.push_back({static_cast<std::size_t>(m - 1), static_cast<std::size_t>(term.column - 1),
                        term.coefficient()});
      }
    }
  }

  // Omega is constant along every hopping move, so the pattern splits into
  // blocks with no remainder.
  block_hop_.resize(blocks_.size());
  for (const auto& e : hop_) {
    const Natural a = e.row + 1;
    const Natural b = e.col + 1;
    if (block_of[a] != block_of[b]) {
      throw std::logic_error("HamiltonianModel: hopping entry crosses Omega blocks");
    }
    block_hop_[block_of[a]].push_back({local[a], local[b], e.value});
  }
}

std::vector<HoppingTerm> HamiltonianModel::hopping_row(Natural m) const {
  if (m < 1 || m > N_) throw std::out_of_range("hopping_row: m must lie in [1, N]");
  return hopping_moves(arith_.factorize(m), primes_, N_);
}

std::vector<HoppingTerm> HamiltonianModel::hopping_row_untruncated(Natural m) const {
  if (m < 1 || m > N_) throw std::out_of_range("hopping_row: m must lie in [1, N]");
  return hopping_moves(arith_.factorize(m), primes_, 0);
}

void HamiltonianModel::check(const HamiltonianParams& params) const {
  params.validate();
  if (params.N != N_) {
    throw std::invalid_argument("HamiltonianModel: params.N = " + std::to_string(params.N) +
                                " does not match model size " + std::to_string(N_));
  }
}

Eigen::VectorXd HamiltonianModel::diagonal(const HamiltonianParams& params) const {
  check(params);
  Eigen::VectorXd d(static_cast<Eigen::Index>(N_));
  for (Natural n = 1; n <= N_; ++n) {
    d[static_cast<Eigen::Index>(n - 1)] = order_value(arith_.q_sum(n), arith_.omega_total(n), params);
  }
  return d;
}

SparseSymmetricMatrix HamiltonianModel::assemble(const HamiltonianParams& params) const {
  const Eigen::VectorXd d = diagonal(params);
  std::vector<MatrixEntry> entries;
  entries.reserve(N_ + hop_.size());
  for (std::size_t i = 0; i < N_; ++i) entries.push_back({i, i, d[static_cast<Eigen::Index>(i)]});
  for (const auto& e : hop_) entries.push_back({e.row, e.col, -params.t * e.value});
  return SparseSymmetricMatrix(N_, std::move(entries));
}

Eigen::MatrixXd HamiltonianModel::block_matrix(std::size_t b, const HamiltonianParams& params) const {
  check(params);
  const auto& basis = blocks_.at(b).basis;
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Natural n = basis[static_cast<std::size_t>(i)];
    m(i, i) = order_value(arith_.q_sum(n), arith_.omega_total(n), params);
  }
  for (const auto& e : block_hop_[b]) {
    const auto r = static_cast<Eigen::Index>(e.row);
    const auto c = static_cast<Eigen::Index>(e.col);
    m(r, c) = -params.t * e.coefficient;
    m(c, r) = m(r, c);
  }
  return m;
}

SparseSymmetricMatrix HamiltonianModel::block_sparse(std::size_t b, const HamiltonianParams& params) const {
  check(params);
  const auto& basis = blocks_.at(b).basis;
  std::vector<MatrixEntry> entries;
  entries.reserve(basis.size() + block_hop_[b].size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Natural n = basis[i];
    entries.push_back({i, i, order_value(arith_.q_sum(n), arith_.omega_total(n), params)});
  }
  for (const auto& e : block_hop_[b]) entries.push_back({e.row, e.col, -params.t * e.coefficient});
  return SparseSymmetricMatrix(basis.size(), std::move(entries));
}

}  // namespace arithbh
