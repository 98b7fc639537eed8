#include "arithbh/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace arithbh {

StateVector::StateVector(std::size_t dim) : z_(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim))) {
  if (dim == 0) throw std::invalid_argument("StateVector: dimension must be >= 1");
}

StateVector::StateVector(Eigen::VectorXcd amplitudes) : z_(std::move(amplitudes)) {
  if (z_.size() == 0) throw std::invalid_argument("StateVector: dimension must be >= 1");
}

StateVector StateVector::basis(std::size_t dim, Natural n) {
  StateVector v(dim);
  v[n] = 1.0;
  return v;
}

Eigen::Index StateVector::index(Natural n) const {
  if (n == 0 || n > static_cast<Natural>(z_.size())) {
    throw std::out_of_range("StateVector: index " + std::to_string(n) + " outside [1, " +
                            std::to_string(z_.size()) + "]");
  }
  return static_cast<Eigen::Index>(n - 1);
}

bool StateVector::is_normalized(double tol) const noexcept {
  return std::abs(norm_squared() - 1.0) <= tol;
}

Amplitude StateVector::inner(const StateVector& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("StateVector::inner: dimension mismatch");
  return z_.dot(other.z_);  // Eigen conjugates the left operand
}

StateVector& StateVector::operator+=(const StateVector& other) {
  if (other.dim() != dim()) throw std::invalid_argument("StateVector: dimension mismatch");
  z_ += other.z_;
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& other) {
  if (other.dim() != dim()) throw std::invalid_argument("StateVector: dimension mismatch");
  z_ -= other.z_;
  return *this;
}

StateVector& StateVector::operator*=(Amplitude c) {
  z_ *= c;
  return *this;
}

// ---------------------------------------------------------------------------

SiteIndex SiteIndex::of(Natural p) {
  if (!is_prime(p)) {
    throw std::invalid_argument("SiteIndex: " + std::to_string(p) + " is not prime");
  }
  std::size_t k = 0;
  for (Natural q = 2; q <= p; ++q) {
    if (is_prime(q)) ++k;
  }
  return SiteIndex(p, k);
}

StateVector annihilate(SiteIndex site, const StateVector& v) {
  const Natural p = site.prime();
  const Natural N = v.dim();
  StateVector out(N);
  // (a_p v)_m = sqrt(a_p(mp)) z_{mp}
  for (Natural m = 1; m <= N / p; ++m) {
    const Natural n = m * p;
    out[m] = std::sqrt(static_cast<double>(prime_exponent(n, p))) * v[n];
  }
  return out;
}

StateVector create(SiteIndex site, const StateVector& v) {
  const Natural p = site.prime();
  const Natural N = v.dim();
  StateVector out(N);
  for (Natural n = 1; n <= N / p; ++n) {
    out[n * p] = std::sqrt(static_cast<double>(prime_exponent(n, p) + 1)) * v[n];
  }
  return out;
}

StateVector number_op(SiteIndex site, const StateVector& v) {
  StateVector out(v.dim());
  for (Natural n = 1; n <= v.dim(); ++n) {
    out[n] = static_cast<double>(prime_exponent(n, site.prime())) * v[n];
  }
  return out;
}

StateVector total_number(const StateVector& v, const ArithmeticTable& table) {
  if (table.limit() < v.dim()) throw std::invalid_argument("total_number: table too small");
  StateVector out(v.dim());
  for (Natural n = 1; n <= v.dim(); ++n) {
    out[n] = static_cast<double>(table.omega_total(n)) * v[n];
  }
  return out;
}

StateVector total_number(const StateVector& v) {
  return total_number(v, ArithmeticTable(v.dim()));
}

StateVector squared_number_sum(const StateVector& v) {
  const ArithmeticTable table(v.dim());
  StateVector out(v.dim());
  for (Natural n = 1; n <= v.dim(); ++n) {
    out[n] = static_cast<double>(table.q_sum(n)) * v[n];
  }
  return out;
}

std::vector<Natural> k_particle_indices(unsigned k, const ArithmeticTable& table) {
  std::vector<Natural> out;
  for (Natural n = 1; n <= table.limit(); ++n) {
    if (table.omega_total(n) == k) out.push_back(n);
  }
  return out;
}

std::vector<Natural> k_particle_indices(unsigned k, Natural N) {
  return k_particle_indices(k, ArithmeticTable(N));
}

double expected_particle_number(const StateVector& v, const ArithmeticTable& table) {
  if (!v.is_normalized(1e-10)) {
    throw std::invalid_argument("expected_particle_number: state is not normalized");
  }
  if (table.limit() < v.dim()) {
    throw std::invalid_argument("expected_particle_number: table too small");
  }
  double s = 0.0;
  for (Natural n = 1; n <= v.dim(); ++n) {
    s += static_cast<double>(table.omega_total(n)) * std::norm(v[n]);
  }
  return s;
}

double expected_particle_number(const StateVector& v) {
  return expected_particle_number(v, ArithmeticTable(v.dim()));
}

}  // namespace arithbh
