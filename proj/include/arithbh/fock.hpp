#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "arithbh/arith.hpp"

namespace arithbh {

using Amplitude = std::complex<double>;

/// A vector of F_N = span{delta_n : n <= N}, stored with 1-based access so
/// that v[n] is the amplitude of delta_n.
class StateVector {
 public:
  explicit StateVector(std::size_t dim);
  explicit StateVector(Eigen::VectorXcd amplitudes);

  /// delta_n in F_N.
  static StateVector basis(std::size_t dim, Natural n);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(z_.size()); }

  Amplitude operator[](Natural n) const { return z_[index(n)]; }
  Amplitude& operator[](Natural n) { return z_[index(n)]; }

  const Eigen::VectorXcd& amplitudes() const noexcept { return z_; }
  Eigen::VectorXcd& amplitudes() noexcept { return z_; }

  double norm_squared() const noexcept { return z_.squaredNorm(); }
  double norm() const noexcept { return z_.norm(); }
  bool is_normalized(double tol = 1e-12) const noexcept;

  /// <this | other>, antilinear in this.
  Amplitude inner(const StateVector& other) const;

  StateVector& operator+=(const StateVector& other);
  StateVector& operator-=(const StateVector& other);
  StateVector& operator*=(Amplitude c);

  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend StateVector operator*(Amplitude c, StateVector a) { return a *= c; }

 private:
  Eigen::Index index(Natural n) const;

  Eigen::VectorXcd z_;
};

/// A lattice site, labelled by its prime p = p_k.
class SiteIndex {
 public:
  /// Throws std::invalid_argument when p is not prime.
  static SiteIndex of(Natural p);

  Natural prime() const noexcept { return prime_; }
  /// 1-based ordinal k of p among the consecutive primes.
  std::size_t ordinal() const noexcept { return ordinal_; }

 private:
  SiteIndex(Natural p, std::size_t k) : prime_(p), ordinal_(k) {}

  Natural prime_;
  std::size_t ordinal_;
};

// All operators below are compressions to F_N: components that would land on
// an index > N are dropped.

/// a_p delta_n = sqrt(a_p(n)) delta_{n/p}.
StateVector annihilate(SiteIndex p, const StateVector& v);
/// a_p^dagger delta_n = sqrt(a_p(n)+1) delta_{np}.
StateVector create(SiteIndex p, const StateVector& v);
/// N_p delta_n = a_p(n) delta_n.
StateVector number_op(SiteIndex p, const StateVector& v);
/// N delta_n = Omega(n) delta_n.
StateVector total_number(const StateVector& v);
StateVector total_number(const StateVector& v, const ArithmeticTable& table);
/// (sum_p N_p^2) delta_n = Q(n) delta_n.
StateVector squared_number_sum(const StateVector& v);

/// All n <= N with Omega(n) = k, increasing.
std::vector<Natural> k_particle_indices(unsigned k, Natural N);
std::vector<Natural> k_particle_indices(unsigned k, const ArithmeticTable& table);

/// sum_n Omega(n) |z_n|^2 of a normalized state.
double expected_particle_number(const StateVector& v);
double expected_particle_number(const StateVector& v, const ArithmeticTable& table);

}  // namespace arithbh
