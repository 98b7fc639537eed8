#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace arithbh {

/// Natural numbers label basis states: n <-> delta_n.
using Natural = std::uint64_t;

struct PrimePower {
  Natural prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime decomposition n = prod p^{a_p}. Primes strictly increasing,
/// exponents >= 1, empty for n = 1.
struct Factorization {
  Natural n = 1;
  std::vector<PrimePower> factors;

  /// Multiplicity a_p(n); zero when p does not divide n.
  unsigned exponent_of(Natural p) const noexcept;
  /// Product of the prime powers (overflow-checked).
  Natural recompose() const;
};

/// a * b, throwing std::overflow_error instead of wrapping.
Natural checked_mul(Natural a, Natural b);

bool is_prime(Natural n) noexcept;

/// Trial-division factorization, valid for any n >= 1.
Factorization factorize(Natural n);

/// Omega(n): prime factors counted with multiplicity.
unsigned omega_total(Natural n);
/// Q(n): sum of squared exponents.
unsigned q_sum(Natural n);
/// omega(n): number of distinct prime factors.
unsigned omega_distinct(Natural n);
/// a_p(n) for a prime p.
unsigned prime_exponent(Natural n, Natural p) noexcept;

/// Consecutive primes p_1 = 2 < p_2 < ... up to a bound, with the 1-based
/// site ordinal k of each prime (p = p_k).
class PrimeTable {
 public:
  explicit PrimeTable(Natural bound);

  Natural bound() const noexcept { return bound_; }
  std::span<const Natural> primes() const noexcept { return primes_; }
  /// pi(bound).
  std::size_t count() const noexcept { return primes_.size(); }

  bool contains(Natural p) const noexcept;
  /// Site ordinal k with p = p_k; throws std::invalid_argument when p is
  /// not a prime in the table.
  std::size_t site_of(Natural p) const;
  /// p_k for a 1-based ordinal k.
  Natural prime_at(std::size_t site) const;
  /// Successor p_{k+1} of p = p_k, if it lies within the table.
  std::optional<Natural> next_prime(Natural p) const;
  /// Predecessor p_{k-1}, empty for p = 2.
  std::optional<Natural> previous_prime(Natural p) const;

 private:
  Natural bound_;
  std::vector<Natural> primes_;
};

PrimeTable primes_up_to(Natural bound);

/// Smallest-prime-factor sieve for every n <= limit, with Omega, Q and omega
/// tabulated in the same linear pass. Immutable after construction.
class ArithmeticTable {
 public:
  explicit ArithmeticTable(Natural limit);

  Natural limit() const noexcept { return limit_; }
  bool covers(Natural n) const noexcept { return n >= 1 && n <= limit_; }

  Natural smallest_prime_factor(Natural n) const;
  Factorization factorize(Natural n) const;
  unsigned exponent(Natural n, Natural p) const;

  unsigned omega_total(Natural n) const { return omega_[checked(n)]; }
  unsigned q_sum(Natural n) const { return q_[checked(n)]; }
  unsigned omega_distinct(Natural n) const { return distinct_[checked(n)]; }

 private:
  std::size_t checked(Natural n) const;

  Natural limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint8_t> omega_;
  std::vector<std::uint16_t> q_;
  std::vector<std::uint8_t> distinct_;
};

}  // namespace arithbh
