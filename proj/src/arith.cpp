#include "arithbh/arith.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace arithbh {

namespace {

void require_positive(Natural n, const char* what) {
  if (n == 0) {
    throw std::invalid_argument(std::string(what) + ": argument must be >= 1");
  }
}

// Sieve tables store factors as 32-bit words; beyond this the table would not
// fit in memory at desk scale anyway.
constexpr Natural kMaxTableLimit = Natural{1} << 31;

}  // namespace

unsigned Factorization::exponent_of(Natural p) const noexcept {
  auto it = std::lower_bound(factors.begin(), factors.end(), p,
                             [](const PrimePower& pp, Natural q) { return pp.prime < q; });
  return (it != factors.end() && it->prime == p) ? it->exponent : 0U;
}

Natural Factorization::recompose() const {
  Natural product = 1;
  for (const auto& [p, a] : factors) {
    for (unsigned i = 0; i < a; ++i) product = checked_mul(product, p);
  }
  return product;
}

Natural checked_mul(Natural a, Natural b) {
  Natural out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("integer overflow: " + std::to_string(a) + " * " +
                              std::to_string(b));
  }
  return out;
}

bool is_prime(Natural n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (Natural d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Factorization factorize(Natural n) {
  require_positive(n, "factorize");
  Factorization f{n, {}};
  Natural rest = n;
  for (Natural d = 2; d <= rest / d; d += (d == 2 ? 1 : 2)) {
    unsigned a = 0;
    while (rest % d == 0) {
      rest /= d;
      ++a;
    }
    if (a > 0) f.factors.push_back({d, a});
  }
  if (rest > 1) f.factors.push_back({rest, 1});
  return f;
}

unsigned omega_total(Natural n) {
  unsigned s = 0;
  for (const auto& pp : factorize(n).factors) s += pp.exponent;
  return s;
}

unsigned q_sum(Natural n) {
  unsigned s = 0;
  for (const auto& pp : factorize(n).factors) s += pp.exponent * pp.exponent;
  return s;
}

unsigned omega_distinct(Natural n) {
  return static_cast<unsigned>(factorize(n).factors.size());
}

unsigned prime_exponent(Natural n, Natural p) noexcept {
  if (n == 0 || p < 2) return 0;
  unsigned a = 0;
  while (n % p == 0) {
    n /= p;
    ++a;
  }
  return a;
}

// ---------------------------------------------------------------------------

PrimeTable::PrimeTable(Natural bound) : bound_(bound) {
  require_positive(bound, "PrimeTable");
  if (bound > kMaxTableLimit) throw std::length_error("PrimeTable: bound too large");
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  for (Natural i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes_.push_back(i);
    for (Natural j = i * i; j <= bound; j += i) composite[j] = true;
  }
}

bool PrimeTable::contains(Natural p) const noexcept {
  return std::binary_search(primes_.begin(), primes_.end(), p);
}

std::size_t PrimeTable::site_of(Natural p) const {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) {
    throw std::invalid_argument("PrimeTable: " + std::to_string(p) +
                                " is not a prime <= " + std::to_string(bound_));
  }
  return static_cast<std::size_t>(it - primes_.begin()) + 1;
}

Natural PrimeTable::prime_at(std::size_t site) const {
  if (site == 0 || site > primes_.size()) {
    throw std::out_of_range("PrimeTable: site ordinal out of range");
  }
  return primes_[site - 1];
}

std::optional<Natural> PrimeTable::next_prime(Natural p) const {
  std::size_t k = site_of(p);
  if (k >= primes_.size()) return std::nullopt;
  return primes_[k];
}

std::optional<Natural> PrimeTable::previous_prime(Natural p) const {
  std::size_t k = site_of(p);
  if (k == 1) return std::nullopt;
  return primes_[k - 2];
}

PrimeTable primes_up_to(Natural bound) { return PrimeTable(bound); }

// ---------------------------------------------------------------------------

ArithmeticTable::ArithmeticTable(Natural limit) : limit_(limit) {
  require_positive(limit, "ArithmeticTable");
  if (limit > kMaxTableLimit) throw std::length_error("ArithmeticTable: limit too large");
  const auto size = static_cast<std::size_t>(limit) + 1;
  spf_.assign(size, 0);
  omega_.assign(size, 0);
  q_.assign(size, 0);
  distinct_.assign(size, 0);
  std::vector<std::uint8_t> top_exponent(size, 0);  // exponent of spf(n) in n
  std::vector<std::uint32_t> primes;

  if (size > 1) spf_[1] = 1;
  for (std::size_t n = 2; n < size; ++n) {
    if (spf_[n] == 0) {
      spf_[n] = static_cast<std::uint32_t>(n);
      primes.push_back(static_cast<std::uint32_t>(n));
    }
    for (std::uint32_t p : primes) {
      if (p > spf_[n] || static_cast<Natural>(p) * n >= size) break;
      spf_[p * n] = p;
    }
    const std::size_t p = spf_[n];
    const std::size_t m = n / p;
    const bool same = (m > 1 && spf_[m] == p);
    top_exponent[n] = same ? top_exponent[m] + 1 : 1;
    omega_[n] = omega_[m] + 1;
    distinct_[n] = distinct_[m] + (same ? 0 : 1);
    // (e)^2 - (e-1)^2 = 2e - 1
    q_[n] = static_cast<std::uint16_t>(q_[m] + 2U * top_exponent[n] - 1U);
  }
}

std::size_t ArithmeticTable::checked(Natural n) const {
  if (!covers(n)) {
    throw std::out_of_range("ArithmeticTable: " + std::to_string(n) + " outside [1, " +
                            std::to_string(limit_) + "]");
  }
  return static_cast<std::size_t>(n);
}

Natural ArithmeticTable::smallest_prime_factor(Natural n) const { return spf_[checked(n)]; }

Factorization ArithmeticTable::factorize(Natural n) const {
  Factorization f{n, {}};
  Natural rest = n;
  checked(n);
  while (rest > 1) {
    const Natural p = spf_[rest];
    unsigned a = 0;
    while (rest % p == 0) {
      rest /= p;
      ++a;
    }
    f.factors.push_back({p, a});
  }
  return f;
}

unsigned ArithmeticTable::exponent(Natural n, Natural p) const {
  checked(n);
  return prime_exponent(n, p);
}

}  // namespace arithbh
