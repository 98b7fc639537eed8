#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace arithbh {

struct VerifyOptions {
  std::size_t N = 200;
  std::size_t depth = 32;
  std::uint64_t seed = 1;
  std::size_t random_params = 5;
  /// Testing hook: a nonzero value is injected into the Hamiltonian and the
  /// Kastrup matrices so that the suite must report failures.
  double perturbation = 0.0;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> warnings;

  bool passed() const noexcept;
};

CheckResult check_bccr(std::size_t N, std::size_t max_prime = 19);
CheckResult check_block_structure(std::size_t N, std::uint64_t seed, std::size_t samples, double perturbation = 0.0);
CheckResult check_kastrup_algebra(std::size_t depth, double perturbation = 0.0);
CheckResult check_flow_invariance(std::size_t N, std::uint64_t seed, std::size_t samples);
CheckResult check_trace_identities(std::size_t N, std::uint64_t seed);
CheckResult check_toeplitz(std::size_t N);
CheckResult check_row_bound(std::size_t N);

VerifyReport run_verify(const VerifyOptions& options);

}  // namespace arithbh
