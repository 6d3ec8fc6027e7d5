#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rootdatum::property {

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double seconds = 0;
  std::string first_failure;
  bool ok() const { return trials > 0 && failures == 0; }
};

/// diag(U M V) = diag(M) for random unimodular U, V, and both agree with
/// the gcd-of-minors oracle. A third of the trials run over Z_2 or Z_3.
SuiteResult smith_invariance(std::uint64_t seed, std::size_t trials = 200);
/// rank_over_fractions against Gaussian elimination over Q (and Q_p).
SuiteResult rank_agreement(std::uint64_t seed, std::size_t trials = 200);
/// For random w in W and reflections σ of catalog data, the line of wσw^-1
/// equals w(R b_σ), and σ = 1 + b_σ β_σ on the conjugate.
SuiteResult equivariance(std::uint64_t seed, std::size_t trials = 200);

std::vector<SuiteResult> run_all(std::uint64_t seed);

}  // namespace rootdatum::property
