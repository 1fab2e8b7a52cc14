#pragma once

#include <vector>

#include "swarmkey/sim/transcript.hpp"

namespace swarmkey::sim {

struct EntropyReport {
  uint64_t q = 0;
  std::vector<double> contributor_entropy;  // bits
  double max_contributor_entropy = 0;
  double sum_entropy = 0;
  std::vector<double> sum_distribution;
  bool bound_holds = false;  // H(sum) >= max_k H_k within 1e-9
  bool any_uniform = false;
  bool sum_uniform = false;  // exactly, from integer arithmetic
  double total_variation = 0;  // distance of the sum from uniform
};

// Distribution of the sum mod q of independent contributions. Probabilities
// are taken at their exact binary values and convolved in integer arithmetic,
// so uniformity is decided exactly. q must be a prime no larger than 64 and
// every distribution must sum to 1 within 1e-9 (ParameterError otherwise).
EntropyReport entropy_demo(uint64_t q, const std::vector<std::vector<double>>& contributors);

double shannon_entropy(const std::vector<double>& p);

Json to_json(const EntropyReport& r);

}  // namespace swarmkey::sim
