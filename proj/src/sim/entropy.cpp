#include "swarmkey/sim/entropy.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>

namespace swarmkey::sim {
namespace {

using boost::multiprecision::cpp_bin_float_50;
using boost::multiprecision::cpp_int;

constexpr double kNormTolerance = 1e-9;
constexpr double kEntropyTolerance = 1e-9;

bool is_prime(uint64_t q) {
  if (q < 2) return false;
  for (uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

// Exact integer weights proportional to the given doubles.
std::vector<cpp_int> exact_weights(const std::vector<double>& p) {
  int min_exp = 0;
  bool any = false;
  for (double v : p) {
    if (v == 0) continue;
    int e = 0;
    std::frexp(v, &e);
    min_exp = any ? std::min(min_exp, e - 53) : e - 53;
    any = true;
  }
  std::vector<cpp_int> w;
  for (double v : p) {
    if (v == 0) {
      w.emplace_back(0);
      continue;
    }
    int e = 0;
    const double m = std::frexp(v, &e);
    cpp_int mant = static_cast<int64_t>(std::ldexp(m, 53));
    w.push_back(mant << (e - 53 - min_exp));
  }
  return w;
}

double entropy_of(const std::vector<cpp_int>& w, std::vector<double>* probs) {
  cpp_int total = 0;
  for (const cpp_int& x : w) total += x;
  const cpp_bin_float_50 tot(total);
  double h = 0;
  for (const cpp_int& x : w) {
    const double p = static_cast<double>(cpp_bin_float_50(x) / tot);
    if (probs) probs->push_back(p);
    if (x != 0) h -= p * std::log2(p);
  }
  return h;
}

bool all_equal(const std::vector<cpp_int>& w) {
  for (const cpp_int& x : w) {
    if (x != w.front()) return false;
  }
  return true;
}

}  // namespace

double shannon_entropy(const std::vector<double>& p) {
  double h = 0;
  for (double v : p) {
    if (v > 0) h -= v * std::log2(v);
  }
  return h;
}

EntropyReport entropy_demo(uint64_t q, const std::vector<std::vector<double>>& contributors) {
  if (!is_prime(q) || q > 64) throw ParameterError("q must be a prime no larger than 64");
  if (contributors.empty()) throw ParameterError("at least one contributor distribution is required");
  for (const auto& p : contributors) {
    if (p.size() != q) throw ParameterError("distribution length differs from q");
    long double sum = 0;
    for (double v : p) {
      if (!std::isfinite(v) || v < 0) throw ParameterError("probabilities must be finite and non-negative");
      sum += v;
    }
    if (std::fabs(static_cast<double>(sum - 1.0L)) > kNormTolerance) {
      throw ParameterError("distribution is not normalised");
    }
  }

  EntropyReport rep;
  rep.q = q;
  std::vector<cpp_int> acc;
  for (const auto& p : contributors) {
    const std::vector<cpp_int> w = exact_weights(p);
    rep.contributor_entropy.push_back(entropy_of(w, nullptr));
    rep.any_uniform = rep.any_uniform || all_equal(w);
    if (acc.empty()) {
      acc = w;
      continue;
    }
    std::vector<cpp_int> next(q, 0);
    for (uint64_t a = 0; a < q; ++a) {
      if (acc[a] == 0) continue;
      for (uint64_t b = 0; b < q; ++b) next[(a + b) % q] += acc[a] * w[b];
    }
    acc = std::move(next);
  }
  rep.max_contributor_entropy = *std::max_element(rep.contributor_entropy.begin(), rep.contributor_entropy.end());
  rep.sum_entropy = entropy_of(acc, &rep.sum_distribution);
  rep.bound_holds = rep.sum_entropy >= rep.max_contributor_entropy - kEntropyTolerance;
  rep.sum_uniform = all_equal(acc);

  cpp_int total = 0;
  for (const cpp_int& x : acc) total += x;
  cpp_int deviation = 0;
  for (const cpp_int& x : acc) deviation += boost::multiprecision::abs(x * q - total);
  rep.total_variation =
      static_cast<double>(cpp_bin_float_50(deviation) / (cpp_bin_float_50(total) * 2 * static_cast<double>(q)));
  return rep;
}

Json to_json(const EntropyReport& r) {
  Json j;
  j["q"] = r.q;
  j["contributor_entropy_bits"] = r.contributor_entropy;
  j["max_contributor_entropy_bits"] = r.max_contributor_entropy;
  j["sum_entropy_bits"] = r.sum_entropy;
  j["sum_distribution"] = r.sum_distribution;
  j["bound_holds"] = r.bound_holds;
  j["any_uniform"] = r.any_uniform;
  j["sum_uniform"] = r.sum_uniform;
  j["total_variation"] = r.total_variation;
  return j;
}

}  // namespace swarmkey::sim
