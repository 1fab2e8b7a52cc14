#include "swarmkey/shamir.hpp"

#include <algorithm>

namespace swarmkey {

SharingPolynomial sample_polynomial(const ZMod& field, const Scalar& secret, std::size_t t,
                                    RandomSource& rng) {
  if (t == 0) throw ParameterError("threshold must be at least 1");
  if (!field.contains(secret)) throw ParameterError("secret must be reduced modulo ell");
  SharingPolynomial poly;
  poly.coefficients.reserve(t);
  poly.coefficients.push_back(secret);
  for (std::size_t k = 1; k < t; ++k) poly.coefficients.push_back(rng.scalar(field));
  return poly;
}

Scalar evaluate(const ZMod& field, const SharingPolynomial& poly, const Scalar& x) {
  Scalar acc;
  for (auto it = poly.coefficients.rbegin(); it != poly.coefficients.rend(); ++it) {
    acc = field.add(field.mul(acc, x), *it);
  }
  return acc;
}

Share eval_share(const ZMod& field, const SharingPolynomial& poly, const Scalar& x) {
  const Scalar xr = field.reduce(x.value);
  if (xr.value == 0) throw ParameterError("share x-coordinate must be nonzero");
  return Share{xr, evaluate(field, poly, xr)};
}

void require_distinct_nonzero(const ZMod& field, std::span<const Scalar> xs) {
  std::vector<Scalar> sorted;
  sorted.reserve(xs.size());
  for (const Scalar& x : xs) {
    const Scalar xr = field.reduce(x.value);
    if (xr.value == 0) throw ParameterError("share x-coordinate must be nonzero");
    sorted.push_back(xr);
  }
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InterpolationError("duplicate x-coordinates");
  }
}

Scalar lagrange_coefficient(const ZMod& field, const Scalar& x_i, std::span<const Scalar> cohort) {
  require_distinct_nonzero(field, cohort);
  const Scalar xi = field.reduce(x_i.value);
  bool member = false;
  Scalar num = field.from_u64(1);
  Scalar den = field.from_u64(1);
  for (const Scalar& xc_raw : cohort) {
    const Scalar xc = field.reduce(xc_raw.value);
    if (xc == xi) {
      member = true;
      continue;
    }
    num = field.mul(num, xc);
    den = field.mul(den, field.sub(xc, xi));
  }
  if (!member) throw ParameterError("x_i is not a member of the cohort");
  return field.div(num, den);
}

Scalar lagrange_coefficient(const ZMod& field, std::size_t index, std::span<const Share> cohort) {
  if (index >= cohort.size()) throw ParameterError("share index outside cohort");
  const std::vector<Scalar> xs = x_coordinates(cohort);
  return lagrange_coefficient(field, xs[index], xs);
}

Scalar interpolate_at_zero(const ZMod& field, std::span<const Share> cohort) {
  if (cohort.empty()) throw ParameterError("cannot interpolate an empty share set");
  const std::vector<Scalar> xs = x_coordinates(cohort);
  Scalar acc;
  for (const Share& s : cohort) {
    acc = field.add(acc, field.mul(s.y, lagrange_coefficient(field, s.x, xs)));
  }
  return acc;
}

Share aggregate_share(const ZMod& field, std::span<const Share> incoming) {
  if (incoming.empty()) throw AggregationError("nothing to aggregate");
  const Scalar x = field.reduce(incoming.front().x.value);
  Scalar y;
  for (const Share& s : incoming) {
    if (field.reduce(s.x.value) != x) throw AggregationError("shares have mismatched x-coordinates");
    y = field.add(y, s.y);
  }
  return Share{x, y};
}

std::vector<Scalar> x_coordinates(std::span<const Share> shares) {
  std::vector<Scalar> xs;
  xs.reserve(shares.size());
  for (const Share& s : shares) xs.push_back(s.x);
  return xs;
}

}  // namespace swarmkey
