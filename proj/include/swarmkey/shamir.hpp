#pragma once

#include <vector>

#include "swarmkey/random.hpp"
#include "swarmkey/zmod.hpp"

namespace swarmkey {

// A point (x, y) on a sharing polynomial. x is never zero.
struct Share {
  Scalar x;
  Scalar y;

  friend bool operator==(const Share&, const Share&) = default;
};

// Coefficients [secret, lambda_1, ..., lambda_{t-1}] over Z_ell; the list
// length is t even when trailing coefficients happen to be zero.
struct SharingPolynomial {
  std::vector<Scalar> coefficients;

  std::size_t threshold() const { return coefficients.size(); }
  const Scalar& secret() const { return coefficients.front(); }
};

// Shares of one secret together with the reconstruction threshold.
struct ShareSet {
  std::vector<Share> shares;
  std::size_t threshold = 1;
};

SharingPolynomial sample_polynomial(const ZMod& field, const Scalar& secret, std::size_t t,
                                    RandomSource& rng);

// Horner evaluation; unlike eval_share this accepts x = 0.
Scalar evaluate(const ZMod& field, const SharingPolynomial& poly, const Scalar& x);

// Refuses x = 0 with ParameterError: that share would be the secret itself.
Share eval_share(const ZMod& field, const SharingPolynomial& poly, const Scalar& x);

// l_i(C) = prod_{c != i} x_c / (x_c - x_i). `x_i` must be one of `cohort`.
Scalar lagrange_coefficient(const ZMod& field, const Scalar& x_i, std::span<const Scalar> cohort);
Scalar lagrange_coefficient(const ZMod& field, std::size_t index, std::span<const Share> cohort);

// sum_c y_c * l_c(C); throws InterpolationError on repeated x.
Scalar interpolate_at_zero(const ZMod& field, std::span<const Share> cohort);

// Sum of shares taken at a common x: the share of the summed polynomial.
Share aggregate_share(const ZMod& field, std::span<const Share> incoming);

// Throws InterpolationError if any two x coincide, ParameterError on x = 0.
void require_distinct_nonzero(const ZMod& field, std::span<const Scalar> xs);

std::vector<Scalar> x_coordinates(std::span<const Share> shares);

}  // namespace swarmkey
