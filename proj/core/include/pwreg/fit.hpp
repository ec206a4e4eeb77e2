#pragma once

#include <optional>
#include <vector>

#include "pwreg/polynomial.hpp"

namespace pwreg {

// Monomial exponents of total degree <= degree in num_vars variables,
// graded-lexicographic, deterministic.
std::vector<Exponents> monomial_basis(int num_vars, int degree);

// Bit-exact dyadic interpretation of a fitted coefficient array over the
// given basis. Throws NonFinite on NaN/inf.
MultiPoly snap_to_exact(const std::vector<double>& coeffs,
                        const std::vector<Exponents>& basis, int num_vars);

struct FitSample {
  std::vector<double> x;
  double value;
};

// Weighted polynomial least squares: minimizes
//   sum_i (value_i - w(x_i) * p(x_i))^2
// over polynomials p of the given total degree (w == 1 when absent).
// Solved in a centroid-shifted monomial basis by column-pivoted QR, then
// the coefficients are snapped to exact dyadics and the shift is undone
// exactly. Throws RankDeficient when the design matrix is singular.
MultiPoly least_squares_fit(const std::vector<FitSample>& samples, int degree,
                            const MultiPoly* weight = nullptr);

}  // namespace pwreg
