#pragma once

#include <optional>
#include <vector>

#include "pwreg/rational.hpp"

namespace pwreg {

// Dense exact-rational matrices. Everything here is small (ambient dimension
// sized), so plain Gaussian elimination is fine.
using RatMat = std::vector<std::vector<Rational>>;
using RatVec = std::vector<Rational>;

RatMat rat_identity(std::size_t n);
RatMat rat_transpose(const RatMat& a);
RatMat rat_mul(const RatMat& a, const RatMat& b);
RatVec rat_mul_vec(const RatMat& a, const RatVec& x);

// Reduced row echelon form in place; returns rank. If pivot_cols is non-null
// it receives the pivot column indices in order.
std::size_t rat_rref(RatMat& a, std::vector<std::size_t>* pivot_cols = nullptr);

std::size_t rat_rank(RatMat a);

// One solution of A x = b, or nullopt if inconsistent.
std::optional<RatVec> rat_solve(const RatMat& a, const RatVec& b);

// Basis of the kernel {x : A x = 0}.
std::vector<RatVec> rat_nullspace(const RatMat& a);

// Inverse of a square nonsingular matrix; nullopt when singular.
std::optional<RatMat> rat_inverse(const RatMat& a);

// Exact LP in standard form: maximize c.x subject to A x = b, x >= 0.
// Two-phase simplex with Bland's rule.
enum class LpStatus { Optimal, Infeasible, Unbounded };
struct LpResult {
  LpStatus status;
  Rational value;  // objective at optimum (valid when Optimal)
  RatVec x;
};
LpResult lp_maximize(const RatMat& a, const RatVec& b, const RatVec& c);

}  // namespace pwreg
