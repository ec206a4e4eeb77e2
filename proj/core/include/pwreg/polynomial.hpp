#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pwreg/rational.hpp"

namespace pwreg {

using Exponents = std::vector<std::uint32_t>;

// Sparse multivariate polynomial with exact rational coefficients.
// Invariants: no zero coefficient is stored; every exponent vector has
// length num_vars. num_vars == 0 means constants.
class MultiPoly {
public:
  MultiPoly() : num_vars_(0) {}
  explicit MultiPoly(int num_vars) : num_vars_(num_vars) {}

  static MultiPoly constant(int num_vars, const Rational& c);
  static MultiPoly variable(int num_vars, int i);
  // c0 + sum_i coeffs[i] * x_i
  static MultiPoly affine(int num_vars, const Rational& c0,
                          const std::vector<Rational>& coeffs);

  int num_vars() const { return num_vars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;

  void set_term(const Exponents& e, const Rational& c);
  const Rational* coeff(const Exponents& e) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly& scale(const Rational& c);
  MultiPoly pow(std::uint32_t e) const;

  bool operator==(const MultiPoly& o) const {
    return num_vars_ == o.num_vars_ && terms_ == o.terms_;
  }

  Rational eval(const Point& x) const;
  double eval_double(const std::vector<double>& x) const;

  // Substitutes args[i] for variable i. All args must share one variable
  // count, which becomes the result's; pass out_vars when args is empty
  // (composition of a constant).
  MultiPoly compose(const std::vector<MultiPoly>& args,
                    int out_vars = -1) const;

  std::string to_string(const std::vector<std::string>& var_names = {}) const;

private:
  int num_vars_;
  std::map<Exponents, Rational> terms_;
};

// Exact quotient f / ell for an affine form ell (degree <= 1, not the zero
// polynomial). Returns nullopt when the division leaves a remainder.
std::optional<MultiPoly> divide_by_affine(const MultiPoly& f,
                                          const MultiPoly& ell);

// Exact quotient by a product of affine forms, dividing one factor at a
// time; nullopt if any step leaves a remainder.
std::optional<MultiPoly> divide_by_affine_product(
    const MultiPoly& f, const std::vector<MultiPoly>& ells);

}  // namespace pwreg
