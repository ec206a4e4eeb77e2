#pragma once

#include <string>
#include <vector>

#include "pwreg/polynomial.hpp"
#include "pwreg/simplicial.hpp"

namespace pwreg {

// P/Q with Q certified nonvanishing on a tagged region.
struct RationalFn {
  MultiPoly num;
  MultiPoly den;
  std::string domain_tag;

  Rational eval(const Point& x) const;
  double eval_double(const std::vector<double>& x) const;
};

// Vector of rational functions over one shared strictly-positive
// denominator, tied to the simplex it is defined on. Variables are ambient
// coordinates unless stated otherwise at the use site.
struct RegularFnVector {
  std::vector<MultiPoly> nums;
  MultiPoly den;
  Simplex simplex;
  std::string domain_tag;

  int size() const { return static_cast<int>(nums.size()); }
  RationalFn component(int i) const { return {nums[i], den, domain_tag}; }
  std::vector<Rational> eval(const Point& x) const;
  std::vector<double> eval_double(const std::vector<double>& x) const;

  static RegularFnVector constant(const Simplex& s, int ambient_vars,
                                  const std::vector<Rational>& values);
};

// f composed with the affine parametrization of the hull; result lives in
// the hull parameters.
MultiPoly restrict_to_hull(const MultiPoly& f, const AffineHull& h);

// A hull-parameter polynomial re-expressed in ambient coordinates (equal to
// the input on the hull; constant along the complement directions).
MultiPoly ambientize(const MultiPoly& g, const AffineHull& h);

// Product of the normalized facet forms (the barycentric coordinates) in
// the hull parameters of the simplex: positive inside, exactly zero on the
// boundary.
MultiPoly face_ideal_generator(const Simplex& s);

// The barycentric coordinate forms lambda_0..lambda_d in hull parameters.
std::vector<MultiPoly> barycentric_forms(const Simplex& s);

// Sampled positivity certificate: min over the barycentric lattice at
// `pitch` must exceed `margin`. Returns the attained minimum; throws
// DenominatorVanishes otherwise. `den` is in ambient variables.
double certify_positive_on_simplex(const MultiPoly& den, const Simplex& s,
                                   int pitch, double margin);

}  // namespace pwreg
