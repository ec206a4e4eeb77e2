#include "pwreg/rationalfn.hpp"

#include <cassert>
#include <limits>
#include <string>

#include "pwreg/errors.hpp"

namespace pwreg {

Rational RationalFn::eval(const Point& x) const {
  Rational d = den.eval(x);
  if (d == 0) throw DenominatorZero("rational function evaluated at a pole");
  return num.eval(x) / d;
}

double RationalFn::eval_double(const std::vector<double>& x) const {
  double d = den.eval_double(x);
  if (d == 0.0) throw DenominatorZero("rational function evaluated at a pole");
  return num.eval_double(x) / d;
}

std::vector<Rational> RegularFnVector::eval(const Point& x) const {
  Rational d = den.eval(x);
  if (d == 0) throw DenominatorZero("regular vector evaluated at a pole");
  std::vector<Rational> out;
  out.reserve(nums.size());
  for (const auto& n : nums) out.push_back(n.eval(x) / d);
  return out;
}

std::vector<double> RegularFnVector::eval_double(
    const std::vector<double>& x) const {
  double d = den.eval_double(x);
  if (d == 0.0) throw DenominatorZero("regular vector evaluated at a pole");
  std::vector<double> out;
  out.reserve(nums.size());
  for (const auto& n : nums) out.push_back(n.eval_double(x) / d);
  return out;
}

RegularFnVector RegularFnVector::constant(
    const Simplex& s, int ambient_vars, const std::vector<Rational>& values) {
  RegularFnVector v;
  v.simplex = s;
  v.den = MultiPoly::constant(ambient_vars, Rational(1));
  for (const auto& c : values)
    v.nums.push_back(MultiPoly::constant(ambient_vars, c));
  v.domain_tag = "constant";
  return v;
}

MultiPoly restrict_to_hull(const MultiPoly& f, const AffineHull& h) {
  assert(f.num_vars() == h.ambient_dim());
  return f.compose(h.param_polys());
}

MultiPoly ambientize(const MultiPoly& g, const AffineHull& h) {
  assert(g.num_vars() == h.dim());
  return g.compose(h.coord_forms, h.ambient_dim());
}

std::vector<MultiPoly> barycentric_forms(const Simplex& s) {
  const int d = s.dim();
  std::vector<MultiPoly> lambda;
  lambda.reserve(d + 1);
  // Hull parameters t_1..t_d satisfy x = v_0 + sum t_i (v_i - v_0), so
  // lambda_0 = 1 - sum t_i and lambda_i = t_i.
  std::vector<Rational> minus_ones(d, Rational(-1));
  lambda.push_back(MultiPoly::affine(d, Rational(1), minus_ones));
  for (int i = 1; i <= d; ++i) lambda.push_back(MultiPoly::variable(d, i - 1));
  return lambda;
}

MultiPoly face_ideal_generator(const Simplex& s) {
  assert(s.dim() >= 1);
  MultiPoly q = MultiPoly::constant(s.dim(), Rational(1));
  for (const auto& l : barycentric_forms(s)) q = q * l;
  return q;
}

double certify_positive_on_simplex(const MultiPoly& den, const Simplex& s,
                                   int pitch, double margin) {
  double min_val = std::numeric_limits<double>::infinity();
  for (const auto& p : barycentric_lattice(s, pitch)) {
    double v = den.eval_double(point_to_doubles(p));
    min_val = std::min(min_val, v);
  }
  if (!(min_val > margin))
    throw DenominatorVanishes("denominator minimum " +
                              std::to_string(min_val) +
                              " does not clear margin " +
                              std::to_string(margin));
  return min_val;
}

}  // namespace pwreg
