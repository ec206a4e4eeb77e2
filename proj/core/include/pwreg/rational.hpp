#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <vector>

#include "pwreg/errors.hpp"

namespace pwreg {

// Exact rational scalar. All geometric and symbolic data in the library is
// held in this type; doubles appear only in sampling, fitting and
// certificate evaluation.
using Rational = mpq_class;

using Point = std::vector<Rational>;  // a point of R^m

inline Rational rat_from_long(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Parses "p/q" or "p". Throws BadInput on malformed text.
inline Rational rat_from_string(const std::string& s) {
  if (s.empty()) throw BadInput("empty rational literal");
  mpq_class r;
  if (r.set_str(s, 10) != 0) throw BadInput("bad rational literal: " + s);
  if (r.get_den() == 0) throw BadInput("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline std::string rat_to_string(const Rational& r) { return r.get_str(); }

inline double rat_to_double(const Rational& r) { return r.get_d(); }

// The exact dyadic rational represented by an IEEE-754 double; no rounding.
inline Rational rat_from_double_exact(double x) {
  if (!std::isfinite(x)) throw NonFinite("cannot snap non-finite double");
  Rational r(x);  // GMP conversion from double is exact
  r.canonicalize();
  return r;
}

inline Point point_from_doubles(const std::vector<double>& xs) {
  Point p;
  p.reserve(xs.size());
  for (double x : xs) p.push_back(rat_from_double_exact(x));
  return p;
}

inline std::vector<double> point_to_doubles(const Point& p) {
  std::vector<double> xs;
  xs.reserve(p.size());
  for (const auto& c : p) xs.push_back(rat_to_double(c));
  return xs;
}

}  // namespace pwreg
