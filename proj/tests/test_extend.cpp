#include <doctest.h>

#include <cmath>
#include <random>

#include "pwreg/extend.hpp"
#include "pwreg/fit.hpp"

using namespace pwreg;

namespace {

Point pt(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.push_back(Rational(x));
  return p;
}

// Unit interval as a 1-simplex in R^1.
Simplex unit_segment() { return Simplex{{pt({0}), pt({1})}}; }

FacetData endpoint_values(const Simplex& seg, const Rational& at0,
                          const Rational& at1) {
  // facet 0 is opposite vertex 0, i.e. the vertex {1}
  FacetData d;
  d.facets.push_back(
      RegularFnVector::constant(seg.facet(0), 1, {at1}));
  d.facets.push_back(
      RegularFnVector::constant(seg.facet(1), 1, {at0}));
  return d;
}

}  // namespace

TEST_CASE("extension on a segment is the affine interpolant") {
  Simplex seg = unit_segment();
  FacetData d = endpoint_values(seg, Rational(3, 2), Rational(-2));
  RegularFnVector f = extend_from_boundary(seg, d);
  REQUIRE(f.size() == 1);
  // F(x) = a + (b-a) x with a = 3/2, b = -2
  MultiPoly x = MultiPoly::variable(1, 0);
  MultiPoly expect = MultiPoly::constant(1, Rational(3, 2)) +
                     x * MultiPoly::constant(1, Rational(-7, 2));
  CHECK(f.den == MultiPoly::constant(1, Rational(1)));
  CHECK(f.nums[0] == expect);
}

TEST_CASE("zero boundary data extend to zero") {
  Simplex tri{{pt({0, 0}), pt({1, 0}), pt({0, 1})}};
  FacetData d;
  for (int i = 0; i < 3; ++i)
    d.facets.push_back(RegularFnVector::constant(tri.facet(i), 2, {Rational(0)}));
  RegularFnVector f = extend_from_boundary(tri, d);
  CHECK(f.nums[0].is_zero());
}

TEST_CASE("affine data on a triangle are reproduced exactly") {
  Simplex tri{{pt({0, 0}), pt({1, 0}), pt({0, 1})}};
  MultiPoly target = MultiPoly::variable(2, 0) +
                     MultiPoly::variable(2, 1) * MultiPoly::constant(2, Rational(2));
  FacetData d;
  for (int i = 0; i < 3; ++i) {
    RegularFnVector fv;
    fv.simplex = tri.facet(i);
    fv.nums = {target};
    fv.den = MultiPoly::constant(2, Rational(1));
    d.facets.push_back(fv);
  }
  RegularFnVector f = extend_from_boundary(tri, d);
  CHECK(f.den == MultiPoly::constant(2, Rational(1)));
  CHECK(f.nums[0] == target);
}

TEST_CASE("boundary identity holds symbolically for quadratic facet data") {
  // Data on each facet: restriction of x^2 - 3xy + y (a global polynomial),
  // so compatibility holds and the extension must restrict back exactly.
  Simplex tri{{pt({0, 0}), pt({2, 0}), pt({0, 2})}};
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  MultiPoly target = x * x - x * y * MultiPoly::constant(2, Rational(3)) + y;
  FacetData d;
  for (int i = 0; i < 3; ++i) {
    RegularFnVector fv;
    fv.simplex = tri.facet(i);
    fv.nums = {target};
    fv.den = MultiPoly::constant(2, Rational(1));
    d.facets.push_back(fv);
  }
  RegularFnVector f = extend_from_boundary(tri, d);
  for (int i = 0; i < 3; ++i) {
    AffineHull fh = affine_hull(tri.facet(i));
    // cleared-denominator identity: restrict(num) == restrict(data_num * den)
    MultiPoly lhs = restrict_to_hull(f.nums[0], fh);
    MultiPoly rhs = restrict_to_hull(target * f.den, fh);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("incompatible data are rejected") {
  Simplex tri{{pt({0, 0}), pt({1, 0}), pt({0, 1})}};
  FacetData d;
  d.facets.push_back(RegularFnVector::constant(tri.facet(0), 2, {Rational(0)}));
  d.facets.push_back(RegularFnVector::constant(tri.facet(1), 2, {Rational(0)}));
  d.facets.push_back(RegularFnVector::constant(tri.facet(2), 2, {Rational(1)}));
  CHECK_THROWS_AS(extend_from_boundary(tri, d), IncompatibleFacetData);
}

TEST_CASE("q-annihilation on facets for random corrections") {
  Simplex tri{{pt({0, 0}), pt({1, 0}), pt({0, 1})}};
  AffineHull hull = affine_hull(tri);
  MultiPoly q = face_ideal_generator(tri);
  std::mt19937 rng(55);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int it = 0; it < 20; ++it) {
    MultiPoly p(2);
    auto basis = monomial_basis(2, 3);
    for (const auto& e : basis) {
      MultiPoly mono(2);
      Rational c(coef(rng));
      if (c != 0) mono.set_term(e, c);
      p += mono;
    }
    MultiPoly qp_amb = ambientize(q * p, hull);
    for (int i = 0; i < 3; ++i) {
      AffineHull fh = affine_hull(tri.facet(i));
      CHECK(restrict_to_hull(qp_amb, fh).is_zero());
    }
  }
}

TEST_CASE("exactly representable target is recovered") {
  // f(x) = x(1-x), boundary values zero: degree-2 fit nails it.
  Simplex seg = unit_segment();
  FacetData d = endpoint_values(seg, Rational(0), Rational(0));
  auto oracle = [](const std::vector<double>& x) {
    return std::vector<double>{x[0] * (1.0 - x[0])};
  };
  ApproxOptions opt;
  opt.eps = 1e-8;
  ApproxReport rep;
  RegularFnVector g = approximate_on_simplex(seg, oracle, d, opt, &rep);
  CHECK(rep.achieved_error < 1e-10);
  CHECK(!rep.degree_cap_exceeded);
  // endpoints exactly zero
  CHECK(g.nums[0].eval(pt({0})) == 0);
  CHECK(g.nums[0].eval(pt({1})) == 0);
}

TEST_CASE("sin(pi x) with zero boundary hits 1e-3 by degree 9") {
  Simplex seg = unit_segment();
  FacetData d = endpoint_values(seg, Rational(0), Rational(0));
  auto oracle = [](const std::vector<double>& x) {
    return std::vector<double>{std::sin(M_PI * x[0])};
  };
  ApproxOptions opt;
  opt.eps = 1e-3;
  opt.min_degree = 1;
  opt.degree_step = 1;
  ApproxReport rep;
  RegularFnVector g = approximate_on_simplex(seg, oracle, d, opt, &rep);
  CHECK(rep.achieved_error < 1e-3);
  CHECK(rep.degree_used <= 9);
  CHECK(g.nums[0].eval(pt({0})) == 0);
  CHECK(g.nums[0].eval(pt({1})) == 0);

  // independent dense grid agrees with the reported error within 10%
  double dense = 0;
  auto xs = std::vector<double>(1);
  for (int i = 0; i <= 5000; ++i) {
    xs[0] = i / 5000.0;
    double den = g.den.eval_double(xs);
    double val = g.nums[0].eval_double(xs) / den;
    dense = std::max(dense, std::abs(val - std::sin(M_PI * xs[0])));
  }
  CHECK(dense <= rep.achieved_error * 1.1 + 1e-12);
}

TEST_CASE("exp with snapped endpoint data keeps the endpoints exactly") {
  Simplex seg = unit_segment();
  Rational e0 = rat_from_double_exact(std::exp(0.0));
  Rational e1 = rat_from_double_exact(std::exp(1.0));
  FacetData d = endpoint_values(seg, e0, e1);
  auto oracle = [](const std::vector<double>& x) {
    return std::vector<double>{std::exp(x[0])};
  };
  ApproxOptions opt;
  opt.eps = 1e-4;
  ApproxReport rep;
  RegularFnVector g = approximate_on_simplex(seg, oracle, d, opt, &rep);
  CHECK(rep.achieved_error < 1e-4);
  CHECK(g.nums[0].eval(pt({0})) == e0 * g.den.eval(pt({0})));
  CHECK(g.nums[0].eval(pt({1})) == e1 * g.den.eval(pt({1})));
}

TEST_CASE("sup error trivial cases") {
  Simplex seg = unit_segment();
  RegularFnVector zero = RegularFnVector::constant(seg, 1, {Rational(0)});
  auto one = [](const std::vector<double>&) { return std::vector<double>{1.0}; };
  CHECK(sup_error_estimate(zero, one, seg, 16) == doctest::Approx(1.0));

  RegularFnVector c = RegularFnVector::constant(seg, 1, {Rational(1)});
  CHECK(sup_error_estimate(c, one, seg, 16) == doctest::Approx(0.0));
}

TEST_CASE("reported error is monotone across escalation steps") {
  Simplex seg = unit_segment();
  FacetData d = endpoint_values(seg, Rational(0), Rational(0));
  auto oracle = [](const std::vector<double>& x) {
    return std::vector<double>{std::sin(2.0 * M_PI * x[0]) *
                               x[0] * (1.0 - x[0])};
  };
  ApproxOptions opt;
  opt.eps = 1e-12;  // force the full escalation
  opt.degree_cap = 12;
  ApproxReport rep;
  approximate_on_simplex(seg, oracle, d, opt, &rep);
  for (std::size_t i = 1; i < rep.errors_by_degree.size(); ++i)
    CHECK(rep.errors_by_degree[i] <= rep.errors_by_degree[i - 1] + 1e-15);
}
