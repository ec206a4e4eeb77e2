#include <doctest.h>

#include <random>

#include "pwreg/fit.hpp"
#include "pwreg/polynomial.hpp"
#include "pwreg/rationalfn.hpp"
#include "pwreg/ratlin.hpp"
#include "pwreg/simplicial.hpp"

using namespace pwreg;

namespace {

MultiPoly var(int n, int i) { return MultiPoly::variable(n, i); }

Point pt(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.push_back(Rational(x));
  return p;
}

MultiPoly random_poly(std::mt19937& rng, int n, int deg, int nterms) {
  std::uniform_int_distribution<int> coef(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> expo(0, deg);
  MultiPoly p(n);
  for (int t = 0; t < nterms; ++t) {
    Exponents e(n);
    for (int i = 0; i < n; ++i) e[i] = expo(rng);
    Rational c(coef(rng), den(rng));
    c.canonicalize();
    MultiPoly mono(n);
    if (c != 0) mono.set_term(e, c);
    p += mono;
  }
  return p;
}

Point random_point(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> num(-12, 12);
  std::uniform_int_distribution<int> den(1, 7);
  Point p;
  for (int i = 0; i < n; ++i) {
    Rational c(num(rng), den(rng));
    c.canonicalize();
    p.push_back(c);
  }
  return p;
}

}  // namespace

TEST_CASE("evaluation basics") {
  // (x*y)(2,3) = 6
  MultiPoly xy = var(2, 0) * var(2, 1);
  CHECK(xy.eval(pt({2, 3})) == Rational(6));

  // (x/(1+x^2))(1) = 1/2
  RationalFn f{var(1, 0),
               MultiPoly::constant(1, Rational(1)) + var(1, 0) * var(1, 0),
               ""};
  CHECK(f.eval(pt({1})) == Rational(1, 2));

  // (1/x)(0) -> DenominatorZero
  RationalFn g{MultiPoly::constant(1, Rational(1)), var(1, 0), ""};
  CHECK_THROWS_AS(g.eval(pt({0})), DenominatorZero);
}

TEST_CASE("ring axioms at random points, exact") {
  std::mt19937 rng(20240801);
  for (int it = 0; it < 1000; ++it) {
    int n = 1 + static_cast<int>(rng() % 3);
    MultiPoly f = random_poly(rng, n, 3, 4);
    MultiPoly g = random_poly(rng, n, 3, 4);
    Point x = random_point(rng, n);
    CHECK((f * g).eval(x) == f.eval(x) * g.eval(x));
    CHECK((f + g).eval(x) == f.eval(x) + g.eval(x));
  }
}

TEST_CASE("restriction examples") {
  // f = y restricted to the hull {y=0} of an edge in R^2 -> 0
  Simplex edge{{pt({0, 0}), pt({1, 0})}};
  AffineHull h = affine_hull(edge);
  CHECK(restrict_to_hull(var(2, 1), h).is_zero());

  // f = x + y on the line x = t, y = 1 - t -> 1
  Simplex diag{{pt({0, 1}), pt({1, 0})}};
  AffineHull hd = affine_hull(diag);
  MultiPoly r = restrict_to_hull(var(2, 0) + var(2, 1), hd);
  CHECK(r == MultiPoly::constant(1, Rational(1)));

  // f = x^2 on the hull x = 2t: parametrized by base (0) basis (2) -> 4t^2
  Simplex seg{{pt({0}), pt({2})}};
  AffineHull hs = affine_hull(seg);
  MultiPoly x2 = var(1, 0) * var(1, 0);
  MultiPoly restricted = restrict_to_hull(x2, hs);
  MultiPoly t = var(1, 0);
  CHECK(restricted == t * t * MultiPoly::constant(1, Rational(4)));
}

TEST_CASE("restriction is a ring homomorphism") {
  std::mt19937 rng(7);
  Simplex tri{{pt({0, 0, 1}), pt({1, 0, 0}), pt({0, 1, 0})}};
  AffineHull h = affine_hull(tri);
  for (int it = 0; it < 50; ++it) {
    MultiPoly f = random_poly(rng, 3, 2, 4);
    MultiPoly g = random_poly(rng, 3, 2, 4);
    CHECK(restrict_to_hull(f * g, h) ==
          restrict_to_hull(f, h) * restrict_to_hull(g, h));
    CHECK(restrict_to_hull(f + g, h) ==
          restrict_to_hull(f, h) + restrict_to_hull(g, h));
  }
}

TEST_CASE("face ideal generator") {
  // [0,1]: q = t(1-t)
  Simplex seg{{pt({0}), pt({1})}};
  MultiPoly q = face_ideal_generator(seg);
  MultiPoly t = var(1, 0);
  CHECK(q == (MultiPoly::constant(1, Rational(1)) - t) * t);
  CHECK(q.eval(Point{Rational(1, 2)}) == Rational(1, 4));

  // standard 2-simplex: q = x*y*(1-x-y) in hull parameters
  Simplex tri{{pt({0, 0}), pt({1, 0}), pt({0, 1})}};
  MultiPoly q2 = face_ideal_generator(tri);
  MultiPoly tx = var(2, 0), ty = var(2, 1);
  MultiPoly expect =
      (MultiPoly::constant(2, Rational(1)) - tx - ty) * tx * ty;
  CHECK(q2 == expect);

  // q vanishes symbolically on every facet hull and is positive inside
  for (int i = 0; i < 3; ++i) {
    Simplex facet = tri.facet(i);
    AffineHull fh = affine_hull(facet);
    AffineHull th = affine_hull(tri);
    MultiPoly q_amb = ambientize(q2, th);
    CHECK(restrict_to_hull(q_amb, fh).is_zero());
  }
}

TEST_CASE("exact division by affine forms") {
  MultiPoly x = var(2, 0), y = var(2, 1);
  MultiPoly one = MultiPoly::constant(2, Rational(1));
  MultiPoly f = (x - y) * (one - x) * (x - y);
  auto q = divide_by_affine(f, x - y);
  REQUIRE(q.has_value());
  CHECK(*q == (x - y) * (one - x));
  auto q2 = divide_by_affine_product(f, {x - y, x - y, one - x});
  REQUIRE(q2.has_value());
  CHECK(*q2 == one);
  CHECK(!divide_by_affine(x * y + one, x).has_value());
}

TEST_CASE("least squares examples") {
  // Exactly representable: f(x) = x^2 on 21 uniform points, degree 2.
  std::vector<FitSample> samples;
  for (int i = 0; i <= 20; ++i) {
    double x = i / 20.0;
    samples.push_back({{x}, x * x});
  }
  MultiPoly p = least_squares_fit(samples, 2);
  double sup = 0;
  for (int i = 0; i <= 200; ++i) {
    double x = i / 200.0;
    sup = std::max(sup, std::abs(p.eval_double({x}) - x * x));
  }
  CHECK(sup < 1e-12);

  // sin(pi x) at degree 9 is far below 1e-4.
  std::vector<FitSample> sine;
  for (int i = 0; i <= 60; ++i) {
    double x = i / 60.0;
    sine.push_back({{x}, std::sin(M_PI * x)});
  }
  MultiPoly ps = least_squares_fit(sine, 9);
  double sup_s = 0;
  for (int i = 0; i <= 2000; ++i) {
    double x = i / 2000.0;
    sup_s = std::max(sup_s, std::abs(ps.eval_double({x}) - std::sin(M_PI * x)));
  }
  CHECK(sup_s < 1e-4);

  // Too few samples.
  std::vector<FitSample> tiny = {{{0.0}, 0.0}, {{0.5}, 1.0}, {{1.0}, 0.0}};
  CHECK_THROWS_AS(least_squares_fit(tiny, 5), RankDeficient);
}

TEST_CASE("snap round trip at rational points") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  auto basis = monomial_basis(2, 3);
  std::vector<double> coeffs;
  for (std::size_t i = 0; i < basis.size(); ++i) coeffs.push_back(dist(rng));
  MultiPoly p = snap_to_exact(coeffs, basis, 2);
  for (int it = 0; it < 50; ++it) {
    Point x = random_point(rng, 2);
    double direct = 0;
    auto xd = point_to_doubles(x);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      double t = coeffs[i];
      for (int v = 0; v < 2; ++v)
        for (std::uint32_t k = 0; k < basis[i][v]; ++k) t *= xd[v];
      direct += t;
    }
    double via_exact = rat_to_double(p.eval(x));
    CHECK(std::abs(direct - via_exact) <=
          1e-12 * std::max(1.0, std::abs(direct)));
  }
}
