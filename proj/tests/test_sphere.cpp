#include <doctest.h>

#include <cmath>
#include <random>

#include "pwreg/sphere.hpp"

using namespace pwreg;

namespace {

Point pt1(long a) { return Point{Rational(a)}; }

FacetData endpoint_sphere_data(const Simplex& seg,
                               const std::vector<Rational>& at0,
                               const std::vector<Rational>& at1) {
  FacetData d;
  d.facets.push_back(RegularFnVector::constant(seg.facet(0), 1, at1));
  d.facets.push_back(RegularFnVector::constant(seg.facet(1), 1, at0));
  return d;
}

}  // namespace

TEST_CASE("chart rotation is exactly orthogonal and sends a to the pole") {
  for (int n : {1, 2, 3}) {
    for (int i = 0; i <= n; ++i) {
      for (int sign : {1, -1}) {
        ChartPoint c{n, i, sign};
        RatMat r = c.rotation();
        RatMat rt = rat_transpose(r);
        CHECK(rat_mul(r, rt) == rat_identity(n + 1));
        auto img = rat_mul_vec(r, c.point());
        for (int k = 0; k <= n; ++k)
          CHECK(img[k] == (k == n ? Rational(1) : Rational(0)));
      }
    }
  }
}

TEST_CASE("stereographic examples") {
  ChartPoint chart{1, 1, 1};  // a = e_2 on S^1
  // antipode of the chart point maps to 0
  std::vector<Rational> anti = {Rational(0), Rational(-1)};
  auto y = stereographic(anti, chart);
  CHECK(y[0] == 0);
  // and back
  auto u = inverse_stereographic(std::vector<Rational>{Rational(0)}, chart);
  CHECK(u[0] == 0);
  CHECK(u[1] == -1);
  // pole is rejected
  CHECK_THROWS_AS(stereographic(chart.point(), chart), ChartPole);
}

TEST_CASE("round trip is exact on rational sphere points") {
  std::mt19937 rng(321);
  std::uniform_int_distribution<int> num(-8, 8);
  std::uniform_int_distribution<int> den(1, 5);
  for (int n : {1, 2}) {
    ChartPoint chart{n, 0, 1};
    int done = 0;
    while (done < 50) {
      // rational sphere point via the inverse chart of a rational y
      std::vector<Rational> yy;
      for (int i = 0; i < n; ++i) {
        Rational c(num(rng), den(rng));
        c.canonicalize();
        yy.push_back(c);
      }
      auto u = inverse_stereographic(yy, chart);
      Rational s(0);
      for (const auto& c : u) s += c * c;
      REQUIRE(s == 1);
      if (u[chart.index] == chart.sign) continue;  // avoid the pole
      auto y2 = stereographic(u, chart);
      CHECK(y2 == yy);
      ++done;
    }
  }
}

TEST_CASE("chart choice") {
  // all samples near e_1 -> chart -e_1 (index 0, sign -1)
  std::vector<std::vector<double>> samples;
  for (int i = 0; i < 10; ++i)
    samples.push_back({std::cos(0.01 * i), std::sin(0.01 * i)});
  ChartPoint c = choose_chart(samples);
  CHECK(c.index == 0);
  CHECK(c.sign == -1);

  // dense cover of S^1 -> no chart
  std::vector<std::vector<double>> dense;
  for (int i = 0; i < 200; ++i) {
    double th = 2 * M_PI * i / 200.0;
    dense.push_back({std::cos(th), std::sin(th)});
  }
  CHECK_THROWS_AS(choose_chart(dense), NoChartFound);
}

TEST_CASE("snapped sphere points satisfy the unit identity exactly") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int it = 0; it < 100; ++it) {
    std::vector<double> v = {dist(rng), dist(rng), dist(rng)};
    double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (norm < 0.1) continue;
    for (auto& c : v) c /= norm;
    auto u = snap_to_sphere(v);
    Rational s(0);
    for (const auto& c : u) s += c * c;
    CHECK(s == 1);
    for (std::size_t i = 0; i < v.size(); ++i)
      CHECK(std::abs(rat_to_double(u[i]) - v[i]) < 1e-12);
  }
}

TEST_CASE("constant sphere map is exact") {
  Simplex seg{{pt1(0), pt1(1)}};
  std::vector<Rational> e2 = {Rational(0), Rational(1)};
  FacetData d = endpoint_sphere_data(seg, e2, e2);
  auto f = [](const std::vector<double>&) {
    return std::vector<double>{0.0, 1.0};
  };
  SphereApproxOptions opt;
  opt.eps = 1e-9;
  auto res = approximate_sphere_simplex(seg, f, d, opt);
  CHECK(res.cert.eps_achieved < 1e-12);
  CHECK(unit_norm_identity_holds(res.map));
  auto val = res.map.eval(pt1(0));
  CHECK(val[0] == 0);
  CHECK(val[1] == 1);
}

TEST_CASE("quarter circle on S^1 with exact endpoints") {
  Simplex seg{{pt1(0), pt1(1)}};
  std::vector<Rational> p0 = {Rational(1), Rational(0)};
  std::vector<Rational> p1 = {Rational(0), Rational(1)};
  FacetData d = endpoint_sphere_data(seg, p0, p1);
  auto f = [](const std::vector<double>& x) {
    return std::vector<double>{std::cos(M_PI * x[0] / 2),
                               std::sin(M_PI * x[0] / 2)};
  };
  SphereApproxOptions opt;
  opt.eps = 1e-3;
  opt.fit.min_degree = 1;
  opt.fit.degree_step = 1;
  auto res = approximate_sphere_simplex(seg, f, d, opt);
  CHECK(res.cert.eps_achieved < 1e-3);
  CHECK(res.cert.degree_used <= 10);
  CHECK(unit_norm_identity_holds(res.map));
  // exact endpoint values
  auto v0 = res.map.eval(pt1(0));
  CHECK(v0[0] == 1);
  CHECK(v0[1] == 0);
  auto v1 = res.map.eval(pt1(1));
  CHECK(v1[0] == 0);
  CHECK(v1[1] == 1);
  // chart margin certificate
  CHECK(res.cert.chart_margin_min >= 0.15);
}

TEST_CASE("over-spread image fails, succeeds after one subdivision") {
  Simplex seg{{pt1(0), pt1(1)}};
  // covers 300 degrees of the circle
  auto f = [](const std::vector<double>& x) {
    double th = 5.2 * x[0];
    return std::vector<double>{std::cos(th), std::sin(th)};
  };
  auto u0 = snap_to_sphere(f({0.0}));
  auto u1 = snap_to_sphere(f({1.0}));
  FacetData d = endpoint_sphere_data(seg, u0, u1);
  SphereApproxOptions opt;
  opt.eps = 1e-2;
  CHECK_THROWS_AS(approximate_sphere_simplex(seg, f, d, opt), NoChartFound);

  // split at 1/2: both halves admit charts
  Simplex left{{pt1(0), Point{Rational(1, 2)}}};
  auto um = snap_to_sphere(f({0.5}));
  FacetData dl;
  dl.facets.push_back(RegularFnVector::constant(left.facet(0), 1, um));
  dl.facets.push_back(RegularFnVector::constant(left.facet(1), 1, u0));
  auto resl = approximate_sphere_simplex(left, f, dl, opt);
  CHECK(resl.cert.eps_achieved < 1e-2);
  CHECK(unit_norm_identity_holds(resl.map));
}
