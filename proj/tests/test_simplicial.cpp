#include <doctest.h>

#include <random>

#include "pwreg/simplicial.hpp"

using namespace pwreg;

namespace {

Point pt(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.push_back(Rational(x));
  return p;
}

Point ptr(std::initializer_list<Rational> xs) { return Point(xs); }

SimplicialComplex triangle_complex() {
  return build_complex({{pt({0, 0}), pt({1, 0}), pt({0, 1})}});
}

}  // namespace

TEST_CASE("face closure counts") {
  auto k = triangle_complex();
  CHECK(k.simplices.size() == 7);  // 1 triangle, 3 edges, 3 vertices

  auto two = build_complex({{pt({0, 0}), pt({1, 0}), pt({0, 1})},
                            {pt({1, 0}), pt({0, 1}), pt({1, 1})}});
  CHECK(two.simplices.size() == 11);

  // Overlapping triangles: meet in half a triangle, not a face.
  CHECK_THROWS_AS(build_complex({{pt({0, 0}), pt({2, 0}), pt({0, 2})},
                                 {pt({1, 0}), pt({3, 0}), pt({1, 2})}}),
                  BadIntersection);
}

TEST_CASE("degenerate simplex is rejected") {
  CHECK_THROWS_AS(build_complex({{pt({0, 0}), pt({1, 1}), pt({2, 2})}}),
                  AffineDependence);
}

TEST_CASE("skeleton") {
  auto k = triangle_complex();
  auto s1 = skeleton(k, 1);
  CHECK(s1.simplices.size() == 6);  // 3 edges + 3 vertices
  auto s5 = skeleton(k, 5);
  CHECK(s5.simplices == k.simplices);
  auto s0 = skeleton(k, 0);
  CHECK(s0.simplices.size() == 3);
  for (const auto& s : s0.simplices) CHECK(s.size() == 1);
}

TEST_CASE("barycentric subdivision") {
  auto seg = build_complex({{pt({0}), pt({1})}});
  auto sd = barycentric_subdivide(seg, 1);
  CHECK(sd.simplices_of_dim(1).size() == 2);
  CHECK(sd.simplices_of_dim(0).size() == 3);
  // the midpoint is exactly 1/2
  bool has_half = false;
  for (const auto& v : sd.vertices)
    if (v[0] == Rational(1, 2)) has_half = true;
  CHECK(has_half);

  auto tri = triangle_complex();
  auto sdt = barycentric_subdivide(tri, 1);
  CHECK(sdt.simplices_of_dim(2).size() == 6);

  auto same = barycentric_subdivide(tri, 0);
  CHECK(same.simplices == tri.simplices);
}

TEST_CASE("subdivision preserves the polyhedron") {
  auto tri = triangle_complex();
  auto sd = barycentric_subdivide(tri, 2);
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> num(0, 64);
  int checked = 0;
  while (checked < 1000) {
    // random rational barycentric point of the triangle
    int a = num(rng), b = num(rng), c = num(rng);
    if (a + b + c == 0) continue;
    Rational wa(a, a + b + c), wb(b, a + b + c);
    wa.canonicalize();
    wb.canonicalize();
    Point p = ptr({wa * 0 + wb * 1, Rational(c, a + b + c)});
    p[0] = wb;  // x = wb*1
    p[1] = Rational(c, a + b + c);
    p[1].canonicalize();
    CHECK(tri.contains_point(p));
    CHECK(sd.contains_point(p));
    ++checked;
  }
}

TEST_CASE("affine hull examples") {
  // edge {(0,0),(1,0)}: normal form y = 0
  Simplex edge{{pt({0, 0}), pt({1, 0})}};
  AffineHull h = affine_hull(edge);
  REQUIRE(h.normal_forms.size() == 1);
  CHECK(h.normal_forms[0] == MultiPoly::variable(2, 1));

  // full-dim simplex: no normal forms
  Simplex tri{{pt({0, 0}), pt({1, 0}), pt({0, 1})}};
  CHECK(affine_hull(tri).normal_forms.empty());

  // vertex (1,2): forms x-1, y-2 (up to exact scaling; basis is canonical)
  Simplex v{{pt({1, 2})}};
  AffineHull hv = affine_hull(v);
  REQUIRE(hv.normal_forms.size() == 2);
  CHECK(hv.contains(pt({1, 2})));
  CHECK(!hv.contains(pt({1, 3})));
  for (const auto& nf : hv.normal_forms) CHECK(nf.eval(pt({1, 2})) == 0);
}

TEST_CASE("normal forms vanish exactly on simplex vertices") {
  Simplex tri{{pt({1, 2, 3}), pt({2, 4, 5}), pt({0, 1, 7})}};
  AffineHull h = affine_hull(tri);
  CHECK(h.normal_forms.size() == 1);
  for (const auto& v : tri.vertices)
    for (const auto& nf : h.normal_forms) CHECK(nf.eval(v) == 0);
}

TEST_CASE("induced filtration of the triangle") {
  auto k = triangle_complex();
  Filtration f = induced_filtration(k);
  REQUIRE(f.levels.size() == 4);
  CHECK(f.levels[0].hulls.size() == 1);
  CHECK(f.levels[0].hulls[0].dim() == 2);
  CHECK(f.levels[1].hulls.size() == 3);  // the 3 edge lines
  for (const auto& h : f.levels[1].hulls) CHECK(h.dim() == 1);
  CHECK(f.levels[2].hulls.size() == 3);  // the 3 vertices
  for (const auto& h : f.levels[2].hulls) CHECK(h.dim() == 0);
  CHECK(f.levels[3].hulls.empty());
}

TEST_CASE("induced filtration, vertex in R^1 and empty complex") {
  auto k = build_complex({{pt({3})}});
  Filtration f = induced_filtration(k);
  REQUIRE(f.levels.size() == 3);
  CHECK(f.levels[0].hulls.size() == 1);
  CHECK(f.levels[1].hulls.size() == 1);
  CHECK(f.levels[1].hulls[0].dim() == 0);
  CHECK(f.levels[2].hulls.empty());

  SimplicialComplex empty;
  empty.ambient_dim = 2;
  Filtration fe = induced_filtration(empty);
  CHECK(fe.levels[0].hulls.size() == 1);
  CHECK(fe.levels[1].hulls.empty());
  CHECK(fe.levels[2].hulls.empty());
}

TEST_CASE("filtration monotonicity") {
  auto two = build_complex({{pt({0, 0}), pt({1, 0}), pt({0, 1})},
                            {pt({1, 0}), pt({0, 1}), pt({1, 1})}});
  Filtration f = induced_filtration(two);
  for (std::size_t d = 0; d + 1 < f.levels.size(); ++d) {
    for (const auto& h : f.levels[d + 1].hulls) {
      bool inside_some = false;
      for (const auto& big : f.levels[d].hulls)
        if (h.contained_in(big)) { inside_some = true; break; }
      CHECK(inside_some);
    }
  }
}

TEST_CASE("stratification of the triangle") {
  auto k = triangle_complex();
  Stratification s = induced_stratification(k);
  REQUIRE(s.strata.size() == 3);

  // interior point of the face
  CHECK(s.stratum_of(ptr({Rational(1, 4), Rational(1, 4)})) == 0);
  // interior point of an edge
  CHECK(s.stratum_of(ptr({Rational(1, 2), Rational(0)})) == 1);
  // vertex
  CHECK(s.stratum_of(pt({0, 0})) == 2);

  SimplicialComplex empty;
  empty.ambient_dim = 3;
  Stratification se = induced_stratification(empty);
  int nonempty = 0;
  for (const auto& st : se.strata)
    if (!st.positive.empty()) ++nonempty;
  CHECK(nonempty == 1);
}

TEST_CASE("stratification partitions a random sample") {
  auto two = build_complex({{pt({0, 0}), pt({1, 0}), pt({0, 1})},
                            {pt({1, 0}), pt({0, 1}), pt({1, 1})}});
  Stratification s = induced_stratification(two);
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> num(-40, 40);
  std::uniform_int_distribution<int> den(1, 16);
  for (int it = 0; it < 10000; ++it) {
    Rational x(num(rng), den(rng)), y(num(rng), den(rng));
    x.canonicalize();
    y.canonicalize();
    Point p{x, y};
    int count = 0;
    for (const auto& st : s.strata)
      if (st.contains(p)) ++count;
    REQUIRE(count == 1);
  }
}

TEST_CASE("component containment on the triangle") {
  auto k = triangle_complex();
  Stratification s = induced_stratification(k);
  // interior samples of the open face: one component, inside the triangle
  std::vector<Point> pts;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j + i <= 5; ++j) {
      Rational x(i, 6), y(j, 6);
      x.canonicalize();
      y.canonicalize();
      pts.push_back({x, y});
    }
  auto rep = component_containment_check(pts, k, s, 0.5);
  CHECK(rep.components.size() == 1);
  CHECK(rep.components[0].shared_simplex_ids ==
        std::vector<std::string>{"0-1-2"});

  // vertices: each its own component
  std::vector<Point> vs = {pt({0, 0}), pt({1, 0}), pt({0, 1})};
  auto repv = component_containment_check(vs, k, s, 0.5);
  CHECK(repv.components.size() == 3);
}

TEST_CASE("two disjoint edges on one line split components") {
  auto k = build_complex({{pt({0, 0}), pt({1, 0})}, {pt({3, 0}), pt({4, 0})}});
  Stratification s = induced_stratification(k);
  std::vector<Point> pts;
  for (int i = 1; i < 8; ++i) {
    Rational x1(i, 8), x2 = Rational(3) + Rational(i, 8);
    x1.canonicalize();
    x2.canonicalize();
    pts.push_back({x1, Rational(0)});
    pts.push_back({x2, Rational(0)});
  }
  auto rep = component_containment_check(pts, k, s, 0.3);
  // the open-line stratum has two components, one per edge
  int comps_on_line = 0;
  for (const auto& c : rep.components)
    if (!c.point_indices.empty()) ++comps_on_line;
  CHECK(comps_on_line == 2);
  for (const auto& c : rep.components) CHECK(!c.shared_simplex_ids.empty());
}
