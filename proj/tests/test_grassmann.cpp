#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pwreg/grassmann.hpp"

using namespace pwreg;

namespace {

Point pt1(long a) { return Point{Rational(a)}; }

// span(cos(theta(x)), sin(theta(x))) in G_1(R^2) as an oracle, with the
// projection snapped entrywise to exact dyadics.
GrassmannOracle rotating_line(double rate, double offset = 0.0) {
  return [rate, offset](const std::vector<double>& x) {
    double th = offset + rate * x[0];
    double c = std::cos(th), s = std::sin(th);
    FMatD p(Field::R, 2, 2);
    p.at(0, 0) = QuatD::real(c * c);
    p.at(0, 1) = QuatD::real(c * s);
    p.at(1, 0) = QuatD::real(c * s);
    p.at(1, 1) = QuatD::real(s * s);
    GrassmannPoint g;
    g.field = Field::R;
    g.n = 2;
    g.r = 1;
    g.proj = fmat_snap_exact(p);
    return g;
  };
}

// Constant vertex frame data for an edge: the snapped orthonormal frame of
// the oracle value at each endpoint.
std::vector<FRatMat> vertex_frames_for_edge(const Simplex& edge,
                                            const GrassmannOracle& f) {
  std::vector<FRatMat> out;
  for (int k = 0; k <= 1; ++k) {
    Point v = edge.facet(k).vertices[0];
    GrassmannPoint g = f(point_to_doubles(v));
    FMatD a0 = orthonormal_range_frame(fmat_to_double(g.proj), g.r);
    out.push_back(FRatMat::constant(fmat_snap_exact(a0), edge.ambient_dim()));
  }
  return out;
}

}  // namespace

TEST_CASE("frame transport on a constant map") {
  Simplex edge{{pt1(0), pt1(1)}};
  auto f = rotating_line(0.0, 0.3);
  FrameOracle fo = frame_on_simplex(edge, f, 8);
  CHECK(fo.oscillation == doctest::Approx(0.0).epsilon(1e-12));
  auto a = fo.frame({0.7});
  CHECK(fmat_sigma_min(a) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("frame transport on a quarter-turn") {
  Simplex edge{{pt1(0), pt1(1)}};
  auto f = rotating_line(0.5);  // t in [0,1/2] radians of line angle
  FrameOracle fo = frame_on_simplex(edge, f, 16);
  for (const auto& p : barycentric_lattice(edge, 16)) {
    auto a = fo.frame(point_to_doubles(p));
    CHECK(fmat_sigma_min(a) >= std::cos(0.25) - 1e-9);
  }
}

TEST_CASE("oscillation above the bound is rejected") {
  Simplex edge{{pt1(0), pt1(1)}};
  auto f = rotating_line(3.0);  // distance sin(3/2 .. ) > 1/2 from center
  CHECK_THROWS_AS(frame_on_simplex(edge, f, 16), OscillationTooLarge);
}

TEST_CASE("symbolic projection matches the exact pointwise projection") {
  // r = 1, polynomial frame (1, x)^T
  FRatMat fr(Field::R, 2, 1, 1);
  fr.at(0, 0).w = MultiPoly::constant(1, Rational(1));
  fr.at(1, 0).w = MultiPoly::variable(1, 0);
  FRatMat p = projection_from_frame(fr);
  for (long t : {0L, 1L, 2L, 5L}) {
    FMatR pe = p.eval(Point{Rational(t)});
    FMatR frame_at(Field::R, 2, 1);
    frame_at.at(0, 0) = QuatR::real(Rational(1));
    frame_at.at(1, 0) = QuatR::real(Rational(t));
    GrassmannPoint expect = column_span_projection(frame_at);
    CHECK(pe == expect.proj);
  }

  // r = 2 over C: frame with polynomial entries
  FRatMat f2(Field::C, 3, 2, 1);
  f2.at(0, 0).w = MultiPoly::constant(1, Rational(1));
  f2.at(1, 1).w = MultiPoly::constant(1, Rational(1));
  f2.at(2, 0).x = MultiPoly::variable(1, 0);  // i*t entry
  f2.at(2, 1).w = MultiPoly::variable(1, 0);
  FRatMat p2 = projection_from_frame(f2);
  for (long t : {0L, 1L, 3L}) {
    FMatR pe = p2.eval(Point{Rational(t)});
    FMatR frame_at(Field::C, 3, 2);
    frame_at.at(0, 0) = QuatR::real(Rational(1));
    frame_at.at(1, 1) = QuatR::real(Rational(1));
    frame_at.at(2, 0) = QuatR{Rational(0), Rational(t), Rational(0), Rational(0)};
    frame_at.at(2, 1) = QuatR::real(Rational(t));
    GrassmannPoint expect = column_span_projection(frame_at);
    CHECK(pe == expect.proj);
    CHECK(fmat_mul(pe, pe) == pe);
    CHECK(fmat_adjoint(pe) == pe);
  }
}

TEST_CASE("pack and unpack round trip") {
  Simplex edge{{pt1(0), pt1(1)}};
  FRatMat fr(Field::H, 2, 1, 1);
  fr.at(0, 0).w = MultiPoly::constant(1, Rational(1));
  fr.at(0, 0).z = MultiPoly::variable(1, 0);
  fr.at(1, 0).y = MultiPoly::constant(1, Rational(1, 2));
  fr.den = MultiPoly::constant(1, Rational(2));
  RegularFnVector v = frat_pack(fr, edge);
  CHECK(v.size() == 8);
  FRatMat back = frat_unpack(v, Field::H, 2, 1);
  CHECK(frat_equal(fr, back));
}

TEST_CASE("constant grassmann map is reproduced exactly") {
  Simplex edge{{pt1(0), pt1(1)}};
  auto f = rotating_line(0.0, 0.0);  // span(e_1)
  GrassmannApproxOptions opt;
  opt.eps = 1e-6;
  auto res = approximate_grassmann_simplex(edge, f, vertex_frames_for_edge(edge, f), opt);
  CHECK(res.cert.eps_achieved < 1e-9);
  CHECK(res.cert.rank_margin > 0.9);
  CHECK(!res.cert.degree_cap_exceeded);
}

TEST_CASE("rotating line meets 1e-3 with modest degree") {
  Simplex edge{{pt1(0), pt1(1)}};
  auto f = rotating_line(1.0);  // angle t over [0,1]
  GrassmannApproxOptions opt;
  opt.eps = 1e-3;
  opt.fit.min_degree = 1;
  opt.fit.degree_step = 1;
  auto res =
      approximate_grassmann_simplex(edge, f, vertex_frames_for_edge(edge, f), opt);
  CHECK(res.cert.eps_achieved < 1e-3);
  CHECK(res.cert.rank_margin >= 0.8);
  CHECK(res.cert.degree_used <= 8);
  CHECK(res.cert.boundary_residual < 1e-9);

  // exact boundary span agreement: restriction of the symbolic projection
  // to each endpoint equals the projection of the vertex frame
  auto frames = vertex_frames_for_edge(edge, f);
  FRatMat p_sym = projection_from_frame(res.frame);
  for (int k = 0; k <= 1; ++k) {
    Point v = edge.facet(k).vertices[0];
    FMatR at_v = p_sym.eval(v);
    FMatR vertex_frame = frames[k].eval(v);
    GrassmannPoint pv = column_span_projection(vertex_frame);
    CHECK(at_v == pv.proj);
  }
}

TEST_CASE("projection oracle varies without jumps on a Lipschitz map") {
  // Adjacent-lattice increments of P_f stay below 3x their median for a
  // smooth line field (continuity proxy for the projection-valued map).
  Simplex edge{{pt1(0), pt1(1)}};
  auto f = rotating_line(1.3, 0.2);
  auto lattice = barycentric_lattice(edge, 64);
  std::vector<double> jumps;
  for (std::size_t i = 1; i < lattice.size(); ++i)
    jumps.push_back(grassmann_distance(f(point_to_doubles(lattice[i - 1])),
                                       f(point_to_doubles(lattice[i]))));
  std::vector<double> sorted = jumps;
  std::sort(sorted.begin(), sorted.end());
  double median = sorted[sorted.size() / 2];
  for (double j : jumps) CHECK(j <= 3.0 * median);
}

TEST_CASE("quaternionic line field certificate") {
  // span(cos(t) e_1 + sin(t) i e_2) in H^2
  Simplex edge{{pt1(0), pt1(1)}};
  GrassmannOracle f = [](const std::vector<double>& x) {
    double c = std::cos(x[0]), s = std::sin(x[0]);
    FMatD frame(Field::H, 2, 1);
    frame.at(0, 0) = QuatD::real(c);
    frame.at(1, 0) = QuatD{0.0, s, 0.0, 0.0};
    // exact projection of the snapped frame
    return column_span_projection(fmat_snap_exact(frame));
  };
  GrassmannApproxOptions opt;
  opt.eps = 1e-2;
  auto res =
      approximate_grassmann_simplex(edge, f, vertex_frames_for_edge(edge, f), opt);
  CHECK(res.cert.eps_achieved < 1e-2);
  CHECK(res.cert.rank_margin > 0.5);
  CHECK(res.frame.field == Field::H);
}
