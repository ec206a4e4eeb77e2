#include <doctest.h>

#include <cmath>

#include "pwreg/oracles.hpp"
#include "pwreg/pipeline.hpp"
#include "pwreg/serialize.hpp"

using namespace pwreg;

namespace {

Point pt(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.push_back(Rational(x));
  return p;
}

SimplicialComplex triangle_boundary() {
  return build_complex({{pt({0, 0}), pt({1, 0})},
                        {pt({1, 0}), pt({0, 1})},
                        {pt({0, 1}), pt({0, 0})}});
}

SimplicialComplex unit_interval() {
  return build_complex({{pt({0}), pt({1})}});
}

}  // namespace

TEST_CASE("target spec parsing") {
  TargetSpec s = TargetSpec::parse("sphere:2");
  CHECK(s.kind == TargetSpec::Kind::Sphere);
  CHECK(s.n == 2);
  TargetSpec g = TargetSpec::parse("grassmann:H:2:1");
  CHECK(g.kind == TargetSpec::Kind::Grassmann);
  CHECK(g.field == Field::H);
  CHECK(g.to_string() == "grassmann:H:2:1");
  CHECK_THROWS_AS(TargetSpec::parse("torus:3"), BadInput);
}

TEST_CASE("subdivision preconditioning") {
  auto k = triangle_boundary();

  // constant oracle: depth 0
  TargetOracle c = make_oracle("constpoint:0:1", TargetSpec::parse("sphere:1"), k);
  int depth = -1;
  precondition_subdivide(k, c, 0.5, 6, &depth);
  CHECK(depth == 0);

  // uniform full-circle image over the boundary loop: depth 2 at bound 1/2
  TargetOracle f = make_oracle("loopangle", TargetSpec::parse("sphere:1"), k);
  SimplicialComplex pre = precondition_subdivide(k, f, 0.5, 6, &depth);
  CHECK(depth == 2);
  CHECK(pre.simplices_of_dim(1).size() == 12);

  // adversarial oracle oscillating at every scale
  TargetOracle bad;
  bad.spec = TargetSpec::parse("sphere:1");
  bad.sphere = [](const std::vector<double>& x) {
    double t = (std::fmod(std::abs(x[0]) * 1e7, 2.0) < 1.0) ? 1.0 : -1.0;
    return std::vector<double>{t, 0.0};
  };
  CHECK_THROWS_AS(precondition_subdivide(k, bad, 0.5, 4), SubdivisionCapExceeded);
}

TEST_CASE("radial map on the triangle boundary into S^1") {
  auto k = triangle_boundary();
  TargetOracle f = make_oracle("radial", TargetSpec::parse("sphere:1"), k);
  PipelineOptions opt;
  opt.eps = 0.05;
  opt.cert_pitch = 16;
  PiecewiseRegularMap map = run_pipeline(k, f, opt);
  CHECK(map.certificate.eps_achieved < 0.05);
  CHECK(map.certificate.boundary_exact);
  CHECK(map.certificate.unit_norm_exact);
  CHECK(!map.certificate.degree_cap_exceeded);
  CHECK(map.certificate.gluing_jump < 1e-12);

  // evaluating on a shared vertex through any simplex gives one value
  Point v = map.complex.vertices[0];
  auto val = map.eval_sphere(v);
  Rational s(0);
  for (const auto& c : val) s += c * c;
  CHECK(s == 1);
}

TEST_CASE("constant grassmann map over a complex") {
  auto k = triangle_boundary();
  TargetOracle f =
      make_oracle("constgrass", TargetSpec::parse("grassmann:R:3:1"), k);
  PipelineOptions opt;
  opt.eps = 1e-6;
  opt.cert_pitch = 8;
  PiecewiseRegularMap map = run_pipeline(k, f, opt);
  CHECK(map.certificate.eps_achieved < 1e-9);
  CHECK(map.certificate.boundary_exact);
  CHECK(map.certificate.rank_margin > 0.99);
  CHECK(map.certificate.proj_defect < 1e-10);
}

TEST_CASE("rotating line with total turning pi over an interval") {
  auto k = barycentric_subdivide(unit_interval(), 2);
  TargetOracle f =
      make_oracle("rotline:3.141592653589793",
                  TargetSpec::parse("grassmann:R:2:1"), k);
  PipelineOptions opt;
  opt.eps = 1e-3;
  opt.min_degree = 1;
  opt.degree_step = 1;
  opt.cert_pitch = 16;
  PiecewiseRegularMap map = run_pipeline(k, f, opt);
  CHECK(map.certificate.eps_achieved < 1e-3);
  CHECK(map.certificate.boundary_exact);
  CHECK(map.certificate.rank_margin >= 0.5);

  // midpoint evaluation is an honest projection
  GrassmannPoint g = map.eval_grassmann(Point{Rational(1, 2)});
  CHECK(g.defect() < 1e-10);
}

TEST_CASE("re-certification at doubled pitch stays within 25 percent") {
  auto k = triangle_boundary();
  TargetOracle f = make_oracle("radial", TargetSpec::parse("sphere:1"), k);
  PipelineOptions opt;
  opt.eps = 0.05;
  opt.cert_pitch = 16;
  PiecewiseRegularMap map = run_pipeline(k, f, opt);
  Certificate re = certify(map, f, 32);
  CHECK(re.eps_achieved <= map.certificate.eps_achieved * 1.25);
  CHECK(re.eps_achieved >= map.certificate.eps_achieved * 0.75);
}

TEST_CASE("corrupted per-simplex data is caught") {
  auto k = triangle_boundary();
  TargetOracle f = make_oracle("radial", TargetSpec::parse("sphere:1"), k);
  PipelineOptions opt;
  opt.eps = 0.05;
  PiecewiseRegularMap map = run_pipeline(k, f, opt);

  // replace one edge piece with a (valid-looking) constant sphere map
  for (auto& [id, piece] : map.per_simplex) {
    if (SimplicialComplex::parse_id(id).size() == 2) {
      piece.vec = RegularFnVector::constant(
          piece.vec.simplex, map.complex.ambient_dim,
          {Rational(1), Rational(0)});
      break;
    }
  }
  CHECK_THROWS_AS(certify(map, f, 8), CertificateMismatch);
}

TEST_CASE("empty complex certifies trivially") {
  SimplicialComplex k;
  k.ambient_dim = 2;
  TargetOracle f = make_oracle("constpoint:0:1", TargetSpec::parse("sphere:1"), k);
  PipelineOptions opt;
  PiecewiseRegularMap map = approximate_complex(k, f, opt);
  CHECK(map.certificate.boundary_exact);
  CHECK(map.certificate.eps_achieved == 0.0);
}

TEST_CASE("artifact serialization round trip") {
  auto k = triangle_boundary();
  TargetOracle f = make_oracle("radial", TargetSpec::parse("sphere:1"), k);
  PipelineOptions opt;
  opt.eps = 0.05;
  PiecewiseRegularMap map = run_pipeline(k, f, opt);
  Json cfg;
  cfg["oracle"] = "radial";
  std::string text = dump_artifact(map, cfg);
  PiecewiseRegularMap back = artifact_from_json(Json::parse(text));
  CHECK(back.per_simplex.size() == map.per_simplex.size());
  CHECK(back.target.to_string() == map.target.to_string());
  // bit-identical re-dump
  CHECK(dump_artifact(back, cfg) == text);
  // and the restored map still certifies
  Certificate re = certify(back, f, 8);
  CHECK(re.boundary_exact);
}

TEST_CASE("parallel build matches serial build bit for bit") {
  auto k = triangle_boundary();
  TargetOracle f = make_oracle("radial", TargetSpec::parse("sphere:1"), k);
  PipelineOptions serial;
  serial.eps = 0.05;
  PipelineOptions parallel = serial;
  parallel.jobs = 4;
  PiecewiseRegularMap a = run_pipeline(k, f, serial);
  PiecewiseRegularMap b = run_pipeline(k, f, parallel);
  Json cfg;
  CHECK(dump_artifact(a, cfg) == dump_artifact(b, cfg));
}
