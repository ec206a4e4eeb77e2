#include <benchmark/benchmark.h>

#include <cmath>

#include "pwreg/extend.hpp"
#include "pwreg/fit.hpp"
#include "pwreg/grassmann.hpp"
#include "pwreg/oracles.hpp"
#include "pwreg/pipeline.hpp"

using namespace pwreg;

namespace {

Point pt2(long x, long y) { return Point{Rational(x), Rational(y)}; }

MultiPoly dense_poly(int vars, int degree) {
  MultiPoly p(vars);
  int c = 1;
  for (const auto& e : monomial_basis(vars, degree)) {
    MultiPoly mono(vars);
    Rational coef(c % 7 - 3, (c % 4) + 1);
    coef.canonicalize();
    if (coef != 0) mono.set_term(e, coef);
    p += mono;
    ++c;
  }
  return p;
}

}  // namespace

static void bm_poly_mul(benchmark::State& state) {
  MultiPoly a = dense_poly(2, static_cast<int>(state.range(0)));
  MultiPoly b = dense_poly(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(bm_poly_mul)->Arg(4)->Arg(8)->Arg(16);

static void bm_poly_eval_double(benchmark::State& state) {
  MultiPoly a = dense_poly(2, static_cast<int>(state.range(0)));
  std::vector<double> x = {0.37, 0.11};
  for (auto _ : state) benchmark::DoNotOptimize(a.eval_double(x));
}
BENCHMARK(bm_poly_eval_double)->Arg(8)->Arg(16);

static void bm_restrict_to_hull(benchmark::State& state) {
  Simplex tri{{pt2(0, 0), pt2(2, 0), pt2(0, 2)}};
  AffineHull h = affine_hull(tri);
  MultiPoly f = dense_poly(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(restrict_to_hull(f, h));
}
BENCHMARK(bm_restrict_to_hull)->Arg(6)->Arg(12);

static void bm_quat_matmul(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FMatR a(Field::H, n, n), b(Field::H, n, n);
  int c = 1;
  for (auto& q : a.e) {
    q = QuatR{Rational(c % 5), Rational(c % 3), Rational(1, (c % 4) + 1), Rational(0)};
    q.z.canonicalize();
    ++c;
  }
  b = a;
  for (auto _ : state) benchmark::DoNotOptimize(fmat_mul(a, b));
}
BENCHMARK(bm_quat_matmul)->Arg(2)->Arg(4)->Arg(8);

static void bm_column_span_projection(benchmark::State& state) {
  FMatR a(Field::C, 4, 2);
  int c = 1;
  for (auto& q : a.e) {
    q = QuatR{Rational(c % 5 - 2), Rational(c % 3), Rational(0), Rational(0)};
    ++c;
  }
  for (auto _ : state) benchmark::DoNotOptimize(column_span_projection(a));
}
BENCHMARK(bm_column_span_projection);

static void bm_barycentric_subdivision(benchmark::State& state) {
  SimplicialComplex tri = build_complex({{pt2(0, 0), pt2(1, 0), pt2(0, 1)}});
  for (auto _ : state)
    benchmark::DoNotOptimize(
        barycentric_subdivide(tri, static_cast<int>(state.range(0))));
}
BENCHMARK(bm_barycentric_subdivision)->Arg(1)->Arg(2)->Arg(3);

static void bm_least_squares_fit(benchmark::State& state) {
  std::vector<FitSample> samples;
  for (int i = 0; i <= 64; ++i) {
    double x = i / 64.0;
    samples.push_back({{x}, std::sin(3.0 * x)});
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(
        least_squares_fit(samples, static_cast<int>(state.range(0))));
}
BENCHMARK(bm_least_squares_fit)->Arg(4)->Arg(8)->Arg(12);

static void bm_boundary_exact_fit(benchmark::State& state) {
  Simplex seg{{Point{Rational(0)}, Point{Rational(1)}}};
  FacetData d;
  d.facets.push_back(RegularFnVector::constant(seg.facet(0), 1, {Rational(0)}));
  d.facets.push_back(RegularFnVector::constant(seg.facet(1), 1, {Rational(0)}));
  auto oracle = [](const std::vector<double>& x) {
    return std::vector<double>{std::sin(M_PI * x[0])};
  };
  ApproxOptions opt;
  opt.eps = 1e-3;
  for (auto _ : state)
    benchmark::DoNotOptimize(approximate_on_simplex(seg, oracle, d, opt));
}
BENCHMARK(bm_boundary_exact_fit);

static void bm_pipeline_triangle_boundary(benchmark::State& state) {
  SimplicialComplex k = build_complex(
      {{pt2(0, 0), pt2(1, 0)}, {pt2(1, 0), pt2(0, 1)}, {pt2(0, 1), pt2(0, 0)}});
  TargetOracle f = make_oracle("radial", TargetSpec::parse("sphere:1"), k);
  PipelineOptions opt;
  opt.eps = 0.05;
  opt.cert_pitch = 8;
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(k, f, opt));
}
BENCHMARK(bm_pipeline_triangle_boundary)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
