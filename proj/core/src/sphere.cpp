#include "pwreg/sphere.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "pwreg/errors.hpp"

namespace pwreg {

RatMat ChartPoint::rotation() const {
  // Rows of an orthogonal matrix: row n = sign*e_index, row index = sign*e_n,
  // identity elsewhere. Maps sign*e_index to e_n.
  RatMat r(n + 1, RatVec(n + 1, Rational(0)));
  for (int i = 0; i <= n; ++i) r[i][i] = 1;
  if (index != n) {
    r[index][index] = 0;
    r[n][n] = 0;
    r[n][index] = sign;
    r[index][n] = sign;
  } else if (sign < 0) {
    r[n][n] = -1;
  }
  return r;
}

RatMat ChartPoint::rotation_inverse() const { return rat_transpose(rotation()); }

std::vector<Rational> ChartPoint::point() const {
  std::vector<Rational> p(n + 1, Rational(0));
  p[index] = sign;
  return p;
}

std::vector<double> ChartPoint::point_double() const {
  std::vector<double> p(n + 1, 0.0);
  p[index] = sign;
  return p;
}

namespace {

template <class T>
std::vector<T> apply_mat(const RatMat& m, const std::vector<T>& v);

template <>
std::vector<Rational> apply_mat(const RatMat& m,
                                const std::vector<Rational>& v) {
  return rat_mul_vec(m, v);
}

template <>
std::vector<double> apply_mat(const RatMat& m, const std::vector<double>& v) {
  std::vector<double> out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      out[i] += rat_to_double(m[i][j]) * v[j];
  return out;
}

}  // namespace

std::vector<Rational> stereographic(const std::vector<Rational>& u,
                                    const ChartPoint& chart) {
  auto v = apply_mat(chart.rotation(), u);
  const int n = chart.n;
  Rational den = 1 - v[n];
  if (den == 0) throw ChartPole("stereographic projection at the chart point");
  std::vector<Rational> y(n);
  for (int i = 0; i < n; ++i) y[i] = v[i] / den;
  return y;
}

std::vector<double> stereographic(const std::vector<double>& u,
                                  const ChartPoint& chart) {
  auto v = apply_mat(chart.rotation(), u);
  const int n = chart.n;
  double den = 1.0 - v[n];
  if (den == 0.0)
    throw ChartPole("stereographic projection at the chart point");
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) y[i] = v[i] / den;
  return y;
}

std::vector<Rational> inverse_stereographic(const std::vector<Rational>& y,
                                            const ChartPoint& chart) {
  const int n = chart.n;
  Rational norm2(0);
  for (const auto& c : y) norm2 += c * c;
  Rational den = norm2 + 1;
  std::vector<Rational> v(n + 1);
  for (int i = 0; i < n; ++i) v[i] = 2 * y[i] / den;
  v[n] = (norm2 - 1) / den;
  return apply_mat(chart.rotation_inverse(), v);
}

std::vector<double> inverse_stereographic(const std::vector<double>& y,
                                          const ChartPoint& chart) {
  const int n = chart.n;
  double norm2 = 0;
  for (double c : y) norm2 += c * c;
  double den = norm2 + 1;
  std::vector<double> v(n + 1);
  for (int i = 0; i < n; ++i) v[i] = 2 * y[i] / den;
  v[n] = (norm2 - 1) / den;
  return apply_mat(chart.rotation_inverse(), v);
}

ChartPoint choose_chart(const std::vector<std::vector<double>>& samples,
                        double margin) {
  if (samples.empty()) throw BadInput("choose_chart needs samples");
  const int n = static_cast<int>(samples[0].size()) - 1;
  for (int i = 0; i <= n; ++i) {
    for (int sign : {+1, -1}) {
      double min_dist = std::numeric_limits<double>::infinity();
      for (const auto& s : samples) {
        double d2 = 0;
        for (int c = 0; c <= n; ++c) {
          double diff = s[c] - (c == i ? sign : 0.0);
          d2 += diff * diff;
        }
        min_dist = std::min(min_dist, std::sqrt(d2));
      }
      if (min_dist >= margin) return ChartPoint{n, i, sign};
    }
  }
  throw NoChartFound("image too spread for every signed basis chart");
}

std::vector<Rational> snap_to_sphere(const std::vector<double>& u) {
  ChartPoint chart = choose_chart({u}, 0.3);
  auto y = stereographic(u, chart);
  std::vector<Rational> yr;
  yr.reserve(y.size());
  for (double c : y) yr.push_back(rat_from_double_exact(c));
  return inverse_stereographic(yr, chart);
}

bool unit_norm_identity_holds(const RegularFnVector& v) {
  MultiPoly acc(v.den.num_vars());
  for (const auto& nm : v.nums) acc += nm * nm;
  return acc == v.den * v.den;
}

RegularFnVector compose_with_chart(const RegularFnVector& u,
                                   const ChartPoint& chart) {
  const int n = chart.n;
  assert(u.size() == n + 1);
  RatMat r = chart.rotation();
  // rotated numerators
  std::vector<MultiPoly> rn(n + 1, MultiPoly(u.den.num_vars()));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      if (r[i][j] == 0) continue;
      MultiPoly term = u.nums[j];
      term.scale(r[i][j]);
      rn[i] += term;
    }
  RegularFnVector y;
  y.simplex = u.simplex;
  y.den = u.den - rn[n];
  for (int i = 0; i < n; ++i) y.nums.push_back(rn[i]);
  y.domain_tag = "chart";
  return y;
}

RegularFnVector compose_with_inverse_chart(const RegularFnVector& y,
                                           const ChartPoint& chart) {
  const int n = chart.n;
  assert(y.size() == n);
  MultiPoly norm2(y.den.num_vars());
  for (const auto& m : y.nums) norm2 += m * m;
  MultiPoly s2 = y.den * y.den;
  MultiPoly den = norm2 + s2;
  std::vector<MultiPoly> v;
  v.reserve(n + 1);
  for (int i = 0; i < n; ++i) {
    MultiPoly t = y.nums[i] * y.den;
    t.scale(Rational(2));
    v.push_back(t);
  }
  v.push_back(norm2 - s2);
  RatMat rinv = chart.rotation_inverse();
  RegularFnVector out;
  out.simplex = y.simplex;
  out.den = den;
  for (int i = 0; i <= n; ++i) {
    MultiPoly acc(y.den.num_vars());
    for (int j = 0; j <= n; ++j) {
      if (rinv[i][j] == 0) continue;
      MultiPoly term = v[j];
      term.scale(rinv[i][j]);
      acc += term;
    }
    out.nums.push_back(acc);
  }
  out.domain_tag = "sphere";
  return out;
}

SphereApproxResult approximate_sphere_simplex(const Simplex& delta,
                                              const VectorOracle& f,
                                              const FacetData& data,
                                              const SphereApproxOptions& opt) {
  assert(delta.dim() >= 1);

  // Chart choice from oracle samples over the simplex.
  std::vector<std::vector<double>> samples;
  for (const auto& p : barycentric_lattice(delta, opt.cert_pitch))
    samples.push_back(f(point_to_doubles(p)));
  ChartPoint chart = choose_chart(samples, opt.chart_margin);
  const int n = chart.n;

  // Facet data must stay clear of the chart point.
  auto chart_pt = chart.point_double();
  for (const auto& fd : data.facets) {
    for (const auto& p : barycentric_lattice(fd.simplex, 8)) {
      auto v = fd.eval_double(point_to_doubles(p));
      double d2 = 0;
      for (int c = 0; c <= n; ++c)
        d2 += (v[c] - chart_pt[c]) * (v[c] - chart_pt[c]);
      if (std::sqrt(d2) < opt.chart_margin - opt.eps)
        throw NoChartFound("facet data run into the chart margin");
    }
  }

  // Chart-side boundary data and oracle.
  FacetData chart_data;
  for (const auto& fd : data.facets)
    chart_data.facets.push_back(compose_with_chart(fd, chart));
  auto chart_oracle = [&](const std::vector<double>& x) {
    return stereographic(f(x), chart);
  };

  ApproxOptions fit_opt = opt.fit;
  fit_opt.eps = opt.eps / 2;  // the inverse chart is 2-Lipschitz
  ApproxReport rep;
  RegularFnVector g_chart =
      approximate_on_simplex(delta, chart_oracle, chart_data, fit_opt, &rep);

  SphereApproxResult out;
  out.chart = chart;
  out.map = compose_with_inverse_chart(g_chart, chart);
  out.map.simplex = delta;
  out.map.domain_tag = "sphere chart=" + std::to_string(chart.index) +
                       (chart.sign > 0 ? "+" : "-");
  out.cert.degree_used = rep.degree_used;
  out.cert.degree_cap_exceeded = rep.degree_cap_exceeded;

  // Ambient certificate sweep.
  out.cert.chart_margin_min = std::numeric_limits<double>::infinity();
  for (const auto& p : barycentric_lattice(delta, opt.cert_pitch)) {
    auto x = point_to_doubles(p);
    auto gx = out.map.eval_double(x);
    auto fx = f(x);
    double err = 0, d2 = 0;
    for (int c = 0; c <= n; ++c) {
      err = std::max(err, std::abs(gx[c] - fx[c]));
      d2 += (gx[c] - chart_pt[c]) * (gx[c] - chart_pt[c]);
    }
    out.cert.eps_achieved = std::max(out.cert.eps_achieved, err);
    out.cert.chart_margin_min =
        std::min(out.cert.chart_margin_min, std::sqrt(d2));
  }
  out.cert.degree_cap_exceeded =
      out.cert.degree_cap_exceeded || out.cert.eps_achieved >= opt.eps;
  return out;
}

}  // namespace pwreg
