#include "pwreg/extend.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <string>

#include "pwreg/errors.hpp"
#include "pwreg/fit.hpp"

namespace pwreg {

namespace {

// Affine substitution polynomials mapping facet-hull parameters into the
// simplex-hull parameters and back.
struct FacetCharts {
  std::vector<MultiPoly> into_t;   // T_k: sigma -> t   (d polys in d-1 vars)
  std::vector<MultiPoly> from_t;   // sigma_k: t -> sigma (d-1 polys in d vars)
};

FacetCharts facet_charts(const AffineHull& hull, const Simplex& facet) {
  AffineHull fh = affine_hull(facet);
  FacetCharts ch;
  auto facet_param = fh.param_polys();  // ambient coords of sigma
  for (const auto& cf : hull.coord_forms) ch.into_t.push_back(cf.compose(facet_param));
  auto hull_param = hull.param_polys();  // ambient coords of t
  for (const auto& cf : fh.coord_forms) ch.from_t.push_back(cf.compose(hull_param));
  return ch;
}

}  // namespace

void check_facet_compatibility(const Simplex& delta, const FacetData& data) {
  const int d = delta.dim();
  if (static_cast<int>(data.facets.size()) != d + 1)
    throw IncompatibleFacetData("expected one data entry per facet");
  int comps = data.facets.empty() ? 0 : data.facets[0].size();
  for (const auto& f : data.facets)
    if (f.size() != comps)
      throw IncompatibleFacetData("facet data with differing component counts");
  if (d < 2) return;  // facets of an edge are disjoint vertices

  for (int j = 0; j < d + 1; ++j) {
    for (int k = j + 1; k < d + 1; ++k) {
      // Shared face: drop vertices j and k.
      Simplex shared;
      for (int v = 0; v <= d; ++v)
        if (v != j && v != k) shared.vertices.push_back(delta.vertices[v]);
      AffineHull hs = affine_hull(shared);
      const auto& fj = data.facets[j];
      const auto& fk = data.facets[k];
      MultiPoly dj = restrict_to_hull(fj.den, hs);
      MultiPoly dk = restrict_to_hull(fk.den, hs);
      for (int c = 0; c < comps; ++c) {
        MultiPoly lhs = restrict_to_hull(fj.nums[c], hs) * dk;
        MultiPoly rhs = restrict_to_hull(fk.nums[c], hs) * dj;
        if (!(lhs == rhs))
          throw IncompatibleFacetData(
              "facet data disagree on the shared face of facets " +
              std::to_string(j) + "," + std::to_string(k));
      }
    }
  }
}

RegularFnVector extend_from_boundary(const Simplex& delta,
                                     const FacetData& data,
                                     const ExtendOptions& opt) {
  const int d = delta.dim();
  assert(d >= 1);
  check_facet_compatibility(delta, data);
  const int comps = data.facets[0].size();

  AffineHull hull = affine_hull(delta);
  auto lambda = barycentric_forms(delta);  // in t, one per facet

  // Everything below lives in the hull parameters t (d vars).
  std::vector<MultiPoly> den_t(d + 1);
  for (int k = 0; k <= d; ++k)
    den_t[k] = restrict_to_hull(data.facets[k].den, hull);

  MultiPoly s = MultiPoly::constant(d, Rational(1));
  for (const auto& dk : den_t) s = s * dk;

  // Numerators over the common denominator.
  std::vector<std::vector<MultiPoly>> m_t(d + 1);
  for (int k = 0; k <= d; ++k) {
    MultiPoly cof = MultiPoly::constant(d, Rational(1));
    for (int j = 0; j <= d; ++j)
      if (j != k) cof = cof * den_t[j];
    for (int c = 0; c < comps; ++c)
      m_t[k].push_back(restrict_to_hull(data.facets[k].nums[c], hull) * cof);
  }

  std::vector<FacetCharts> charts;
  charts.reserve(d + 1);
  for (int k = 0; k <= d; ++k)
    charts.push_back(facet_charts(hull, delta.facet(k)));

  std::vector<MultiPoly> g(comps, MultiPoly(d));
  MultiPoly running_product = MultiPoly::constant(d, Rational(1));
  for (int k = 0; k <= d; ++k) {
    // Divisor: the product of earlier facet forms restricted to facet k.
    std::vector<MultiPoly> divisors;
    for (int j = 0; j < k; ++j)
      divisors.push_back(lambda[j].compose(charts[k].into_t));
    for (int c = 0; c < comps; ++c) {
      MultiPoly r = (m_t[k][c] - g[c]).compose(charts[k].into_t);
      auto h = divide_by_affine_product(r, divisors);
      if (!h)
        throw IncompatibleFacetData(
            "exact division failed at facet " + std::to_string(k) +
            " (boundary data are not compatible)");
      g[c] += running_product * h->compose(charts[k].from_t, d);
    }
    running_product = running_product * lambda[k];
  }

  RegularFnVector out;
  out.simplex = delta;
  out.den = ambientize(s, hull);
  for (int c = 0; c < comps; ++c)
    out.nums.push_back(ambientize(g[c], hull));
  double min_den =
      certify_positive_on_simplex(out.den, delta, opt.cert_pitch, opt.den_margin);
  out.domain_tag = "simplex den_min=" + std::to_string(min_den) +
                   " margin=" + std::to_string(opt.den_margin);
  return out;
}

namespace {

// Barycentric lattice in hull parameters: weights w/pitch on vertices
// 1..d give t directly.
struct TLattice {
  std::vector<Point> t_points;               // exact hull parameters
  std::vector<std::vector<double>> t_dbl;    // same, as doubles
  std::vector<std::vector<double>> x_dbl;    // ambient doubles
};

TLattice t_lattice(const Simplex& delta, int pitch) {
  const int d = delta.dim();
  TLattice lat;
  std::vector<int> w(d + 1, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == d) {
      w[pos] = left;
      Point t(d);
      for (int i = 1; i <= d; ++i) {
        t[i - 1] = Rational(w[i], pitch);
        t[i - 1].canonicalize();
      }
      Point x = delta.vertices[0];
      for (int i = 1; i <= d; ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
          x[j] += t[i - 1] * (delta.vertices[i][j] - delta.vertices[0][j]);
      lat.t_dbl.push_back(point_to_doubles(t));
      lat.x_dbl.push_back(point_to_doubles(x));
      lat.t_points.push_back(std::move(t));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      w[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, pitch);
  return lat;
}

}  // namespace

double sup_error_estimate(const RegularFnVector& g, const VectorOracle& f,
                          const Simplex& delta, int pitch) {
  assert(pitch >= 2);
  double sup = 0.0;
  for (const auto& p : barycentric_lattice(delta, pitch)) {
    auto x = point_to_doubles(p);
    double den = g.den.eval_double(x);
    if (!(den > 0))
      throw DenominatorZero("denominator not positive at a lattice sample");
    auto fx = f(x);
    for (int c = 0; c < g.size(); ++c) {
      double gc = g.nums[c].eval_double(x) / den;
      sup = std::max(sup, std::abs(fx[c] - gc));
    }
  }
  return sup;
}

RegularFnVector approximate_on_simplex(const Simplex& delta,
                                       const VectorOracle& f,
                                       const FacetData& data,
                                       const ApproxOptions& opt,
                                       ApproxReport* report) {
  const int d = delta.dim();
  assert(d >= 1);
  ExtendOptions eopt{opt.cert_pitch, opt.den_margin};
  RegularFnVector h = extend_from_boundary(delta, data, eopt);
  const int comps = h.size();

  AffineHull hull = affine_hull(delta);
  MultiPoly q_t = face_ideal_generator(delta);
  MultiPoly s_t = restrict_to_hull(h.den, hull);
  std::vector<MultiPoly> g_t(comps);
  for (int c = 0; c < comps; ++c)
    g_t[c] = restrict_to_hull(h.nums[c], hull);
  MultiPoly sq_t = s_t * q_t;

  ApproxReport rep;
  // How far the boundary data sit from the oracle on the facets.
  for (int k = 0; k <= d; ++k) {
    const auto& fd = data.facets[k];
    Simplex facet = delta.facet(k);
    int bpitch = std::max(4, opt.cert_pitch / 4);
    for (const auto& p : barycentric_lattice(facet, bpitch)) {
      auto x = point_to_doubles(p);
      auto fx = f(x);
      auto dx = fd.eval_double(x);
      for (int c = 0; c < comps; ++c)
        rep.boundary_mismatch =
            std::max(rep.boundary_mismatch, std::abs(fx[c] - dx[c]));
    }
  }

  RegularFnVector best = h;
  double best_err = sup_error_estimate(h, f, delta, opt.cert_pitch);
  rep.errors_by_degree.push_back(best_err);
  rep.degree_used = -1;

  for (int deg = opt.min_degree; deg <= opt.degree_cap && best_err >= opt.eps;
       deg += opt.degree_step) {
    int pitch = std::max(opt.fit_pitch_factor * deg, 4);
    TLattice lat = t_lattice(delta, pitch);

    std::vector<std::vector<FitSample>> samples(comps);
    bool bad_sample = false;
    for (std::size_t i = 0; i < lat.t_points.size(); ++i) {
      double den = s_t.eval_double(lat.t_dbl[i]);
      if (!(den > 0)) { bad_sample = true; break; }
      auto fx = f(lat.x_dbl[i]);
      for (int c = 0; c < comps; ++c) {
        double hx = g_t[c].eval_double(lat.t_dbl[i]) / den;
        samples[c].push_back({lat.t_dbl[i], fx[c] - hx});
      }
    }
    if (bad_sample)
      throw DenominatorZero("denominator not positive on the fit lattice");

    RegularFnVector cand;
    cand.simplex = delta;
    cand.den = h.den;
    cand.domain_tag = h.domain_tag;
    for (int c = 0; c < comps; ++c) {
      MultiPoly p_c = least_squares_fit(samples[c], deg, &q_t);
      cand.nums.push_back(ambientize(g_t[c] + sq_t * p_c, hull));
    }
    double err = sup_error_estimate(cand, f, delta, opt.cert_pitch);
    if (err < best_err) {
      best = std::move(cand);
      best_err = err;
      rep.degree_used = deg;
    }
    rep.errors_by_degree.push_back(best_err);
  }

  rep.achieved_error = best_err;
  rep.degree_cap_exceeded = best_err >= opt.eps;
  if (report) *report = rep;
  return best;
}

}  // namespace pwreg
