#include "pwreg/grassmann.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace pwreg {

PolyQuat pq_zero(int num_vars) {
  PolyQuat q;
  q.w = MultiPoly(num_vars);
  q.x = MultiPoly(num_vars);
  q.y = MultiPoly(num_vars);
  q.z = MultiPoly(num_vars);
  return q;
}

PolyQuat pq_constant(int num_vars, const QuatR& v) {
  PolyQuat q;
  q.w = MultiPoly::constant(num_vars, v.w);
  q.x = MultiPoly::constant(num_vars, v.x);
  q.y = MultiPoly::constant(num_vars, v.y);
  q.z = MultiPoly::constant(num_vars, v.z);
  return q;
}

bool pq_is_zero(const PolyQuat& q) {
  return q.w.is_zero() && q.x.is_zero() && q.y.is_zero() && q.z.is_zero();
}

FRatMat::FRatMat(Field f, int r, int c, int nv)
    : field(f), rows(r), cols(c), num_vars(nv),
      nums(static_cast<std::size_t>(r) * c, pq_zero(nv)),
      den(MultiPoly::constant(nv, Rational(1))) {}

FRatMat FRatMat::constant(const FMatR& m, int num_vars) {
  FRatMat out(m.field, m.rows, m.cols, num_vars);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      out.at(i, j) = pq_constant(num_vars, m.at(i, j));
  return out;
}

FMatR FRatMat::eval(const Point& x) const {
  Rational d = den.eval(x);
  if (d == 0) throw DenominatorZero("matrix denominator vanished");
  Rational inv = 1 / d;
  FMatR m(field, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const PolyQuat& q = at(i, j);
      m.at(i, j) = QuatR{q.w.eval(x) * inv, q.x.eval(x) * inv,
                         q.y.eval(x) * inv, q.z.eval(x) * inv};
    }
  return m;
}

FMatD FRatMat::eval_double(const std::vector<double>& x) const {
  double d = den.eval_double(x);
  if (d == 0.0) throw DenominatorZero("matrix denominator vanished");
  FMatD m(field, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const PolyQuat& q = at(i, j);
      m.at(i, j) = QuatD{q.w.eval_double(x) / d, q.x.eval_double(x) / d,
                         q.y.eval_double(x) / d, q.z.eval_double(x) / d};
    }
  return m;
}

FRatMat frat_mul(const FRatMat& a, const FRatMat& b) {
  if (a.cols != b.rows || a.field != b.field || a.num_vars != b.num_vars)
    throw ShapeMismatch("frat_mul");
  FRatMat c(a.field, a.rows, b.cols, a.num_vars);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < b.cols; ++k) {
      PolyQuat acc = pq_zero(a.num_vars);
      for (int j = 0; j < a.cols; ++j)
        acc = acc + b.at(j, k) * a.at(i, j);  // left-module order
      c.at(i, k) = acc;
    }
  c.den = a.den * b.den;
  return c;
}

FRatMat frat_adjoint(const FRatMat& a) {
  FRatMat t(a.field, a.cols, a.rows, a.num_vars);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j).conj();
  t.den = a.den;
  return t;
}

FRatMat frat_sub(const FRatMat& a, const FRatMat& b) {
  if (a.rows != b.rows || a.cols != b.cols || a.field != b.field)
    throw ShapeMismatch("frat_sub");
  FRatMat c(a.field, a.rows, a.cols, a.num_vars);
  for (std::size_t i = 0; i < a.nums.size(); ++i) {
    PolyQuat lhs = a.nums[i];
    PolyQuat rhs = b.nums[i];
    c.nums[i] = PolyQuat{lhs.w * b.den - rhs.w * a.den,
                         lhs.x * b.den - rhs.x * a.den,
                         lhs.y * b.den - rhs.y * a.den,
                         lhs.z * b.den - rhs.z * a.den};
  }
  c.den = a.den * b.den;
  return c;
}

FRatMat frat_compose(const FRatMat& a, const std::vector<MultiPoly>& args,
                     int out_vars) {
  FRatMat c(a.field, a.rows, a.cols, out_vars);
  for (std::size_t i = 0; i < a.nums.size(); ++i) {
    c.nums[i] = PolyQuat{
        a.nums[i].w.compose(args, out_vars), a.nums[i].x.compose(args, out_vars),
        a.nums[i].y.compose(args, out_vars), a.nums[i].z.compose(args, out_vars)};
  }
  c.den = a.den.compose(args, out_vars);
  return c;
}

namespace {

// Entry-level fraction for the skew elimination at r >= 2; the denominator
// is always central (real).
struct QFrac {
  PolyQuat n;
  MultiPoly d;
};

QFrac qf_zero(int nv) { return {pq_zero(nv), MultiPoly::constant(nv, Rational(1))}; }

QFrac qf_mul(const QFrac& a, const QFrac& b) { return {a.n * b.n, a.d * b.d}; }

QFrac qf_sub(const QFrac& a, const QFrac& b) {
  PolyQuat n{a.n.w * b.d - b.n.w * a.d, a.n.x * b.d - b.n.x * a.d,
             a.n.y * b.d - b.n.y * a.d, a.n.z * b.d - b.n.z * a.d};
  return {n, a.d * b.d};
}

QFrac qf_inverse(const QFrac& a) {
  MultiPoly nrm = a.n.norm2();
  if (nrm.is_zero()) throw RankDeficient("symbolic pivot is identically zero");
  PolyQuat c = a.n.conj();
  return {PolyQuat{c.w * a.d, c.x * a.d, c.y * a.d, c.z * a.d}, nrm};
}

}  // namespace

FRatMat projection_from_frame(const FRatMat& frame) {
  const int n = frame.rows, r = frame.cols, nv = frame.num_vars;

  if (r == 1) {
    // P = N N* / |N|^2, denominators cancel.
    FRatMat p(frame.field, n, n, nv);
    MultiPoly g(nv);
    for (int i = 0; i < n; ++i) g += frame.at(i, 0).norm2();
    if (g.is_zero()) throw RankDeficient("zero frame");
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        p.at(i, k) = frame.at(k, 0).conj() * frame.at(i, 0);
    p.den = g;
    return p;
  }

  // General rank: solve G W = N* with G = N* N over the skew field of
  // quaternion rational functions, then P = N W.
  const int nvars = nv;
  std::vector<std::vector<QFrac>> g(r, std::vector<QFrac>(r, qf_zero(nvars)));
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      PolyQuat acc = pq_zero(nvars);
      for (int j = 0; j < n; ++j)
        acc = acc + frame.at(j, k) * frame.at(j, i).conj();  // (N*N)_ik
      g[i][k] = {acc, MultiPoly::constant(nvars, Rational(1))};
    }
  std::vector<std::vector<QFrac>> rhs(r, std::vector<QFrac>(n, qf_zero(nvars)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j)
      rhs[i][j] = {frame.at(j, i).conj(),
                   MultiPoly::constant(nvars, Rational(1))};

  // Forward elimination with right-multiplication row operations.
  for (int col = 0; col < r; ++col) {
    int piv = -1;
    for (int i = col; i < r; ++i)
      if (!pq_is_zero(g[i][col].n)) { piv = i; break; }
    if (piv < 0) throw RankDeficient("symbolically rank-deficient frame");
    std::swap(g[piv], g[col]);
    std::swap(rhs[piv], rhs[col]);
    QFrac pivot_inv = qf_inverse(g[col][col]);
    for (int i = col + 1; i < r; ++i) {
      if (pq_is_zero(g[i][col].n)) continue;
      QFrac f = qf_mul(pivot_inv, g[i][col]);
      for (int j = col; j < r; ++j) g[i][j] = qf_sub(g[i][j], qf_mul(g[col][j], f));
      for (int j = 0; j < n; ++j) rhs[i][j] = qf_sub(rhs[i][j], qf_mul(rhs[col][j], f));
    }
  }
  // Back substitution: w_i = (rhs_i - sum_{j>i} w_j g_ij) * g_ii^{-1}.
  std::vector<std::vector<QFrac>> w(r, std::vector<QFrac>(n, qf_zero(nvars)));
  for (int k = 0; k < n; ++k) {
    for (int i = r - 1; i >= 0; --i) {
      QFrac acc = rhs[i][k];
      for (int j = i + 1; j < r; ++j) acc = qf_sub(acc, qf_mul(w[j][k], g[i][j]));
      w[i][k] = qf_mul(acc, qf_inverse(g[i][i]));
    }
  }

  // Common denominator for W, then P = N W with the frame denominator
  // cancelling against N* inside W.
  MultiPoly common = MultiPoly::constant(nvars, Rational(1));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) common = common * w[i][j].d;
  FRatMat wmat(frame.field, r, n, nvars);
  wmat.den = common;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) {
      MultiPoly cof = MultiPoly::constant(nvars, Rational(1));
      for (int i2 = 0; i2 < r; ++i2)
        for (int j2 = 0; j2 < n; ++j2)
          if (i2 != i || j2 != j) cof = cof * w[i2][j2].d;
      const PolyQuat& q = w[i][j].n;
      wmat.at(i, j) = PolyQuat{q.w * cof, q.x * cof, q.y * cof, q.z * cof};
    }

  FRatMat nmat = frame;
  nmat.den = MultiPoly::constant(nvars, Rational(1));  // denominators cancel
  return frat_mul(nmat, wmat);
}

bool frat_equal(const FRatMat& a, const FRatMat& b) {
  if (a.rows != b.rows || a.cols != b.cols || a.field != b.field) return false;
  for (std::size_t i = 0; i < a.nums.size(); ++i) {
    if (!(a.nums[i].w * b.den == b.nums[i].w * a.den)) return false;
    if (!(a.nums[i].x * b.den == b.nums[i].x * a.den)) return false;
    if (!(a.nums[i].y * b.den == b.nums[i].y * a.den)) return false;
    if (!(a.nums[i].z * b.den == b.nums[i].z * a.den)) return false;
  }
  return true;
}

RegularFnVector frat_pack(const FRatMat& m, const Simplex& s) {
  RegularFnVector v;
  v.simplex = s;
  v.den = m.den;
  const int d = field_dim(m.field);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      const PolyQuat& q = m.at(i, j);
      v.nums.push_back(q.w);
      if (d > 1) v.nums.push_back(q.x);
      if (d > 2) {
        v.nums.push_back(q.y);
        v.nums.push_back(q.z);
      }
    }
  return v;
}

FRatMat frat_unpack(const RegularFnVector& v, Field field, int rows, int cols) {
  const int d = field_dim(field);
  assert(static_cast<int>(v.nums.size()) == d * rows * cols);
  FRatMat m(field, rows, cols, v.den.num_vars());
  m.den = v.den;
  int idx = 0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      PolyQuat q = pq_zero(m.num_vars);
      q.w = v.nums[idx++];
      if (d > 1) q.x = v.nums[idx++];
      if (d > 2) {
        q.y = v.nums[idx++];
        q.z = v.nums[idx++];
      }
      m.at(i, j) = q;
    }
  return m;
}

Eigen::MatrixXd embedded_span_projection(const Eigen::MatrixXd& frame) {
  Eigen::MatrixXd gram = frame.transpose() * frame;
  return frame * gram.ldlt().solve(frame.transpose());
}

FrameOracle frame_on_simplex(const Simplex& delta, const GrassmannOracle& f,
                             int pitch, double osc_bound) {
  GrassmannPoint pb = f(point_to_doubles(delta.barycenter()));
  double osc = 0.0;
  for (const auto& p : barycentric_lattice(delta, pitch)) {
    GrassmannPoint px = f(point_to_doubles(p));
    osc = std::max(osc, grassmann_distance(px, pb));
  }
  if (osc > osc_bound)
    throw OscillationTooLarge("sampled oscillation " + std::to_string(osc) +
                              " exceeds bound " + std::to_string(osc_bound));
  FrameOracle out;
  out.a0 = orthonormal_range_frame(fmat_to_double(pb.proj), pb.r);
  out.oscillation = osc;
  FMatD a0 = out.a0;
  out.frame = [f, a0](const std::vector<double>& x) {
    GrassmannPoint px = f(x);
    return fmat_mul(fmat_to_double(px.proj), a0);
  };
  return out;
}

namespace {

// Pack a double matrix into flat component order (matching frat_pack).
std::vector<double> flat_components(const FMatD& m) {
  std::vector<double> out;
  const int d = field_dim(m.field);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      const QuatD& q = m.at(i, j);
      out.push_back(q.w);
      if (d > 1) out.push_back(q.x);
      if (d > 2) {
        out.push_back(q.y);
        out.push_back(q.z);
      }
    }
  return out;
}

}  // namespace

GrassmannApproxResult approximate_grassmann_simplex(
    const Simplex& delta, const GrassmannOracle& f,
    const std::vector<FRatMat>& facet_frames,
    const GrassmannApproxOptions& opt) {
  const int dim = delta.dim();
  assert(dim >= 1);
  assert(static_cast<int>(facet_frames.size()) == dim + 1);
  const int m_amb = delta.ambient_dim();

  GrassmannPoint at_bary = f(point_to_doubles(delta.barycenter()));
  const Field field = at_bary.field;
  const int n = at_bary.n, r = at_bary.r;

  FrameOracle transport =
      frame_on_simplex(delta, f, opt.cert_pitch, opt.osc_bound);

  AffineHull hull = affine_hull(delta);

  // Fit B close to the transported frame; only conditioning matters, so a
  // modest sup accuracy is enough.
  auto lattice = barycentric_lattice(delta, std::max(4 * 4, opt.cert_pitch));
  std::vector<std::vector<double>> xs, ts;
  for (const auto& p : lattice) {
    auto xd = point_to_doubles(p);
    std::vector<double> td;
    for (const auto& cf : hull.coord_forms) td.push_back(cf.eval_double(xd));
    xs.push_back(xd);
    ts.push_back(td);
  }
  const int ncomp = field_dim(field) * n * r;
  std::vector<std::vector<double>> frame_samples;
  frame_samples.reserve(xs.size());
  for (const auto& x : xs) frame_samples.push_back(flat_components(transport.frame(x)));

  FRatMat b_amb(field, n, r, m_amb);
  for (int deg = 0; deg <= opt.fit.degree_cap; deg += std::max(1, opt.fit.degree_step)) {
    std::vector<MultiPoly> comp_polys(ncomp);
    bool ok = true;
    for (int c = 0; c < ncomp; ++c) {
      std::vector<FitSample> samples;
      samples.reserve(ts.size());
      for (std::size_t i = 0; i < ts.size(); ++i)
        samples.push_back({ts[i], frame_samples[i][c]});
      try {
        comp_polys[c] = least_squares_fit(samples, deg);
      } catch (const RankDeficient&) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    // residual check
    double res = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (int c = 0; c < ncomp; ++c)
        res = std::max(res, std::abs(comp_polys[c].eval_double(ts[i]) -
                                     frame_samples[i][c]));
    // assemble ambient B
    FRatMat cand(field, n, r, m_amb);
    int idx = 0;
    const int dF = field_dim(field);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < r; ++j) {
        PolyQuat q = pq_zero(m_amb);
        q.w = ambientize(comp_polys[idx++], hull);
        if (dF > 1) q.x = ambientize(comp_polys[idx++], hull);
        if (dF > 2) {
          q.y = ambientize(comp_polys[idx++], hull);
          q.z = ambientize(comp_polys[idx++], hull);
        }
        cand.at(i, j) = q;
      }
    b_amb = cand;
    if (res < 0.05) break;
  }

  // Boundary data: P_facet * B per facet, exact.
  FacetData fdata;
  for (int k = 0; k <= dim; ++k) {
    Simplex facet = delta.facet(k);
    const FRatMat& ff = facet_frames[k];
    FRatMat p_sym = projection_from_frame(ff);
    FRatMat data_sym = frat_mul(p_sym, b_amb);
    fdata.facets.push_back(frat_pack(data_sym, facet));
  }

  // Oracle C(x) = P(x) B(x), with P taken from the facet data on the
  // boundary so the residual vanishes there. Boundary detection uses the
  // hull coordinates in doubles; lattice points sit either exactly on a
  // facet or at least 1/pitch away, far above rounding noise.
  auto c_oracle = [&](const std::vector<double>& x) -> std::vector<double> {
    std::vector<double> t;
    for (const auto& cf : hull.coord_forms) t.push_back(cf.eval_double(x));
    double lam0 = 1.0;
    for (double ti : t) lam0 -= ti;
    int on_facet = -1;
    if (std::abs(lam0) < 1e-9) on_facet = 0;
    for (int k = 1; k <= dim && on_facet < 0; ++k)
      if (std::abs(t[k - 1]) < 1e-9) on_facet = k;
    if (on_facet >= 0) return fdata.facets[on_facet].eval_double(x);
    FMatD p = fmat_to_double(f(x).proj);
    FMatD bx = b_amb.eval_double(x);
    return flat_components(fmat_mul(p, bx));
  };

  GrassmannApproxResult out;
  ApproxOptions fit_opt = opt.fit;
  fit_opt.eps = opt.eps * 0.3;
  for (int attempt = 0; attempt <= opt.retries; ++attempt) {
    ApproxReport rep;
    RegularFnVector phi_packed =
        approximate_on_simplex(delta, c_oracle, fdata, fit_opt, &rep);
    FRatMat phi = frat_unpack(phi_packed, field, n, r);

    // Certificate sweep.
    GrassmannCert cert;
    cert.degree_used = rep.degree_used;
    cert.degree_cap_exceeded = rep.degree_cap_exceeded;
    cert.rank_margin = std::numeric_limits<double>::infinity();
    cert.eps_achieved = 0.0;
    for (const auto& p : barycentric_lattice(delta, opt.cert_pitch)) {
      auto x = point_to_doubles(p);
      FMatD phix = phi.eval_double(x);
      cert.rank_margin = std::min(cert.rank_margin, fmat_sigma_min(phix));
      Eigen::MatrixXd pphi = embedded_span_projection(embed_real(phix));
      Eigen::MatrixXd pf = embed_real(fmat_to_double(f(x).proj));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pphi - pf);
      double dist = es.eigenvalues().cwiseAbs().maxCoeff();
      cert.eps_achieved = std::max(cert.eps_achieved, dist);
    }
    // Boundary residual (I - P_facet) Phi at facet samples.
    cert.boundary_residual = 0.0;
    for (int k = 0; k <= dim; ++k) {
      if (delta.facet(k).dim() < 0) continue;
      FRatMat p_sym = projection_from_frame(facet_frames[k]);
      for (const auto& p : barycentric_lattice(delta.facet(k),
                                               std::max(2, opt.cert_pitch / 2))) {
        auto x = point_to_doubles(p);
        FMatD pk = p_sym.eval_double(x);
        FMatD phix = phi.eval_double(x);
        FMatD residual = fmat_sub(phix, fmat_mul(pk, phix));
        cert.boundary_residual =
            std::max(cert.boundary_residual, fmat_op_norm(residual));
      }
    }

    out.frame = phi;
    out.cert = cert;
    if (cert.rank_margin > opt.tau_rank && cert.eps_achieved < opt.eps)
      return out;
    fit_opt.eps *= 0.25;  // tighten and retry
  }
  if (out.cert.rank_margin <= opt.tau_rank)
    throw RankLost("fitted frame lost rank (sigma_min " +
                   std::to_string(out.cert.rank_margin) + ")");
  out.cert.degree_cap_exceeded = true;
  return out;
}

}  // namespace pwreg
