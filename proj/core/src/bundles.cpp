#include "pwreg/bundles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pwreg/fit.hpp"

namespace pwreg {

namespace {

std::map<std::string, int> component_ids(const SimplicialComplex& k) {
  std::vector<int> parent(k.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (const auto& s : k.simplices)
    for (std::size_t j = 1; j < s.size(); ++j)
      parent[find(s[j])] = find(s[0]);
  std::map<std::string, int> out;
  for (const auto& s : k.simplices)
    out[SimplicialComplex::id_of(s)] = find(s[0]);
  return out;
}

bool piece_is_constant(const SimplexPiece& p) {
  if (p.vec.den.total_degree() > 0) return false;
  for (const auto& n : p.vec.nums)
    if (n.total_degree() > 0) return false;
  return true;
}

}  // namespace

PWBundle bundle_from_map(const PiecewiseRegularMap& g) {
  if (g.target.kind != TargetSpec::Kind::Grassmann)
    throw InvalidCertificate("classifying maps land in Grassmannians");
  if (g.certificate.pitch <= 0)
    throw InvalidCertificate("map carries no certificate");
  if (!g.certificate.boundary_exact)
    throw InvalidCertificate("boundary identities are not certified");

  PWBundle xi;
  xi.classifying = g;
  auto comp = component_ids(g.complex);
  for (const auto& [id, piece] : g.per_simplex) {
    int c = comp.at(id);
    auto it = xi.rank_per_component.find(c);
    if (it == xi.rank_per_component.end())
      xi.rank_per_component[c] = piece.rank;
    else if (it->second != piece.rank)
      throw InvalidCertificate("rank varies within one component");
  }

  // Product recognition: constant pieces agreeing on a common projection.
  xi.is_product = !g.per_simplex.empty();
  const SimplexPiece* first = nullptr;
  for (const auto& [id, piece] : g.per_simplex) {
    if (!piece_is_constant(piece)) {
      xi.is_product = false;
      break;
    }
    if (!first) first = &piece;
  }
  if (xi.is_product && first) {
    Point origin(g.complex.ambient_dim, Rational(0));
    GrassmannPoint p0 = first->grassmann_at(g.target, origin);
    for (const auto& [id, piece] : g.per_simplex) {
      GrassmannPoint p = piece.grassmann_at(g.target, origin);
      if (!(p.proj == p0.proj)) {
        xi.is_product = false;
        break;
      }
    }
  }
  return xi;
}

PiecewiseRegularMap map_from_bundle(const PWBundle& xi) {
  return xi.classifying;
}

GrassmannPoint fiber_at(const PWBundle& xi, const Point& x) {
  return xi.classifying.eval_grassmann(x);
}

namespace {

// Simplex id nearest to x under clamped least-squares barycentric
// coordinates. Robust against double rounding pushing a lattice point a
// hair off a lower-dimensional simplex.
std::string nearest_simplex_id(const SimplicialComplex& k,
                               const std::vector<double>& x) {
  double best = std::numeric_limits<double>::infinity();
  std::string best_id;
  for (const auto& s : k.maximal_simplices()) {
    Simplex geo = k.geometry(s);
    const int p = static_cast<int>(s.size());
    Eigen::MatrixXd a(x.size() + 1, p);
    Eigen::VectorXd b(x.size() + 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (int j = 0; j < p; ++j) a(i, j) = rat_to_double(geo.vertices[j][i]);
      b(i) = x[i];
    }
    for (int j = 0; j < p; ++j) a(x.size(), j) = 1.0;
    b(x.size()) = 1.0;
    Eigen::VectorXd lam = a.colPivHouseholderQr().solve(b);
    for (int j = 0; j < p; ++j) lam(j) = std::max(lam(j), 0.0);
    double sum = lam.sum();
    if (sum > 0) lam /= sum;
    double d2 = (a.topRows(x.size()) * lam -
                 Eigen::Map<const Eigen::VectorXd>(x.data(), x.size()))
                    .squaredNorm();
    std::string id = SimplicialComplex::id_of(s);
    if (d2 < best || (d2 == best && id < best_id)) {
      best = d2;
      best_id = id;
    }
  }
  if (best_id.empty()) throw OutsideDomain("empty complex");
  return best_id;
}

}  // namespace

TargetOracle self_oracle(const PiecewiseRegularMap& map) {
  TargetOracle f;
  f.spec = map.target;
  if (map.target.kind == TargetSpec::Kind::Sphere) {
    f.sphere = [map](const std::vector<double>& x) {
      const SimplexPiece& piece = map.piece(nearest_simplex_id(map.complex, x));
      return piece.vec.eval_double(x);
    };
  } else {
    f.grassmann = [map](const std::vector<double>& x) {
      const SimplexPiece& piece = map.piece(nearest_simplex_id(map.complex, x));
      return piece.grassmann_at(map.target, point_from_doubles(x));
    };
  }
  return f;
}

PWBundle orthogonal_complement(const PWBundle& xi) {
  const auto& g = xi.classifying;
  const int n = g.target.n;
  PWBundle out;
  out.classifying.complex = g.complex;
  out.classifying.target = g.target;
  out.classifying.target.r = n - g.target.r;
  out.classifying.stratification = g.stratification;

  for (const auto& [id, piece] : g.per_simplex) {
    FRatMat p = piece.matrix_is_projection
                    ? piece.unpack(g.target)
                    : projection_from_frame(piece.unpack(g.target));
    // I - P over the same central denominator.
    FRatMat comp(p.field, n, n, p.num_vars);
    comp.den = p.den;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        PolyQuat q = pq_zero(p.num_vars);
        q.w = (i == j) ? p.den - p.at(i, j).w : -p.at(i, j).w;
        q.x = -p.at(i, j).x;
        q.y = -p.at(i, j).y;
        q.z = -p.at(i, j).z;
        comp.at(i, j) = q;
      }
    SimplexPiece np;
    np.vec = frat_pack(comp, piece.vec.simplex);
    np.vec.domain_tag = piece.vec.domain_tag;
    np.matrix_is_projection = true;
    np.rank = n - piece.rank;
    out.classifying.per_simplex.emplace(id, std::move(np));
  }
  for (const auto& [c, r] : xi.rank_per_component)
    out.rank_per_component[c] = n - r;
  out.is_product = xi.is_product;

  // Recompute the certificate against the complement of the stored map.
  out.classifying.certificate = g.certificate;
  out.classifying.certificate =
      certify(out.classifying, self_oracle(out.classifying),
              std::max(2, g.certificate.pitch));
  out.classifying.certificate.eps_target = g.certificate.eps_target;
  return out;
}

PWBundle whitney_sum(const PWBundle& xi, const PWBundle& eta) {
  const auto& a = xi.classifying;
  const auto& b = eta.classifying;
  if (!(complexes_equal(a.complex, b.complex)))
    throw ComplexMismatch("whitney_sum needs one common complex");
  if (a.target.field != b.target.field)
    throw ComplexMismatch("whitney_sum needs one field");
  const int n1 = a.target.n, n2 = b.target.n;

  PWBundle out;
  out.classifying.complex = a.complex;
  out.classifying.target = a.target;
  out.classifying.target.n = n1 + n2;
  out.classifying.target.r = a.target.r + b.target.r;
  out.classifying.stratification = a.stratification;

  // Block-diagonal projections per simplex.
  for (const auto& [id, pa] : a.per_simplex) {
    const SimplexPiece& pb = b.per_simplex.at(id);
    FRatMat ma = pa.matrix_is_projection
                     ? pa.unpack(a.target)
                     : projection_from_frame(pa.unpack(a.target));
    FRatMat mb = pb.matrix_is_projection
                     ? pb.unpack(b.target)
                     : projection_from_frame(pb.unpack(b.target));
    FRatMat sum(ma.field, n1 + n2, n1 + n2, ma.num_vars);
    sum.den = ma.den * mb.den;
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n1; ++j) {
        PolyQuat q = ma.at(i, j);
        sum.at(i, j) = PolyQuat{q.w * mb.den, q.x * mb.den, q.y * mb.den,
                                q.z * mb.den};
      }
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j) {
        PolyQuat q = mb.at(i, j);
        sum.at(n1 + i, n1 + j) = PolyQuat{q.w * ma.den, q.x * ma.den,
                                          q.y * ma.den, q.z * ma.den};
      }
    SimplexPiece piece;
    piece.vec = frat_pack(sum, pa.vec.simplex);
    piece.matrix_is_projection = true;
    piece.rank = pa.rank + pb.rank;
    out.classifying.per_simplex.emplace(id, std::move(piece));
  }
  for (const auto& [c, r] : xi.rank_per_component)
    out.rank_per_component[c] = r + eta.rank_per_component.at(c);
  out.is_product = xi.is_product && eta.is_product;
  out.classifying.certificate = a.certificate;
  out.classifying.certificate =
      certify(out.classifying, self_oracle(out.classifying),
              std::max(2, a.certificate.pitch));
  return out;
}

PiecewiseMorphism algebraize_isomorphism(const PWBundle& xi,
                                         const PWBundle& eta,
                                         const MatrixOracle& a,
                                         const MorphismOptions& opt) {
  const auto& k = xi.classifying.complex;
  if (!complexes_equal(k, eta.classifying.complex))
    throw ComplexMismatch("bundles live over different complexes");
  const Field field = xi.field();
  const int rows = eta.n(), cols = xi.n();
  const int m = k.ambient_dim;
  const int dF = field_dim(field);

  // Sample |K| once.
  std::vector<std::vector<double>> xs;
  std::vector<std::string> xs_simplex;
  for (const auto& s : k.maximal_simplices()) {
    Simplex geo = k.geometry(s);
    for (const auto& p : barycentric_lattice(geo, opt.cert_pitch)) {
      xs.push_back(point_to_doubles(p));
      xs_simplex.push_back(SimplicialComplex::id_of(s));
    }
  }

  // One global polynomial fit B ~ A, escalated on the sup residual.
  std::vector<std::vector<double>> a_samples;
  a_samples.reserve(xs.size());
  for (const auto& x : xs) {
    FMatD ax = a(x);
    std::vector<double> flat;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        const QuatD& q = ax.at(i, j);
        flat.push_back(q.w);
        if (dF > 1) flat.push_back(q.x);
        if (dF > 2) {
          flat.push_back(q.y);
          flat.push_back(q.z);
        }
      }
    a_samples.push_back(std::move(flat));
  }
  const int ncomp = dF * rows * cols;

  FRatMat b_amb(field, rows, cols, m);
  double residual = std::numeric_limits<double>::infinity();
  int degree_used = 0;
  for (int deg = 0; deg <= opt.degree_cap; ++deg) {
    std::vector<MultiPoly> comps(ncomp);
    bool ok = true;
    for (int c = 0; c < ncomp && ok; ++c) {
      std::vector<FitSample> samples;
      samples.reserve(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i)
        samples.push_back({xs[i], a_samples[i][c]});
      try {
        comps[c] = least_squares_fit(samples, deg);
      } catch (const RankDeficient&) {
        ok = false;
      }
    }
    if (!ok) break;
    double res = 0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (int c = 0; c < ncomp; ++c)
        res = std::max(res,
                       std::abs(comps[c].eval_double(xs[i]) - a_samples[i][c]));
    if (res < residual) {
      residual = res;
      degree_used = deg;
      FRatMat cand(field, rows, cols, m);
      int idx = 0;
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
          PolyQuat q = pq_zero(m);
          q.w = comps[idx++];
          if (dF > 1) q.x = comps[idx++];
          if (dF > 2) {
            q.y = comps[idx++];
            q.z = comps[idx++];
          }
          cand.at(i, j) = q;
        }
      b_amb = cand;
    }
    if (residual < opt.fit_tol) break;
  }

  // sigma = P_eta * B per simplex, symbolic.
  PiecewiseMorphism out;
  out.complex = k;
  out.field = field;
  out.rows = rows;
  out.cols = cols;
  out.fit_residual = residual;
  out.degree_used = degree_used;
  for (const auto& [id, piece] : eta.classifying.per_simplex) {
    FRatMat p_eta = piece.matrix_is_projection
                        ? piece.unpack(eta.classifying.target)
                        : projection_from_frame(
                              piece.unpack(eta.classifying.target));
    FRatMat sigma = frat_mul(p_eta, b_amb);
    SimplexPiece sp;
    sp.vec = frat_pack(sigma, piece.vec.simplex);
    sp.matrix_is_projection = false;
    sp.rank = piece.rank;
    out.per_simplex.emplace(id, std::move(sp));
  }

  // Certificate: smallest singular value of sigma restricted to an
  // orthonormal fiber frame of xi, over all samples.
  TargetOracle xi_oracle = self_oracle(xi.classifying);
  std::map<std::string, FRatMat> sigma_cache;
  for (const auto& [id, sp] : out.per_simplex)
    sigma_cache.emplace(id, frat_unpack(sp.vec, field, rows, cols));
  double smin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    GrassmannPoint fx = xi_oracle.grassmann(xs[i]);
    FMatD u = orthonormal_range_frame(fmat_to_double(fx.proj), fx.r);
    FMatD sx = sigma_cache.at(xs_simplex[i]).eval_double(xs[i]);
    FMatD restricted = fmat_mul(sx, u);
    smin = std::min(smin, fmat_sigma_min(restricted));
  }
  out.sigma_min = smin;
  if (!(smin >= opt.tau_iso))
    throw NotInjectiveOnFibers(
        "restricted sigma_min " + std::to_string(smin) + " below tau_iso " +
        std::to_string(opt.tau_iso));
  return out;
}

PWBundle make_mobius_bundle() {
  // Square loop with rational vertices; tangent half-angle rotations with
  // half-angles atan(1/2), atan(1/3), atan(1/2), atan(1/3): total turning
  // 2*(atan(1/2)+atan(1/3))*2 = pi, every frame entry rational.
  auto pt = [](long x, long y) { return Point{Rational(x), Rational(y)}; };
  SimplicialComplex k = build_complex({{pt(1, 0), pt(0, 1)},
                                       {pt(0, 1), pt(-1, 0)},
                                       {pt(-1, 0), pt(0, -1)},
                                       {pt(0, -1), pt(1, 0)}});

  // Exact rotation by 2*atan(r): [[1-r^2, -2r],[2r, 1-r^2]]/(1+r^2).
  auto rot = [](const Rational& r) {
    RatMat m(2, RatVec(2));
    Rational den = 1 + r * r;
    m[0][0] = (1 - r * r) / den;
    m[0][1] = (-2 * r) / den;
    m[1][0] = (2 * r) / den;
    m[1][1] = (1 - r * r) / den;
    return m;
  };

  // Order the four edges around the loop starting at (1,0).
  std::vector<Point> loop = {pt(1, 0), pt(0, 1), pt(-1, 0), pt(0, -1)};
  std::vector<Rational> half_tangents = {Rational(1, 2), Rational(1, 3),
                                         Rational(1, 2), Rational(1, 3)};

  PiecewiseRegularMap g;
  g.complex = k;
  g.target = TargetSpec::parse("grassmann:R:2:1");
  g.stratification = induced_stratification(k);

  // Start direction and accumulated exact frames at the loop vertices.
  std::vector<RatVec> u0s;
  RatVec u = {Rational(1), Rational(0)};
  for (int j = 0; j < 4; ++j) {
    u0s.push_back(u);
    u = rat_mul_vec(rot(half_tangents[j]), u);
  }

  // Vertex pieces: constant exact frames.
  for (int j = 0; j < 4; ++j) {
    int vi = -1;
    for (std::size_t i = 0; i < k.vertices.size(); ++i)
      if (k.vertices[i] == loop[j]) vi = static_cast<int>(i);
    FMatR frame(Field::R, 2, 1);
    frame.at(0, 0) = QuatR::real(u0s[j][0]);
    frame.at(1, 0) = QuatR::real(u0s[j][1]);
    SimplexPiece piece;
    piece.vec = frat_pack(FRatMat::constant(frame, 2), Simplex{{loop[j]}});
    piece.rank = 1;
    g.per_simplex.emplace(SimplicialComplex::id_of({vi}), std::move(piece));
  }

  // Edge pieces: u_j(t) = Rot(2*atan(r_j t)) u_j(0) with t the hull
  // parameter from loop[j] to loop[j+1], expressed in ambient variables.
  for (int j = 0; j < 4; ++j) {
    Simplex edge{{loop[j], loop[(j + 1) % 4]}};
    AffineHull hull = affine_hull(edge);
    MultiPoly t = hull.coord_forms[0];  // ambient affine parameter
    const Rational& r = half_tangents[j];
    MultiPoly t2 = t * t;
    MultiPoly den = MultiPoly::constant(2, Rational(1)) + t2 * MultiPoly::constant(2, r * r);
    MultiPoly c = MultiPoly::constant(2, Rational(1)) - t2 * MultiPoly::constant(2, r * r);
    MultiPoly s = t * MultiPoly::constant(2, 2 * r);
    FRatMat frame(Field::R, 2, 1, 2);
    frame.den = den;
    frame.at(0, 0).w = c * MultiPoly::constant(2, u0s[j][0]) -
                       s * MultiPoly::constant(2, u0s[j][1]);
    frame.at(1, 0).w = s * MultiPoly::constant(2, u0s[j][0]) +
                       c * MultiPoly::constant(2, u0s[j][1]);
    SimplexPiece piece;
    piece.vec = frat_pack(frame, edge);
    piece.rank = 1;
    // canonical id needs the sorted vertex indices
    int a = -1, b = -1;
    for (std::size_t i = 0; i < k.vertices.size(); ++i) {
      if (k.vertices[i] == loop[j]) a = static_cast<int>(i);
      if (k.vertices[i] == loop[(j + 1) % 4]) b = static_cast<int>(i);
    }
    std::vector<int> ix = {std::min(a, b), std::max(a, b)};
    g.per_simplex.emplace(SimplicialComplex::id_of(ix), std::move(piece));
  }

  g.certificate.eps_target = 0.0;
  g.certificate = certify(g, self_oracle(g), 16);
  return bundle_from_map(g);
}

PWBundle make_product_bundle(const SimplicialComplex& k, Field field, int n,
                             int r) {
  PiecewiseRegularMap g;
  g.complex = k;
  g.target.kind = TargetSpec::Kind::Grassmann;
  g.target.field = field;
  g.target.n = n;
  g.target.r = r;
  g.stratification = induced_stratification(k);
  // rank 0 has no frame columns; store the zero projection instead
  FMatR mat = (r == 0) ? FMatR(field, n, n) : FMatR(field, n, r);
  for (int j = 0; j < r; ++j) mat.at(j, j) = QuatR::real(Rational(1));
  for (const auto& s : k.simplices) {
    SimplexPiece piece;
    piece.vec = frat_pack(FRatMat::constant(mat, k.ambient_dim),
                          k.geometry(s));
    piece.matrix_is_projection = (r == 0);
    piece.rank = r;
    g.per_simplex.emplace(SimplicialComplex::id_of(s), std::move(piece));
  }
  g.certificate.eps_target = 0.0;
  g.certificate = certify(g, self_oracle(g), 16);
  return bundle_from_map(g);
}

}  // namespace pwreg
