#include "pwreg/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <numeric>
#include <sstream>

namespace pwreg {

std::string TargetSpec::to_string() const {
  if (kind == Kind::Sphere) return "sphere:" + std::to_string(n);
  return "grassmann:" + field_name(field) + ":" + std::to_string(n) + ":" +
         std::to_string(r);
}

TargetSpec TargetSpec::parse(const std::string& s) {
  TargetSpec t;
  std::istringstream is(s);
  std::string head;
  std::getline(is, head, ':');
  if (head == "sphere") {
    t.kind = Kind::Sphere;
    std::string n;
    if (!std::getline(is, n, ':')) throw BadInput("sphere:<n> expected");
    t.n = std::stoi(n);
    if (t.n < 1) throw BadInput("sphere dimension must be positive");
    return t;
  }
  if (head == "grassmann") {
    t.kind = Kind::Grassmann;
    std::string f, n, r;
    if (!std::getline(is, f, ':') || !std::getline(is, n, ':') ||
        !std::getline(is, r, ':'))
      throw BadInput("grassmann:<F>:<n>:<r> expected");
    t.field = field_from_name(f);
    t.n = std::stoi(n);
    t.r = std::stoi(r);
    if (t.n < 1 || t.r < 0 || t.r > t.n) throw BadInput("bad grassmann shape");
    return t;
  }
  throw BadInput("unknown target: " + s);
}

FRatMat SimplexPiece::unpack(const TargetSpec& t) const {
  assert(t.kind == TargetSpec::Kind::Grassmann);
  int cols = matrix_is_projection ? t.n : rank;
  return frat_unpack(vec, t.field, t.n, cols);
}

GrassmannPoint SimplexPiece::grassmann_at(const TargetSpec& t,
                                          const Point& x) const {
  FRatMat m = unpack(t);
  FMatR val = m.eval(x);
  if (matrix_is_projection) {
    GrassmannPoint g;
    g.field = t.field;
    g.n = t.n;
    g.r = rank;
    g.proj = val;
    return g;
  }
  GrassmannPoint g = column_span_projection(val);
  return g;
}

const SimplexPiece& PiecewiseRegularMap::piece(const std::string& id) const {
  auto it = per_simplex.find(id);
  if (it == per_simplex.end())
    throw OutsideDomain("no per-simplex data for " + id);
  return it->second;
}

namespace {

std::vector<int> lowest_containing(const SimplicialComplex& k, const Point& x) {
  std::vector<std::vector<int>> all = k.containing_simplices(x);
  if (all.empty()) throw OutsideDomain("point outside |K|");
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return all.front();
}

}  // namespace

std::vector<Rational> PiecewiseRegularMap::eval_sphere(const Point& x) const {
  assert(target.kind == TargetSpec::Kind::Sphere);
  auto ix = lowest_containing(complex, x);
  return piece(SimplicialComplex::id_of(ix)).vec.eval(x);
}

GrassmannPoint PiecewiseRegularMap::eval_grassmann(const Point& x) const {
  assert(target.kind == TargetSpec::Kind::Grassmann);
  auto ix = lowest_containing(complex, x);
  return piece(SimplicialComplex::id_of(ix)).grassmann_at(target, x);
}

namespace {

double simplex_diameter(const Simplex& s) {
  double d = 0;
  for (std::size_t i = 0; i < s.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < s.vertices.size(); ++j) {
      double acc = 0;
      for (std::size_t c = 0; c < s.vertices[i].size(); ++c) {
        double diff = rat_to_double(s.vertices[i][c] - s.vertices[j][c]);
        acc += diff * diff;
      }
      d = std::max(d, std::sqrt(acc));
    }
  return d;
}

// Max sampled distance of the image from the barycenter image. This is the
// quantity the frame transport and the chart-forcing argument both need.
double sampled_oscillation(const Simplex& s, const TargetOracle& f,
                           int pitch) {
  auto lattice = barycentric_lattice(s, pitch);
  auto bary = point_to_doubles(s.barycenter());
  double osc = 0;
  if (f.spec.kind == TargetSpec::Kind::Sphere) {
    auto vb = f.sphere(bary);
    for (const auto& p : lattice) {
      auto v = f.sphere(point_to_doubles(p));
      double acc = 0;
      for (std::size_t c = 0; c < v.size(); ++c) {
        double diff = v[c] - vb[c];
        acc += diff * diff;
      }
      osc = std::max(osc, std::sqrt(acc));
    }
  } else {
    GrassmannPoint gb = f.grassmann(bary);
    for (const auto& p : lattice)
      osc = std::max(osc, grassmann_distance(f.grassmann(point_to_doubles(p)), gb));
  }
  return osc;
}

}  // namespace

SimplicialComplex precondition_subdivide(const SimplicialComplex& k,
                                         const TargetOracle& f, double bound,
                                         int cap, int* depth_out) {
  SimplicialComplex cur = k;
  for (int depth = 0; depth <= cap; ++depth) {
    double osc = 0;
    for (const auto& s : cur.maximal_simplices())
      osc = std::max(osc, sampled_oscillation(cur.geometry(s), f, 6));
    if (osc <= bound) {
      if (depth_out) *depth_out = depth;
      return cur;
    }
    if (depth == cap) break;
    cur = barycentric_subdivide(cur, 1);
  }
  throw SubdivisionCapExceeded("oscillation above " + std::to_string(bound) +
                               " after " + std::to_string(cap) +
                               " subdivisions");
}

namespace {

// Union-find over vertex indices; simplices sharing vertices land in one
// component of |K|.
std::map<std::string, int> complex_components(const SimplicialComplex& k) {
  std::vector<int> parent(k.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (const auto& s : k.simplices)
    for (std::size_t j = 1; j < s.size(); ++j)
      parent[find(s[j])] = find(s[0]);
  std::map<std::string, int> comp;
  for (const auto& s : k.simplices)
    comp[SimplicialComplex::id_of(s)] = find(s[0]);
  return comp;
}

SimplexPiece snap_vertex_piece(const SimplicialComplex& k, int vertex_index,
                               const TargetOracle& f) {
  Point v = k.vertices[vertex_index];
  Simplex vs{{v}};
  SimplexPiece piece;
  if (f.spec.kind == TargetSpec::Kind::Sphere) {
    auto u = snap_to_sphere(f.sphere(point_to_doubles(v)));
    piece.vec = RegularFnVector::constant(vs, k.ambient_dim, u);
    return piece;
  }
  GrassmannPoint g = f.grassmann(point_to_doubles(v));
  FMatD a0 = orthonormal_range_frame(fmat_to_double(g.proj), g.r);
  FRatMat frame = FRatMat::constant(fmat_snap_exact(a0), k.ambient_dim);
  piece.vec = frat_pack(frame, vs);
  piece.rank = g.r;
  return piece;
}

}  // namespace

PiecewiseRegularMap approximate_complex(const SimplicialComplex& k,
                                        const TargetOracle& f,
                                        const PipelineOptions& opt) {
  PiecewiseRegularMap out;
  out.complex = k;
  out.target = f.spec;
  out.stratification = induced_stratification(k);
  out.certificate.eps_target = opt.eps;
  out.certificate.pitch = opt.cert_pitch;

  const int dim = std::max(k.dim(), 0);
  auto level_budget = [&](int level) {
    return opt.eps * (level + 1) / (dim + 1);
  };

  // Rank locking per connected component of |K|.
  std::map<std::string, int> comp = complex_components(k);
  std::map<int, int> comp_rank;

  // Level 0: exact snaps.
  for (const auto& s : k.simplices_of_dim(0)) {
    SimplexPiece piece = snap_vertex_piece(k, s[0], f);
    if (f.spec.kind == TargetSpec::Kind::Grassmann) {
      int c = comp.at(SimplicialComplex::id_of(s));
      auto it = comp_rank.find(c);
      if (it == comp_rank.end())
        comp_rank[c] = piece.rank;
      else if (it->second != piece.rank)
        throw RankLost("oracle rank varies inside one connected component");
    }
    out.per_simplex[SimplicialComplex::id_of(s)] = std::move(piece);
  }

  // Levels 1..dim.
  for (int level = 1; level <= dim; ++level) {
    auto simplices = k.simplices_of_dim(level);
    struct Built {
      std::string id;
      SimplexPiece piece;
      bool cap_exceeded = false;
    };
    std::vector<Built> built(simplices.size());

    auto build_one = [&](std::size_t idx) {
      const auto& s = simplices[idx];
      std::string id = SimplicialComplex::id_of(s);
      Simplex geo = k.geometry(s);
      try {
        if (f.spec.kind == TargetSpec::Kind::Sphere) {
          FacetData data;
          for (int i = 0; i <= level; ++i) {
            std::vector<int> face = s;
            face.erase(face.begin() + i);
            data.facets.push_back(
                out.per_simplex.at(SimplicialComplex::id_of(face)).vec);
          }
          SphereApproxOptions sopt;
          sopt.eps = level_budget(level);
          sopt.chart_margin = opt.chart_margin;
          sopt.cert_pitch = opt.cert_pitch;
          sopt.fit.min_degree = opt.min_degree;
          sopt.fit.degree_step = opt.degree_step;
          sopt.fit.degree_cap = opt.degree_cap;
          sopt.fit.den_margin = opt.tau_den;
          auto res = approximate_sphere_simplex(geo, f.sphere, data, sopt);
          built[idx].id = id;
          built[idx].piece.vec = res.map;
          built[idx].cap_exceeded = res.cert.degree_cap_exceeded;
        } else {
          std::vector<FRatMat> frames;
          int rank = comp_rank.at(comp.at(id));
          for (int i = 0; i <= level; ++i) {
            std::vector<int> face = s;
            face.erase(face.begin() + i);
            const SimplexPiece& fp =
                out.per_simplex.at(SimplicialComplex::id_of(face));
            frames.push_back(fp.unpack(f.spec));
          }
          GrassmannApproxOptions gopt;
          gopt.eps = level_budget(level);
          gopt.tau_rank = opt.tau_rank;
          gopt.osc_bound = opt.osc_bound;
          gopt.cert_pitch = opt.cert_pitch;
          gopt.fit.min_degree = opt.min_degree;
          gopt.fit.degree_step = opt.degree_step;
          gopt.fit.degree_cap = opt.degree_cap;
          gopt.fit.den_margin = opt.tau_den;
          auto res = approximate_grassmann_simplex(geo, f.grassmann, frames, gopt);
          built[idx].id = id;
          built[idx].piece.vec = frat_pack(res.frame, geo);
          built[idx].piece.rank = rank;
          built[idx].cap_exceeded = res.cert.degree_cap_exceeded;
        }
      } catch (const Error& e) {
        throw Error(e.kind(), "simplex " + id + ": " + e.what());
      }
    };

    if (opt.jobs > 1) {
      std::vector<std::future<void>> futs;
      std::atomic<std::size_t> next{0};
      int workers = std::min<int>(opt.jobs, static_cast<int>(simplices.size()));
      for (int w = 0; w < workers; ++w)
        futs.push_back(std::async(std::launch::async, [&] {
          for (;;) {
            std::size_t idx = next.fetch_add(1);
            if (idx >= simplices.size()) return;
            build_one(idx);
          }
        }));
      for (auto& fu : futs) fu.get();
    } else {
      for (std::size_t i = 0; i < simplices.size(); ++i) build_one(i);
    }

    for (auto& b : built) {
      if (b.cap_exceeded) out.certificate.degree_cap_exceeded = true;
      out.per_simplex[b.id] = std::move(b.piece);
    }
  }

  bool cap_flag = out.certificate.degree_cap_exceeded;
  double eps_target = out.certificate.eps_target;
  out.certificate = certify(out, f, opt.cert_pitch);
  out.certificate.eps_target = eps_target;
  out.certificate.degree_cap_exceeded = cap_flag;
  return out;
}

namespace {

// Exact cross-multiplied equality of the sphere piece of `big` restricted
// to the facet hull against the facet piece.
bool sphere_restriction_matches(const RegularFnVector& big,
                                const RegularFnVector& small,
                                const AffineHull& facet_hull) {
  if (big.size() != small.size()) return false;
  MultiPoly big_den = restrict_to_hull(big.den, facet_hull);
  MultiPoly small_den = restrict_to_hull(small.den, facet_hull);
  for (int c = 0; c < big.size(); ++c) {
    MultiPoly lhs = restrict_to_hull(big.nums[c], facet_hull) * small_den;
    MultiPoly rhs = restrict_to_hull(small.nums[c], facet_hull) * big_den;
    if (!(lhs == rhs)) return false;
  }
  return true;
}

}  // namespace

Certificate certify(const PiecewiseRegularMap& map, const TargetOracle& f,
                    int pitch) {
  Certificate cert;
  cert.eps_target = map.certificate.eps_target;
  cert.degree_cap_exceeded = map.certificate.degree_cap_exceeded;
  cert.subdivision_depth = map.certificate.subdivision_depth;
  cert.pitch = pitch;
  const auto& k = map.complex;
  const bool is_sphere = map.target.kind == TargetSpec::Kind::Sphere;
  cert.rank_margin = std::numeric_limits<double>::infinity();

  // Per-simplex sweeps: oracle distance, target membership, margins.
  for (const auto& [id, piece] : map.per_simplex) {
    auto ix = SimplicialComplex::parse_id(id);
    Simplex geo = k.geometry(ix);
    auto lattice = barycentric_lattice(geo, std::max(2, pitch));
    if (is_sphere) {
      if (!unit_norm_identity_holds(piece.vec)) {
        cert.unit_norm_exact = false;
        throw CertificateMismatch("unit_norm_exact at simplex " + id);
      }
      for (const auto& p : lattice) {
        auto x = point_to_doubles(p);
        auto gx = piece.vec.eval_double(x);
        auto fx = f.sphere(x);
        for (std::size_t c = 0; c < gx.size(); ++c)
          cert.eps_achieved =
              std::max(cert.eps_achieved, std::abs(gx[c] - fx[c]));
      }
    } else {
      FRatMat m = piece.unpack(map.target);
      for (const auto& p : lattice) {
        auto x = point_to_doubles(p);
        FMatD val = m.eval_double(x);
        GrassmannPoint fx = f.grassmann(x);
        Eigen::MatrixXd pg;
        if (piece.matrix_is_projection) {
          pg = embed_real(val);
          FMatD herm = fmat_sub(val, fmat_adjoint(val));
          FMatD idem = fmat_sub(fmat_mul(val, val), val);
          cert.proj_defect = std::max(
              cert.proj_defect,
              std::max(fmat_op_norm(herm), fmat_op_norm(idem)));
        } else {
          cert.rank_margin = std::min(cert.rank_margin, fmat_sigma_min(val));
          pg = embedded_span_projection(embed_real(val));
          // defect of the induced projection
          Eigen::MatrixXd herm = pg - pg.transpose();
          Eigen::MatrixXd idem = pg * pg - pg;
          cert.proj_defect =
              std::max(cert.proj_defect,
                       std::max(herm.cwiseAbs().maxCoeff(),
                                idem.cwiseAbs().maxCoeff()));
        }
        Eigen::MatrixXd pf = embed_real(fmat_to_double(fx.proj));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pg - pf);
        cert.eps_achieved = std::max(
            cert.eps_achieved, es.eigenvalues().cwiseAbs().maxCoeff());
      }
    }
  }

  // Shared-face identities, exact; plus a numeric gluing spot check.
  // For Grassmann pieces the identity is checked in the facet parameters:
  // a frame restriction must satisfy P_facet * Phi == Phi exactly (span
  // containment; ranks are covered by the sampled sigma_min margins), and
  // projection pieces must restrict to the facet projection. Only
  // facet-level frames ever get squared into projections.
  std::map<std::string, FRatMat> facet_proj_cache;  // in facet parameters
  auto facet_projection = [&](const std::string& fid,
                              const AffineHull& fh) -> const FRatMat& {
    auto it = facet_proj_cache.find(fid);
    if (it != facet_proj_cache.end()) return it->second;
    const SimplexPiece& p = map.piece(fid);
    FRatMat raw = p.unpack(map.target);
    FRatMat restricted = frat_compose(raw, fh.param_polys(), fh.dim());
    FRatMat pr = p.matrix_is_projection ? restricted
                                        : projection_from_frame(restricted);
    return facet_proj_cache.emplace(fid, std::move(pr)).first->second;
  };

  for (const auto& [id, piece] : map.per_simplex) {
    auto ix = SimplicialComplex::parse_id(id);
    if (ix.size() < 2) continue;
    for (std::size_t drop = 0; drop < ix.size(); ++drop) {
      std::vector<int> face = ix;
      face.erase(face.begin() + static_cast<long>(drop));
      std::string fid = SimplicialComplex::id_of(face);
      const SimplexPiece& fp = map.piece(fid);
      AffineHull fh = affine_hull(k.geometry(face));
      bool ok;
      if (is_sphere) {
        ok = sphere_restriction_matches(piece.vec, fp.vec, fh);
      } else {
        const FRatMat& p_facet = facet_projection(fid, fh);
        FRatMat restricted =
            frat_compose(piece.unpack(map.target), fh.param_polys(), fh.dim());
        if (piece.matrix_is_projection) {
          ok = frat_equal(restricted, p_facet);
        } else {
          FRatMat projected = frat_mul(p_facet, restricted);
          ok = frat_equal(projected, restricted);
        }
      }
      if (!ok) {
        cert.boundary_exact = false;
        cert.boundary_failures.push_back(id + "|" + fid);
      }
      // numeric jump across the face
      FRatMat ma, mb;
      if (!is_sphere) {
        ma = piece.unpack(map.target);
        mb = fp.unpack(map.target);
      }
      for (const auto& p : barycentric_lattice(k.geometry(face),
                                               std::max(2, pitch / 2))) {
        auto x = point_to_doubles(p);
        if (is_sphere) {
          auto a = piece.vec.eval_double(x);
          auto b = fp.vec.eval_double(x);
          for (std::size_t c = 0; c < a.size(); ++c)
            cert.gluing_jump =
                std::max(cert.gluing_jump, std::abs(a[c] - b[c]));
        } else {
          Eigen::MatrixXd pa =
              piece.matrix_is_projection
                  ? embed_real(ma.eval_double(x))
                  : embedded_span_projection(embed_real(ma.eval_double(x)));
          Eigen::MatrixXd pb =
              fp.matrix_is_projection
                  ? embed_real(mb.eval_double(x))
                  : embedded_span_projection(embed_real(mb.eval_double(x)));
          cert.gluing_jump =
              std::max(cert.gluing_jump, (pa - pb).cwiseAbs().maxCoeff());
        }
      }
    }
  }
  if (!cert.boundary_exact)
    throw CertificateMismatch("boundary_exact (" +
                              cert.boundary_failures.front() + ")");

  // Stratum-component containment and representative consistency.
  std::vector<Point> samples;
  double max_diam = 0;
  for (const auto& s : k.maximal_simplices()) {
    Simplex geo = k.geometry(s);
    max_diam = std::max(max_diam, simplex_diameter(geo));
    for (auto& p : barycentric_lattice(geo, std::max(2, pitch)))
      samples.push_back(std::move(p));
  }
  if (!samples.empty()) {
    // 1.5x the largest lattice spacing: above one in-simplex step, and the
    // shared-simplex adjacency rule keeps it from jumping removed faces.
    double link = 1.5 * max_diam / std::max(2, pitch);
    try {
      auto rep = component_containment_check(samples, k, map.stratification,
                                             link);
      cert.stratum_components = static_cast<int>(rep.components.size());
      // Consistency: evaluate through the component's shared simplex and
      // through the sample's own lowest simplex.
      for (const auto& compo : rep.components) {
        const SimplexPiece& sp = map.piece(compo.shared_simplex_ids.front());
        for (int pi : compo.point_indices) {
          const Point& x = samples[pi];
          auto own_ix = lowest_containing(k, x);
          const SimplexPiece& op = map.piece(SimplicialComplex::id_of(own_ix));
          auto xd = point_to_doubles(x);
          if (is_sphere) {
            auto a = sp.vec.eval_double(xd);
            auto b = op.vec.eval_double(xd);
            for (std::size_t c = 0; c < a.size(); ++c)
              cert.consistency =
                  std::max(cert.consistency, std::abs(a[c] - b[c]));
          } else {
            FRatMat ma = sp.unpack(map.target);
            FRatMat mb = op.unpack(map.target);
            Eigen::MatrixXd pa =
                sp.matrix_is_projection
                    ? embed_real(ma.eval_double(xd))
                    : embedded_span_projection(embed_real(ma.eval_double(xd)));
            Eigen::MatrixXd pb =
                op.matrix_is_projection
                    ? embed_real(mb.eval_double(xd))
                    : embedded_span_projection(embed_real(mb.eval_double(xd)));
            cert.consistency = std::max(cert.consistency,
                                        (pa - pb).cwiseAbs().maxCoeff());
          }
        }
      }
    } catch (const ComponentSplit&) {
      cert.component_split_events += 1;
      throw CertificateMismatch("stratum_component_report (ComponentSplit)");
    }
    if (cert.consistency > 1e-9)
      throw CertificateMismatch("stratum component consistency " +
                                std::to_string(cert.consistency));
  }
  if (cert.gluing_jump > 1e-9)
    throw CertificateMismatch("gluing_jump " +
                              std::to_string(cert.gluing_jump));
  if (std::isinf(cert.rank_margin)) cert.rank_margin = 0.0;
  return cert;
}

PiecewiseRegularMap run_pipeline(const SimplicialComplex& k,
                                 const TargetOracle& f,
                                 const PipelineOptions& opt) {
  int depth = 0;
  SimplicialComplex pre =
      precondition_subdivide(k, f, opt.osc_bound, opt.subdiv_cap, &depth);
  PiecewiseRegularMap map = approximate_complex(pre, f, opt);
  map.certificate.subdivision_depth = depth;
  return map;
}

}  // namespace pwreg
