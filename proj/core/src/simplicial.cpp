#include "pwreg/simplicial.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "pwreg/errors.hpp"

namespace pwreg {

Point Simplex::barycenter() const {
  assert(!vertices.empty());
  Point b(vertices[0].size(), Rational(0));
  for (const auto& v : vertices)
    for (std::size_t j = 0; j < b.size(); ++j) b[j] += v[j];
  Rational inv(1, static_cast<unsigned long>(vertices.size()));
  inv.canonicalize();
  for (auto& c : b) c *= inv;
  return b;
}

Simplex Simplex::facet(int i) const {
  Simplex f;
  for (int j = 0; j <= dim(); ++j)
    if (j != i) f.vertices.push_back(vertices[j]);
  return f;
}

std::optional<RatVec> Simplex::barycentric(const Point& x) const {
  const int m = ambient_dim();
  const int k = static_cast<int>(vertices.size());
  RatMat a(m + 1, RatVec(k));
  RatVec b(m + 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < k; ++j) a[i][j] = vertices[j][i];
    b[i] = x[i];
  }
  for (int j = 0; j < k; ++j) a[m][j] = 1;
  b[m] = 1;
  return rat_solve(a, b);
}

bool Simplex::contains(const Point& x) const {
  auto lam = barycentric(x);
  if (!lam) return false;
  for (const auto& l : *lam)
    if (l < 0) return false;
  return true;
}

bool AffineHull::contains(const Point& x) const {
  for (const auto& nf : normal_forms)
    if (nf.eval(x) != 0) return false;
  return true;
}

std::vector<MultiPoly> AffineHull::param_polys() const {
  const int m = ambient_dim();
  const int d = dim();
  std::vector<MultiPoly> out;
  out.reserve(m);
  for (int j = 0; j < m; ++j) {
    std::vector<Rational> coeffs(d);
    for (int i = 0; i < d; ++i) coeffs[i] = basis[i][j];
    out.push_back(MultiPoly::affine(d, base[j], coeffs));
  }
  return out;
}

std::optional<Point> AffineHull::coords_of(const Point& x) const {
  if (!contains(x)) return std::nullopt;
  Point t;
  t.reserve(coord_forms.size());
  for (const auto& cf : coord_forms) t.push_back(cf.eval(x));
  return t;
}

Point AffineHull::point_at(const Point& t) const {
  Point x = base;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += t[i] * basis[i][j];
  return x;
}

std::string AffineHull::canonical_key() const {
  const int m = ambient_dim();
  RatMat rows;
  for (const auto& nf : normal_forms) {
    RatVec row(m + 1, Rational(0));
    for (const auto& [e, c] : nf.terms()) {
      int which = -1;
      for (int i = 0; i < m; ++i)
        if (e[i] == 1) which = i;
      if (which < 0)
        row[m] = c;
      else
        row[which] = c;
    }
    rows.push_back(std::move(row));
  }
  if (!rows.empty()) rat_rref(rows);
  std::ostringstream os;
  os << m << ";" << dim() << ";";
  for (const auto& r : rows) {
    for (const auto& c : r) os << rat_to_string(c) << ",";
    os << "|";
  }
  return os.str();
}

bool AffineHull::contained_in(const AffineHull& other) const {
  // Every normal form of `other` must vanish on this hull: orthogonal to
  // the basis directions and zero at the base point.
  for (const auto& nf : other.normal_forms) {
    if (nf.eval(base) != 0) return false;
    for (const auto& dir : basis) {
      Rational dot(0);
      const int m = ambient_dim();
      for (const auto& [e, c] : nf.terms()) {
        for (int i = 0; i < m; ++i)
          if (e[i] == 1) dot += c * dir[i];
      }
      if (dot != 0) return false;
    }
  }
  return true;
}

AffineHull affine_hull(const Simplex& s) {
  const int m = s.ambient_dim();
  const int d = s.dim();
  AffineHull h;
  h.base = s.vertices[0];
  for (int i = 1; i <= d; ++i) {
    Point dir(m);
    for (int j = 0; j < m; ++j) dir[j] = s.vertices[i][j] - s.vertices[0][j];
    h.basis.push_back(std::move(dir));
  }

  // Normal forms: a in ker(B^T), b = -a . base.
  if (d < m) {
    std::vector<RatVec> kernel;
    if (d == 0) {
      for (int i = 0; i < m; ++i) {
        RatVec e(m, Rational(0));
        e[i] = 1;
        kernel.push_back(std::move(e));
      }
    } else {
      RatMat bt(d, RatVec(m));
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < m; ++j) bt[i][j] = h.basis[i][j];
      kernel = rat_nullspace(bt);
    }
    for (const auto& a : kernel) {
      Rational b(0);
      for (int j = 0; j < m; ++j) b -= a[j] * h.base[j];
      h.normal_forms.push_back(MultiPoly::affine(m, b, a));
    }
  }

  // Hull coordinates: t(x) = (B^T B)^{-1} B^T (x - base).
  if (d > 0) {
    RatMat btb(d, RatVec(d, Rational(0)));
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k)
        for (int j = 0; j < m; ++j) btb[i][k] += h.basis[i][j] * h.basis[k][j];
    auto inv = rat_inverse(btb);
    if (!inv) throw AffineDependence("degenerate simplex basis");
    for (int i = 0; i < d; ++i) {
      std::vector<Rational> coeffs(m, Rational(0));
      Rational c0(0);
      for (int k = 0; k < d; ++k) {
        for (int j = 0; j < m; ++j) coeffs[j] += (*inv)[i][k] * h.basis[k][j];
      }
      for (int j = 0; j < m; ++j) c0 -= coeffs[j] * h.base[j];
      h.coord_forms.push_back(MultiPoly::affine(m, c0, coeffs));
    }
  }
  return h;
}

int SimplicialComplex::dim() const {
  int d = -1;
  for (const auto& s : simplices) d = std::max<int>(d, s.size() - 1);
  return d;
}

Simplex SimplicialComplex::geometry(const std::vector<int>& ix) const {
  Simplex s;
  for (int i : ix) s.vertices.push_back(vertices[i]);
  return s;
}

std::vector<std::vector<int>> SimplicialComplex::maximal_simplices() const {
  std::vector<std::vector<int>> out;
  for (const auto& s : simplices) {
    bool maximal = true;
    for (const auto& t : simplices) {
      if (t.size() <= s.size()) continue;
      if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(s);
  }
  return out;
}

std::vector<std::vector<int>> SimplicialComplex::simplices_of_dim(int d) const {
  std::vector<std::vector<int>> out;
  for (const auto& s : simplices)
    if (static_cast<int>(s.size()) == d + 1) out.push_back(s);
  return out;
}

bool SimplicialComplex::contains_point(const Point& x) const {
  for (const auto& s : maximal_simplices())
    if (geometry(s).contains(x)) return true;
  return false;
}

std::vector<std::vector<int>> SimplicialComplex::containing_simplices(
    const Point& x) const {
  std::vector<std::vector<int>> out;
  for (const auto& s : simplices)
    if (geometry(s).contains(x)) out.push_back(s);
  return out;
}

std::string SimplicialComplex::id_of(const std::vector<int>& ix) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ix.size(); ++i) {
    if (i) os << "-";
    os << ix[i];
  }
  return os.str();
}

std::vector<int> SimplicialComplex::parse_id(const std::string& id) {
  std::vector<int> out;
  std::istringstream is(id);
  std::string part;
  while (std::getline(is, part, '-')) out.push_back(std::stoi(part));
  return out;
}

namespace {

void check_affinely_independent(const Simplex& s) {
  const int m = s.ambient_dim();
  const int d = s.dim();
  if (d > m)
    throw AffineDependence("simplex with more vertices than ambient allows");
  if (d == 0) return;
  RatMat dirs(d, RatVec(m));
  for (int i = 1; i <= d; ++i)
    for (int j = 0; j < m; ++j)
      dirs[i - 1][j] = s.vertices[i][j] - s.vertices[0][j];
  if (rat_rank(dirs) != static_cast<std::size_t>(d))
    throw AffineDependence("affinely dependent vertex set");
}

// Do the relative interiors of conv(vs) and conv(ws) intersect?  Solved as
// an exact LP: maximize t subject to the barycentric matching constraints
// with all weights >= t.
bool relative_interiors_intersect(const std::vector<Point>& vs,
                                  const std::vector<Point>& ws) {
  const int m = static_cast<int>(vs[0].size());
  const int p = static_cast<int>(vs.size());
  const int q = static_cast<int>(ws.size());
  // Variables: t, s_1..s_p, r_1..r_q (lambda_i = t + s_i, mu_j = t + r_j).
  const int n = 1 + p + q;
  RatMat a(m + 2, RatVec(n, Rational(0)));
  RatVec b(m + 2, Rational(0));
  for (int i = 0; i < m; ++i) {
    Rational tc(0);
    for (int j = 0; j < p; ++j) {
      a[i][1 + j] = vs[j][i];
      tc += vs[j][i];
    }
    for (int j = 0; j < q; ++j) {
      a[i][1 + p + j] = -ws[j][i];
      tc -= ws[j][i];
    }
    a[i][0] = tc;
    b[i] = 0;
  }
  a[m][0] = p;
  for (int j = 0; j < p; ++j) a[m][1 + j] = 1;
  b[m] = 1;
  a[m + 1][0] = q;
  for (int j = 0; j < q; ++j) a[m + 1][1 + p + j] = 1;
  b[m + 1] = 1;
  RatVec c(n, Rational(0));
  c[0] = 1;
  LpResult r = lp_maximize(a, b, c);
  return r.status == LpStatus::Optimal && r.value > 0;
}

void validate_pair(const SimplicialComplex& k, const std::vector<int>& s1,
                   const std::vector<int>& s2) {
  // Enumerate face pairs; distinct vertex sets must have disjoint relative
  // interiors.
  auto subsets = [](const std::vector<int>& s) {
    std::vector<std::vector<int>> out;
    const int n = static_cast<int>(s.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> f;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) f.push_back(s[i]);
      out.push_back(std::move(f));
    }
    return out;
  };
  for (const auto& f1 : subsets(s1)) {
    for (const auto& f2 : subsets(s2)) {
      if (f1 == f2) continue;
      std::vector<Point> vs, ws;
      for (int i : f1) vs.push_back(k.vertices[i]);
      for (int i : f2) ws.push_back(k.vertices[i]);
      if (relative_interiors_intersect(vs, ws))
        throw BadIntersection("simplices " + SimplicialComplex::id_of(s1) +
                              " and " + SimplicialComplex::id_of(s2) +
                              " meet outside a common face");
    }
  }
}

}  // namespace

SimplicialComplex build_complex(const std::vector<std::vector<Point>>& input) {
  SimplicialComplex k;
  if (!input.empty() && !input[0].empty())
    k.ambient_dim = static_cast<int>(input[0][0].size());

  std::map<Point, int> vertex_index;
  auto index_of = [&](const Point& p) {
    auto it = vertex_index.find(p);
    if (it != vertex_index.end()) return it->second;
    int id = static_cast<int>(k.vertices.size());
    k.vertices.push_back(p);
    vertex_index.emplace(p, id);
    return id;
  };

  std::vector<std::vector<int>> top;
  for (const auto& verts : input) {
    if (verts.empty()) continue;
    if (static_cast<int>(verts[0].size()) != k.ambient_dim)
      throw BadInput("inconsistent ambient dimension");
    Simplex s{verts};
    check_affinely_independent(s);
    std::vector<int> ix;
    for (const auto& v : verts) ix.push_back(index_of(v));
    std::sort(ix.begin(), ix.end());
    if (std::adjacent_find(ix.begin(), ix.end()) != ix.end())
      throw AffineDependence("repeated vertex in simplex");
    top.push_back(ix);
  }

  // Face closure.
  for (const auto& s : top) {
    const int n = static_cast<int>(s.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> f;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) f.push_back(s[i]);
      k.simplices.insert(std::move(f));
    }
  }

  // Pairwise validation of maximal simplices; faces inherit correctness.
  auto maxima = k.maximal_simplices();
  for (std::size_t i = 0; i < maxima.size(); ++i)
    for (std::size_t j = i + 1; j < maxima.size(); ++j)
      validate_pair(k, maxima[i], maxima[j]);
  return k;
}

bool complexes_equal(const SimplicialComplex& a, const SimplicialComplex& b) {
  return a.ambient_dim == b.ambient_dim && a.vertices == b.vertices &&
         a.simplices == b.simplices;
}

SimplicialComplex skeleton(const SimplicialComplex& k, int n) {
  SimplicialComplex out;
  out.ambient_dim = k.ambient_dim;
  out.vertices = k.vertices;
  for (const auto& s : k.simplices)
    if (static_cast<int>(s.size()) <= n + 1) out.simplices.insert(s);
  return out;
}

namespace {

SimplicialComplex subdivide_once(const SimplicialComplex& k) {
  SimplicialComplex out;
  out.ambient_dim = k.ambient_dim;
  std::map<Point, int> vertex_index;
  auto index_of = [&](const Point& p) {
    auto it = vertex_index.find(p);
    if (it != vertex_index.end()) return it->second;
    int id = static_cast<int>(out.vertices.size());
    out.vertices.push_back(p);
    vertex_index.emplace(p, id);
    return id;
  };

  // Barycenter vertex per simplex of k.
  std::map<std::vector<int>, int> bary_ix;
  for (const auto& s : k.simplices)
    bary_ix[s] = index_of(k.geometry(s).barycenter());

  // Chains sigma_0 > sigma_1 > ... in the face poset become simplices.
  auto proper_faces = [&](const std::vector<int>& s) {
    std::vector<std::vector<int>> out_faces;
    const int n = static_cast<int>(s.size());
    for (int mask = 1; mask < (1 << n) - 1; ++mask) {
      std::vector<int> f;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) f.push_back(s[i]);
      out_faces.push_back(std::move(f));
    }
    return out_faces;
  };

  // Depth-first over descending chains starting at each simplex.
  std::vector<int> current;
  auto emit = [&](const std::vector<int>& chain_ixs) {
    std::vector<int> simplex = chain_ixs;
    std::sort(simplex.begin(), simplex.end());
    out.simplices.insert(simplex);
  };
  std::function<void(const std::vector<int>&)> walk =
      [&](const std::vector<int>& s) {
        current.push_back(bary_ix[s]);
        emit(current);
        for (const auto& f : proper_faces(s)) walk(f);
        current.pop_back();
      };
  for (const auto& s : k.simplices) walk(s);
  return out;
}

}  // namespace

SimplicialComplex barycentric_subdivide(const SimplicialComplex& k,
                                        int iterations) {
  SimplicialComplex cur = k;
  for (int i = 0; i < iterations; ++i) cur = subdivide_once(cur);
  return cur;
}

namespace {

// Affine subspace from stacked equations a.x + b = 0; nullopt when empty.
std::optional<AffineHull> hull_from_equations(const RatMat& a,
                                              const RatVec& b, int m) {
  auto base = rat_solve(a, b);
  if (!base) return std::nullopt;
  std::vector<RatVec> kernel = rat_nullspace(a);
  Simplex probe;
  probe.vertices.push_back(*base);
  for (const auto& dir : kernel) {
    Point v = *base;
    for (int j = 0; j < m; ++j) v[j] += dir[j];
    probe.vertices.push_back(std::move(v));
  }
  return affine_hull(probe);
}

// Intersection of two hulls as an affine subspace.
std::optional<AffineHull> intersect_hulls(const AffineHull& h1,
                                          const AffineHull& h2) {
  const int m = h1.ambient_dim();
  RatMat a;
  RatVec b;
  auto push_forms = [&](const AffineHull& h) {
    for (const auto& nf : h.normal_forms) {
      RatVec row(m, Rational(0));
      Rational c0(0);
      for (const auto& [e, c] : nf.terms()) {
        int which = -1;
        for (int i = 0; i < m; ++i)
          if (e[i] == 1) which = i;
        if (which < 0)
          c0 = c;
        else
          row[which] = c;
      }
      a.push_back(std::move(row));
      b.push_back(-c0);
    }
  };
  push_forms(h1);
  push_forms(h2);
  if (a.empty()) return std::nullopt;
  return hull_from_equations(a, b, m);
}

}  // namespace

Filtration induced_filtration(const SimplicialComplex& k) {
  const int m = k.ambient_dim;
  Filtration f;
  f.ambient_dim = m;
  f.levels.resize(m + 2);

  AffineHull full;
  full.base = Point(m, Rational(0));
  for (int i = 0; i < m; ++i) {
    Point dir(m, Rational(0));
    dir[i] = 1;
    full.basis.push_back(std::move(dir));
  }
  // coord forms of the full hull are the coordinates themselves
  for (int i = 0; i < m; ++i)
    full.coord_forms.push_back(MultiPoly::variable(m, i));
  f.levels[0].hulls.push_back(full);

  // The simplex hulls, then the closure of the arrangement under pairwise
  // intersection. Without the closure, hull crossings away from the vertex
  // set connect stratum traces across simplex interiors and the
  // per-component containment witness breaks down.
  std::map<std::string, AffineHull> pool;
  for (const auto& s : k.simplices) {
    if (static_cast<int>(s.size()) - 1 > m - 1) continue;
    AffineHull h = affine_hull(k.geometry(s));
    pool.emplace(h.canonical_key(), std::move(h));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<const AffineHull*> items;
    for (const auto& [key, h] : pool) items.push_back(&h);
    std::vector<AffineHull> fresh;
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t j = i + 1; j < items.size(); ++j) {
        if (items[i]->contained_in(*items[j]) ||
            items[j]->contained_in(*items[i]))
          continue;
        auto inter = intersect_hulls(*items[i], *items[j]);
        if (!inter) continue;
        if (pool.find(inter->canonical_key()) == pool.end())
          fresh.push_back(std::move(*inter));
      }
    }
    for (auto& h : fresh) {
      if (pool.emplace(h.canonical_key(), std::move(h)).second) grew = true;
    }
  }

  for (int d = 1; d <= m; ++d) {
    std::vector<AffineHull> hulls;
    for (const auto& [key, h] : pool)
      if (h.dim() <= m - d) hulls.push_back(h);
    // Drop hulls contained in a strictly bigger hull of the same level
    // (keys are distinct, so containment means strict).
    std::vector<AffineHull> minimal;
    for (std::size_t i = 0; i < hulls.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < hulls.size(); ++j) {
        if (i != j && hulls[i].contained_in(hulls[j])) {
          redundant = true;
          break;
        }
      }
      if (!redundant) minimal.push_back(hulls[i]);
    }
    f.levels[d].hulls = std::move(minimal);
  }
  // levels[m+1] stays empty.
  return f;
}

bool Stratum::contains(const Point& x) const {
  bool in_pos = false;
  for (const auto& h : positive)
    if (h.contains(x)) { in_pos = true; break; }
  if (!in_pos) return false;
  for (const auto& h : negative)
    if (h.contains(x)) return false;
  return true;
}

int Stratification::stratum_of(const Point& x) const {
  for (std::size_t i = 0; i < strata.size(); ++i)
    if (strata[i].contains(x)) return static_cast<int>(i);
  return -1;
}

Stratification filtration_to_stratification(const Filtration& f) {
  Stratification s;
  s.ambient_dim = f.ambient_dim;
  s.source_levels = f.levels;
  for (std::size_t i = 0; i + 1 < f.levels.size(); ++i) {
    Stratum st;
    st.positive = f.levels[i].hulls;
    st.negative = f.levels[i + 1].hulls;
    s.strata.push_back(std::move(st));
  }
  return s;
}

Stratification induced_stratification(const SimplicialComplex& k) {
  return filtration_to_stratification(induced_filtration(k));
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

ContainmentReport component_containment_check(const std::vector<Point>& points,
                                              const SimplicialComplex& k,
                                              const Stratification& s,
                                              double link_length) {
  ContainmentReport rep;
  rep.labels.resize(points.size());
  const int n = static_cast<int>(points.size());

  for (int i = 0; i < n; ++i) {
    auto sims = k.containing_simplices(points[i]);
    if (sims.empty())
      throw OutsideDomain("sample point " + std::to_string(i) +
                          " lies outside |K|");
    for (const auto& ix : sims)
      rep.labels[i].simplex_ids.push_back(SimplicialComplex::id_of(ix));
    // keep string order for the binary searches and set intersections below
    std::sort(rep.labels[i].simplex_ids.begin(),
              rep.labels[i].simplex_ids.end());
    rep.labels[i].stratum = s.stratum_of(points[i]);
  }

  std::vector<std::vector<double>> xs;
  xs.reserve(points.size());
  for (const auto& p : points) xs.push_back(point_to_doubles(p));

  // Adjacency: same stratum, within the resolution, witnessed by a common
  // containing simplex (so the segment stays in |K|) and by a common
  // positive hull of the stratum (so the segment stays in the stratum's
  // carrier). Links can then never jump across a removed face.
  UnionFind uf(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rep.labels[i].stratum != rep.labels[j].stratum) continue;
      double d2 = 0;
      for (std::size_t c = 0; c < xs[i].size(); ++c) {
        double diff = xs[i][c] - xs[j][c];
        d2 += diff * diff;
      }
      if (d2 > link_length * link_length) continue;
      const auto& a = rep.labels[i].simplex_ids;
      const auto& b = rep.labels[j].simplex_ids;
      bool shared = false;
      for (const auto& id : a) {
        if (std::binary_search(b.begin(), b.end(), id)) {
          shared = true;
          break;
        }
      }
      if (!shared) continue;
      const Stratum& st = s.strata[rep.labels[i].stratum];
      bool common_hull = false;
      for (const auto& h : st.positive) {
        if (h.contains(points[i]) && h.contains(points[j])) {
          common_hull = true;
          break;
        }
      }
      if (common_hull) uf.unite(i, j);
    }
  }

  std::map<int, int> root_to_comp;
  for (int i = 0; i < n; ++i) {
    int root = uf.find(i);
    auto it = root_to_comp.find(root);
    int comp;
    if (it == root_to_comp.end()) {
      comp = static_cast<int>(rep.components.size());
      root_to_comp.emplace(root, comp);
      rep.components.push_back({rep.labels[i].stratum, {}, {}});
    } else {
      comp = it->second;
    }
    rep.labels[i].component = comp;
    rep.components[comp].point_indices.push_back(i);
  }

  for (auto& comp : rep.components) {
    std::vector<std::string> shared =
        rep.labels[comp.point_indices[0]].simplex_ids;
    for (int pi : comp.point_indices) {
      std::vector<std::string> next;
      const auto& here = rep.labels[pi].simplex_ids;
      std::set_intersection(shared.begin(), shared.end(), here.begin(),
                            here.end(), std::back_inserter(next));
      shared = std::move(next);
    }
    if (shared.empty())
      throw ComponentSplit(
          "a stratum component meets two simplices with no common one");
    comp.shared_simplex_ids = std::move(shared);
  }
  return rep;
}

std::vector<Point> barycentric_lattice(const Simplex& s, int pitch) {
  assert(pitch >= 1);
  const int k = static_cast<int>(s.vertices.size());
  std::vector<Point> out;
  std::vector<int> w(k, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == k - 1) {
      w[pos] = left;
      Point p(s.ambient_dim(), Rational(0));
      for (int i = 0; i < k; ++i) {
        if (w[i] == 0) continue;
        Rational c(w[i], pitch);
        c.canonicalize();
        for (int j = 0; j < s.ambient_dim(); ++j)
          p[j] += c * s.vertices[i][j];
      }
      out.push_back(std::move(p));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      w[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, pitch);
  return out;
}

}  // namespace pwreg
