#include "pwreg/serialize.hpp"

#include "pwreg/bundles.hpp"

namespace pwreg {

Json point_to_json(const Point& p) {
  Json out = Json::array();
  for (const auto& c : p) out.push_back(rat_to_string(c));
  return out;
}

Point point_from_json(const Json& j) {
  Point p;
  for (const auto& c : j) p.push_back(rat_from_string(c.get<std::string>()));
  return p;
}

Json complex_to_json(const SimplicialComplex& k) {
  Json out;
  out["ambient_dim"] = k.ambient_dim;
  Json verts = Json::array();
  for (const auto& v : k.vertices) verts.push_back(point_to_json(v));
  out["vertices"] = verts;
  Json sims = Json::array();
  for (const auto& s : k.simplices) sims.push_back(s);
  out["simplices"] = sims;
  return out;
}

SimplicialComplex complex_from_json(const Json& j) {
  SimplicialComplex k;
  k.ambient_dim = j.at("ambient_dim").get<int>();
  for (const auto& v : j.at("vertices")) {
    Point p = point_from_json(v);
    if (static_cast<int>(p.size()) != k.ambient_dim)
      throw BadInput("vertex with wrong ambient dimension");
    k.vertices.push_back(std::move(p));
  }
  for (const auto& s : j.at("simplices")) {
    std::vector<int> ix = s.get<std::vector<int>>();
    std::sort(ix.begin(), ix.end());
    for (int i : ix)
      if (i < 0 || i >= static_cast<int>(k.vertices.size()))
        throw BadInput("simplex vertex index out of range");
    k.simplices.insert(ix);
  }
  // close under faces
  std::set<std::vector<int>> closed;
  for (const auto& s : k.simplices) {
    const int n = static_cast<int>(s.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> f;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) f.push_back(s[i]);
      closed.insert(std::move(f));
    }
  }
  k.simplices = std::move(closed);
  return k;
}

Json poly_to_json(const MultiPoly& p) {
  Json out;
  out["vars"] = p.num_vars();
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json t;
    t["exp"] = e;
    t["coef"] = rat_to_string(c);
    terms.push_back(t);
  }
  out["terms"] = terms;
  return out;
}

MultiPoly poly_from_json(const Json& j) {
  MultiPoly p(j.at("vars").get<int>());
  for (const auto& t : j.at("terms")) {
    Exponents e = t.at("exp").get<Exponents>();
    p.set_term(e, rat_from_string(t.at("coef").get<std::string>()));
  }
  return p;
}

Json rationalfn_to_json(const RationalFn& f) {
  Json out;
  out["num"] = poly_to_json(f.num);
  out["den"] = poly_to_json(f.den);
  out["domain"] = f.domain_tag;
  return out;
}

RationalFn rationalfn_from_json(const Json& j) {
  return {poly_from_json(j.at("num")), poly_from_json(j.at("den")),
          j.at("domain").get<std::string>()};
}

Json regular_vec_to_json(const RegularFnVector& v) {
  Json out;
  Json nums = Json::array();
  for (const auto& n : v.nums) nums.push_back(poly_to_json(n));
  out["nums"] = nums;
  out["den"] = poly_to_json(v.den);
  out["domain"] = v.domain_tag;
  return out;
}

RegularFnVector regular_vec_from_json(const Json& j) {
  RegularFnVector v;
  for (const auto& n : j.at("nums")) v.nums.push_back(poly_from_json(n));
  v.den = poly_from_json(j.at("den"));
  v.domain_tag = j.at("domain").get<std::string>();
  return v;
}

Json grassmann_point_to_json(const GrassmannPoint& g) {
  Json out;
  out["field"] = field_name(g.field);
  out["n"] = g.n;
  out["r"] = g.r;
  Json rows = Json::array();
  const int d = field_dim(g.field);
  for (int i = 0; i < g.n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < g.n; ++j) {
      Json comps = Json::array();
      const QuatR& q = g.proj.at(i, j);
      comps.push_back(rat_to_string(q.w));
      if (d > 1) comps.push_back(rat_to_string(q.x));
      if (d > 2) {
        comps.push_back(rat_to_string(q.y));
        comps.push_back(rat_to_string(q.z));
      }
      row.push_back(comps);
    }
    rows.push_back(row);
  }
  out["proj"] = rows;
  return out;
}

GrassmannPoint grassmann_point_from_json(const Json& j) {
  GrassmannPoint g;
  g.field = field_from_name(j.at("field").get<std::string>());
  g.n = j.at("n").get<int>();
  g.r = j.at("r").get<int>();
  g.proj = FMatR(g.field, g.n, g.n);
  const int d = field_dim(g.field);
  const auto& rows = j.at("proj");
  for (int i = 0; i < g.n; ++i)
    for (int k = 0; k < g.n; ++k) {
      const auto& comps = rows.at(i).at(k);
      QuatR q{};
      q.w = rat_from_string(comps.at(0).get<std::string>());
      if (d > 1) q.x = rat_from_string(comps.at(1).get<std::string>());
      if (d > 2) {
        q.y = rat_from_string(comps.at(2).get<std::string>());
        q.z = rat_from_string(comps.at(3).get<std::string>());
      }
      g.proj.at(i, k) = q;
    }
  return g;
}

Json hull_to_json(const AffineHull& h) {
  Json out;
  out["base"] = point_to_json(h.base);
  Json basis = Json::array();
  for (const auto& b : h.basis) basis.push_back(point_to_json(b));
  out["basis"] = basis;
  Json nf = Json::array();
  for (const auto& f : h.normal_forms) nf.push_back(poly_to_json(f));
  out["normal_forms"] = nf;
  Json cf = Json::array();
  for (const auto& f : h.coord_forms) cf.push_back(poly_to_json(f));
  out["coord_forms"] = cf;
  return out;
}

AffineHull hull_from_json(const Json& j) {
  AffineHull h;
  h.base = point_from_json(j.at("base"));
  for (const auto& b : j.at("basis")) h.basis.push_back(point_from_json(b));
  for (const auto& f : j.at("normal_forms"))
    h.normal_forms.push_back(poly_from_json(f));
  for (const auto& f : j.at("coord_forms"))
    h.coord_forms.push_back(poly_from_json(f));
  return h;
}

Json stratification_to_json(const Stratification& s) {
  Json out;
  out["ambient_dim"] = s.ambient_dim;
  Json levels = Json::array();
  for (const auto& level : s.source_levels) {
    Json hulls = Json::array();
    for (const auto& h : level.hulls) hulls.push_back(hull_to_json(h));
    levels.push_back(hulls);
  }
  out["filtration_levels"] = levels;
  return out;
}

Stratification stratification_from_json(const Json& j) {
  Filtration f;
  f.ambient_dim = j.at("ambient_dim").get<int>();
  for (const auto& level : j.at("filtration_levels")) {
    FiltrationLevel l;
    for (const auto& h : level) l.hulls.push_back(hull_from_json(h));
    f.levels.push_back(std::move(l));
  }
  return filtration_to_stratification(f);
}

Json certificate_to_json(const Certificate& c) {
  Json out;
  out["eps_target"] = c.eps_target;
  out["eps_achieved"] = c.eps_achieved;
  out["pitch"] = c.pitch;
  out["subdivision_depth"] = c.subdivision_depth;
  out["degree_cap_exceeded"] = c.degree_cap_exceeded;
  out["boundary_exact"] = c.boundary_exact;
  out["boundary_failures"] = c.boundary_failures;
  out["rank_margin"] = c.rank_margin;
  out["proj_defect"] = c.proj_defect;
  out["unit_norm_exact"] = c.unit_norm_exact;
  out["stratum_components"] = c.stratum_components;
  out["component_split_events"] = c.component_split_events;
  out["gluing_jump"] = c.gluing_jump;
  out["consistency"] = c.consistency;
  return out;
}

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  c.eps_target = j.at("eps_target").get<double>();
  c.eps_achieved = j.at("eps_achieved").get<double>();
  c.pitch = j.at("pitch").get<int>();
  c.subdivision_depth = j.at("subdivision_depth").get<int>();
  c.degree_cap_exceeded = j.at("degree_cap_exceeded").get<bool>();
  c.boundary_exact = j.at("boundary_exact").get<bool>();
  c.boundary_failures = j.at("boundary_failures").get<std::vector<std::string>>();
  c.rank_margin = j.at("rank_margin").get<double>();
  c.proj_defect = j.at("proj_defect").get<double>();
  c.unit_norm_exact = j.at("unit_norm_exact").get<bool>();
  c.stratum_components = j.at("stratum_components").get<int>();
  c.component_split_events = j.at("component_split_events").get<int>();
  c.gluing_jump = j.at("gluing_jump").get<double>();
  c.consistency = j.at("consistency").get<double>();
  return c;
}

Json artifact_to_json(const PiecewiseRegularMap& map, const Json& config_echo) {
  Json out;
  out["schema"] = "pwreg-artifact-v1";
  out["config"] = config_echo;
  out["complex"] = complex_to_json(map.complex);
  out["target"] = map.target.to_string();
  Json pieces;
  for (const auto& [id, piece] : map.per_simplex) {
    Json p;
    p["data"] = regular_vec_to_json(piece.vec);
    p["is_projection"] = piece.matrix_is_projection;
    p["rank"] = piece.rank;
    pieces[id] = p;
  }
  out["per_simplex"] = pieces;
  out["stratification"] = stratification_to_json(map.stratification);
  out["certificate"] = certificate_to_json(map.certificate);
  return out;
}

PiecewiseRegularMap artifact_from_json(const Json& j) {
  if (j.value("schema", "") != "pwreg-artifact-v1")
    throw BadInput("not a pwreg artifact");
  PiecewiseRegularMap map;
  map.complex = complex_from_json(j.at("complex"));
  map.target = TargetSpec::parse(j.at("target").get<std::string>());
  for (const auto& [id, p] : j.at("per_simplex").items()) {
    SimplexPiece piece;
    piece.vec = regular_vec_from_json(p.at("data"));
    piece.vec.simplex = map.complex.geometry(SimplicialComplex::parse_id(id));
    piece.matrix_is_projection = p.at("is_projection").get<bool>();
    piece.rank = p.at("rank").get<int>();
    map.per_simplex.emplace(id, std::move(piece));
  }
  map.stratification = stratification_from_json(j.at("stratification"));
  map.certificate = certificate_from_json(j.at("certificate"));
  return map;
}

std::string dump_artifact(const PiecewiseRegularMap& map,
                          const Json& config_echo) {
  return artifact_to_json(map, config_echo).dump(1);
}

Json bundle_to_json(const PWBundle& xi, const Json& config_echo) {
  Json out = artifact_to_json(xi.classifying, config_echo);
  Json ranks;
  for (const auto& [comp, r] : xi.rank_per_component)
    ranks[std::to_string(comp)] = r;
  out["bundle"]["rank_per_component"] = ranks;
  out["bundle"]["is_product"] = xi.is_product;
  return out;
}

PWBundle bundle_from_json(const Json& j) {
  return bundle_from_map(artifact_from_json(j));
}

}  // namespace pwreg
