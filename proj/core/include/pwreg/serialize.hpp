#pragma once

#include <json.hpp>
#include <string>

#include "pwreg/pipeline.hpp"

namespace pwreg {

// Ordered JSON keeps artifact files byte-stable across runs.
using Json = nlohmann::ordered_json;

Json point_to_json(const Point& p);
Point point_from_json(const Json& j);

// {"ambient_dim": m, "vertices": [["p/q",...]], "simplices": [[indices]]}
Json complex_to_json(const SimplicialComplex& k);
SimplicialComplex complex_from_json(const Json& j);

// {"vars": n, "terms": [{"exp": [...], "coef": "p/q"}]}
Json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const Json& j);

// {"num": ..., "den": ..., "domain": str}
Json rationalfn_to_json(const RationalFn& f);
RationalFn rationalfn_from_json(const Json& j);

Json regular_vec_to_json(const RegularFnVector& v);
// The simplex geometry is keyed externally; callers reattach it.
RegularFnVector regular_vec_from_json(const Json& j);

// {"field": "R|C|H", "n": n, "r": r, "proj": [[[components]]]}
Json grassmann_point_to_json(const GrassmannPoint& g);
GrassmannPoint grassmann_point_from_json(const Json& j);

Json hull_to_json(const AffineHull& h);
AffineHull hull_from_json(const Json& j);
Json stratification_to_json(const Stratification& s);
Stratification stratification_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

// Full artifact: complex, target, per-simplex map data, stratification and
// certificate, plus the configuration echo.
Json artifact_to_json(const PiecewiseRegularMap& map, const Json& config_echo);
PiecewiseRegularMap artifact_from_json(const Json& j);

std::string dump_artifact(const PiecewiseRegularMap& map,
                          const Json& config_echo);

// Bundle file: the classifying-map artifact plus
// {"bundle": {"rank_per_component": {...}, "is_product": ...}}.
struct PWBundle;
Json bundle_to_json(const PWBundle& xi, const Json& config_echo);
PWBundle bundle_from_json(const Json& j);

}  // namespace pwreg
