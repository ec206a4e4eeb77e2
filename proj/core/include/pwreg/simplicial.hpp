#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pwreg/polynomial.hpp"
#include "pwreg/ratlin.hpp"
#include "pwreg/rational.hpp"

namespace pwreg {

// Closed geometric simplex in R^m with exact rational vertex coordinates.
struct Simplex {
  std::vector<Point> vertices;  // affinely independent, ordered

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  int ambient_dim() const {
    return vertices.empty() ? 0 : static_cast<int>(vertices[0].size());
  }
  Point barycenter() const;

  // The facet opposite vertex i (dimension dim()-1).
  Simplex facet(int i) const;

  // Exact barycentric coordinates of x, or nullopt when x is off the
  // affine hull.
  std::optional<RatVec> barycentric(const Point& x) const;
  bool contains(const Point& x) const;
};

// Affine hull of a simplex: base + span(basis), together with an exact
// basis of vanishing affine forms and the hull-coordinate functions.
struct AffineHull {
  Point base;
  std::vector<Point> basis;              // hull directions, one per parameter
  std::vector<MultiPoly> normal_forms;   // affine forms in ambient vars, = 0 on hull
  std::vector<MultiPoly> coord_forms;    // hull parameters t_i as affine forms of x

  int dim() const { return static_cast<int>(basis.size()); }
  int ambient_dim() const { return static_cast<int>(base.size()); }

  bool contains(const Point& x) const;
  // Parametrization x_j(t) as affine polynomials in the hull parameters.
  std::vector<MultiPoly> param_polys() const;
  // Hull coordinates of an ambient point (exact); nullopt off the hull.
  std::optional<Point> coords_of(const Point& x) const;
  Point point_at(const Point& t) const;

  // Canonical key for exact equality of hulls (row space of normal forms).
  std::string canonical_key() const;
  // True when *this is a subset of other.
  bool contained_in(const AffineHull& other) const;
};

AffineHull affine_hull(const Simplex& s);

// Finite geometric simplicial complex: a deduplicated vertex table plus a
// face-closed set of sorted index tuples.
struct SimplicialComplex {
  int ambient_dim = 0;
  std::vector<Point> vertices;
  std::set<std::vector<int>> simplices;

  int dim() const;
  bool empty() const { return simplices.empty(); }
  Simplex geometry(const std::vector<int>& ix) const;
  std::vector<std::vector<int>> maximal_simplices() const;
  std::vector<std::vector<int>> simplices_of_dim(int d) const;

  bool contains_point(const Point& x) const;
  std::vector<std::vector<int>> containing_simplices(const Point& x) const;

  static std::string id_of(const std::vector<int>& ix);
  static std::vector<int> parse_id(const std::string& id);
};

// Face closure + exact validation (affine independence, pairwise
// intersection in a common face). Throws AffineDependence / BadIntersection.
SimplicialComplex build_complex(const std::vector<std::vector<Point>>& input);

bool complexes_equal(const SimplicialComplex& a, const SimplicialComplex& b);

SimplicialComplex skeleton(const SimplicialComplex& k, int n);

SimplicialComplex barycentric_subdivide(const SimplicialComplex& k,
                                        int iterations);

// Descending chain of hull unions; levels[0] is R^m (trivial full hull),
// levels[m+1] is empty.
struct FiltrationLevel {
  std::vector<AffineHull> hulls;
};
struct Filtration {
  int ambient_dim = 0;
  std::vector<FiltrationLevel> levels;
};

// Constructible stratum: union(positive) minus union(negative).
struct Stratum {
  std::vector<AffineHull> positive;
  std::vector<AffineHull> negative;
  bool contains(const Point& x) const;
};
struct Stratification {
  int ambient_dim = 0;
  std::vector<Stratum> strata;
  std::vector<FiltrationLevel> source_levels;  // read-back to the filtration

  // Index of the unique stratum containing x.
  int stratum_of(const Point& x) const;
};

Filtration induced_filtration(const SimplicialComplex& k);
Stratification filtration_to_stratification(const Filtration& f);
Stratification induced_stratification(const SimplicialComplex& k);

// Containment report: points are labeled by stratum and containing
// simplices, grouped into epsilon-graph components per stratum, and every
// component must fit inside a single simplex.
struct ContainmentReport {
  struct PointLabel {
    int stratum = -1;
    int component = -1;
    std::vector<std::string> simplex_ids;
  };
  struct Component {
    int stratum = -1;
    std::vector<int> point_indices;
    std::vector<std::string> shared_simplex_ids;  // nonempty when valid
  };
  std::vector<PointLabel> labels;
  std::vector<Component> components;
};

// `link_length` is the epsilon-graph edge threshold (2x sampling pitch at
// call sites). Throws ComponentSplit when a component meets two simplices
// without a common one, OutsideDomain for points off |K|.
ContainmentReport component_containment_check(const std::vector<Point>& points,
                                              const SimplicialComplex& k,
                                              const Stratification& s,
                                              double link_length);

// All barycentric lattice points of the simplex at the given pitch
// (Sum i_j = pitch over nonnegative integers).
std::vector<Point> barycentric_lattice(const Simplex& s, int pitch);

}  // namespace pwreg
