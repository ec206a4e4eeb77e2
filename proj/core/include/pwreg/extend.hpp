#pragma once

#include <functional>
#include <vector>

#include "pwreg/rationalfn.hpp"
#include "pwreg/simplicial.hpp"

namespace pwreg {

// Compatible per-facet boundary data for a d-simplex: entry i belongs to
// the facet opposite vertex i, in ambient coordinates.
struct FacetData {
  std::vector<RegularFnVector> facets;
};

// Continuous target, evaluated pointwise in doubles.
using VectorOracle =
    std::function<std::vector<double>(const std::vector<double>&)>;

struct ExtendOptions {
  int cert_pitch = 64;
  double den_margin = 1e-9;
};

// Throws IncompatibleFacetData unless all cross-restrictions to shared-face
// hulls agree exactly.
void check_facet_compatibility(const Simplex& delta, const FacetData& data);

// Regular extension of compatible facet data: the result restricts to each
// facet exactly (symbolically, after clearing the shared denominator).
// Facet-by-facet exact division scheme; throws IncompatibleFacetData when a
// division leaves a remainder, DenominatorVanishes when the combined
// denominator fails its positivity certificate on the simplex.
RegularFnVector extend_from_boundary(const Simplex& delta,
                                     const FacetData& data,
                                     const ExtendOptions& opt = {});

struct ApproxOptions {
  double eps = 1e-3;
  int min_degree = 2;
  int degree_step = 2;
  int degree_cap = 20;
  int fit_pitch_factor = 4;  // fit lattice pitch = factor * degree
  int cert_pitch = 64;
  double den_margin = 1e-9;
};

struct ApproxReport {
  double achieved_error = 0.0;
  int degree_used = -1;  // -1: the pure extension already met the target
  bool degree_cap_exceeded = false;
  double boundary_mismatch = 0.0;  // sup |data - f| over facet samples
  std::vector<double> errors_by_degree;
};

// Boundary-exact approximation g = extension + q * p with q the face-ideal
// generator; the q-term vanishes identically on the boundary, so the
// restriction of g to every facet equals the facet data symbolically.
RegularFnVector approximate_on_simplex(const Simplex& delta,
                                       const VectorOracle& f,
                                       const FacetData& data,
                                       const ApproxOptions& opt,
                                       ApproxReport* report = nullptr);

// Max over the barycentric lattice of |f - g|_inf. Throws DenominatorZero
// if the stored denominator fails to be positive at a sample.
double sup_error_estimate(const RegularFnVector& g, const VectorOracle& f,
                          const Simplex& delta, int pitch);

}  // namespace pwreg
