#pragma once

#include <map>
#include <string>

#include "pwreg/pipeline.hpp"

namespace pwreg {

// Piecewise-algebraic F-vector subbundle of a trivial bundle, presented by
// its classifying map into G(F^n).
struct PWBundle {
  PiecewiseRegularMap classifying;
  std::map<int, int> rank_per_component;  // complex component -> fiber rank
  bool is_product = false;                // constant classifying map

  int n() const { return classifying.target.n; }
  Field field() const { return classifying.target.field; }
};

// Mutually inverse wrappers. bundle_from_map validates the certificate and
// recognizes product bundles; throws InvalidCertificate for uncertified or
// broken maps.
PWBundle bundle_from_map(const PiecewiseRegularMap& g);
PiecewiseRegularMap map_from_bundle(const PWBundle& xi);

// Fiber as a projection-valued point; throws OutsideDomain.
GrassmannPoint fiber_at(const PWBundle& xi, const Point& x);

// I - P per simplex, exact; ranks flip to n - r.
PWBundle orthogonal_complement(const PWBundle& xi);

// Block-diagonal sum over a shared complex; ranks add.
PWBundle whitney_sum(const PWBundle& xi, const PWBundle& eta);

// An oracle that replays a stored map exactly (its own best witness).
TargetOracle self_oracle(const PiecewiseRegularMap& map);

// Matrix representation of a candidate topological morphism of trivial
// bundles, sampled pointwise.
using MatrixOracle = std::function<FMatD(const std::vector<double>&)>;

struct MorphismOptions {
  double tau_iso = 1e-6;
  double fit_tol = 1e-2;
  int degree_cap = 8;
  int cert_pitch = 16;
};

struct PiecewiseMorphism {
  SimplicialComplex complex;
  Field field = Field::R;
  int rows = 0, cols = 0;
  std::map<std::string, SimplexPiece> per_simplex;  // packed sigma = P_eta B
  double sigma_min = 0.0;   // min over samples, restricted to fibers of xi
  double fit_residual = 0.0;
  int degree_used = 0;
};

// Prop-5.8-style algebraization: fit one global polynomial matrix B close
// to A, set sigma = rho_eta . B restricted to the fibers of xi, and certify
// sampled injectivity. Throws NotInjectiveOnFibers when the smallest
// restricted singular value drops below tau_iso.
PiecewiseMorphism algebraize_isomorphism(const PWBundle& xi,
                                         const PWBundle& eta,
                                         const MatrixOracle& a,
                                         const MorphismOptions& opt = {});

// The classifying loop of the Moebius band over a rational square loop in
// R^2: four edges with exact tangent-half-angle rotation frames, total
// turning pi. Every identity in its certificate is exact.
PWBundle make_mobius_bundle();

// Product bundle spanned by the first r basis vectors over the same
// complex shape.
PWBundle make_product_bundle(const SimplicialComplex& k, Field field, int n,
                             int r);

}  // namespace pwreg
