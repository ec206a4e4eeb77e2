#pragma once

#include <map>
#include <optional>
#include <string>

#include "pwreg/grassmann.hpp"
#include "pwreg/simplicial.hpp"
#include "pwreg/sphere.hpp"

namespace pwreg {

struct TargetSpec {
  enum class Kind { Grassmann, Sphere };
  Kind kind = Kind::Sphere;
  Field field = Field::R;  // grassmann only
  int n = 1;               // grassmann: ambient F^n; sphere: S^n
  int r = 1;               // grassmann: default rank

  std::string to_string() const;
  static TargetSpec parse(const std::string& s);  // "grassmann:R:2:1" | "sphere:1"
};

// Stored per-simplex regular representative. Sphere data are the n+1
// ambient components; Grassmann data pack a frame (n x r) or projection
// (n x n) matrix over a central denominator.
struct SimplexPiece {
  RegularFnVector vec;
  bool matrix_is_projection = false;
  int rank = 0;  // grassmann only

  FRatMat unpack(const TargetSpec& t) const;
  // The projection-valued representative at an exact point.
  GrassmannPoint grassmann_at(const TargetSpec& t, const Point& x) const;
};

struct Certificate {
  double eps_target = 0.0;
  double eps_achieved = 0.0;
  int pitch = 0;
  int subdivision_depth = 0;
  bool degree_cap_exceeded = false;
  bool boundary_exact = true;
  std::vector<std::string> boundary_failures;
  double rank_margin = 0.0;   // grassmann: min sampled sigma_min of frames
  double proj_defect = 0.0;   // grassmann: max hermitian/idempotency defect
  bool unit_norm_exact = true;  // sphere: numerator-level identity
  int stratum_components = 0;
  int component_split_events = 0;
  double gluing_jump = 0.0;   // max |two-sided evaluation| gap on faces
  double consistency = 0.0;   // stratum-component representative agreement
};

struct PiecewiseRegularMap {
  SimplicialComplex complex;
  TargetSpec target;
  std::map<std::string, SimplexPiece> per_simplex;
  Stratification stratification;
  Certificate certificate;

  const SimplexPiece& piece(const std::string& id) const;
  std::vector<Rational> eval_sphere(const Point& x) const;
  GrassmannPoint eval_grassmann(const Point& x) const;
};

struct TargetOracle {
  TargetSpec spec;
  GrassmannOracle grassmann;  // set when spec.kind == Grassmann
  VectorOracle sphere;        // set when spec.kind == Sphere
};

struct PipelineOptions {
  double eps = 0.05;
  int min_degree = 2;
  int degree_step = 2;
  int degree_cap = 20;
  int subdiv_cap = 6;
  int cert_pitch = 16;
  double tau_rank = 1e-8;
  double tau_den = 1e-9;
  double chart_margin = 0.3;
  double osc_bound = 0.5;
  int jobs = 1;
};

// Smallest iterated barycentric subdivision whose per-simplex sampled
// image diameter clears the bound. Throws SubdivisionCapExceeded.
SimplicialComplex precondition_subdivide(const SimplicialComplex& k,
                                         const TargetOracle& f, double bound,
                                         int cap, int* depth_out = nullptr);

// Skeleton induction: exact snaps at the vertices, boundary-exact
// per-simplex approximations above, linear error budget across levels.
PiecewiseRegularMap approximate_complex(const SimplicialComplex& k,
                                        const TargetOracle& f,
                                        const PipelineOptions& opt);

// Recompute every certificate field at the given pitch. Throws
// CertificateMismatch (naming the field) on hard violations: broken
// boundary identities, broken unit-norm identities, component splits, or
// representative inconsistency.
Certificate certify(const PiecewiseRegularMap& map, const TargetOracle& f,
                    int pitch);

// Convenience driver: subdivide, approximate, certify.
PiecewiseRegularMap run_pipeline(const SimplicialComplex& k,
                                 const TargetOracle& f,
                                 const PipelineOptions& opt);

}  // namespace pwreg
