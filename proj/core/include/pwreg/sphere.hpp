#pragma once

#include <functional>
#include <vector>

#include "pwreg/extend.hpp"
#include "pwreg/rationalfn.hpp"
#include "pwreg/ratlin.hpp"
#include "pwreg/simplicial.hpp"

namespace pwreg {

// Chart point a = sign * e_index on S^n together with the exact signed
// permutation taking it to the north pole e_n.
struct ChartPoint {
  int n = 0;       // sphere dimension
  int index = 0;   // 0..n
  int sign = 1;    // +1 or -1

  RatMat rotation() const;          // maps sign*e_index to e_n, orthogonal
  RatMat rotation_inverse() const;  // its transpose
  std::vector<Rational> point() const;
  std::vector<double> point_double() const;
};

// Forward stereographic projection from the chart point (exact).
// u must not be the chart point; throws ChartPole there.
std::vector<Rational> stereographic(const std::vector<Rational>& u,
                                    const ChartPoint& chart);
std::vector<double> stereographic(const std::vector<double>& u,
                                  const ChartPoint& chart);

// Inverse chart map: rho^{-1}(y) = (2y, |y|^2 - 1)/(|y|^2 + 1), rotated
// back; lands exactly on the sphere for rational input.
std::vector<Rational> inverse_stereographic(const std::vector<Rational>& y,
                                            const ChartPoint& chart);
std::vector<double> inverse_stereographic(const std::vector<double>& y,
                                          const ChartPoint& chart);

// Deterministic chart choice: the first signed basis vector (lowest index,
// + before -) at distance >= margin from every sample. Throws NoChartFound.
ChartPoint choose_chart(const std::vector<std::vector<double>>& samples,
                        double margin = 0.3);

// Snap a floating point sphere sample to an exact rational point of S^n:
// project into the farthest chart, snap the chart coordinates to dyadics,
// and map back exactly. The result satisfies sum u_i^2 = 1 exactly.
std::vector<Rational> snap_to_sphere(const std::vector<double>& u);

struct SphereApproxOptions {
  double eps = 1e-3;
  ApproxOptions fit;
  double chart_margin = 0.3;
  int cert_pitch = 32;
};

struct SphereCert {
  double eps_achieved = 0.0;  // sampled sup ambient distance to f
  double chart_margin_min = 0.0;
  bool degree_cap_exceeded = false;
  int degree_used = -1;
};

struct SphereApproxResult {
  RegularFnVector map;  // n+1 ambient components; sum num^2 == den^2 exactly
  ChartPoint chart;
  SphereCert cert;
};

// Facet data are on-sphere regular vectors (numerator-level unit identity);
// everything is composed through the chart, approximated with exact
// boundary values, and mapped back, preserving the unit-norm identity
// symbolically.
SphereApproxResult approximate_sphere_simplex(const Simplex& delta,
                                              const VectorOracle& f,
                                              const FacetData& data,
                                              const SphereApproxOptions& opt);

// Numerator-level sphere membership: sum_i num_i^2 == den^2 exactly.
bool unit_norm_identity_holds(const RegularFnVector& v);

// Chart-side composition of on-sphere data: y = rho(R u), exact.
RegularFnVector compose_with_chart(const RegularFnVector& u,
                                   const ChartPoint& chart);
// Inverse composition: ambient = R^T rho^{-1}(y), exact.
RegularFnVector compose_with_inverse_chart(const RegularFnVector& y,
                                           const ChartPoint& chart);

}  // namespace pwreg
