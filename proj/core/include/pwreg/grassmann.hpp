#pragma once

#include <functional>
#include <vector>

#include "pwreg/extend.hpp"
#include "pwreg/fit.hpp"
#include "pwreg/fmatrix.hpp"
#include "pwreg/polynomial.hpp"
#include "pwreg/rationalfn.hpp"
#include "pwreg/simplicial.hpp"

namespace pwreg {

using PolyQuat = Quat<MultiPoly>;

PolyQuat pq_zero(int num_vars);
PolyQuat pq_constant(int num_vars, const QuatR& q);
bool pq_is_zero(const PolyQuat& q);

// Matrix of quaternion-valued rational functions with one central (real)
// polynomial denominator. F = R and C ride along with vanishing components.
struct FRatMat {
  Field field = Field::R;
  int rows = 0, cols = 0;
  int num_vars = 0;
  std::vector<PolyQuat> nums;  // row-major numerators
  MultiPoly den;               // central, certified positive where used

  FRatMat() = default;
  FRatMat(Field f, int r, int c, int nv);

  PolyQuat& at(int i, int j) { return nums[i * cols + j]; }
  const PolyQuat& at(int i, int j) const { return nums[i * cols + j]; }

  static FRatMat constant(const FMatR& m, int num_vars);

  FMatR eval(const Point& x) const;  // exact; throws DenominatorZero
  FMatD eval_double(const std::vector<double>& x) const;
};

FRatMat frat_mul(const FRatMat& a, const FRatMat& b);
FRatMat frat_adjoint(const FRatMat& a);
FRatMat frat_sub(const FRatMat& a, const FRatMat& b);
// Variable substitution applied to every numerator component and the
// denominator (e.g. restriction to a hull or ambientization).
FRatMat frat_compose(const FRatMat& a, const std::vector<MultiPoly>& args,
                     int out_vars);

// Orthogonal projection onto the column span of a frame, symbolically.
// Only the frame numerators matter (the central denominator cancels).
FRatMat projection_from_frame(const FRatMat& frame);

// Exact equality as matrices of rational functions (cross-multiplied).
bool frat_equal(const FRatMat& a, const FRatMat& b);

// Flatten to / from a RegularFnVector with d(F)*rows*cols real components
// over the shared denominator. Component order: row-major entries, then
// (w,x,y,z) truncated to d(F).
RegularFnVector frat_pack(const FRatMat& m, const Simplex& s);
FRatMat frat_unpack(const RegularFnVector& v, Field field, int rows, int cols);

using GrassmannOracle =
    std::function<GrassmannPoint(const std::vector<double>&)>;

// Frame transport A(x) = P(x) A0 with A0 an orthonormal basis at the
// barycenter. Throws OscillationTooLarge when the sampled oscillation
// exceeds the bound.
struct FrameOracle {
  FMatD a0;
  std::function<FMatD(const std::vector<double>&)> frame;
  double oscillation = 0.0;
};
FrameOracle frame_on_simplex(const Simplex& delta, const GrassmannOracle& f,
                             int pitch, double osc_bound = 0.5);

struct GrassmannApproxOptions {
  double eps = 1e-2;
  ApproxOptions fit;        // inner boundary-exact fit options
  double tau_rank = 1e-8;
  double osc_bound = 0.5;
  int cert_pitch = 16;
  int retries = 2;
};

struct GrassmannCert {
  double eps_achieved = 0.0;       // max sampled span distance to f
  double rank_margin = 0.0;        // min sampled sigma_min of the frame
  double boundary_residual = 0.0;  // max ||(I - P_facet) Phi|| at samples
  bool degree_cap_exceeded = false;
  int degree_used = -1;
};

struct GrassmannApproxResult {
  FRatMat frame;  // ambient variables
  GrassmannCert cert;
};

// Per-simplex regular approximation of a Grassmann-valued map with exact
// span agreement on the boundary: fit B near the transported frame, feed
// the boundary data P_facet * B into the boundary-exact fit, and certify
// rank and span distance on a lattice.
GrassmannApproxResult approximate_grassmann_simplex(
    const Simplex& delta, const GrassmannOracle& f,
    const std::vector<FRatMat>& facet_frames,
    const GrassmannApproxOptions& opt);

// Projection (in the real embedding) onto the column span of an embedded
// frame; used for numeric span distances.
Eigen::MatrixXd embedded_span_projection(const Eigen::MatrixXd& frame);

}  // namespace pwreg
