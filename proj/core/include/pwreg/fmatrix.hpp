#pragma once

#include <Eigen/Dense>
#include <cassert>
#include <string>
#include <vector>

#include "pwreg/errors.hpp"
#include "pwreg/rational.hpp"

namespace pwreg {

enum class Field { R, C, H };

inline int field_dim(Field f) {
  switch (f) {
    case Field::R: return 1;
    case Field::C: return 2;
    default: return 4;
  }
}

inline std::string field_name(Field f) {
  switch (f) {
    case Field::R: return "R";
    case Field::C: return "C";
    default: return "H";
  }
}

Field field_from_name(const std::string& s);

// Quaternion over a commutative coefficient ring T. R and C embed as the
// subrings with vanishing (x,y,z) resp. (y,z) parts, so one implementation
// serves all three fields.
template <class T>
struct Quat {
  T w{}, x{}, y{}, z{};

  static Quat real(const T& v) { return {v, T{}, T{}, T{}}; }

  Quat operator+(const Quat& o) const {
    return {w + o.w, x + o.x, y + o.y, z + o.z};
  }
  Quat operator-(const Quat& o) const {
    return {w - o.w, x - o.x, y - o.y, z - o.z};
  }
  Quat operator-() const { return {-w, -x, -y, -z}; }
  Quat operator*(const Quat& o) const {  // Hamilton product
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }
  Quat conj() const { return {w, -x, -y, -z}; }
  T norm2() const { return w * w + x * x + y * y + z * z; }
  bool operator==(const Quat& o) const {
    return w == o.w && x == o.x && y == o.y && z == o.z;
  }
  bool is_zero() const { return *this == Quat{}; }
};

using QuatR = Quat<Rational>;
using QuatD = Quat<double>;

inline QuatR quat_inverse(const QuatR& q) {
  Rational n = q.norm2();
  if (n == 0) throw RankDeficient("inverting a zero quaternion");
  QuatR c = q.conj();
  Rational inv = 1 / n;
  return {c.w * inv, c.x * inv, c.y * inv, c.z * inv};
}

inline QuatD quat_to_double(const QuatR& q) {
  return {rat_to_double(q.w), rat_to_double(q.x), rat_to_double(q.y),
          rat_to_double(q.z)};
}
inline QuatR quat_from_double_exact(const QuatD& q) {
  return {rat_from_double_exact(q.w), rat_from_double_exact(q.x),
          rat_from_double_exact(q.y), rat_from_double_exact(q.z)};
}

// Matrix over F. Row-major entries; the linear map is
//   apply(A, x)_i = sum_j x_j a_ij     (left F-module convention)
// and the product follows (AB)_ik = sum_j b_jk a_ij, so L_{AB} = L_A o L_B.
template <class T>
struct FMat {
  Field field = Field::R;
  int rows = 0, cols = 0;
  std::vector<Quat<T>> e;

  FMat() = default;
  FMat(Field f, int r, int c) : field(f), rows(r), cols(c), e(r * c) {}

  Quat<T>& at(int i, int j) { return e[i * cols + j]; }
  const Quat<T>& at(int i, int j) const { return e[i * cols + j]; }

  static FMat identity(Field f, int n) {
    FMat m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Quat<T>::real(T(1));
    return m;
  }

  bool field_components_valid() const {
    for (const auto& q : e) {
      if (field == Field::R && !(q.x == T{} && q.y == T{} && q.z == T{}))
        return false;
      if (field == Field::C && !(q.y == T{} && q.z == T{})) return false;
    }
    return true;
  }

  bool operator==(const FMat& o) const {
    return field == o.field && rows == o.rows && cols == o.cols && e == o.e;
  }
};

using FMatR = FMat<Rational>;
using FMatD = FMat<double>;

template <class T>
FMat<T> fmat_mul(const FMat<T>& a, const FMat<T>& b) {
  if (a.cols != b.rows || a.field != b.field)
    throw ShapeMismatch("fmat_mul: " + std::to_string(a.rows) + "x" +
                        std::to_string(a.cols) + " times " +
                        std::to_string(b.rows) + "x" + std::to_string(b.cols));
  FMat<T> c(a.field, a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < b.cols; ++k) {
      Quat<T> acc{};
      for (int j = 0; j < a.cols; ++j)
        acc = acc + b.at(j, k) * a.at(i, j);
      c.at(i, k) = acc;
    }
  return c;
}

template <class T>
std::vector<Quat<T>> fmat_apply(const FMat<T>& a,
                                const std::vector<Quat<T>>& x) {
  assert(static_cast<int>(x.size()) == a.cols);
  std::vector<Quat<T>> y(a.rows);
  for (int i = 0; i < a.rows; ++i) {
    Quat<T> acc{};
    for (int j = 0; j < a.cols; ++j) acc = acc + x[j] * a.at(i, j);
    y[i] = acc;
  }
  return y;
}

template <class T>
FMat<T> fmat_adjoint(const FMat<T>& a) {
  FMat<T> t(a.field, a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j).conj();
  return t;
}

template <class T>
FMat<T> fmat_add(const FMat<T>& a, const FMat<T>& b) {
  assert(a.rows == b.rows && a.cols == b.cols && a.field == b.field);
  FMat<T> c = a;
  for (std::size_t i = 0; i < c.e.size(); ++i) c.e[i] = c.e[i] + b.e[i];
  return c;
}

template <class T>
FMat<T> fmat_sub(const FMat<T>& a, const FMat<T>& b) {
  assert(a.rows == b.rows && a.cols == b.cols && a.field == b.field);
  FMat<T> c = a;
  for (std::size_t i = 0; i < c.e.size(); ++i) c.e[i] = c.e[i] - b.e[i];
  return c;
}

FMatD fmat_to_double(const FMatR& a);
FMatR fmat_snap_exact(const FMatD& a);

// Exact solve of apply(G, w_col) = b_col for every column of b; G square.
// Gaussian elimination over the division ring.
FMatR fmat_solve(const FMatR& g, const FMatR& b);
FMatR fmat_inverse(const FMatR& g);

// Real embedding of the induced R-linear map; block (i,j) is the matrix of
// q -> q * a_ij on R^{d(F)}. Multiplicative for the left-module product.
Eigen::MatrixXd embed_real(const FMatD& a);
Eigen::MatrixXd embed_real(const FMatR& a);

double fmat_sigma_min(const FMatD& a);
double fmat_op_norm(const FMatD& a);

// Point of G_r(F^n) as an n x n projection matrix. Exact constructions give
// exactly hermitian idempotent entries; snapped oracle values satisfy the
// tolerance below.
struct GrassmannPoint {
  Field field = Field::R;
  int n = 0, r = 0;
  FMatR proj;

  static constexpr double kProjTolerance = 1e-10;
  // max violation of hermitian/idempotent/trace conditions (double scale)
  double defect() const;
  bool valid() const { return defect() <= kProjTolerance; }
};

// proj = A (A*A)^{-1} A*, exact. Throws RankDeficient when sigma_min of the
// embedded frame is below tau_rank.
GrassmannPoint column_span_projection(const FMatR& a, double tau_rank = 1e-8);

// Operator 2-norm of P.proj - Q.proj in the real embedding.
double grassmann_distance(const GrassmannPoint& p, const GrassmannPoint& q);

// Orthonormal (left-module) frame for the range of a projection, computed
// in doubles by modified Gram-Schmidt on the columns.
FMatD orthonormal_range_frame(const FMatD& proj, int r);

}  // namespace pwreg
