#include "pwreg/fmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pwreg {

Field field_from_name(const std::string& s) {
  if (s == "R") return Field::R;
  if (s == "C") return Field::C;
  if (s == "H") return Field::H;
  throw BadInput("unknown field tag: " + s);
}

FMatD fmat_to_double(const FMatR& a) {
  FMatD d(a.field, a.rows, a.cols);
  for (std::size_t i = 0; i < a.e.size(); ++i) d.e[i] = quat_to_double(a.e[i]);
  return d;
}

FMatR fmat_snap_exact(const FMatD& a) {
  FMatR r(a.field, a.rows, a.cols);
  for (std::size_t i = 0; i < a.e.size(); ++i)
    r.e[i] = quat_from_double_exact(a.e[i]);
  return r;
}

FMatR fmat_solve(const FMatR& g, const FMatR& b) {
  if (g.rows != g.cols || g.rows != b.rows || g.field != b.field)
    throw ShapeMismatch("fmat_solve shape");
  const int n = g.rows;
  // Augmented system: for each column of b, solve sum_j w_j G_ij = b_i.
  // Row operations multiply an equation by a quaternion on the right.
  FMatR a = g;
  FMatR rhs = b;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;

  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (!a.at(i, col).is_zero()) { piv = i; break; }
    if (piv < 0) throw RankDeficient("singular matrix in fmat_solve");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
      for (int j = 0; j < rhs.cols; ++j)
        std::swap(rhs.at(piv, j), rhs.at(col, j));
    }
    QuatR pivot_inv = quat_inverse(a.at(col, col));
    for (int i = col + 1; i < n; ++i) {
      if (a.at(i, col).is_zero()) continue;
      QuatR f = pivot_inv * a.at(i, col);
      // eq_i -= eq_col * f  (right multiplication)
      for (int j = col; j < n; ++j)
        a.at(i, j) = a.at(i, j) - a.at(col, j) * f;
      for (int j = 0; j < rhs.cols; ++j)
        rhs.at(i, j) = rhs.at(i, j) - rhs.at(col, j) * f;
    }
  }

  // Back substitution: w_i = (b_i - sum_{j>i} w_j a_ij) * a_ii^{-1}.
  FMatR w(g.field, n, rhs.cols);
  for (int k = 0; k < rhs.cols; ++k) {
    for (int i = n - 1; i >= 0; --i) {
      QuatR acc = rhs.at(i, k);
      for (int j = i + 1; j < n; ++j) acc = acc - w.at(j, k) * a.at(i, j);
      w.at(i, k) = acc * quat_inverse(a.at(i, i));
    }
  }
  return w;
}

FMatR fmat_inverse(const FMatR& g) {
  return fmat_solve(g, FMatR::identity(g.field, g.rows));
}

namespace {

// Matrix of q -> q*a on real coordinates (w,x,y,z), truncated to d(F).
void write_block(Eigen::MatrixXd& m, int bi, int bj, const QuatD& a, int d) {
  double full[4][4] = {{a.w, -a.x, -a.y, -a.z},
                       {a.x, a.w, a.z, -a.y},
                       {a.y, -a.z, a.w, a.x},
                       {a.z, a.y, -a.x, a.w}};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(bi * d + i, bj * d + j) = full[i][j];
}

}  // namespace

Eigen::MatrixXd embed_real(const FMatD& a) {
  const int d = field_dim(a.field);
  Eigen::MatrixXd m(a.rows * d, a.cols * d);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) write_block(m, i, j, a.at(i, j), d);
  return m;
}

Eigen::MatrixXd embed_real(const FMatR& a) { return embed_real(fmat_to_double(a)); }

double fmat_sigma_min(const FMatD& a) {
  if (a.cols == 0 || a.rows == 0)
    return std::numeric_limits<double>::infinity();
  Eigen::MatrixXd m = embed_real(a);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().minCoeff();
}

double fmat_op_norm(const FMatD& a) {
  if (a.cols == 0 || a.rows == 0) return 0.0;
  Eigen::MatrixXd m = embed_real(a);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().maxCoeff();
}

double GrassmannPoint::defect() const {
  FMatD p = fmat_to_double(proj);
  double d = fmat_op_norm(fmat_sub(p, fmat_adjoint(p)));
  d = std::max(d, fmat_op_norm(fmat_sub(fmat_mul(p, p), p)));
  double tr = 0;
  for (int i = 0; i < p.rows; ++i) tr += p.at(i, i).w;
  d = std::max(d, std::abs(tr - r));
  return d;
}

GrassmannPoint column_span_projection(const FMatR& a, double tau_rank) {
  if (!a.field_components_valid())
    throw BadInput("matrix entries outside the tagged field");
  double smin = fmat_sigma_min(fmat_to_double(a));
  if (smin <= tau_rank)
    throw RankDeficient("frame sigma_min " + std::to_string(smin) +
                        " below tau_rank");
  FMatR astar = fmat_adjoint(a);
  FMatR gram = fmat_mul(astar, a);
  FMatR ginv = fmat_inverse(gram);
  GrassmannPoint p;
  p.field = a.field;
  p.n = a.rows;
  p.r = a.cols;
  p.proj = fmat_mul(fmat_mul(a, ginv), astar);
  return p;
}

double grassmann_distance(const GrassmannPoint& p, const GrassmannPoint& q) {
  if (p.n != q.n || p.field != q.field)
    throw ShapeMismatch("grassmann_distance between different ambient spaces");
  return fmat_op_norm(fmat_to_double(fmat_sub(p.proj, q.proj)));
}

FMatD orthonormal_range_frame(const FMatD& proj, int r) {
  const int n = proj.rows;
  // Candidate spanning set: the columns of the projection.
  std::vector<std::vector<QuatD>> cols(n, std::vector<QuatD>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) cols[j][i] = proj.at(i, j);

  auto inner = [&](const std::vector<QuatD>& x, const std::vector<QuatD>& y) {
    QuatD acc{};
    for (int i = 0; i < n; ++i) acc = acc + x[i] * y[i].conj();
    return acc;
  };
  auto norm = [&](const std::vector<QuatD>& x) {
    return std::sqrt(inner(x, x).w);
  };

  std::vector<std::vector<QuatD>> basis;
  std::vector<bool> used(n, false);
  while (static_cast<int>(basis.size()) < r) {
    int best = -1;
    double best_norm = 0;
    std::vector<QuatD> best_res;
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      std::vector<QuatD> res = cols[j];
      for (const auto& u : basis) {
        QuatD c = inner(res, u);
        for (int i = 0; i < n; ++i) res[i] = res[i] - c * u[i];
      }
      double nn = norm(res);
      if (nn > best_norm) {
        best_norm = nn;
        best = j;
        best_res = std::move(res);
      }
    }
    if (best < 0 || best_norm < 1e-12)
      throw RankDeficient("projection has rank below requested frame size");
    used[best] = true;
    double inv = 1.0 / best_norm;
    for (auto& q : best_res)
      q = QuatD{q.w * inv, q.x * inv, q.y * inv, q.z * inv};
    basis.push_back(std::move(best_res));
  }

  FMatD frame(proj.field, n, r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < n; ++i) frame.at(i, j) = basis[j][i];
  return frame;
}

}  // namespace pwreg
