#include "pwreg/ratlin.hpp"

#include <cassert>
#include <cstddef>

namespace pwreg {

RatMat rat_identity(std::size_t n) {
  RatMat m(n, RatVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RatMat rat_transpose(const RatMat& a) {
  if (a.empty()) return {};
  RatMat t(a[0].size(), RatVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

RatMat rat_mul(const RatMat& a, const RatMat& b) {
  assert(!a.empty() && !b.empty() && a[0].size() == b.size());
  RatMat c(a.size(), RatVec(b[0].size(), Rational(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

RatVec rat_mul_vec(const RatMat& a, const RatVec& x) {
  RatVec y(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    assert(a[i].size() == x.size());
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  }
  return y;
}

std::size_t rat_rref(RatMat& a, std::vector<std::size_t>* pivot_cols) {
  if (pivot_cols) pivot_cols->clear();
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    if (pivot_cols) pivot_cols->push_back(c);
    ++r;
  }
  return r;
}

std::size_t rat_rank(RatMat a) { return rat_rref(a); }

std::optional<RatVec> rat_solve(const RatMat& a, const RatVec& b) {
  if (a.empty()) return RatVec{};
  const std::size_t rows = a.size(), cols = a[0].size();
  RatMat aug(rows, RatVec(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  std::vector<std::size_t> piv;
  rat_rref(aug, &piv);
  // inconsistent iff a pivot lands in the b column
  for (std::size_t c : piv)
    if (c == cols) return std::nullopt;
  RatVec x(cols, Rational(0));
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug[i][cols];
  return x;
}

std::vector<RatVec> rat_nullspace(const RatMat& a) {
  if (a.empty() || a[0].empty()) return {};
  const std::size_t cols = a[0].size();
  RatMat m = a;
  std::vector<std::size_t> piv;
  rat_rref(m, &piv);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : piv) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatMat> rat_inverse(const RatMat& a) {
  const std::size_t n = a.size();
  RatMat aug(n, RatVec(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    assert(a[i].size() == n);
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  std::vector<std::size_t> piv;
  std::size_t rank = rat_rref(aug, &piv);
  if (rank < n || piv.back() >= n) return std::nullopt;
  RatMat inv(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

namespace {

// Simplex tableau over exact rationals. Rows: constraints; the objective is
// carried separately. Bland's rule guarantees termination.
struct Tableau {
  RatMat a;                       // m x n
  RatVec b;                       // m
  RatVec cost;                    // n (objective to maximize)
  std::vector<std::size_t> basis; // m, column index basic in each row

  void pivot(std::size_t row, std::size_t col) {
    Rational inv = 1 / a[row][col];
    for (auto& v : a[row]) v *= inv;
    b[row] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= f * a[row][j];
      b[i] -= f * b[row];
    }
    basis[row] = col;
  }

  // Maximizes cost over the current feasible basis; returns false if
  // unbounded.
  bool run(const std::vector<bool>& allowed) {
    const std::size_t m = a.size(), n = cost.size();
    for (;;) {
      RatVec reduced = cost;
      RatVec y(m, Rational(0));
      for (std::size_t i = 0; i < m; ++i) y[i] = cost[basis[i]];
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i)
          if (y[i] != 0 && a[i][j] != 0) reduced[j] -= y[i] * a[i][j];
      }
      std::size_t enter = n;
      for (std::size_t j = 0; j < n; ++j)
        if (allowed[j] && reduced[j] > 0) { enter = j; break; }  // Bland
      if (enter == n) return true;
      std::size_t leave = m;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        if (a[i][enter] <= 0) continue;
        Rational ratio = b[i] / a[i][enter];
        if (leave == m || ratio < best ||
            (ratio == best && basis[i] < basis[leave]))
          { leave = i; best = ratio; }
      }
      if (leave == m) return false;
      pivot(leave, enter);
    }
  }

  Rational objective() const {
    Rational v(0);
    for (std::size_t i = 0; i < a.size(); ++i) v += cost[basis[i]] * b[i];
    return v;
  }
};

}  // namespace

LpResult lp_maximize(const RatMat& a_in, const RatVec& b_in, const RatVec& c) {
  const std::size_t m = a_in.size(), n = c.size();
  Tableau t;
  t.a.assign(m, RatVec(n + m, Rational(0)));
  t.b = b_in;
  for (std::size_t i = 0; i < m; ++i) {
    Rational sign = (b_in[i] < 0) ? Rational(-1) : Rational(1);
    for (std::size_t j = 0; j < n; ++j) t.a[i][j] = sign * a_in[i][j];
    t.b[i] = sign * b_in[i];
    t.a[i][n + i] = 1;  // artificial
  }
  t.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) t.basis[i] = n + i;

  // Phase 1: minimize artificials.
  t.cost.assign(n + m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) t.cost[n + i] = -1;
  std::vector<bool> allowed(n + m, true);
  t.run(allowed);
  if (t.objective() != 0) return {LpStatus::Infeasible, Rational(0), {}};

  // Drive any artificial still basic out of the basis (degenerate rows).
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    std::size_t enter = n;
    for (std::size_t j = 0; j < n; ++j)
      if (t.a[i][j] != 0) { enter = j; break; }
    if (enter < n) t.pivot(i, enter);
    // else the row is all zeros over the original columns: redundant.
  }

  // Phase 2: original objective, artificials frozen.
  t.cost.assign(n + m, Rational(0));
  for (std::size_t j = 0; j < n; ++j) t.cost[j] = c[j];
  for (std::size_t j = n; j < n + m; ++j) allowed[j] = false;
  if (!t.run(allowed)) return {LpStatus::Unbounded, Rational(0), {}};

  RatVec x(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (t.basis[i] < n) x[t.basis[i]] = t.b[i];
  return {LpStatus::Optimal, t.objective(), x};
}

}  // namespace pwreg
