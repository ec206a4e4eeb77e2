#include "pwreg/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cassert>

#include "pwreg/errors.hpp"
#include "pwreg/rational.hpp"

namespace pwreg {

std::vector<Exponents> monomial_basis(int num_vars, int degree) {
  std::vector<Exponents> out;
  Exponents e(num_vars, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == num_vars) {
      out.push_back(e);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      e[pos] = v;
      rec(pos + 1, left - v);
    }
    e[pos] = 0;
  };
  for (int d = 0; d <= degree; ++d) {
    if (num_vars == 0) {
      if (d == 0) out.push_back(Exponents{});
      continue;
    }
    std::size_t before = out.size();
    rec(0, d);
    // keep only total degree exactly d for graded order
    std::vector<Exponents> grade;
    for (std::size_t i = before; i < out.size(); ++i) {
      int s = 0;
      for (auto x : out[i]) s += static_cast<int>(x);
      if (s == d) grade.push_back(out[i]);
    }
    out.resize(before);
    std::sort(grade.begin(), grade.end());
    out.insert(out.end(), grade.begin(), grade.end());
  }
  return out;
}

MultiPoly snap_to_exact(const std::vector<double>& coeffs,
                        const std::vector<Exponents>& basis, int num_vars) {
  assert(coeffs.size() == basis.size());
  MultiPoly p(num_vars);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Rational c = rat_from_double_exact(coeffs[i]);
    if (c == 0) continue;
    MultiPoly mono(num_vars);
    mono.set_term(basis[i], c);
    p += mono;
  }
  return p;
}

MultiPoly least_squares_fit(const std::vector<FitSample>& samples, int degree,
                            const MultiPoly* weight) {
  if (samples.empty()) throw RankDeficient("no samples");
  const int n = static_cast<int>(samples[0].x.size());
  auto basis = monomial_basis(n, degree);
  const std::size_t cols = basis.size();
  if (samples.size() < cols)
    throw RankDeficient("fewer samples than basis functions");

  // Centroid shift for conditioning.
  std::vector<double> centroid(n, 0.0);
  for (const auto& s : samples)
    for (int j = 0; j < n; ++j) centroid[j] += s.x[j];
  for (int j = 0; j < n; ++j) centroid[j] /= static_cast<double>(samples.size());

  Eigen::MatrixXd m(samples.size(), cols);
  Eigen::VectorXd rhs(samples.size());
  std::vector<double> u(n);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (int j = 0; j < n; ++j) u[j] = samples[i].x[j] - centroid[j];
    double w = weight ? weight->eval_double(samples[i].x) : 1.0;
    for (std::size_t b = 0; b < cols; ++b) {
      double phi = 1.0;
      for (int j = 0; j < n; ++j)
        for (std::uint32_t k = 0; k < basis[b][j]; ++k) phi *= u[j];
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b)) = w * phi;
    }
    rhs(static_cast<Eigen::Index>(i)) = samples[i].value;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(1e-10);
  if (static_cast<std::size_t>(qr.rank()) < cols)
    throw RankDeficient("sample design is singular at this degree");
  Eigen::VectorXd sol = qr.solve(rhs);

  std::vector<double> coeffs(cols);
  for (std::size_t b = 0; b < cols; ++b)
    coeffs[b] = sol(static_cast<Eigen::Index>(b));
  MultiPoly shifted = snap_to_exact(coeffs, basis, n);

  // Undo the shift exactly: p(t) = shifted(t - centroid).
  std::vector<MultiPoly> subst;
  subst.reserve(n);
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> lin(n, Rational(0));
    lin[j] = 1;
    subst.push_back(
        MultiPoly::affine(n, -rat_from_double_exact(centroid[j]), lin));
  }
  return shifted.compose(subst);
}

}  // namespace pwreg
