#include "pwreg/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace pwreg {

MultiPoly MultiPoly::constant(int num_vars, const Rational& c) {
  MultiPoly p(num_vars);
  if (c != 0) p.terms_[Exponents(num_vars, 0)] = c;
  return p;
}

MultiPoly MultiPoly::variable(int num_vars, int i) {
  assert(i >= 0 && i < num_vars);
  MultiPoly p(num_vars);
  Exponents e(num_vars, 0);
  e[i] = 1;
  p.terms_[e] = 1;
  return p;
}

MultiPoly MultiPoly::affine(int num_vars, const Rational& c0,
                            const std::vector<Rational>& coeffs) {
  assert(static_cast<int>(coeffs.size()) == num_vars);
  MultiPoly p = constant(num_vars, c0);
  for (int i = 0; i < num_vars; ++i) {
    if (coeffs[i] == 0) continue;
    Exponents e(num_vars, 0);
    e[i] = 1;
    p.terms_[e] = coeffs[i];
  }
  return p;
}

int MultiPoly::total_degree() const {
  int d = -1;  // degree of the zero polynomial, by convention here
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto x : e) s += static_cast<int>(x);
    d = std::max(d, s);
  }
  return d;
}

void MultiPoly::set_term(const Exponents& e, const Rational& c) {
  assert(static_cast<int>(e.size()) == num_vars_);
  if (c == 0)
    terms_.erase(e);
  else
    terms_[e] = c;
}

const Rational* MultiPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? nullptr : &it->second;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p(num_vars_);
  for (const auto& [e, c] : terms_) p.terms_[e] = -c;
  return p;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  assert(num_vars_ == o.num_vars_);
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  assert(num_vars_ == o.num_vars_);
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_[e] = -c;
    } else {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  assert(a.num_vars_ == b.num_vars_);
  MultiPoly p(a.num_vars_);
  Exponents e(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.num_vars_; ++i) e[i] = ea[i] + eb[i];
      Rational prod = ca * cb;
      auto it = p.terms_.find(e);
      if (it == p.terms_.end()) {
        p.terms_.emplace(e, std::move(prod));
      } else {
        it->second += prod;
        if (it->second == 0) p.terms_.erase(it);
      }
    }
  }
  return p;
}

MultiPoly& MultiPoly::scale(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly MultiPoly::pow(std::uint32_t e) const {
  MultiPoly r = constant(num_vars_, 1);
  MultiPoly base = *this;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Rational MultiPoly::eval(const Point& x) const {
  assert(static_cast<int>(x.size()) == num_vars_);
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < num_vars_; ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= x[i];
    acc += t;
  }
  return acc;
}

double MultiPoly::eval_double(const std::vector<double>& x) const {
  assert(static_cast<int>(x.size()) == num_vars_);
  double acc = 0;
  for (const auto& [e, c] : terms_) {
    double t = rat_to_double(c);
    for (int i = 0; i < num_vars_; ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= x[i];
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::compose(const std::vector<MultiPoly>& args,
                             int out_vars) const {
  assert(static_cast<int>(args.size()) == num_vars_);
  if (!args.empty()) out_vars = args[0].num_vars();
  assert(out_vars >= 0);
  for ([[maybe_unused]] const auto& a : args)
    assert(a.num_vars() == out_vars);

  // Power cache per substituted variable.
  std::vector<std::vector<MultiPoly>> pw(num_vars_);
  for (int i = 0; i < num_vars_; ++i)
    pw[i].push_back(MultiPoly::constant(out_vars, 1));

  auto power = [&](int i, std::uint32_t k) -> const MultiPoly& {
    while (pw[i].size() <= k) pw[i].push_back(pw[i].back() * args[i]);
    return pw[i][k];
  };

  MultiPoly out(out_vars);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = MultiPoly::constant(out_vars, c);
    for (int i = 0; i < num_vars_; ++i)
      if (e[i] > 0) term = term * power(i, e[i]);
    out += term;
  }
  return out;
}

std::string MultiPoly::to_string(
    const std::vector<std::string>& var_names) const {
  if (terms_.empty()) return "0";
  auto name = [&](int i) {
    if (i < static_cast<int>(var_names.size())) return var_names[i];
    return "x" + std::to_string(i);
  };
  std::ostringstream os;
  bool first = true;
  // Highest-degree first reads better in reports.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational a = c;
    if (first) {
      if (a < 0) { os << "-"; a = -a; }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool any_var = false;
    for (auto x : e)
      if (x > 0) any_var = true;
    if (a != 1 || !any_var) os << rat_to_string(a);
    bool star = (a != 1 || !any_var);
    for (int i = 0; i < num_vars_; ++i) {
      if (e[i] == 0) continue;
      if (star) os << "*";
      os << name(i);
      if (e[i] > 1) os << "^" << e[i];
      star = true;
    }
  }
  return os.str();
}

std::optional<MultiPoly> divide_by_affine(const MultiPoly& f,
                                          const MultiPoly& ell) {
  const int n = f.num_vars();
  if (ell.num_vars() != n || ell.total_degree() > 1) return std::nullopt;
  if (ell.is_zero()) return std::nullopt;

  // Linear coefficients of ell.
  Rational c0(0);
  std::vector<Rational> lin(n, Rational(0));
  for (const auto& [e, c] : ell.terms()) {
    int which = -1;
    for (int i = 0; i < n; ++i)
      if (e[i] == 1) which = i;
    if (which < 0)
      c0 = c;
    else
      lin[which] = c;
  }

  int pivot = -1;
  for (int i = 0; i < n; ++i)
    if (lin[i] != 0) { pivot = i; break; }

  if (pivot < 0) {
    // Constant divisor.
    MultiPoly q = f;
    q.scale(1 / c0);
    return q;
  }

  // Change coordinates u_pivot = ell(t), u_j = t_j; divide by u_pivot there.
  std::vector<MultiPoly> t_of_u(n);
  for (int j = 0; j < n; ++j) {
    if (j != pivot) {
      t_of_u[j] = MultiPoly::variable(n, j);
      continue;
    }
    std::vector<Rational> coeffs(n, Rational(0));
    coeffs[pivot] = 1 / lin[pivot];
    for (int k = 0; k < n; ++k)
      if (k != pivot) coeffs[k] = -lin[k] / lin[pivot];
    t_of_u[j] = MultiPoly::affine(n, -c0 / lin[pivot], coeffs);
  }
  MultiPoly g = f.compose(t_of_u);

  MultiPoly h(n);
  for (const auto& [e, c] : g.terms()) {
    if (e[pivot] == 0) return std::nullopt;  // remainder present
    Exponents e2 = e;
    e2[pivot] -= 1;
    h.set_term(e2, c);
  }

  std::vector<MultiPoly> u_of_t(n);
  for (int j = 0; j < n; ++j)
    u_of_t[j] = (j == pivot) ? ell : MultiPoly::variable(n, j);
  return h.compose(u_of_t);
}

std::optional<MultiPoly> divide_by_affine_product(
    const MultiPoly& f, const std::vector<MultiPoly>& ells) {
  MultiPoly q = f;
  for (const auto& ell : ells) {
    auto next = divide_by_affine(q, ell);
    if (!next) return std::nullopt;
    q = std::move(*next);
  }
  return q;
}

}  // namespace pwreg
