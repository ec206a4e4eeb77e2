#include "pwreg/oracles.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pwreg/serialize.hpp"
#include "pwreg/sphere.hpp"

namespace pwreg {

namespace {

std::vector<std::string> split_spec(const std::string& s) {
  std::vector<std::string> parts;
  std::istringstream is(s);
  std::string part;
  while (std::getline(is, part, ':')) parts.push_back(part);
  return parts;
}

double param(const std::vector<std::string>& parts, std::size_t i,
             double fallback) {
  if (i >= parts.size()) return fallback;
  return std::stod(parts[i]);
}

std::vector<double> centroid_of(const SimplicialComplex& k) {
  std::vector<double> c(k.ambient_dim, 0.0);
  if (k.vertices.empty()) return c;
  for (const auto& v : k.vertices) {
    auto vd = point_to_doubles(v);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += vd[i];
  }
  for (auto& x : c) x /= static_cast<double>(k.vertices.size());
  return c;
}

GrassmannPoint line_point(double c, double s) {
  FMatD p(Field::R, 2, 2);
  p.at(0, 0) = QuatD::real(c * c);
  p.at(0, 1) = QuatD::real(c * s);
  p.at(1, 0) = QuatD::real(c * s);
  p.at(1, 1) = QuatD::real(s * s);
  GrassmannPoint g;
  g.field = Field::R;
  g.n = 2;
  g.r = 1;
  g.proj = fmat_snap_exact(p);
  return g;
}

// Small deterministic coefficient stream for the seeded families.
struct SeededCoeffs {
  std::uint64_t state;
  explicit SeededCoeffs(std::uint64_t seed) : state(seed * 6364136223846793005ULL + 1442695040888963407ULL) {}
  double next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    // dyadic in [-1/4, 1/4] with 8 bits
    int v = static_cast<int>((state >> 33) & 0xff) - 128;
    return v / 512.0;
  }
};

}  // namespace

TargetOracle make_oracle(const std::string& spec, const TargetSpec& target,
                         const SimplicialComplex& domain) {
  auto parts = split_spec(spec);
  if (parts.empty()) throw BadInput("empty oracle spec");
  const std::string& name = parts[0];
  TargetOracle out;
  out.spec = target;

  if (name == "table") {
    if (parts.size() < 2) throw BadInput("table:<path> expected");
    std::ifstream in(parts[1]);
    if (!in) throw BadInput("cannot open oracle table " + parts[1]);
    std::stringstream buf;
    buf << in.rdbuf();
    return make_table_oracle(buf.str(), target);
  }

  if (target.kind == TargetSpec::Kind::Sphere) {
    const int n = target.n;
    if (name == "radial") {
      std::vector<double> c = centroid_of(domain);
      for (std::size_t i = 1; i < parts.size() && i - 1 < c.size(); ++i)
        c[i - 1] = std::stod(parts[i]);
      if (static_cast<int>(c.size()) != n + 1)
        throw BadInput("radial needs ambient dim == sphere dim + 1");
      out.sphere = [c](const std::vector<double>& x) {
        std::vector<double> v(x.size());
        double norm = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          v[i] = x[i] - c[i];
          norm += v[i] * v[i];
        }
        norm = std::sqrt(norm);
        for (auto& t : v) t /= norm;
        return v;
      };
      return out;
    }
    if (name == "greatcircle") {
      double rate = param(parts, 1, M_PI);
      double off = param(parts, 2, 0.0);
      out.sphere = [rate, off, n](const std::vector<double>& x) {
        std::vector<double> v(n + 1, 0.0);
        v[0] = std::cos(rate * x[0] + off);
        v[1] = std::sin(rate * x[0] + off);
        return v;
      };
      return out;
    }
    if (name == "loopangle") {
      // Uniform-speed angle along the boundary loop of the domain.
      double rate = param(parts, 1, 2 * M_PI);
      auto edges = domain.simplices_of_dim(1);
      std::map<int, std::vector<int>> adj;
      for (const auto& e : edges) {
        adj[e[0]].push_back(e[1]);
        adj[e[1]].push_back(e[0]);
      }
      for (const auto& [v, nb] : adj)
        if (nb.size() != 2)
          throw BadInput("loopangle needs a single closed edge loop");
      int start = adj.begin()->first;
      std::vector<int> loop = {start};
      int prev = -1, cur = start;
      do {
        const auto& nb = adj.at(cur);
        int next = (nb[0] == prev) ? nb[1] : nb[0];
        prev = cur;
        cur = next;
        loop.push_back(cur);
      } while (cur != start);
      std::vector<std::vector<double>> pts;
      for (int v : loop) pts.push_back(point_to_doubles(domain.vertices[v]));
      std::vector<double> cum = {0.0};
      for (std::size_t i = 1; i < pts.size(); ++i) {
        double len = 0;
        for (std::size_t c = 0; c < pts[i].size(); ++c) {
          double d = pts[i][c] - pts[i - 1][c];
          len += d * d;
        }
        cum.push_back(cum.back() + std::sqrt(len));
      }
      double total = cum.back();
      out.sphere = [pts, cum, total, rate, n](const std::vector<double>& x) {
        // nearest point on the loop, as a length fraction
        double best_d = std::numeric_limits<double>::infinity();
        double best_t = 0;
        for (std::size_t i = 1; i < pts.size(); ++i) {
          double vv = 0, vx = 0;
          for (std::size_t c = 0; c < x.size(); ++c) {
            double dir = pts[i][c] - pts[i - 1][c];
            vv += dir * dir;
            vx += dir * (x[c] - pts[i - 1][c]);
          }
          double s = std::clamp(vx / vv, 0.0, 1.0);
          double d2 = 0;
          for (std::size_t c = 0; c < x.size(); ++c) {
            double p = pts[i - 1][c] + s * (pts[i][c] - pts[i - 1][c]);
            d2 += (x[c] - p) * (x[c] - p);
          }
          if (d2 < best_d) {
            best_d = d2;
            best_t = (cum[i - 1] + s * (cum[i] - cum[i - 1])) / total;
          }
        }
        std::vector<double> v(n + 1, 0.0);
        v[0] = std::cos(rate * best_t);
        v[1] = std::sin(rate * best_t);
        return v;
      };
      return out;
    }
    if (name == "chartaffine") {
      std::uint64_t seed = static_cast<std::uint64_t>(param(parts, 1, 1.0));
      const int m = domain.ambient_dim;
      SeededCoeffs coeffs(seed);
      std::vector<std::vector<double>> a(n, std::vector<double>(m));
      std::vector<double> b(n);
      for (int i = 0; i < n; ++i) {
        b[i] = coeffs.next();
        for (int j = 0; j < m; ++j) a[i][j] = coeffs.next();
      }
      ChartPoint chart{n, n, 1};
      out.sphere = [a, b, n, chart](const std::vector<double>& x) {
        std::vector<double> y(n);
        for (int i = 0; i < n; ++i) {
          y[i] = b[i];
          for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
        }
        return inverse_stereographic(y, chart);
      };
      return out;
    }
    if (name == "constpoint") {
      int i = parts.size() > 1 ? std::stoi(parts[1]) : 0;
      int sign = parts.size() > 2 ? std::stoi(parts[2]) : 1;
      out.sphere = [i, sign, n](const std::vector<double>&) {
        std::vector<double> v(n + 1, 0.0);
        v[i] = sign;
        return v;
      };
      return out;
    }
    throw BadInput("unknown sphere oracle: " + name);
  }

  // Grassmann families.
  const int n = target.n, r = target.r;
  if (name == "constgrass") {
    FMatR frame(target.field, n, r);
    for (int j = 0; j < r; ++j) frame.at(j, j) = QuatR::real(Rational(1));
    GrassmannPoint g = column_span_projection(frame);
    out.grassmann = [g](const std::vector<double>&) { return g; };
    return out;
  }
  if (name == "rotline") {
    if (n != 2 || target.field != Field::R)
      throw BadInput("rotline targets grassmann:R:2:1");
    double rate = param(parts, 1, M_PI);
    double off = param(parts, 2, 0.0);
    out.grassmann = [rate, off](const std::vector<double>& x) {
      double th = rate * x[0] + off;
      return line_point(std::cos(th), std::sin(th));
    };
    return out;
  }
  if (name == "mobius") {
    if (n != 2 || target.field != Field::R)
      throw BadInput("mobius targets grassmann:R:2:1");
    std::vector<double> c = centroid_of(domain);
    out.grassmann = [c](const std::vector<double>& x) {
      double th = std::atan2(x[1] - c[1], x[0] - c[0]);
      if (th < 0) th += 2 * M_PI;
      double half = th / 2;
      return line_point(std::cos(half), std::sin(half));
    };
    return out;
  }
  if (name == "qline") {
    if (target.field != Field::H || n != 2)
      throw BadInput("qline targets grassmann:H:2:1");
    double rate = param(parts, 1, 1.0);
    out.grassmann = [rate](const std::vector<double>& x) {
      double c = std::cos(rate * x[0]), s = std::sin(rate * x[0]);
      FMatD frame(Field::H, 2, 1);
      frame.at(0, 0) = QuatD::real(c);
      frame.at(1, 0) = QuatD{0.0, s, 0.0, 0.0};
      return column_span_projection(fmat_snap_exact(frame));
    };
    return out;
  }
  if (name == "rotline3") {
    if (n != 3 || target.field != Field::R)
      throw BadInput("rotline3 targets grassmann:R:3:1");
    double rate = param(parts, 1, 1.0);
    out.grassmann = [rate](const std::vector<double>& x) {
      double c = std::cos(rate * x[0]), s = std::sin(rate * x[0]);
      FMatD frame(Field::R, 3, 1);
      frame.at(0, 0) = QuatD::real(c);
      frame.at(1, 0) = QuatD::real(s);
      frame.at(2, 0) = QuatD::real(0.0);
      return column_span_projection(fmat_snap_exact(frame));
    };
    return out;
  }
  if (name == "chartframe") {
    std::uint64_t seed = static_cast<std::uint64_t>(param(parts, 1, 1.0));
    const int m = domain.ambient_dim;
    const int dF = field_dim(target.field);
    SeededCoeffs coeffs(seed);
    // frame = identity block + small affine perturbation, always full rank
    std::vector<std::vector<std::vector<double>>> lin(
        n, std::vector<std::vector<double>>(r * dF, std::vector<double>(m)));
    std::vector<std::vector<double>> base(n, std::vector<double>(r * dF, 0.0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < r * dF; ++j) {
        base[i][j] = coeffs.next() * 0.5;
        for (int c = 0; c < m; ++c) lin[i][j][c] = coeffs.next() * 0.5;
      }
    for (int j = 0; j < r; ++j) base[j][j * dF] += 1.0;  // dominant block
    Field fld = target.field;
    out.grassmann = [base, lin, n, r, dF, fld](const std::vector<double>& x) {
      FMatD frame(fld, n, r);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < r; ++j) {
          double comp[4] = {0, 0, 0, 0};
          for (int c = 0; c < dF; ++c) {
            double v = base[i][j * dF + c];
            for (std::size_t t = 0; t < x.size(); ++t)
              v += lin[i][j * dF + c][t] * x[t];
            comp[c] = v;
          }
          frame.at(i, j) = QuatD{comp[0], comp[1], comp[2], comp[3]};
        }
      return column_span_projection(fmat_snap_exact(frame));
    };
    return out;
  }
  throw BadInput("unknown grassmann oracle: " + name);
}

TargetOracle make_table_oracle(const std::string& json_text,
                               const TargetSpec& target) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  SimplicialComplex k = complex_from_json(j.at("complex"));
  std::vector<std::vector<double>> values =
      j.at("values").get<std::vector<std::vector<double>>>();
  if (values.size() != k.vertices.size())
    throw BadInput("oracle table needs one value row per vertex");

  auto maxima = k.maximal_simplices();
  auto interpolate = [k, values, maxima](const std::vector<double>& x) {
    // PL interpolation: locate a containing simplex by least-squares
    // barycentric coordinates with a tolerance.
    const double tol = 1e-9;
    for (const auto& s : maxima) {
      Simplex geo = k.geometry(s);
      const int p = static_cast<int>(s.size());
      Eigen::MatrixXd a(x.size() + 1, p);
      Eigen::VectorXd b(x.size() + 1);
      for (std::size_t i = 0; i < x.size(); ++i) {
        for (int j2 = 0; j2 < p; ++j2)
          a(i, j2) = rat_to_double(geo.vertices[j2][i]);
        b(i) = x[i];
      }
      for (int j2 = 0; j2 < p; ++j2) a(x.size(), j2) = 1.0;
      b(x.size()) = 1.0;
      Eigen::VectorXd lam = a.colPivHouseholderQr().solve(b);
      if ((a * lam - b).norm() > tol) continue;
      if (lam.minCoeff() < -tol) continue;
      std::vector<double> out(values[0].size(), 0.0);
      for (int j2 = 0; j2 < p; ++j2)
        for (std::size_t c = 0; c < out.size(); ++c)
          out[c] += lam(j2) * values[s[j2]][c];
      return out;
    }
    throw OutsideDomain("table oracle queried outside its complex");
  };

  TargetOracle out;
  out.spec = target;
  if (target.kind == TargetSpec::Kind::Sphere) {
    out.sphere = [interpolate](const std::vector<double>& x) {
      auto v = interpolate(x);
      double norm = 0;
      for (double c : v) norm += c * c;
      norm = std::sqrt(norm);
      for (auto& c : v) c /= norm;
      return v;
    };
    return out;
  }
  const int n = target.n, r = target.r;
  const int dF = field_dim(target.field);
  Field fld = target.field;
  out.grassmann = [interpolate, n, r, dF, fld](const std::vector<double>& x) {
    auto v = interpolate(x);
    if (static_cast<int>(v.size()) != dF * n * r)
      throw BadInput("table oracle frame has wrong component count");
    FMatD frame(fld, n, r);
    int idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < r; ++j) {
        double comp[4] = {0, 0, 0, 0};
        for (int c = 0; c < dF; ++c) comp[c] = v[idx++];
        frame.at(i, j) = QuatD{comp[0], comp[1], comp[2], comp[3]};
      }
    return column_span_projection(fmat_snap_exact(frame));
  };
  return out;
}

}  // namespace pwreg
