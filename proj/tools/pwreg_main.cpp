// pwreg: certified piecewise-regular approximation toolkit.
//
// Subcommands: approximate, stratify, subdivide, verify, bundle-iso, report.
// Exit codes: 0 ok, 1 construction failure, 2 verification failure,
// 3 bad input.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pwreg/bundles.hpp"
#include "pwreg/oracles.hpp"
#include "pwreg/pipeline.hpp"
#include "pwreg/serialize.hpp"

using namespace pwreg;

namespace {

struct CommonFlags {
  std::string input;
  std::string target = "sphere:1";
  std::string oracle = "radial";
  std::string out;
  std::string report_path;
  double eps = 0.05;
  int degree_cap = 20;
  int subdiv_cap = 6;
  int pitch = 16;
  double tau_rank = 1e-8;
  double tau_den = 1e-9;
  double tau_iso = 1e-6;
  double chart_margin = 0.3;
  double osc_bound = 0.5;
  int jobs = 1;
  std::uint64_t seed = 1;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw BadInput("cannot write " + path);
  out << text;
}

Json config_echo(const std::string& command, const CommonFlags& f,
                 const Json& input_complex) {
  Json cfg;
  cfg["command"] = command;
  cfg["target"] = f.target;
  cfg["oracle"] = f.oracle;
  cfg["eps"] = f.eps;
  cfg["degree_cap"] = f.degree_cap;
  cfg["subdiv_cap"] = f.subdiv_cap;
  cfg["pitch"] = f.pitch;
  cfg["tau_rank"] = f.tau_rank;
  cfg["tau_den"] = f.tau_den;
  cfg["tau_iso"] = f.tau_iso;
  cfg["chart_margin"] = f.chart_margin;
  cfg["osc_bound"] = f.osc_bound;
  cfg["seed"] = f.seed;
  cfg["input_complex"] = input_complex;
  return cfg;
}

PipelineOptions pipeline_options(const CommonFlags& f) {
  PipelineOptions opt;
  opt.eps = f.eps;
  opt.degree_cap = f.degree_cap;
  opt.subdiv_cap = f.subdiv_cap;
  opt.cert_pitch = f.pitch;
  opt.tau_rank = f.tau_rank;
  opt.tau_den = f.tau_den;
  opt.chart_margin = f.chart_margin;
  opt.osc_bound = f.osc_bound;
  opt.jobs = f.jobs;
  return opt;
}

std::string certificate_report(const std::string& command,
                               const CommonFlags& f, const Certificate& c) {
  std::ostringstream os;
  os << "pwreg " << command << " report\n";
  os << "  target:             " << f.target << "\n";
  os << "  oracle:             " << f.oracle << "\n";
  os << "  eps target:         " << f.eps << "\n";
  os << "  eps achieved:       " << c.eps_achieved << "\n";
  os << "  pitch:              " << c.pitch << "\n";
  os << "  subdivision depth:  " << c.subdivision_depth << "\n";
  os << "  degree cap:         " << f.degree_cap
     << (c.degree_cap_exceeded ? " (exceeded)" : "") << "\n";
  os << "  subdiv cap:         " << f.subdiv_cap << "\n";
  os << "  boundary exact:     " << (c.boundary_exact ? "yes" : "NO") << "\n";
  os << "  unit norm exact:    " << (c.unit_norm_exact ? "yes" : "NO") << "\n";
  os << "  rank margin:        " << c.rank_margin << "\n";
  os << "  proj defect:        " << c.proj_defect << "\n";
  os << "  gluing jump:        " << c.gluing_jump << "\n";
  os << "  stratum components: " << c.stratum_components << "\n";
  os << "  component splits:   " << c.component_split_events << "\n";
  os << "  consistency:        " << c.consistency << "\n";
  os << "  tolerances: tau_rank=" << f.tau_rank << " tau_den=" << f.tau_den
     << " tau_iso=" << f.tau_iso << " chart_margin=" << f.chart_margin
     << " osc_bound=" << f.osc_bound << "\n";
  return os.str();
}

bool certificate_valid(const Certificate& c) {
  if (!c.boundary_exact || !c.unit_norm_exact) return false;
  if (c.component_split_events != 0) return false;
  if (!c.degree_cap_exceeded && c.eps_achieved > c.eps_target) return false;
  return true;
}

int run_approximate(const CommonFlags& f) {
  Json complex_json = read_json_file(f.input);
  SimplicialComplex k = complex_from_json(complex_json);
  TargetSpec target = TargetSpec::parse(f.target);
  TargetOracle oracle = make_oracle(f.oracle, target, k);
  PiecewiseRegularMap map = run_pipeline(k, oracle, pipeline_options(f));
  Json cfg = config_echo("approximate", f, complex_json);
  std::string artifact = dump_artifact(map, cfg);
  if (!f.out.empty()) write_text_file(f.out, artifact);
  std::string report = certificate_report("approximate", f, map.certificate);
  std::cout << report;
  if (!f.report_path.empty()) write_text_file(f.report_path, report);
  return certificate_valid(map.certificate) ? 0 : 1;
}

int run_stratify(const CommonFlags& f) {
  Json complex_json = read_json_file(f.input);
  SimplicialComplex k = complex_from_json(complex_json);
  Stratification s = induced_stratification(k);
  Json out;
  out["schema"] = "pwreg-stratification-v1";
  out["stratification"] = stratification_to_json(s);
  if (!f.out.empty()) write_text_file(f.out, out.dump(1));
  std::vector<std::string> axis_names;
  for (int i = 0; i < k.ambient_dim; ++i)
    axis_names.push_back("x" + std::to_string(i));
  int idx = 0;
  for (const auto& st : s.strata) {
    if (st.positive.empty()) continue;
    std::cout << "stratum " << idx++ << ":\n";
    std::cout << "  union of " << st.positive.size() << " hull(s):\n";
    for (const auto& h : st.positive) {
      if (h.normal_forms.empty()) {
        std::cout << "    R^" << k.ambient_dim << "\n";
        continue;
      }
      std::cout << "    { ";
      for (std::size_t i = 0; i < h.normal_forms.size(); ++i) {
        if (i) std::cout << ", ";
        std::cout << h.normal_forms[i].to_string(axis_names) << " = 0";
      }
      std::cout << " }\n";
    }
    std::cout << "  minus " << st.negative.size() << " hull(s)\n";
  }
  return 0;
}

int run_subdivide(const CommonFlags& f, int iterations, bool precondition) {
  Json complex_json = read_json_file(f.input);
  SimplicialComplex k = complex_from_json(complex_json);
  SimplicialComplex out_k;
  int depth = 0;
  if (precondition) {
    TargetSpec target = TargetSpec::parse(f.target);
    TargetOracle oracle = make_oracle(f.oracle, target, k);
    out_k =
        precondition_subdivide(k, oracle, f.osc_bound, f.subdiv_cap, &depth);
  } else {
    out_k = barycentric_subdivide(k, iterations);
    depth = iterations;
  }
  Json out = complex_to_json(out_k);
  if (!f.out.empty()) write_text_file(f.out, out.dump(1));
  std::cout << "subdivision depth " << depth << ", " << out_k.simplices.size()
            << " simplices\n";
  return 0;
}

int run_verify(const CommonFlags& f) {
  Json artifact = read_json_file(f.input);
  PiecewiseRegularMap map = artifact_from_json(artifact);
  const Json& cfg = artifact.at("config");
  std::string oracle_spec = f.oracle == "from-artifact"
                                ? cfg.at("oracle").get<std::string>()
                                : f.oracle;
  SimplicialComplex domain = complex_from_json(cfg.at("input_complex"));
  TargetOracle oracle = make_oracle(oracle_spec, map.target, domain);
  int pitch = f.pitch > 0 ? f.pitch : map.certificate.pitch;
  Certificate re = certify(map, oracle, pitch);
  std::cout << "stored eps_achieved:     " << map.certificate.eps_achieved
            << "\n";
  std::cout << "recomputed eps_achieved: " << re.eps_achieved << " at pitch "
            << pitch << "\n";
  std::cout << "boundary exact:          "
            << (re.boundary_exact ? "yes" : "NO") << "\n";
  re.eps_target = map.certificate.eps_target;
  re.degree_cap_exceeded = map.certificate.degree_cap_exceeded;
  bool ok = certificate_valid(re);
  std::cout << (ok ? "VERIFIED" : "MISMATCH") << "\n";
  return ok ? 0 : 2;
}

int run_bundle_iso(const CommonFlags& f, const std::string& xi_spec,
                   const std::string& eta_spec,
                   const std::string& morphism_spec) {
  auto load_bundle = [&](const std::string& spec) -> PWBundle {
    if (spec == "mobius") return make_mobius_bundle();
    if (spec.rfind("product:", 0) == 0) {
      std::istringstream is(spec.substr(8));
      int n = 2, r = 1;
      char colon;
      is >> n >> colon >> r;
      PWBundle mob = make_mobius_bundle();
      return make_product_bundle(mob.classifying.complex, Field::R, n, r);
    }
    if (spec.rfind("artifact:", 0) == 0) {
      Json j = read_json_file(spec.substr(9));
      return bundle_from_map(artifact_from_json(j));
    }
    throw BadInput("unknown bundle spec: " + spec);
  };
  PWBundle xi = load_bundle(xi_spec);
  PWBundle eta = load_bundle(eta_spec);

  MatrixOracle a;
  if (morphism_spec == "identity") {
    const int rows = eta.n(), cols = xi.n();
    a = [rows, cols](const std::vector<double>&) {
      FMatD m(Field::R, rows, cols);
      for (int i = 0; i < std::min(rows, cols); ++i)
        m.at(i, i) = QuatD::real(1.0);
      return m;
    };
  } else if (morphism_spec.rfind("rotation:", 0) == 0) {
    double th = std::stod(morphism_spec.substr(9));
    a = [th](const std::vector<double>&) {
      FMatD m(Field::R, 2, 2);
      m.at(0, 0) = QuatD::real(std::cos(th));
      m.at(0, 1) = QuatD::real(-std::sin(th));
      m.at(1, 0) = QuatD::real(std::sin(th));
      m.at(1, 1) = QuatD::real(std::cos(th));
      return m;
    };
  } else {
    throw BadInput("unknown morphism spec: " + morphism_spec);
  }

  MorphismOptions opt;
  opt.tau_iso = f.tau_iso;
  opt.cert_pitch = f.pitch;
  PiecewiseMorphism sigma = algebraize_isomorphism(xi, eta, a, opt);
  std::cout << "sigma_min:    " << sigma.sigma_min << "\n";
  std::cout << "fit residual: " << sigma.fit_residual << "\n";
  std::cout << "fit degree:   " << sigma.degree_used << "\n";
  if (!f.out.empty()) {
    Json out;
    out["schema"] = "pwreg-morphism-v1";
    out["field"] = field_name(sigma.field);
    out["rows"] = sigma.rows;
    out["cols"] = sigma.cols;
    Json pieces;
    for (const auto& [id, piece] : sigma.per_simplex)
      pieces[id] = regular_vec_to_json(piece.vec);
    out["per_simplex"] = pieces;
    out["certificate"]["sigma_min"] = sigma.sigma_min;
    out["certificate"]["fit_residual"] = sigma.fit_residual;
    out["certificate"]["degree"] = sigma.degree_used;
    out["certificate"]["tau_iso"] = f.tau_iso;
    write_text_file(f.out, out.dump(1));
  }
  return 0;
}

int run_report(const CommonFlags& f, const std::string& csv_path) {
  Json artifact = read_json_file(f.input);
  PiecewiseRegularMap map = artifact_from_json(artifact);
  const Certificate& c = map.certificate;
  std::ostringstream os;
  os << "field,value\n";
  os << "eps_target," << c.eps_target << "\n";
  os << "eps_achieved," << c.eps_achieved << "\n";
  os << "pitch," << c.pitch << "\n";
  os << "subdivision_depth," << c.subdivision_depth << "\n";
  os << "degree_cap_exceeded," << c.degree_cap_exceeded << "\n";
  os << "boundary_exact," << c.boundary_exact << "\n";
  os << "unit_norm_exact," << c.unit_norm_exact << "\n";
  os << "rank_margin," << c.rank_margin << "\n";
  os << "proj_defect," << c.proj_defect << "\n";
  os << "gluing_jump," << c.gluing_jump << "\n";
  os << "stratum_components," << c.stratum_components << "\n";
  os << "component_split_events," << c.component_split_events << "\n";
  os << "consistency," << c.consistency << "\n";
  if (csv_path.empty())
    std::cout << os.str();
  else
    write_text_file(csv_path, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified piecewise-regular approximation toolkit"};
  app.require_subcommand(1);

  CommonFlags f;
  int iterations = 1;
  bool precondition = false;
  std::string xi_spec = "mobius", eta_spec = "product:2:1",
              morphism_spec = "identity", csv_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input", f.input, "input file")->required();
    cmd->add_option("--target", f.target, "sphere:n | grassmann:F:n:r");
    cmd->add_option("--oracle", f.oracle,
                    "oracle family or table:<path>");
    cmd->add_option("--eps", f.eps, "target sup error");
    cmd->add_option("--degree-cap", f.degree_cap, "max fit degree");
    cmd->add_option("--subdiv-cap", f.subdiv_cap, "max subdivision depth");
    cmd->add_option("--pitch", f.pitch, "certificate lattice pitch");
    cmd->add_option("--tau-rank", f.tau_rank, "frame rank tolerance");
    cmd->add_option("--tau-den", f.tau_den, "denominator margin");
    cmd->add_option("--tau-iso", f.tau_iso, "morphism injectivity tolerance");
    cmd->add_option("--chart-margin", f.chart_margin, "sphere chart margin");
    cmd->add_option("--osc-bound", f.osc_bound,
                    "subdivision oscillation bound");
    cmd->add_option("--out", f.out, "output file");
    cmd->add_option("--report", f.report_path, "also write the report here");
    cmd->add_option("--jobs", f.jobs, "parallel per-simplex workers");
    cmd->add_option("--seed", f.seed, "seed for seeded oracle families");
  };

  CLI::App* approx =
      app.add_subcommand("approximate", "build a certified piecewise-regular map");
  add_common(approx);
  CLI::App* strat =
      app.add_subcommand("stratify", "induced filtration/stratification");
  add_common(strat);
  CLI::App* subdiv = app.add_subcommand("subdivide", "barycentric subdivision");
  add_common(subdiv);
  subdiv->add_option("--iterations", iterations, "fixed iteration count");
  subdiv->add_flag("--precondition", precondition,
                   "subdivide until the oracle oscillation clears the bound");

  CLI::App* verify = app.add_subcommand("verify", "re-certify an artifact");
  verify->add_option("--input", f.input, "artifact file")->required();
  std::string verify_oracle = "from-artifact";
  int verify_pitch = 0;
  verify->add_option("--oracle", verify_oracle, "override the recorded oracle");
  verify->add_option("--pitch", verify_pitch, "re-certification pitch");

  CLI::App* biso =
      app.add_subcommand("bundle-iso", "algebraize a bundle isomorphism");
  biso->add_option("--xi", xi_spec, "mobius | product:n:r | artifact:<path>");
  biso->add_option("--eta", eta_spec, "mobius | product:n:r | artifact:<path>");
  biso->add_option("--morphism", morphism_spec, "identity | rotation:<angle>");
  biso->add_option("--tau-iso", f.tau_iso, "injectivity tolerance");
  biso->add_option("--pitch", f.pitch, "certificate pitch");
  biso->add_option("--out", f.out, "morphism JSON output");

  CLI::App* report = app.add_subcommand("report", "dump certificate as CSV");
  report->add_option("--input", f.input, "artifact file")->required();
  report->add_option("--csv", csv_path, "CSV output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (approx->parsed()) return run_approximate(f);
    if (strat->parsed()) return run_stratify(f);
    if (subdiv->parsed()) return run_subdivide(f, iterations, precondition);
    if (verify->parsed()) {
      f.oracle = verify_oracle;
      f.pitch = verify_pitch;
      return run_verify(f);
    }
    if (biso->parsed())
      return run_bundle_iso(f, xi_spec, eta_spec, morphism_spec);
    if (report->parsed()) return run_report(f, csv_path);
  } catch (const BadInput& e) {
    Json err;
    err["error"] = e.kind();
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    Json err;
    err["error"] = "BadInput";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 3;
  } catch (const CertificateMismatch& e) {
    Json err;
    err["error"] = e.kind();
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const NotInjectiveOnFibers& e) {
    Json err;
    err["error"] = e.kind();
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    Json err;
    err["error"] = e.kind();
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = "Unexpected";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 3;
}
