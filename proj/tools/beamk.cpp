// beamk: command-line front end for the beam-on-elastic-foundation toolkit.
//
// Exit codes: 0 success, 1 other failure, 2 usage or domain error,
// 3 inequality or confinement violation, 4 eigensolver failure,
// 5 non-contracting fixed-point map.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "beamk/charfun.hpp"
#include "beamk/config.hpp"
#include "beamk/deflect.hpp"
#include "beamk/errors.hpp"
#include "beamk/io.hpp"
#include "beamk/scanner.hpp"
#include "beamk/spectral.hpp"

namespace {

using namespace beamk;

enum Exit : int {
  ok = 0,
  failure = 1,
  usage = 2,
  violation = 3,
  eigensolver = 4,
  non_contraction = 5,
};

struct ConfigFlags {
  double E = 1.0;
  double I = 1.0;
  double k = 1.0;
  double l = 1.0;

  void add_to(CLI::App& app) {
    app.add_option("--E", E, "Young's modulus")->capture_default_str();
    app.add_option("--I", I, "Second moment of area")->capture_default_str();
    app.add_option("--k", k, "Foundation modulus")->capture_default_str();
    app.add_option("--l", l, "Half length of the beam")->capture_default_str();
  }
  BeamConfig build() const { return {E, I, k, l}; }
};

void print_value(double v) { std::printf("%.15g\n", v); }

void ensure_writable(const std::string& path) {
  if (path.empty()) return;
  const auto parent = std::filesystem::absolute(path).parent_path();
  if (!std::filesystem::is_directory(parent)) {
    throw DomainError("output directory '" + parent.string() + "' does not exist");
  }
}

unsigned default_threads() {
  if (const char* env = std::getenv("BEAMK_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring BEAMK_THREADS='" << env << "'\n";
  }
  return 1;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string function;
  std::vector<double> args;
  ConfigFlags config;
  std::optional<double> L;
  std::optional<double> alpha;
};

int run_eval(const EvalArgs& a) {
  BeamConfig cfg = a.config.build();
  if (a.alpha) {
    // alpha^4 = k / (E I): keep k, set I = 1 and solve for E.
    if (!(*a.alpha > 0.0)) throw DomainError("--alpha must be > 0");
    cfg = BeamConfig(a.config.k / std::pow(*a.alpha, 4), 1.0, a.config.k, a.config.l);
  }
  const double L = a.L.value_or(cfg.L());

  using Fn = double (*)(double, double, const BeamConfig&);
  static const std::map<std::string, Fn> table = {
      {"q", [](double x, double, const BeamConfig&) { return charfun::q(x); }},
      {"q'", [](double x, double, const BeamConfig&) { return charfun::q_prime(x); }},
      {"f", [](double x, double, const BeamConfig&) { return charfun::f(x); }},
      {"f'", [](double x, double, const BeamConfig&) { return charfun::f_prime(x); }},
      {"ghat", [](double x, double, const BeamConfig&) { return charfun::ghat(x).value; }},
      {"ghat'", [](double x, double, const BeamConfig&) { return charfun::ghat_prime(x); }},
      {"gL", [](double x, double L, const BeamConfig&) { return charfun::g(x, L); }},
      {"gL'", [](double x, double L, const BeamConfig&) { return charfun::g_prime(x, L); }},
      {"gL_inv", [](double x, double L, const BeamConfig&) { return charfun::g_inverse(x, L); }},
      {"psi", [](double x, double L, const BeamConfig&) { return charfun::psi(x, L).value; }},
      {"psi'", [](double x, double L, const BeamConfig&) { return charfun::psi_prime(x, L); }},
      {"K", [](double y, double, const BeamConfig& c) { return spectral::kernel_K(y, c); }},
      {"ghat_inv_closed", [](double t, double, const BeamConfig&) { return charfun::ghat_inverse_closed(t); }},
  };
  const auto it = table.find(a.function);
  if (it == table.end()) {
    std::string names;
    for (const auto& [name, fn] : table) names += " " + name;
    throw DomainError("unknown function '" + a.function + "'; expected one of:" + names);
  }
  for (double x : a.args) print_value(it->second(x, L, cfg));
  return ok;
}

// ---------------------------------------------------------------- scan

struct ScanArgs {
  scanner::ScanRegion region;
  bool inverted = false;
  unsigned threads = 1;
  std::string output;
  std::string samples;
};

int run_scan(const ScanArgs& a) {
  ensure_writable(a.output);
  ensure_writable(a.samples);
  a.region.validate();

  scanner::ScanOptions opts;
  opts.inverted = a.inverted;
  opts.threads = a.threads;
  opts.keep_samples = !a.samples.empty();
  const auto report = scanner::certify(a.region, opts);

  io::RunManifest m;
  m.subcommand = "scan";
  m.output_path = a.output;
  m.parameters = {{"inverted", a.inverted}, {"threads", a.threads}};
  if (!a.output.empty()) io::write_atomic(a.output, io::scan_report_json(report, m).dump(2) + "\n");
  if (!a.samples.empty()) io::write_atomic(a.samples, io::scan_samples_csv(report));

  std::printf("min_margin %.15g at kappa=%.15g L=%.15g (error bound %.3g)\n", report.min_margin,
              report.witness_kappa, report.witness_L, report.min_margin_error_bound);
  std::printf("cells %zu, refined %zu, certified %zu, samples %zu\n", report.cells_evaluated,
              report.cells_refined, report.cells_certified, report.samples_evaluated);
  for (const auto& s : report.sub_reports) {
    std::printf("  %-28s %s  worst %.6g\n", s.name.c_str(), s.passed ? "pass" : "FAIL", s.worst);
  }
  std::printf("all_positive %s\n", report.all_positive ? "true" : "false");
  return report.all_positive && report.sub_reports_passed() ? ok : violation;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
  ConfigFlags config;
  int n = 400;
  std::string rule = "gauss_legendre";
  double tol = 1e-10;
  double margin_floor = 1e-3;
  std::string output;
  std::string csv;
};

int run_spectrum(const SpectrumArgs& a) {
  ensure_writable(a.output);
  ensure_writable(a.csv);
  const BeamConfig cfg = a.config.build();
  const auto rule = parse_quadrature_rule(a.rule);
  if (a.n < 4) throw DomainError("--n must be >= 4, got " + std::to_string(a.n));

  const auto s = spectral::analyze(cfg, a.n, rule);
  const auto verdict = spectral::verify_confinement(s, cfg, a.tol, a.margin_floor);
  std::optional<spectral::DecayFit> fit;
  try {
    fit = spectral::decay_fit(s);
  } catch (const InsufficientEigenvaluesError& e) {
    std::cerr << "note: " << e.what() << "\n";
  }

  io::RunManifest m;
  m.subcommand = "spectrum";
  m.output_path = a.output;
  m.parameters = {{"n", a.n}, {"rule", a.rule}, {"config", io::to_json(cfg)}};
  m.tolerances = {{"confinement_tol", a.tol}, {"margin_floor", a.margin_floor}};
  m.validate();
  if (!a.output.empty()) {
    io::write_atomic(a.output, io::spectrum_summary_json(s, cfg, verdict, fit, m).dump(2) + "\n");
  }
  if (!a.csv.empty()) io::write_atomic(a.csv, io::spectrum_csv(s));

  std::printf("lambda_1 %.15g  verdict %s  slope %s\n", s.eigenvalues.front(),
              verdict.confined ? "CONFINED" : "VIOLATED",
              fit ? std::to_string(fit->slope).c_str() : "n/a");
  for (const auto& v : verdict.violations) {
    std::printf("  violation: lambda_%zu = %.15g outside (%.3g, %.15g)\n", v.index + 1, v.eigenvalue,
                verdict.lower_limit, verdict.upper_limit);
  }
  return verdict.confined ? ok : violation;
}

// ---------------------------------------------------------------- deflect

struct DeflectArgs {
  std::string load;
  std::string mode = "infinite";
  ConfigFlags config;
  std::string output;
  std::string metadata;
  int n = 400;
  double epsilon = 0.1;
  std::optional<double> lipschitz;
  double tol = 1e-10;
  int max_iter = 100;
};

int run_deflect(const DeflectArgs& a) {
  ensure_writable(a.output);
  const std::string meta_path = a.metadata.empty() && !a.output.empty() ? a.output + ".json" : a.metadata;
  ensure_writable(meta_path);
  const BeamConfig cfg = a.config.build();
  const auto w = io::read_load_csv(a.load);

  deflect::DeflectionProfile p;
  if (a.mode == "infinite") {
    const auto grid = deflect::default_eval_grid(w, cfg);
    p = deflect::solve_infinite(w, cfg, grid);
    p.residual = deflect::residual_ode(p, w, cfg);
    std::printf("residual %.6g\n", p.residual);
  } else if (a.mode == "operator") {
    const auto m = spectral::discretize(cfg, a.n);
    std::vector<double> load(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) load[i] = w.at(m.grid.nodes[i]);
    p.solver = "operator";
    p.x = m.grid.nodes;
    p.u = deflect::apply_operator(m, load);
  } else if (a.mode == "nonlinear") {
    auto law = deflect::FoundationLaw::cubic(cfg.k(), a.epsilon);
    if (a.lipschitz) {
      law = deflect::FoundationLaw::with_bound(law.phi, *a.lipschitz);
    }
    deflect::FixedPointOptions opts;
    opts.n = a.n;
    p = deflect::solve_nonlinear_fixed_point(w, law, cfg, a.tol, a.max_iter, opts);
    std::printf("%4s  %-14s %s\n", "m", "diff_norm", "ratio");
    for (const auto& h : p.history) std::printf("%4d  %-14.6e %.6f\n", h.m, h.diff_norm, h.ratio);
    std::printf("predicted rho %.6f, observed ratio %.6f, iterations %d\n", p.predicted_ratio,
                p.observed_ratio, p.iterations);
  } else {
    throw DomainError("--mode must be infinite, operator or nonlinear");
  }
  for (const auto& warning : p.warnings) std::cerr << "warning: " << warning << "\n";

  io::RunManifest m;
  m.subcommand = "deflect";
  m.input_path = a.load;
  m.output_path = a.output;
  m.parameters = {{"mode", a.mode}, {"n", a.n}, {"epsilon", a.epsilon}, {"config", io::to_json(cfg)}};
  if (a.lipschitz) m.parameters["lipschitz"] = *a.lipschitz;
  if (a.mode == "nonlinear") m.tolerances = {{"tol", a.tol}};
  m.validate();
  if (!a.output.empty()) io::write_atomic(a.output, io::deflection_csv(p));
  if (!meta_path.empty()) io::write_atomic(meta_path, io::deflection_json(p, cfg, m).dump(2) + "\n");
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beam on elastic foundation: characteristic functions, spectrum and deflection"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate a characteristic function");
  eval->add_option("function", eval_args.function,
                   "q, q', f, f', ghat, ghat', gL, gL', gL_inv, psi, psi', K, ghat_inv_closed")
      ->required();
  eval->add_option("args", eval_args.args, "Arguments (one value printed per argument)")->required();
  eval_args.config.add_to(*eval);
  eval->add_option("--L", eval_args.L, "Dimensionless length (default 2*sqrt(2)*l*alpha)");
  eval->add_option("--alpha", eval_args.alpha, "Set alpha directly (with --k) for K");

  ScanArgs scan_args;
  scan_args.threads = default_threads();
  auto* scan = app.add_subcommand("scan", "Certify psi_L(kappa) > q(kappa) on a region");
  scan->add_option("--kappa-min", scan_args.region.kappa_min)->capture_default_str();
  scan->add_option("--kappa-max", scan_args.region.kappa_max)->capture_default_str();
  scan->add_option("--L-min", scan_args.region.L_min)->capture_default_str();
  scan->add_option("--L-max", scan_args.region.L_max)->capture_default_str();
  scan->add_option("--n-kappa", scan_args.region.n_kappa)->capture_default_str();
  scan->add_option("--n-L", scan_args.region.n_L)->capture_default_str();
  scan->add_option("--depth", scan_args.region.refine_depth, "Refinement depth")->capture_default_str();
  scan->add_option("--threads", scan_args.threads, "Worker threads (default $BEAMK_THREADS or 1)");
  scan->add_flag("--inverted", scan_args.inverted, "Test hook: check q > psi instead (expected to fail)");
  scan->add_option("-o,--output", scan_args.output, "JSON report path");
  scan->add_option("--samples", scan_args.samples, "CSV of every evaluated sample");

  SpectrumArgs spec_args;
  auto* spectrum = app.add_subcommand("spectrum", "Nystrom spectrum and confinement check");
  spec_args.config.add_to(*spectrum);
  spectrum->add_option("--n", spec_args.n, "Quadrature nodes")->capture_default_str();
  spectrum->add_option("--rule", spec_args.rule, "gauss_legendre or composite_simpson")->capture_default_str();
  spectrum->add_option("--tol", spec_args.tol, "Allowed negative excursion")->capture_default_str();
  spectrum->add_option("--margin-floor", spec_args.margin_floor, "Required gap below 1/k, times k")
      ->capture_default_str();
  spectrum->add_option("-o,--output", spec_args.output, "JSON summary path");
  spectrum->add_option("--csv", spec_args.csv, "Eigenvalue CSV path");

  DeflectArgs def_args;
  auto* deflect_cmd = app.add_subcommand("deflect", "Beam deflection under a sampled load");
  deflect_cmd->add_option("--load", def_args.load, "Load CSV with columns x,w")->required();
  deflect_cmd->add_option("--mode", def_args.mode, "infinite, operator or nonlinear")
      ->check(CLI::IsMember({"infinite", "operator", "nonlinear"}))
      ->capture_default_str();
  def_args.config.add_to(*deflect_cmd);
  deflect_cmd->add_option("-o,--output", def_args.output, "Deflection CSV path");
  deflect_cmd->add_option("--metadata", def_args.metadata, "JSON metadata path (default <output>.json)");
  deflect_cmd->add_option("--n", def_args.n, "Nodes for operator/nonlinear modes")->capture_default_str();
  deflect_cmd->add_option("--epsilon", def_args.epsilon, "Cubic coefficient in phi = k u + eps u^3")
      ->capture_default_str();
  deflect_cmd->add_option("--lipschitz", def_args.lipschitz, "Override the Lipschitz bound of k u - phi");
  deflect_cmd->add_option("--tol", def_args.tol)->capture_default_str();
  deflect_cmd->add_option("--max-iter", def_args.max_iter)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*eval) return run_eval(eval_args);
    if (*scan) return run_scan(scan_args);
    if (*spectrum) return run_spectrum(spec_args);
    if (*deflect_cmd) return run_deflect(def_args);
  } catch (const NonContractionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return non_contraction;
  } catch (const EigenSolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return eigensolver;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return failure;
  }
  return failure;
}
