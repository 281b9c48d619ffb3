#include "beamk/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <vector>

#include "beamk/errors.hpp"

namespace beamk::io {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON has no inf/NaN; emit them as strings rather than silently as null.
json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json envelope(const RunManifest& m) {
  json j;
  j["schema_version"] = schema_version;
  j["manifest"] = to_json(m);
  return j;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

void RunManifest::validate() const {
  for (const auto& [name, value] : tolerances.items()) {
    if (!value.is_number() || !(value.get<double>() > 0.0)) {
      throw DomainError("RunManifest: tolerance '" + name + "' must be > 0");
    }
  }
}

json to_json(const RunManifest& m) {
  return {{"subcommand", m.subcommand}, {"parameters", m.parameters}, {"input_path", m.input_path},
          {"output_path", m.output_path}, {"tolerances", m.tolerances}, {"seed", m.seed}};
}

json to_json(const BeamConfig& c) {
  return {{"E", c.E()}, {"I", c.I()}, {"k", c.k()}, {"l", c.l()}, {"alpha", c.alpha()}, {"L", c.L()}};
}

json scan_report_json(const scanner::ScanReport& r, const RunManifest& m) {
  json j = envelope(m);
  const auto& g = r.region;
  j["region"] = {{"kappa_min", g.kappa_min}, {"kappa_max", g.kappa_max}, {"L_min", g.L_min},
                 {"L_max", g.L_max},         {"n_kappa", g.n_kappa},     {"n_L", g.n_L},
                 {"refine_depth", g.refine_depth}};
  j["inverted"] = r.inverted;
  j["all_positive"] = r.all_positive;
  j["min_margin"] = finite_or_string(r.min_margin);
  j["min_margin_error_bound"] = finite_or_string(r.min_margin_error_bound);
  j["witness"] = {{"kappa", r.witness_kappa}, {"L", r.witness_L}};
  j["min_margin_below_threshold"] = finite_or_string(r.min_margin_below_threshold);
  j["cells_evaluated"] = r.cells_evaluated;
  j["cells_refined"] = r.cells_refined;
  j["cells_certified"] = r.cells_certified;
  j["samples_evaluated"] = r.samples_evaluated;
  j["max_error_bound"] = finite_or_string(r.max_error_bound);
  j["sub_reports_passed"] = r.sub_reports_passed();
  json subs = json::array();
  for (const auto& s : r.sub_reports) {
    subs.push_back({{"name", s.name},
                    {"passed", s.passed},
                    {"points", s.points},
                    {"worst", finite_or_string(s.worst)},
                    {"detail", s.detail}});
  }
  j["sub_reports"] = std::move(subs);
  return j;
}

json spectrum_summary_json(const spectral::Spectrum& s, const BeamConfig& c, const spectral::Confinement& verdict,
                           const std::optional<spectral::DecayFit>& fit, const RunManifest& m) {
  json j = envelope(m);
  j["config"] = to_json(c);
  j["n"] = s.n();
  j["lambda_1"] = s.eigenvalues.empty() ? json(nullptr) : json(s.eigenvalues.front());
  j["lambda_min"] = s.eigenvalues.empty() ? json(nullptr) : json(s.eigenvalues.back());
  j["residual_bound"] = s.residual_bound;
  j["reliable_count"] = s.reliable_count();
  j["verdict"] = verdict.confined ? "CONFINED" : "VIOLATED";
  j["confinement"] = {{"lower_limit", verdict.lower_limit}, {"upper_limit", verdict.upper_limit}};
  json violations = json::array();
  for (const auto& v : verdict.violations) violations.push_back({{"index", v.index + 1}, {"eigenvalue", v.eigenvalue}});
  j["confinement"]["violations"] = std::move(violations);
  if (fit) {
    j["decay"] = {{"slope", fit->slope}, {"r2", fit->r2}, {"n_lo", fit->n_lo}, {"n_hi", fit->n_hi}};
  } else {
    j["decay"] = nullptr;
  }
  return j;
}

json deflection_json(const deflect::DeflectionProfile& p, const BeamConfig& c, const RunManifest& m) {
  json j = envelope(m);
  j["config"] = to_json(c);
  j["solver"] = p.solver;
  j["points"] = p.x.size();
  j["iterations"] = p.iterations;
  j["residual"] = finite_or_string(p.residual);
  j["predicted_ratio"] = finite_or_string(p.predicted_ratio);
  j["observed_ratio"] = finite_or_string(p.observed_ratio);
  json hist = json::array();
  for (const auto& h : p.history) {
    hist.push_back({{"m", h.m}, {"diff_norm", h.diff_norm}, {"ratio", finite_or_string(h.ratio)}});
  }
  j["history"] = std::move(hist);
  j["warnings"] = p.warnings;
  return j;
}

std::string spectrum_csv(const spectral::Spectrum& s) {
  std::string out = "index,eigenvalue,symmetry,residual\n";
  for (std::size_t i = 0; i < s.n(); ++i) {
    out += std::to_string(i + 1) + ',' + num(s.eigenvalues[i]) + ',' + std::string(spectral::to_string(s.parity[i])) +
           ',' + num(s.residuals[i]) + '\n';
  }
  return out;
}

std::string scan_samples_csv(const scanner::ScanReport& r) {
  std::string out = "kappa,L,margin,error_bound,log_space,depth\n";
  for (const auto& s : r.samples) {
    out += num(s.kappa) + ',' + num(s.L) + ',' + num(s.margin) + ',' + num(s.error_bound) + ',' +
           (s.log_space ? "1" : "0") + ',' + std::to_string(s.depth) + '\n';
  }
  return out;
}

std::string deflection_csv(const deflect::DeflectionProfile& p) {
  std::string out = "x,u\n";
  for (std::size_t i = 0; i < p.x.size(); ++i) out += num(p.x[i]) + ',' + num(p.u[i]) + '\n';
  return out;
}

std::string iteration_csv(const deflect::DeflectionProfile& p) {
  std::string out = "m,diff_norm,ratio\n";
  for (const auto& h : p.history) out += std::to_string(h.m) + ',' + num(h.diff_norm) + ',' + num(h.ratio) + '\n';
  return out;
}

deflect::LoadProfile parse_load_csv(std::istream& in) {
  std::vector<double> xs, ws;
  std::string line;
  int lineno = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw DomainError("load CSV line " + std::to_string(lineno) + ": expected two columns 'x,w'");
    }
    const std::string a = trim(line.substr(0, comma));
    const std::string b = trim(line.substr(comma + 1));
    double x = 0.0, w = 0.0;
    if (!parse_double(a, x) || !parse_double(b, w)) {
      if (header_allowed && a == "x" && b == "w") {
        header_allowed = false;
        continue;
      }
      throw DomainError("load CSV line " + std::to_string(lineno) + ": cannot parse '" + line + "'");
    }
    header_allowed = false;
    if (!std::isfinite(x) || !std::isfinite(w)) {
      throw DomainError("load CSV line " + std::to_string(lineno) + ": non-finite value");
    }
    xs.push_back(x);
    ws.push_back(w);
  }
  if (xs.size() < 2) throw DomainError("load CSV: need at least two samples");
  const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  if (!(h > 0.0)) throw DomainError("load CSV: x must be increasing");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double expected = xs.front() + h * static_cast<double>(i);
    if (std::abs(xs[i] - expected) > 1e-6 * h) {
      throw DomainError("load CSV: x is not uniformly spaced near x = " + num(xs[i]));
    }
  }
  return {xs.front(), h, std::move(ws)};
}

deflect::LoadProfile read_load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open load file '" + path.string() + "'");
  return parse_load_csv(in);
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot rename onto '" + path.string() + "'");
  }
}

}  // namespace beamk::io
