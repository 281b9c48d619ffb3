#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "beamk/config.hpp"
#include "beamk/deflect.hpp"
#include "beamk/scanner.hpp"
#include "beamk/spectral.hpp"

namespace beamk::io {

/// Bumped whenever a report field changes meaning or disappears.
inline constexpr int schema_version = 1;

/// Everything needed to rerun a command; embedded in every JSON report.
struct RunManifest {
  std::string subcommand;
  nlohmann::json parameters = nlohmann::json::object();
  std::string input_path;
  std::string output_path;
  /// name -> value; every value must be > 0.
  nlohmann::json tolerances = nlohmann::json::object();
  std::uint64_t seed = 0;

  /// Throws DomainError on a non-positive tolerance.
  void validate() const;
};

nlohmann::json to_json(const RunManifest& m);
nlohmann::json to_json(const BeamConfig& c);

nlohmann::json scan_report_json(const scanner::ScanReport& r, const RunManifest& m);

nlohmann::json spectrum_summary_json(const spectral::Spectrum& s, const BeamConfig& c,
                                     const spectral::Confinement& verdict,
                                     const std::optional<spectral::DecayFit>& fit, const RunManifest& m);

nlohmann::json deflection_json(const deflect::DeflectionProfile& p, const BeamConfig& c, const RunManifest& m);

/// index,eigenvalue,symmetry,residual (1-based index).
std::string spectrum_csv(const spectral::Spectrum& s);
/// kappa,L,margin,error_bound,log_space,depth
std::string scan_samples_csv(const scanner::ScanReport& r);
/// x,u
std::string deflection_csv(const deflect::DeflectionProfile& p);
/// m,diff_norm,ratio
std::string iteration_csv(const deflect::DeflectionProfile& p);

/// Reads `x,w` rows (optional header, '#' comments). x must be uniformly
/// spaced. Throws DomainError with the offending line on malformed input.
deflect::LoadProfile parse_load_csv(std::istream& in);
deflect::LoadProfile read_load_csv(const std::filesystem::path& path);

/// Writes to a sibling temp file and renames over `path`, so readers never see
/// a partial file. Throws std::runtime_error on I/O failure.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace beamk::io
