#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ktgraph/spectral_core.hpp"

namespace ktg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDomainError = 3;

struct RunConfig {
  std::string command;
  std::string spec;  // path or inline JSON
  std::uint64_t seed = 0;
  std::size_t replicates = 500;
  std::optional<double> t;
  std::optional<std::string> window;  // "alpha,beta" or "alpha,inf"
  std::string format = "json";
  std::string out;
  unsigned threads = 1;  // never echoed: it cannot change results
  std::string norm;      // empirical | analytic | plug_in; empty picks the command default

  // changepoint
  std::string statistic = "T2";
  std::string rule = "normal_quantile";
  double level = 0.05;
  double constant = 1.0;
  std::size_t calibration_replicates = 0;
};

/// Output of one command in both renderings.
struct Document {
  nlohmann::json json;
  std::string csv;
};

SpectralWindow parse_window(const std::string& text);

Document cmd_bound(const RunConfig& config);
Document cmd_table1(const RunConfig& config);
Document cmd_validate(const RunConfig& config);
Document cmd_changepoint(const RunConfig& config);

/// JSON (indented, trailing newline) or CSV according to config.format.
std::string render(const Document& doc, const RunConfig& config);

/// Parses argv, runs the command and writes the document to `out` (or to
/// --out). Diagnostics go to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ktg::cli
