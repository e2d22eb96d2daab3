#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "ktgraph/graph_models.hpp"

namespace ktg {

struct ErdosRenyiSpec {
  std::size_t n = 0;
  double p = 0.0;
};

struct RdpgSpec {
  Eigen::MatrixXd latent_positions;
};

// {"kind":"sbm",...} | {"kind":"er",...} | {"kind":"rdpg",...} | {"kind":"spike",...}
using ModelSpec = std::variant<BlockModel, ErdosRenyiSpec, RdpgSpec, SpikeModelSpec>;

/// Throws InvalidInput with a diagnostic for unknown kinds, missing fields or
/// values that break the model invariants.
ModelSpec parse_model_spec(const nlohmann::json& doc);
/// Parses inline JSON text (first non-blank character '{') or the contents of
/// a file. InvalidInput on unreadable files or malformed JSON.
nlohmann::json load_json_document(const std::string& path_or_inline);

/// Accepts either inline JSON text or a file path.
ModelSpec load_model_spec(const std::string& path_or_inline);

nlohmann::json to_json(const ModelSpec& spec);
std::string model_kind(const ModelSpec& spec);

/// P for the graph models; InvalidInput for the spike model, which has no P.
EdgeProbabilityMatrix probability_matrix(const ModelSpec& spec);

}  // namespace ktg
