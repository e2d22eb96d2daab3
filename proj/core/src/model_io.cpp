#include "ktgraph/model_io.hpp"

#include <fstream>
#include <sstream>

#include "ktgraph/errors.hpp"

namespace ktg {

namespace {

using nlohmann::json;

const json& field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) throw InvalidInput(std::string("model spec is missing field \"") + name + "\"");
  return *it;
}

Eigen::MatrixXd matrix_from_json(const json& rows, const char* name) {
  if (!rows.is_array() || rows.empty()) {
    throw InvalidInput(std::string("field \"") + name + "\" must be a non-empty array of rows");
  }
  const std::size_t r = rows.size();
  const std::size_t c = rows.front().is_array() ? rows.front().size() : 0;
  if (c == 0) throw InvalidInput(std::string("field \"") + name + "\" must hold non-empty rows");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  for (std::size_t i = 0; i < r; ++i) {
    if (!rows[i].is_array() || rows[i].size() != c) {
      throw InvalidInput(std::string("field \"") + name + "\" has ragged rows");
    }
    for (std::size_t j = 0; j < c; ++j) {
      if (!rows[i][j].is_number()) throw InvalidInput(std::string("field \"") + name + "\" must be numeric");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].get<double>();
    }
  }
  return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::size_t positive_count(const json& doc, const char* name) {
  const json& v = field(doc, name);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw InvalidInput(std::string("field \"") + name + "\" must be a positive integer");
  }
  return v.get<std::size_t>();
}

double number(const json& doc, const char* name) {
  const json& v = field(doc, name);
  if (!v.is_number()) throw InvalidInput(std::string("field \"") + name + "\" must be a number");
  return v.get<double>();
}

}  // namespace

ModelSpec parse_model_spec(const json& doc) {
  if (!doc.is_object()) throw InvalidInput("model spec must be a JSON object");
  const json& kind_field = field(doc, "kind");
  if (!kind_field.is_string()) throw InvalidInput("field \"kind\" must be a string");
  const auto kind = kind_field.get<std::string>();

  if (kind == "sbm") {
    BlockModel model;
    model.B = matrix_from_json(field(doc, "B"), "B");
    const json& sizes = field(doc, "block_sizes");
    if (!sizes.is_array()) throw InvalidInput("field \"block_sizes\" must be an array");
    for (const auto& s : sizes) {
      if (!s.is_number_integer() || s.get<long long>() < 1) {
        throw InvalidInput("block sizes must be positive integers");
      }
      model.block_sizes.push_back(s.get<std::size_t>());
    }
    model.validate();
    return model;
  }
  if (kind == "er") {
    ErdosRenyiSpec er{positive_count(doc, "n"), number(doc, "p")};
    if (!(er.p >= 0.0 && er.p <= 1.0)) throw InvalidInput("field \"p\" must lie in [0,1]");
    return er;
  }
  if (kind == "rdpg") {
    RdpgSpec rdpg{matrix_from_json(field(doc, "X"), "X")};
    rdpg_probability_matrix(rdpg.latent_positions);  // validates the range
    return rdpg;
  }
  if (kind == "spike") {
    SpikeModelSpec spike;
    spike.low_multiplicity = positive_count(doc, "m");
    spike.mid_multiplicity = positive_count(doc, "n");
    spike.top_multiplicity = positive_count(doc, "p");
    spike.kappa = number(doc, "kappa");
    spike.tau = number(doc, "tau");
    spike.validate();
    return spike;
  }
  throw InvalidInput("unknown model kind \"" + kind + "\" (expected sbm, er, rdpg or spike)");
}

json load_json_document(const std::string& path_or_inline) {
  std::string text;
  const auto first = path_or_inline.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && path_or_inline[first] == '{') {
    text = path_or_inline;
  } else {
    std::ifstream in(path_or_inline);
    if (!in) throw InvalidInput("cannot open spec file \"" + path_or_inline + "\"");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed spec JSON: ") + e.what());
  }
}

ModelSpec load_model_spec(const std::string& path_or_inline) {
  return parse_model_spec(load_json_document(path_or_inline));
}

json to_json(const ModelSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BlockModel>) {
          return {{"kind", "sbm"}, {"B", matrix_to_json(s.B)}, {"block_sizes", s.block_sizes}};
        } else if constexpr (std::is_same_v<T, ErdosRenyiSpec>) {
          return {{"kind", "er"}, {"n", s.n}, {"p", s.p}};
        } else if constexpr (std::is_same_v<T, RdpgSpec>) {
          return {{"kind", "rdpg"}, {"X", matrix_to_json(s.latent_positions)}};
        } else {
          return {{"kind", "spike"},
                  {"m", s.low_multiplicity},
                  {"n", s.mid_multiplicity},
                  {"p", s.top_multiplicity},
                  {"kappa", s.kappa},
                  {"tau", s.tau}};
        }
      },
      spec);
}

std::string model_kind(const ModelSpec& spec) { return to_json(spec)["kind"].get<std::string>(); }

EdgeProbabilityMatrix probability_matrix(const ModelSpec& spec) {
  if (const auto* sbm = std::get_if<BlockModel>(&spec)) return sbm_probability_matrix(*sbm);
  if (const auto* er = std::get_if<ErdosRenyiSpec>(&spec)) return erdos_renyi_probability_matrix(er->n, er->p);
  if (const auto* rdpg = std::get_if<RdpgSpec>(&spec)) return rdpg_probability_matrix(rdpg->latent_positions);
  throw InvalidInput("the spike model is a signal-plus-noise matrix model and has no edge probability matrix");
}

}  // namespace ktg
