#include "ktgraph_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ktgraph/changepoint.hpp"
#include "ktgraph/concentration.hpp"
#include "ktgraph/coverage.hpp"
#include "ktgraph/errors.hpp"
#include "ktgraph/kato_temple.hpp"
#include "ktgraph/model_io.hpp"
#include "ktgraph/three_block_test.hpp"
#include "ktgraph/version.hpp"

namespace ktg::cli {

namespace {

constexpr double kDefaultT = 2.55;

nlohmann::json load_json(const std::string& path_or_inline) { return load_json_document(path_or_inline); }

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_preamble(const nlohmann::json& config) {
  std::string out = "# ktgraph ";
  out += kVersion;
  out += "\n# config ";
  out += config.dump();
  out += "\n";
  return out;
}

nlohmann::json envelope(const std::string& command, nlohmann::json config) {
  return {{"tool", "ktgraph"}, {"version", kVersion}, {"command", command}, {"config", std::move(config)}};
}

nlohmann::json window_echo(const std::optional<std::string>& window) {
  return window ? nlohmann::json(*window) : nlohmann::json(nullptr);
}

NormSource norm_from_string(const std::string& name) {
  if (name == "empirical") return NormSource::empirical;
  if (name == "analytic") return NormSource::analytic;
  if (name == "plug_in") return NormSource::plug_in;
  throw InvalidInput("unknown norm source '" + name + "' (expected empirical, analytic or plug_in)");
}

// Spectrum of P without forming it when the model has a low-rank closed form.
Spectrum reference_spectrum(const ModelSpec& spec) {
  std::vector<double> nonzero;
  std::size_t n = 0;
  if (const auto* sbm = std::get_if<BlockModel>(&spec)) {
    const BlockSpectrum bs = sbm_block_spectrum(*sbm);
    nonzero.assign(bs.values.data(), bs.values.data() + bs.values.size());
    n = sbm->n();
  } else if (const auto* er = std::get_if<ErdosRenyiSpec>(&spec)) {
    nonzero = {static_cast<double>(er->n) * er->p};
    n = er->n;
  } else if (const auto* rdpg = std::get_if<RdpgSpec>(&spec)) {
    // Nonzero eigenvalues of X X^T are those of X^T X.
    const Eigen::MatrixXd& X = rdpg->latent_positions;
    rdpg_probability_matrix(X);
    const Spectrum small = symmetric_eigenvalues(X.transpose() * X);
    nonzero = small.values;
    n = static_cast<std::size_t>(X.rows());
  } else {
    throw InvalidInput("spike model has no eigenvalue spectrum");
  }
  Spectrum out;
  const std::size_t pad = n > nonzero.size() ? n - nonzero.size() : 0;
  out.values.assign(pad, 0.0);
  out.values.insert(out.values.end(), nonzero.begin(), nonzero.end());
  std::sort(out.values.begin(), out.values.end());
  return out;
}

double max_expected_degree(const ModelSpec& spec) {
  if (const auto* sbm = std::get_if<BlockModel>(&spec)) {
    double best = 0.0;
    for (Eigen::Index a = 0; a < sbm->B.rows(); ++a) {
      double row = 0.0;
      for (Eigen::Index b = 0; b < sbm->B.cols(); ++b) {
        row += sbm->B(a, b) * static_cast<double>(sbm->block_sizes[static_cast<std::size_t>(b)]);
      }
      best = std::max(best, row);
    }
    return best;
  }
  if (const auto* er = std::get_if<ErdosRenyiSpec>(&spec)) return static_cast<double>(er->n) * er->p;
  return probability_matrix(spec).max_expected_degree();
}

std::size_t vertex_count(const ModelSpec& spec) {
  if (const auto* sbm = std::get_if<BlockModel>(&spec)) return sbm->n();
  if (const auto* er = std::get_if<ErdosRenyiSpec>(&spec)) return er->n;
  if (const auto* rdpg = std::get_if<RdpgSpec>(&spec)) return static_cast<std::size_t>(rdpg->latent_positions.rows());
  return std::get<SpikeModelSpec>(spec).q();
}

SpectralWindow default_adjacency_window(const ModelSpec& spec) {
  return SpectralWindow(lu_peng_norm_estimate(max_expected_degree(spec)));
}

SpectralWindow default_spike_window(const SpikeModelSpec& spike) {
  const std::size_t q = spike.q();
  const SpectralNormTail tail = spectral_norm_tail(ConcentrationProfile::gaussian(), q, q, 4.0, false);
  const Spectrum reference{spike.singular_values(), SpectrumKind::singular_values};
  const std::size_t first = spike.low_multiplicity;
  return weyl_window_selection(reference, NoiseNormEstimate::analytic(tail), first,
                               first + spike.mid_multiplicity - 1);
}

void require_replicates(const RunConfig& config) {
  if (config.replicates < 1) throw InvalidInput("--replicates must be at least 1");
}

nlohmann::json base_echo(const RunConfig& config, const nlohmann::json& spec_echo) {
  return {{"spec", spec_echo}, {"seed", config.seed}};
}

}  // namespace

SpectralWindow parse_window(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw InvalidInput("--window expects 'alpha,beta' or 'alpha,inf', got '" + text + "'");
  auto parse = [&](const std::string& part) {
    if (part == "inf" || part == "+inf") return kInfinity;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size() || part.empty()) throw InvalidInput("--window has a non-numeric endpoint '" + part + "'");
    return v;
  };
  return SpectralWindow(parse(text.substr(0, comma)), parse(text.substr(comma + 1)));
}

Document cmd_bound(const RunConfig& config) {
  const ModelSpec spec = parse_model_spec(load_json(config.spec));
  const double t = config.t.value_or(kDefaultT);
  const bool spike = std::holds_alternative<SpikeModelSpec>(spec);
  const std::string norm_name = config.norm.empty() ? (spike ? "analytic" : "plug_in") : config.norm;
  const NormSource source = norm_from_string(norm_name);

  std::optional<SpectralNormTail> tail;
  std::vector<DeviationBound> bounds;
  SpectralWindow window = config.window ? parse_window(*config.window)
                          : spike       ? default_spike_window(std::get<SpikeModelSpec>(spec))
                                        : default_adjacency_window(spec);
  NoiseNormEstimate e_norm{0.0, source};
  LocalSpectrum local = [&] {
    if (spike) {
      const auto& s = std::get<SpikeModelSpec>(spec);
      return LocalSpectrum::from_spectrum(Spectrum{s.singular_values(), SpectrumKind::singular_values}, window);
    }
    return LocalSpectrum::from_spectrum(reference_spectrum(spec), window);
  }();
  const std::size_t n = vertex_count(spec);

  RandomStream rng(config.seed);
  switch (source) {
    case NormSource::analytic:
      tail = spike ? spectral_norm_tail(ConcentrationProfile::gaussian(), n, n, 4.0, false)
                   : spectral_norm_tail(ConcentrationProfile::ierm(), n, n, 1.0, true);
      e_norm = NoiseNormEstimate::analytic(*tail);
      break;
    case NormSource::plug_in:
      if (spike) throw InvalidInput("the spike model has no plug-in norm; use --norm analytic or empirical");
      e_norm = NoiseNormEstimate::plug_in(max_expected_degree(spec));
      break;
    case NormSource::empirical:
      if (spike) {
        const SpikeSample sample = spike_model_matrices(std::get<SpikeModelSpec>(spec), rng);
        e_norm = NoiseNormEstimate::empirical(spectral_norm(sample.noise));
      } else {
        const EdgeProbabilityMatrix P = probability_matrix(spec);
        const AdjacencyMatrix A = sample_adjacency(P, rng);
        e_norm = NoiseNormEstimate::empirical(symmetric_spectral_norm(A.matrix() - P.matrix()));
      }
      break;
  }

  nlohmann::json bound_docs = nlohmann::json::array();
  nlohmann::json unconditional_docs = nlohmann::json::array();
  for (std::size_t k = 1; k <= local.d(); ++k) {
    const DeviationBound b = spike ? sv_deviation_bound(k, local, t, e_norm, ConcentrationProfile::gaussian())
                                   : deviation_bound(k, local, t, e_norm);
    bounds.push_back(b);
    bound_docs.push_back(to_json(b));
    if (tail) unconditional_docs.push_back(to_json(unconditional_bound(local, t, *tail, b)));
  }

  nlohmann::json echo = base_echo(config, to_json(spec));
  echo["t"] = t;
  echo["window"] = window_echo(config.window);
  echo["norm"] = norm_name;
  Document doc;
  doc.json = envelope("bound", echo);
  doc.json["model_kind"] = model_kind(spec);
  doc.json["window"] = to_json(window);
  doc.json["reference_values"] = local.values();
  doc.json["e_norm"] = {{"value", e_norm.value}, {"source", to_string(e_norm.source)}};
  doc.json["weyl_bound"] = weyl_bound(e_norm);
  doc.json["bounds"] = bound_docs;
  if (tail) {
    doc.json["norm_tail"] = {{"threshold", tail->threshold},
                             {"probability", tail->probability},
                             {"net_eps", tail->net_eps},
                             {"c_eps", tail->c_eps}};
    doc.json["unconditional_bounds"] = unconditional_docs;
  }

  doc.csv = csv_preamble(echo) + "k,reference_value,lower,upper,zeta_minus,zeta_plus,prob_lower,prob_upper,prob_joint\n";
  for (const DeviationBound& b : bounds) {
    doc.csv += std::to_string(b.k) + "," + fmt(b.reference_value) + "," + fmt(b.lower) + "," + fmt(b.upper) + "," +
               fmt(b.zeta_minus) + "," + fmt(b.zeta_plus) + "," + fmt(b.prob_lower) + "," + fmt(b.prob_upper) + "," +
               fmt(b.prob_joint) + "\n";
  }
  return doc;
}

Document cmd_table1(const RunConfig& config) {
  std::vector<std::size_t> sizes{6000, 9000, 12000, 15000};
  double p = 0.81;
  double q = 0.2025;
  double target = 0.99;
  if (!config.spec.empty()) {
    const nlohmann::json doc = load_json(config.spec);
    try {
      if (doc.contains("sizes")) sizes = doc.at("sizes").get<std::vector<std::size_t>>();
      p = doc.value("p", p);
      q = doc.value("q", q);
      target = doc.value("target_prob", target);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidInput(std::string("bad table1 spec: ") + e.what());
    }
  }
  const nlohmann::json spec_echo = {{"sizes", sizes}, {"p", p}, {"q", q}, {"target_prob", target}};
  const std::vector<Table1Row> rows = table1(sizes, p, q, target);

  nlohmann::json echo = {{"spec", spec_echo}};
  Document doc;
  doc.json = envelope("table1", echo);
  doc.json["rows"] = nlohmann::json::array();
  for (const Table1Row& row : rows) doc.json["rows"].push_back(to_json(row));
  doc.csv = csv_preamble(echo) + table1_csv(rows);
  return doc;
}

Document cmd_validate(const RunConfig& config) {
  require_replicates(config);
  const ModelSpec spec = parse_model_spec(load_json(config.spec));
  const bool spike = std::holds_alternative<SpikeModelSpec>(spec);
  CoverageConfig cc;
  cc.t = config.t.value_or(kDefaultT);
  cc.replicates = config.replicates;
  cc.seed = config.seed;
  cc.threads = config.threads;
  const std::string norm_name = config.norm.empty() ? "empirical" : config.norm;
  cc.norm_source = norm_from_string(norm_name);

  CoverageReport report;
  if (spike) {
    const auto& s = std::get<SpikeModelSpec>(spec);
    const SpectralWindow window = config.window ? parse_window(*config.window) : default_spike_window(s);
    report = run_spike_coverage(s, window, cc);
  } else {
    const SpectralWindow window = config.window ? parse_window(*config.window) : default_adjacency_window(spec);
    report = run_coverage(probability_matrix(spec), window, cc);
  }

  nlohmann::json echo = base_echo(config, to_json(spec));
  echo["t"] = cc.t;
  echo["replicates"] = cc.replicates;
  echo["window"] = window_echo(config.window);
  echo["norm"] = norm_name;
  Document doc;
  doc.json = envelope("validate", echo);
  doc.json["coverage"] = to_json(report);

  doc.csv = csv_preamble(echo) + "k,reference_value,prob_lower,prob_upper,lower_rate,upper_rate,mean_deviation\n";
  for (const PairCoverage& pc : report.pairs) {
    doc.csv += std::to_string(pc.k) + "," + fmt(pc.reference_value) + "," + fmt(pc.prob_lower) + "," +
               fmt(pc.prob_upper) + "," + fmt(pc.lower_rate) + "," + fmt(pc.upper_rate) + "," +
               fmt(pc.mean_deviation) + "\n";
  }
  doc.csv += "# joint_coverage=" + fmt(report.joint_rate) + " nominal_joint=" + fmt(report.prob_joint) +
             " conditional_rate=" + fmt(report.conditional_rate) + "\n";
  return doc;
}

Document cmd_changepoint(const RunConfig& config) {
  require_replicates(config);
  ChangePointSpec spec;
  if (!config.spec.empty()) {
    const nlohmann::json doc = load_json(config.spec);
    try {
      if (doc.contains("kind") && doc.at("kind") != "changepoint") {
        throw InvalidInput("changepoint expects a spec of kind 'changepoint'");
      }
      spec.n = doc.value("n", spec.n);
      spec.m = doc.value("m", spec.m);
      spec.p = doc.value("p", spec.p);
      spec.signal_eps = doc.value("eps", spec.signal_eps);
      spec.T_star = doc.value("T_star", spec.T_star);
      spec.T = doc.value("T", spec.T);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidInput(std::string("bad changepoint spec: ") + e.what());
    }
  }
  spec.validate();
  const Statistic statistic = statistic_from_string(config.statistic);
  ThresholdRule rule;
  rule.kind = threshold_rule_from_string(config.rule);
  rule.level = config.level;
  rule.constant = config.constant;
  rule.calibration_replicates = config.calibration_replicates;
  const PowerReport report = changepoint_power(spec, statistic, rule, config.replicates, config.seed, config.threads);

  nlohmann::json echo = base_echo(config, to_json(spec));
  echo["replicates"] = config.replicates;
  echo["statistic"] = config.statistic;
  echo["rule"] = config.rule;
  echo["level"] = config.level;
  echo["constant"] = config.constant;
  echo["calibration_replicates"] = config.calibration_replicates;
  Document doc;
  doc.json = envelope("changepoint", echo);
  doc.json["power"] = to_json(report);
  if (statistic == Statistic::T2 || statistic == Statistic::T3 || statistic == Statistic::lambda_max) {
    doc.json["expected_shift"] = expected_shift(statistic, spec);
  }
  if (spec.m < spec.n && spec.p_eps() < 1.0) doc.json["detectability_index"] = detectability_index(spec);

  doc.csv = csv_preamble(echo) +
            "statistic,threshold,null_rejection_rate,null_stderr,alt_rejection_rate,alt_stderr\n" +
            config.statistic + "," + fmt(report.threshold) + "," + fmt(report.null_rejection_rate) + "," +
            fmt(report.null_standard_error) + "," + fmt(report.alt_rejection_rate) + "," +
            fmt(report.alt_standard_error) + "\n";
  return doc;
}

std::string render(const Document& doc, const RunConfig& config) {
  if (config.format == "csv") return doc.csv;
  return doc.json.dump(2) + "\n";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kato-Temple eigenvalue bounds for random graphs and matrices"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  RunConfig config;

  auto add_common = [&](CLI::App* sub, bool needs_spec) {
    auto* spec = sub->add_option("--spec", config.spec, "Model spec: JSON file path or inline JSON");
    if (needs_spec) spec->required();
    sub->add_option("--seed", config.seed, "Master seed");
    sub->add_option("--format", config.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", config.out, "Write the document to this path instead of stdout");
  };
  auto add_bound_options = [&](CLI::App* sub) {
    sub->add_option("--t", config.t, "Deviation scale t");
    sub->add_option("--window", config.window, "Spectral window 'alpha,beta' (beta may be inf)");
    sub->add_option("--norm", config.norm, "Noise norm source")
        ->check(CLI::IsMember({"empirical", "analytic", "plug_in"}));
  };
  auto add_replicates = [&](CLI::App* sub) {
    sub->add_option("--replicates", config.replicates, "Monte Carlo replicates");
    sub->add_option("--threads", config.threads, "Worker threads (results do not depend on it)");
  };

  CLI::App* bound = app.add_subcommand("bound", "Deviation bounds for every pair in the window");
  add_common(bound, true);
  add_bound_options(bound);

  CLI::App* table = app.add_subcommand("table1", "Separation thresholds eps_n for the three-block test");
  add_common(table, false);

  CLI::App* validate = app.add_subcommand("validate", "Monte Carlo coverage of the deviation bounds");
  add_common(validate, true);
  add_bound_options(validate);
  add_replicates(validate);

  CLI::App* change = app.add_subcommand("changepoint", "Two-sample change-point power simulation");
  add_common(change, false);
  add_replicates(change);
  change->add_option("--statistic", config.statistic, "T2, T3, max_degree, scan, lambda_max, upsilon_m, lambda_m");
  change->add_option("--rule", config.rule, "normal_quantile, empirical_null or sqrt_m_log_n");
  change->add_option("--level", config.level, "Test level");
  change->add_option("--constant", config.constant, "Constant C of the C sqrt(m log n) threshold");
  change->add_option("--calibration-replicates", config.calibration_replicates,
                     "Null replicates for the empirical_null rule (default: --replicates)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    Document doc;
    if (bound->parsed()) {
      config.command = "bound";
      doc = cmd_bound(config);
    } else if (table->parsed()) {
      config.command = "table1";
      doc = cmd_table1(config);
    } else if (validate->parsed()) {
      config.command = "validate";
      doc = cmd_validate(config);
    } else {
      config.command = "changepoint";
      doc = cmd_changepoint(config);
    }
    const std::string text = render(doc, config);
    if (config.out.empty()) {
      out << text;
    } else {
      std::ofstream file(config.out, std::ios::binary);
      if (!file) throw InvalidInput("cannot write output file '" + config.out + "'");
      file << text;
    }
    return kExitOk;
  } catch (const AdmissibilityError& e) {
    err << "error: " << e.what() << "\n";
    err << "suggestion: rerun with --t " << fmt(0.95 * e.max_admissible_t()) << "\n";
    return kExitDomainError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace ktg::cli
