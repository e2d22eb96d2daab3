#include "ktgraph/coverage.hpp"

#include <algorithm>
#include <cmath>

#include "ktgraph/errors.hpp"
#include "ktgraph/parallel.hpp"

namespace ktg {

namespace {

struct ReplicateOutcome {
  bool conditional = false;
  bool admissible = true;
  double noise_norm = 0.0;
  std::vector<double> matched;  // perturbed values at the reference ranks, ascending
  std::vector<char> lower_ok;
  std::vector<char> upper_ok;
  std::vector<double> upper_excess;
  std::vector<double> lower_deficit;
};

template <typename BoundFn>
void evaluate_bounds(ReplicateOutcome& out, std::size_t d, BoundFn&& bound_for) {
  out.lower_ok.assign(d, 0);
  out.upper_ok.assign(d, 0);
  out.upper_excess.assign(d, 0.0);
  out.lower_deficit.assign(d, 0.0);
  for (std::size_t k = 1; k <= d; ++k) {
    try {
      const DeviationBound b = bound_for(k);
      const double observed = out.matched[k - 1];
      out.lower_ok[k - 1] = observed >= b.lower;
      out.upper_ok[k - 1] = observed <= b.upper;
      out.upper_excess[k - 1] = b.t + b.zeta_plus;
      out.lower_deficit[k - 1] = b.t + b.zeta_minus;
    } catch (const AdmissibilityError&) {
      // A realized norm can push t past the admissible range; the bound then
      // says nothing and the replicate counts as uncovered.
      out.admissible = false;
    }
  }
}

std::vector<double> values_at(const Spectrum& spectrum, const std::vector<std::size_t>& indices) {
  std::vector<double> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(spectrum.values[i]);
  return out;
}

template <typename NominalFn>
CoverageReport aggregate(const std::vector<ReplicateOutcome>& outcomes, const LocalSpectrum& local,
                         const CoverageConfig& config, std::size_t n, NominalFn&& nominal) {
  const std::size_t d = local.d();
  CoverageReport report;
  report.replicates = config.replicates;
  report.n = n;
  report.d = d;
  report.t = config.t;
  report.window = local.window();
  report.norm_source = config.norm_source;
  report.prob_joint = nominal(1).prob_joint;
  report.pairs.resize(d);
  for (std::size_t k = 1; k <= d; ++k) {
    const DeviationBound b = nominal(k);
    PairCoverage& pc = report.pairs[k - 1];
    pc.k = k;
    pc.reference_value = local.value(k);
    pc.prob_lower = b.prob_lower;
    pc.prob_upper = b.prob_upper;
  }

  const double R = static_cast<double>(config.replicates);
  double norm_sum = 0.0;
  for (const ReplicateOutcome& out : outcomes) {
    norm_sum += out.noise_norm;
    if (out.conditional) ++report.conditional_hits;
    if (!out.admissible) ++report.inadmissible;
    bool all_bounds = out.admissible;
    for (std::size_t i = 0; i < d; ++i) {
      PairCoverage& pc = report.pairs[i];
      pc.lower_hits += static_cast<std::size_t>(out.lower_ok[i]);
      pc.upper_hits += static_cast<std::size_t>(out.upper_ok[i]);
      pc.mean_deviation += out.matched[i] - pc.reference_value;
      pc.mean_upper_excess += out.upper_excess[i];
      pc.mean_lower_deficit += out.lower_deficit[i];
      all_bounds = all_bounds && out.lower_ok[i] && out.upper_ok[i];
    }
    if (out.conditional && all_bounds) ++report.joint_hits;
  }
  for (PairCoverage& pc : report.pairs) {
    pc.lower_rate = static_cast<double>(pc.lower_hits) / R;
    pc.upper_rate = static_cast<double>(pc.upper_hits) / R;
    pc.mean_deviation /= R;
    pc.mean_upper_excess /= R;
    pc.mean_lower_deficit /= R;
  }
  report.conditional_rate = static_cast<double>(report.conditional_hits) / R;
  report.joint_rate = static_cast<double>(report.joint_hits) / R;
  report.mean_noise_norm = norm_sum / R;
  return report;
}

}  // namespace

CoverageReport run_coverage(const EdgeProbabilityMatrix& P, const SpectralWindow& window,
                            const CoverageConfig& config) {
  if (config.replicates == 0) throw InvalidInput("coverage needs at least one replicate");
  const Eigen::MatrixXd& probs = P.matrix();

  Spectrum reference;
  Eigen::MatrixXd vectors;
  if (config.reference_vectors) {
    reference = symmetric_eigenvalues(probs);
  } else {
    EigenPairs pairs = symmetric_eigenpairs(probs);
    reference = std::move(pairs.spectrum);
    vectors = std::move(pairs.vectors);
  }
  const WindowContents in = locate_in_window(reference, window);
  if (in.count == 0) throw InvalidInput("window contains no eigenvalue of P");
  const LocalSpectrum local(in.values, window);
  const std::size_t d = local.d();
  if (config.reference_vectors) {
    vectors = *config.reference_vectors;
    if (vectors.rows() != probs.rows() || static_cast<std::size_t>(vectors.cols()) != d) {
      throw InvalidInput("reference vectors must be n x d for the local eigenvalues of P");
    }
  } else {
    Eigen::MatrixXd local_vectors(probs.rows(), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
      local_vectors.col(static_cast<Eigen::Index>(i)) = vectors.col(static_cast<Eigen::Index>(in.indices[i]));
    }
    vectors = std::move(local_vectors);
  }

  std::optional<NoiseNormEstimate> fixed;
  if (config.norm_source == NormSource::analytic) {
    fixed = NoiseNormEstimate::analytic(spectral_norm_tail(ConcentrationProfile::ierm(), P.n(), P.n(), 1.0, true));
  } else if (config.norm_source == NormSource::plug_in) {
    fixed = NoiseNormEstimate::plug_in(P.max_expected_degree());
  }

  std::vector<ReplicateOutcome> outcomes(config.replicates);
  parallel_for(config.replicates, config.threads, [&](std::size_t r) {
    RandomStream rng = RandomStream::derive(config.seed, r);
    const AdjacencyMatrix A = sample_adjacency(P, rng);
    const Spectrum spectrum = symmetric_eigenvalues(A.matrix());
    ReplicateOutcome& out = outcomes[r];
    out.matched = values_at(spectrum, in.indices);
    out.noise_norm = fixed ? fixed->value : symmetric_spectral_norm(A.matrix() - probs);
    const NoiseNormEstimate e_norm = fixed.value_or(NoiseNormEstimate::empirical(out.noise_norm));

    bool rayleigh_in_window = true;
    for (std::size_t i = 0; i < d; ++i) {
      const auto w = vectors.col(static_cast<Eigen::Index>(i));
      rayleigh_in_window = rayleigh_in_window && window.contains(w.dot(A.matrix() * w));
    }
    out.conditional = locate_in_window(spectrum, window).count == d && rayleigh_in_window;
    evaluate_bounds(out, d, [&](std::size_t k) { return deviation_bound(k, local, config.t, e_norm); });
  });

  return aggregate(outcomes, local, config, P.n(), [&](std::size_t k) {
    return deviation_bound(k, local, config.t, NoiseNormEstimate::empirical(0.0));
  });
}

CoverageReport run_spike_coverage(const SpikeModelSpec& spec, const SpectralWindow& window,
                                  const CoverageConfig& config) {
  if (config.replicates == 0) throw InvalidInput("coverage needs at least one replicate");
  if (config.norm_source == NormSource::plug_in) {
    throw InvalidInput("the spike model has no plug-in norm; use empirical or analytic");
  }
  spec.validate();
  const ConcentrationProfile profile = ConcentrationProfile::gaussian();
  const Spectrum reference{spec.singular_values(), SpectrumKind::singular_values};
  const WindowContents in = locate_in_window(reference, window);
  if (in.count == 0) throw InvalidInput("window contains no singular value of M");
  const LocalSpectrum local(in.values, window);
  const std::size_t d = local.d();
  const std::size_t q = spec.q();
  std::optional<NoiseNormEstimate> fixed;
  if (config.norm_source == NormSource::analytic) {
    fixed = NoiseNormEstimate::analytic(spectral_norm_tail(profile, q, q, 4.0, false));
  }

  std::vector<ReplicateOutcome> outcomes(config.replicates);
  parallel_for(config.replicates, config.threads, [&](std::size_t r) {
    RandomStream rng = RandomStream::derive(config.seed, r);
    const SpikeSample sample = spike_model_matrices(spec, rng);
    const Eigen::MatrixXd observed = sample.signal + sample.noise;
    const Spectrum spectrum = singular_values(observed);
    ReplicateOutcome& out = outcomes[r];
    // M is diagonal with ascending entries, so rank i of M is coordinate i.
    out.matched = values_at(spectrum, in.indices);
    out.noise_norm = fixed ? fixed->value : spectral_norm(sample.noise);
    const NoiseNormEstimate e_norm = fixed.value_or(NoiseNormEstimate::empirical(out.noise_norm));

    bool rayleigh_in_window = true;
    for (std::size_t i : in.indices) {
      const auto c = static_cast<Eigen::Index>(i);
      rayleigh_in_window = rayleigh_in_window && window.contains(observed(c, c));
    }
    out.conditional = locate_in_window(spectrum, window).count == d && rayleigh_in_window;
    evaluate_bounds(out, d, [&](std::size_t k) { return sv_deviation_bound(k, local, config.t, e_norm, profile); });
  });

  return aggregate(outcomes, local, config, q, [&](std::size_t k) {
    return sv_deviation_bound(k, local, config.t, NoiseNormEstimate::empirical(0.0), profile);
  });
}

nlohmann::json to_json(const CoverageReport& report) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const PairCoverage& pc : report.pairs) {
    pairs.push_back({{"k", pc.k},
                     {"reference_value", pc.reference_value},
                     {"prob_lower", pc.prob_lower},
                     {"prob_upper", pc.prob_upper},
                     {"lower_rate", pc.lower_rate},
                     {"upper_rate", pc.upper_rate},
                     {"mean_deviation", pc.mean_deviation},
                     {"mean_upper_excess", pc.mean_upper_excess},
                     {"mean_lower_deficit", pc.mean_lower_deficit}});
  }
  const double R = static_cast<double>(report.replicates);
  return {{"replicates", report.replicates},
          {"n", report.n},
          {"d", report.d},
          {"t", report.t},
          {"window", to_json(report.window)},
          {"norm_source", to_string(report.norm_source)},
          {"nominal_joint", report.prob_joint},
          {"nominal_joint_stderr", std::sqrt(report.prob_joint * (1.0 - report.prob_joint) / R)},
          {"conditional_rate", report.conditional_rate},
          {"joint_coverage", report.joint_rate},
          {"inadmissible_replicates", report.inadmissible},
          {"mean_noise_norm", report.mean_noise_norm},
          {"pairs", pairs}};
}

}  // namespace ktg
