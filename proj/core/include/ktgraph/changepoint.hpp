#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ktgraph/graph_models.hpp"

namespace ktg {

/// ER(n, p) graphs before the change index, a two-block SBM with block
/// matrix [[p + eps, p], [p, p]] (the first m vertices form the chatter
/// block) from T_star on.
struct ChangePointSpec {
  std::size_t n = 400;
  std::size_t m = 40;
  double p = 0.2;
  double signal_eps = 0.2;
  std::size_t T_star = 1;
  std::size_t T = 2;

  /// eps = 0 is accepted so that null behaviour can be run through the same path.
  void validate() const;
  double p_eps() const { return p + signal_eps; }
  BlockModel alternative_model() const;
  /// Hollow probability matrices of the sampled simple graphs.
  EdgeProbabilityMatrix null_probability() const;
  EdgeProbabilityMatrix alternative_probability() const;
};

struct GraphSequence {
  std::vector<AdjacencyMatrix> graphs;  // G_1 .. G_T
  std::size_t change_index = 1;         // 1-based T_star
};

GraphSequence sample_graph_sequence(const ChangePointSpec& spec, RandomStream& rng);

enum class Statistic { T2, T3, max_degree, scan, lambda_max, upsilon_m, lambda_m };

std::string to_string(Statistic statistic);
Statistic statistic_from_string(const std::string& name);

/// Raw value of a statistic on a simple graph; m is used by upsilon_m and lambda_m.
double statistic_value(Statistic statistic, const AdjacencyMatrix& A, std::size_t m = 0);

struct StatisticReport {
  std::string statistic;
  double value_before = 0.0;
  double value_after = 0.0;
  double difference = 0.0;
  double normalizer = 1.0;  // null standardization: n sqrt(p(1-p)) or n^2 p^2 sqrt(p p_eps)
  double normalized_difference = 0.0;
};

/// (S(A_curr) - S(A_prev)) / normalizer for S in {T2, T3}. DomainError when
/// p is 0 or 1; InvalidInput for other statistics or mismatched sizes.
StatisticReport normalized_statistic(Statistic statistic, const AdjacencyMatrix& A_prev,
                                     const AdjacencyMatrix& A_curr, double p, double signal_eps);

/// Mean shift of the (normalized) difference under the alternative.
///   T2: C(m,2) eps / (n sqrt(p(1-p)))
///   T3: mu / (n^2 p^2 sqrt(p p_eps)), mu = m^3 p_eps^3/6 + m^2 (n-m) p^2 p_eps / 2
///         + (m (n-m)^2 / 2 + (n-m)^3 / 6) p^3 - n^3 p^3 / 6
///   lambda_max: m^2 p eps / (n p - m eps)
double expected_shift(Statistic statistic, const ChangePointSpec& spec);

/// The cubic triangle-count proxy mu as defined above (unnormalized).
double triangle_shift_mu(const ChangePointSpec& spec);

/// Larger root of x^2 - (np + m eps) x + m (n-m) p eps: lambda_max of the
/// alternative P with loops kept.
double alternative_lambda_max(const ChangePointSpec& spec);

/// I(m,n,p,eps) = m KL(p_eps || p) / (2 log(n/m)). InvalidInput unless
/// 0 < m < n; DomainError when p = 0 or p_eps = 1.
double detectability_index(const ChangePointSpec& spec);

struct ThresholdRule {
  enum class Kind {
    normal_quantile,  // reject when the normalized difference exceeds z_{1-level} (T2, T3 only)
    empirical_null,   // reject above the (1-level) quantile of simulated null differences
    sqrt_m_log_n,     // reject when the difference exceeds constant * sqrt(m log n)
  };
  Kind kind = Kind::normal_quantile;
  double level = 0.05;
  double constant = 1.0;
  std::size_t calibration_replicates = 0;  // 0: use the power replicate count
};

std::string to_string(ThresholdRule::Kind kind);
ThresholdRule::Kind threshold_rule_from_string(const std::string& name);

/// Standard normal quantile, by bisection on erfc.
double normal_quantile(double probability);

struct PowerReport {
  ChangePointSpec spec;
  Statistic statistic = Statistic::T2;
  ThresholdRule rule;
  double threshold = 0.0;
  std::size_t replicates = 0;
  double null_rejection_rate = 0.0;
  double alt_rejection_rate = 0.0;
  double null_standard_error = 0.0;
  double alt_standard_error = 0.0;
  double null_mean = 0.0;
  double null_variance = 0.0;
  double alt_mean = 0.0;
  double alt_variance = 0.0;
};

/// Two-sample test of (A_prev, A_curr): both ER under the null, A_curr from
/// the chatter SBM under the alternative. The test statistic is the
/// difference S(A_curr) - S(A_prev), normalized for T2 and T3. Replicate r
/// draws from RandomStream::derive(seed, family + r) with per-phase families.
/// Alternative replicates reuse one uniform per potential edge, so the
/// sampled graphs are coupled across m and eps for a fixed seed.
PowerReport changepoint_power(const ChangePointSpec& spec, Statistic statistic, const ThresholdRule& rule,
                              std::size_t replicates, std::uint64_t seed, unsigned threads = 1);

nlohmann::json to_json(const ChangePointSpec& spec);
nlohmann::json to_json(const PowerReport& report);

}  // namespace ktg
