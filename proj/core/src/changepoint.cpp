#include "ktgraph/changepoint.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ktgraph/errors.hpp"
#include "ktgraph/graph_statistics.hpp"
#include "ktgraph/parallel.hpp"

namespace ktg {

void ChangePointSpec::validate() const {
  if (m < 1 || m > n) throw InvalidInput("chatter community size m must lie in [1, n]");
  if (!(p > 0.0 && p < 1.0)) throw InvalidInput("base edge probability p must lie in (0, 1)");
  if (!(signal_eps >= 0.0 && p + signal_eps <= 1.0)) {
    throw InvalidInput("chatter increment must satisfy 0 <= eps and p + eps <= 1");
  }
  if (T_star < 1) throw InvalidInput("change index T_star must be at least 1");
  if (T < 1) throw InvalidInput("sequence length T must be at least 1");
}

BlockModel ChangePointSpec::alternative_model() const {
  validate();
  BlockModel model;
  if (m == n) {
    model.B = Eigen::MatrixXd::Constant(1, 1, p_eps());
    model.block_sizes = {n};
    return model;
  }
  model.B.resize(2, 2);
  model.B << p_eps(), p,
      p, p;
  model.block_sizes = {m, n - m};
  return model;
}

EdgeProbabilityMatrix ChangePointSpec::null_probability() const {
  validate();
  return erdos_renyi_probability_matrix(n, p, false);
}

EdgeProbabilityMatrix ChangePointSpec::alternative_probability() const {
  return sbm_probability_matrix(alternative_model(), false);
}

GraphSequence sample_graph_sequence(const ChangePointSpec& spec, RandomStream& rng) {
  const EdgeProbabilityMatrix null_p = spec.null_probability();
  const EdgeProbabilityMatrix alt_p = spec.alternative_probability();
  GraphSequence seq;
  seq.change_index = spec.T_star;
  seq.graphs.reserve(spec.T);
  for (std::size_t t = 1; t <= spec.T; ++t) {
    seq.graphs.push_back(sample_adjacency(t < spec.T_star ? null_p : alt_p, rng));
  }
  return seq;
}

std::string to_string(Statistic statistic) {
  switch (statistic) {
    case Statistic::T2: return "T2";
    case Statistic::T3: return "T3";
    case Statistic::max_degree: return "max_degree";
    case Statistic::scan: return "scan";
    case Statistic::lambda_max: return "lambda_max";
    case Statistic::upsilon_m: return "upsilon_m";
    case Statistic::lambda_m: return "lambda_m";
  }
  return "unknown";
}

Statistic statistic_from_string(const std::string& name) {
  for (Statistic s : {Statistic::T2, Statistic::T3, Statistic::max_degree, Statistic::scan, Statistic::lambda_max,
                      Statistic::upsilon_m, Statistic::lambda_m}) {
    if (to_string(s) == name) return s;
  }
  throw InvalidInput("unknown statistic '" + name +
                     "' (expected T2, T3, max_degree, scan, lambda_max, upsilon_m or lambda_m)");
}

double statistic_value(Statistic statistic, const AdjacencyMatrix& A, std::size_t m) {
  switch (statistic) {
    case Statistic::T2: return static_cast<double>(edge_count(A));
    case Statistic::T3: return static_cast<double>(triangle_count(A));
    case Statistic::max_degree: return static_cast<double>(max_degree(A));
    case Statistic::scan: return static_cast<double>(scan_statistic(A));
    case Statistic::lambda_max: return largest_eigenvalue(A);
    case Statistic::upsilon_m: return static_cast<double>(modified_scan(A, m));
    case Statistic::lambda_m: return local_eigenvalue_statistic(A, m);
  }
  throw InvalidInput("unknown statistic");
}

namespace {

double null_normalizer(Statistic statistic, std::size_t n, double p, double signal_eps) {
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream msg;
    msg << "normalization needs 0 < p < 1, got p = " << p;
    throw DomainError(msg.str());
  }
  const double nn = static_cast<double>(n);
  if (statistic == Statistic::T2) return nn * std::sqrt(p * (1.0 - p));
  if (statistic == Statistic::T3) return nn * nn * p * p * std::sqrt(p * (p + signal_eps));
  throw InvalidInput("only T2 and T3 have a normalized form, got " + to_string(statistic));
}

}  // namespace

StatisticReport normalized_statistic(Statistic statistic, const AdjacencyMatrix& A_prev,
                                     const AdjacencyMatrix& A_curr, double p, double signal_eps) {
  if (A_prev.n() != A_curr.n()) throw InvalidInput("graphs in a two-sample test must have the same size");
  StatisticReport report;
  report.statistic = to_string(statistic);
  report.normalizer = null_normalizer(statistic, A_curr.n(), p, signal_eps);
  report.value_before = statistic_value(statistic, A_prev);
  report.value_after = statistic_value(statistic, A_curr);
  report.difference = report.value_after - report.value_before;
  report.normalized_difference = report.difference / report.normalizer;
  return report;
}

double triangle_shift_mu(const ChangePointSpec& spec) {
  spec.validate();
  const double n = static_cast<double>(spec.n);
  const double m = static_cast<double>(spec.m);
  const double p = spec.p;
  const double pe = spec.p_eps();
  const double rest = n - m;
  return m * m * m * pe * pe * pe / 6.0 + m * m * rest * p * p * pe / 2.0 +
         (m * rest * rest / 2.0 + rest * rest * rest / 6.0) * p * p * p - n * n * n * p * p * p / 6.0;
}

double expected_shift(Statistic statistic, const ChangePointSpec& spec) {
  spec.validate();
  const double n = static_cast<double>(spec.n);
  const double m = static_cast<double>(spec.m);
  const double p = spec.p;
  const double e = spec.signal_eps;
  switch (statistic) {
    case Statistic::T2:
      return m * (m - 1.0) / 2.0 * e / null_normalizer(Statistic::T2, spec.n, p, e);
    case Statistic::T3:
      return triangle_shift_mu(spec) / null_normalizer(Statistic::T3, spec.n, p, e);
    case Statistic::lambda_max:
      return m * m * p * e / (n * p - m * e);
    default:
      throw InvalidInput("no closed-form shift for statistic " + to_string(statistic));
  }
}

double alternative_lambda_max(const ChangePointSpec& spec) {
  spec.validate();
  const double n = static_cast<double>(spec.n);
  const double m = static_cast<double>(spec.m);
  const double b = n * spec.p + m * spec.signal_eps;
  const double c = m * (n - m) * spec.p * spec.signal_eps;
  return 0.5 * (b + std::sqrt(b * b - 4.0 * c));
}

double detectability_index(const ChangePointSpec& spec) {
  spec.validate();
  if (spec.m >= spec.n) throw InvalidInput("detectability index needs m < n");
  const double p = spec.p;
  const double pe = spec.p_eps();
  if (pe >= 1.0) throw DomainError("detectability index diverges for p + eps = 1");
  const double kl = pe * std::log(pe / p) + (1.0 - pe) * std::log((1.0 - pe) / (1.0 - p));
  const double m = static_cast<double>(spec.m);
  return m * kl / (2.0 * std::log(static_cast<double>(spec.n) / m));
}

std::string to_string(ThresholdRule::Kind kind) {
  switch (kind) {
    case ThresholdRule::Kind::normal_quantile: return "normal_quantile";
    case ThresholdRule::Kind::empirical_null: return "empirical_null";
    case ThresholdRule::Kind::sqrt_m_log_n: return "sqrt_m_log_n";
  }
  return "unknown";
}

ThresholdRule::Kind threshold_rule_from_string(const std::string& name) {
  for (auto k : {ThresholdRule::Kind::normal_quantile, ThresholdRule::Kind::empirical_null,
                 ThresholdRule::Kind::sqrt_m_log_n}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidInput("unknown threshold rule '" + name + "'");
}

double normal_quantile(double probability) {
  if (!(probability > 0.0 && probability < 1.0)) throw InvalidInput("normal quantile needs 0 < probability < 1");
  auto cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
  double lo = -40.0;
  double hi = 40.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < probability ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

bool is_normalized(Statistic statistic) { return statistic == Statistic::T2 || statistic == Statistic::T3; }

double two_sample_difference(Statistic statistic, const AdjacencyMatrix& prev, const AdjacencyMatrix& curr,
                             const ChangePointSpec& spec) {
  if (is_normalized(statistic)) {
    return normalized_statistic(statistic, prev, curr, spec.p, spec.signal_eps).normalized_difference;
  }
  return statistic_value(statistic, curr, spec.m) - statistic_value(statistic, prev, spec.m);
}

std::vector<double> simulate(std::size_t replicates, unsigned threads, std::uint64_t seed, std::uint64_t family,
                             const EdgeProbabilityMatrix& prev_p, const EdgeProbabilityMatrix& curr_p,
                             Statistic statistic, const ChangePointSpec& spec) {
  std::vector<double> out(replicates);
  parallel_for(replicates, threads, [&](std::size_t r) {
    RandomStream rng = RandomStream::derive(seed, family + r);
    const AdjacencyMatrix prev = sample_adjacency(prev_p, rng);
    const AdjacencyMatrix curr = sample_adjacency(curr_p, rng);
    out[r] = two_sample_difference(statistic, prev, curr, spec);
  });
  return out;
}

void moments(const std::vector<double>& xs, double& mean, double& variance) {
  mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  variance = 0.0;
  for (double x : xs) variance += (x - mean) * (x - mean);
  variance = xs.size() > 1 ? variance / static_cast<double>(xs.size() - 1) : 0.0;
}

double rate_above(const std::vector<double>& xs, double threshold) {
  std::size_t hits = 0;
  for (double x : xs) hits += x > threshold;
  return static_cast<double>(hits) / static_cast<double>(xs.size());
}

}  // namespace

PowerReport changepoint_power(const ChangePointSpec& spec, Statistic statistic, const ThresholdRule& rule,
                              std::size_t replicates, std::uint64_t seed, unsigned threads) {
  spec.validate();
  if (replicates == 0) throw InvalidInput("power simulation needs at least one replicate");
  if (!(rule.level > 0.0 && rule.level < 1.0)) throw InvalidInput("test level must lie in (0, 1)");
  if (rule.kind == ThresholdRule::Kind::normal_quantile && !is_normalized(statistic)) {
    throw InvalidInput("the normal_quantile rule needs a normalized statistic (T2 or T3)");
  }
  if (statistic == Statistic::upsilon_m || statistic == Statistic::lambda_m) {
    // Fail before any sampling when the enumeration guard is exceeded.
    statistic_value(statistic, AdjacencyMatrix(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(spec.n),
                                                                      static_cast<Eigen::Index>(spec.n))),
                    spec.m);
  }

  const EdgeProbabilityMatrix null_p = spec.null_probability();
  const EdgeProbabilityMatrix alt_p = spec.alternative_probability();

  PowerReport report;
  report.spec = spec;
  report.statistic = statistic;
  report.rule = rule;
  report.replicates = replicates;

  switch (rule.kind) {
    case ThresholdRule::Kind::normal_quantile:
      report.threshold = normal_quantile(1.0 - rule.level);
      break;
    case ThresholdRule::Kind::sqrt_m_log_n:
      report.threshold = rule.constant * std::sqrt(static_cast<double>(spec.m) * std::log(static_cast<double>(spec.n)));
      break;
    case ThresholdRule::Kind::empirical_null: {
      const std::size_t R = rule.calibration_replicates == 0 ? replicates : rule.calibration_replicates;
      std::vector<double> calibration =
          simulate(R, threads, seed, kCalibrationStreamFamily, null_p, null_p, statistic, spec);
      std::sort(calibration.begin(), calibration.end());
      const auto rank = static_cast<std::size_t>(std::ceil((1.0 - rule.level) * static_cast<double>(R)));
      report.threshold = calibration[std::clamp<std::size_t>(rank, 1, R) - 1];
      break;
    }
  }

  const std::vector<double> null_diffs = simulate(replicates, threads, seed, kNullStreamFamily, null_p, null_p,
                                                  statistic, spec);
  const std::vector<double> alt_diffs = simulate(replicates, threads, seed, kAltStreamFamily, null_p, alt_p,
                                                 statistic, spec);
  moments(null_diffs, report.null_mean, report.null_variance);
  moments(alt_diffs, report.alt_mean, report.alt_variance);
  report.null_rejection_rate = rate_above(null_diffs, report.threshold);
  report.alt_rejection_rate = rate_above(alt_diffs, report.threshold);
  const double R = static_cast<double>(replicates);
  report.null_standard_error = std::sqrt(report.null_rejection_rate * (1.0 - report.null_rejection_rate) / R);
  report.alt_standard_error = std::sqrt(report.alt_rejection_rate * (1.0 - report.alt_rejection_rate) / R);
  return report;
}

nlohmann::json to_json(const ChangePointSpec& spec) {
  return {{"n", spec.n}, {"m", spec.m}, {"p", spec.p}, {"eps", spec.signal_eps}, {"T_star", spec.T_star}, {"T", spec.T}};
}

nlohmann::json to_json(const PowerReport& report) {
  return {{"spec", to_json(report.spec)},
          {"statistic", to_string(report.statistic)},
          {"threshold_rule",
           {{"kind", to_string(report.rule.kind)}, {"level", report.rule.level}, {"constant", report.rule.constant}}},
          {"threshold", report.threshold},
          {"replicates", report.replicates},
          {"rates",
           {{"null_rejection", report.null_rejection_rate}, {"alt_rejection", report.alt_rejection_rate}}},
          {"stderr", {{"null_rejection", report.null_standard_error}, {"alt_rejection", report.alt_standard_error}}},
          {"null_moments", {{"mean", report.null_mean}, {"variance", report.null_variance}}},
          {"alt_moments", {{"mean", report.alt_mean}, {"variance", report.alt_variance}}}};
}

}  // namespace ktg
