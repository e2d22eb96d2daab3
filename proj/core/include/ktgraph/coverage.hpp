#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "ktgraph/graph_models.hpp"
#include "ktgraph/kato_temple.hpp"

namespace ktg {

struct CoverageConfig {
  double t = 2.55;
  std::size_t replicates = 500;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// empirical: ||A - P||_2 of each replicate; analytic: the symmetric IERM
  /// threshold 3 sqrt(n); plug_in: 2 sqrt(Delta).
  NormSource norm_source = NormSource::empirical;
  /// Orthonormal eigenvectors of P (n x d) for the local eigenvalues. When
  /// absent they are computed with the dense eigensolver.
  std::optional<Eigen::MatrixXd> reference_vectors;
};

struct PairCoverage {
  std::size_t k = 0;
  double reference_value = 0.0;
  double prob_lower = 0.0;
  double prob_upper = 0.0;
  std::size_t lower_hits = 0;
  std::size_t upper_hits = 0;
  double lower_rate = 0.0;
  double upper_rate = 0.0;
  double mean_deviation = 0.0;     // mean of lambda_k(A) - lambda_k(P)
  double mean_upper_excess = 0.0;  // mean of t + zeta_plus
  double mean_lower_deficit = 0.0; // mean of t + zeta_minus
};

/// Empirical coverage of the adjacency deviation bounds. The conditional
/// event is: the window holds exactly d eigenvalues of A and every Rayleigh
/// quotient <A w_i, w_i> lies in the window. `joint` counts replicates where
/// the conditional event holds and every pair satisfies both of its bounds.
struct CoverageReport {
  std::size_t replicates = 0;
  std::size_t n = 0;
  std::size_t d = 0;
  double t = 0.0;
  SpectralWindow window{1.0};
  NormSource norm_source = NormSource::empirical;
  double prob_joint = 0.0;
  std::size_t conditional_hits = 0;
  std::size_t joint_hits = 0;
  std::size_t inadmissible = 0;  // replicates whose realized norm made t inadmissible
  double conditional_rate = 0.0;
  double joint_rate = 0.0;
  double mean_noise_norm = 0.0;
  std::vector<PairCoverage> pairs;
};

/// Replicate r samples from RandomStream::derive(config.seed, r); the report
/// does not depend on config.threads.
CoverageReport run_coverage(const EdgeProbabilityMatrix& P, const SpectralWindow& window,
                            const CoverageConfig& config);

/// Singular-value coverage for the spike model M + E with Gaussian E. The
/// local values are the singular values of M inside the window; the Rayleigh
/// quotients are the diagonal entries (M + E)_ii of the matching coordinates.
/// Floors use the dilated Gaussian profile. config.norm_source may be
/// empirical or analytic (threshold 6 sqrt(q)).
CoverageReport run_spike_coverage(const SpikeModelSpec& spec, const SpectralWindow& window,
                                  const CoverageConfig& config);

nlohmann::json to_json(const CoverageReport& report);

}  // namespace ktg
